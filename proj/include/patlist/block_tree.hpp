#pragma once

#include <span>
#include <vector>

#include "patlist/graph.hpp"

namespace patlist {

// Biconnected components of the live graph. A bridge forms its own
// two-vertex component. Component ids follow DFS completion order, with DFS
// roots taken in vertex order and neighbours in adjacency order.
struct BlockTree {
    std::vector<std::vector<EdgeId>> edges;        // per component
    std::vector<std::vector<VertexId>> vertices;   // per component, discovery order
    std::vector<VertexId> cut_vertices;            // ascending
    std::vector<std::vector<int>> blocks_of;       // per vertex, ascending component ids
    std::vector<int> block_of_edge;                // kNone for edges outside the scan

    int size() const { return static_cast<int>(edges.size()); }
    bool is_cut(VertexId v) const { return blocks_of[v].size() >= 2; }
};

// `mask`, when non-empty, restricts the decomposition to vertices with a
// nonzero entry.
BlockTree biconnected_components(const Graph& g, std::span<const char> mask = {});

struct BeadString {
    std::vector<int> beads;          // component ids from s's side to t's side
    std::vector<VertexId> joints;    // joints[i] is shared by beads[i] and beads[i+1]
};

BeadString bead_string(const BlockTree& bt, VertexId s, VertexId t);

}  // namespace patlist
