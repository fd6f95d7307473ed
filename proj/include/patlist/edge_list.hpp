#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "patlist/graph.hpp"

namespace patlist {

// A graph together with the vertex names of its input; ids follow first
// appearance order.
struct NamedGraph {
    Graph graph;
    std::vector<std::string> names;

    VertexId id_of(std::string_view name) const;
};

using NamePair = std::pair<std::string, std::string>;

NamedGraph make_named_graph(std::span<const NamePair> edges);
// One `u v` pair per line; blank lines and lines starting with '#' skipped.
NamedGraph parse_edge_list(std::istream& in);
NamedGraph load_edge_list(const std::string& path);
std::string to_edge_list(const NamedGraph& g);

}  // namespace patlist
