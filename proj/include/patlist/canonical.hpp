#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "patlist/graph.hpp"

namespace patlist {

// Id-level canonical keys: two patterns are the same subgraph iff their
// keys are equal.
using Key = std::vector<std::int32_t>;
using KeySet = std::vector<Key>;  // sorted, duplicate-free when produced by an oracle

// Sorted (min,max) endpoint pairs, flattened.
Key subtree_key(const Graph& g, std::span<const EdgeId> edges);
// Sorted vertices, then kNone, then sorted induced endpoint pairs.
Key subgraph_key(const Graph& g, std::span<const VertexId> vertices, std::span<const EdgeId> edges);
Key path_key(std::span<const VertexId> walk);
// Least vertex first, then the smaller of its two neighbours.
Key cycle_key(std::span<const VertexId> ring);

void sort_unique(KeySet& keys);

// Name-level canonical forms used for emission.
std::vector<std::string> sorted_names(const std::vector<std::string>& names, std::span<const VertexId> vertices);
std::vector<std::pair<std::string, std::string>> sorted_name_pairs(const std::vector<std::string>& names,
                                                                   const Graph& g, std::span<const EdgeId> edges);
std::vector<std::string> path_names(const std::vector<std::string>& names, std::span<const VertexId> walk);
std::vector<std::string> cycle_names(const std::vector<std::string>& names, std::span<const VertexId> ring);

}  // namespace patlist
