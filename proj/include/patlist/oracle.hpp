#pragma once

#include <cstdint>

#include "patlist/canonical.hpp"
#include "patlist/sinks.hpp"

// Exhaustive reference enumerators. They read only the live part of the
// graph and never mutate it (except baseline_subtrees, which restores it).
namespace patlist::oracle {

inline constexpr int kDefaultCap = 14;

// Index k holds the k-subtrees (k >= 2); grown one edge at a time with
// deduplication.
std::vector<KeySet> brute_subtrees(const Graph& g, int cap = kDefaultCap);
// Index k holds the connected induced k-subgraphs (k >= 1).
std::vector<KeySet> brute_subgraphs(const Graph& g, int cap = kDefaultCap);
KeySet brute_paths(const Graph& g, VertexId s, VertexId t, int cap = kDefaultCap);
KeySet brute_cycles(const Graph& g, int cap = kDefaultCap);

std::uint64_t count_paths(const Graph& g, VertexId s, VertexId t, int cap = kDefaultCap);
std::uint64_t count_cycles(const Graph& g, int cap = kDefaultCap);

// Plain binary partition with truncated-DFS feasibility probes and no
// certificate: every node pays O(k^2).
std::uint64_t baseline_subtrees(Graph& g, int k, const EdgeSink& sink);

}  // namespace patlist::oracle
