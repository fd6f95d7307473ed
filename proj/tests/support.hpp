#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "patlist/edge_list.hpp"
#include "patlist/generators.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(PATLIST_FIXTURES) + "/" + name; }

inline patlist::NamedGraph fixture(const std::string& name) { return patlist::load_edge_list(fixture_path(name)); }

inline patlist::NamedGraph named(const std::vector<patlist::NamePair>& edges) {
    return patlist::make_named_graph(edges);
}

using EdgePairs = std::vector<std::pair<patlist::VertexId, patlist::VertexId>>;

struct SmallGraph {
    int n = 0;
    EdgePairs edges;
    patlist::Graph build() const { return patlist::Graph(n, edges); }
};

inline SmallGraph decode_graph6(const std::string& line) {
    SmallGraph g;
    g.n = line[0] - 63;
    int bit = 0;
    auto next_bit = [&] {
        const int chunk = line[1 + bit / 6] - 63;
        const int value = (chunk >> (5 - bit % 6)) & 1;
        ++bit;
        return value;
    };
    for (int j = 1; j < g.n; ++j)
        for (int i = 0; i < j; ++i)
            if (next_bit()) g.edges.emplace_back(i, j);
    return g;
}

inline std::vector<SmallGraph> connected_corpus() {
    std::ifstream in(fixture_path("connected_upto8.g6"));
    std::vector<SmallGraph> out;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(decode_graph6(line));
    return out;
}

inline std::uint64_t corpus_seed(std::uint64_t fallback = 20240601) {
    if (const char* env = std::getenv("PATTERN_LISTER_SEED")) return std::strtoull(env, nullptr, 10);
    return fallback;
}

// Seeded random connected graphs with n in [lo, hi] and a few extra edges.
inline std::vector<SmallGraph> random_corpus(int count, int lo, int hi, int extra_max, std::uint64_t seed) {
    std::vector<SmallGraph> out;
    std::mt19937_64 next(seed);
    for (int i = 0; i < count; ++i) {
        const int n = lo + static_cast<int>(next() % (hi - lo + 1));
        const int max_m = n * (n - 1) / 2;
        const int m = std::min(max_m, n - 1 + static_cast<int>(next() % (extra_max + 1)));
        const auto pairs = patlist::gen::random_connected(n, m, next());
        const auto g = patlist::make_named_graph(pairs);
        SmallGraph sg;
        sg.n = g.graph.order();
        for (patlist::EdgeId e = 0; e < g.graph.size(); ++e) sg.edges.emplace_back(g.graph.tail(e), g.graph.head(e));
        out.push_back(std::move(sg));
    }
    return out;
}

}  // namespace testing
