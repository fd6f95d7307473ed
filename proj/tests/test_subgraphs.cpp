#include "doctest.h"
#include "patlist/oracle.hpp"
#include "patlist/subgraphs.hpp"
#include "support.hpp"

#include <random>

using namespace patlist;

namespace {

KeySet run_subgraphs(Graph& g, int k, SubgraphReport* report = nullptr, bool instrument = false) {
    KeySet got;
    auto r = list_k_subgraphs(
        g, k, [&](std::span<const VertexId> vs, std::span<const EdgeId> es) { got.push_back(subgraph_key(g, vs, es)); },
        {.instrument = instrument});
    CHECK(r.count == got.size());
    if (report) *report = r;
    return got;
}

}  // namespace

TEST_CASE("subgraph counts on small graphs") {
    auto sub = testing::fixture("g_sub.txt");
    CHECK(run_subgraphs(sub.graph, 3).size() == 10);
    CHECK(run_subgraphs(sub.graph, 1).size() == 5);
    CHECK(run_subgraphs(sub.graph, 5).size() == 1);
    auto k4 = testing::named(gen::complete(4));
    CHECK(run_subgraphs(k4.graph, 3).size() == 4);
    CHECK_THROWS_WITH_AS(run_subgraphs(k4.graph, 0), doctest::Contains("KOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(run_subgraphs(k4.graph, 5), doctest::Contains("KOutOfRange"), Error);
    auto split = testing::named({{"a", "b"}, {"c", "d"}, {"d", "e"}});
    CHECK(run_subgraphs(split.graph, 3).size() == 1);
    CHECK(run_subgraphs(split.graph, 2).size() == 3);
}

TEST_CASE("subgraph certificate basics") {
    auto named = testing::fixture("g_sub.txt");
    Graph& g = named.graph;
    Journal j(&g);
    SubgraphCertificate cert(g, j, 3);
    cert.reset(named.id_of("a"));
    CHECK(cert.c_size() == 3);
    CHECK(cert.valid());
    std::vector<VertexId> c;
    cert.c_vertices(c);
    CHECK(c == std::vector<VertexId>{named.id_of("a"), named.id_of("b"), named.id_of("c")});
    // Every neighbour of a outside {a, b, c} is external.
    PickKind kind;
    const VertexId v = cert.choose(kind);
    CHECK(kind == PickKind::External);
    CHECK(named.names[v] == "e");
    const auto mark = j.mark();
    cert.extend(v, kind);
    CHECK(cert.valid());
    CHECK(cert.s_size() == 2);
    CHECK(cert.s_edges().size() == 1);
    j.rollback(mark);
    CHECK(cert.exclude(v, kind));
    CHECK(cert.valid());
    j.rollback_all();
    CHECK(g.degrees_consistent());
}

TEST_CASE("subgraphs match the oracle on random graphs") {
    const auto corpus = testing::random_corpus(80, 2, 10, 12, testing::corpus_seed() + 7);
    for (const auto& sg : corpus) {
        Graph g = sg.build();
        const std::string before = g.serialize();
        const auto want = oracle::brute_subgraphs(g);
        for (int k = 1; k <= g.order(); ++k) {
            SubgraphReport report;
            auto got = run_subgraphs(g, k, &report, true);
            const auto count = got.size();
            sort_unique(got);
            CHECK(got.size() == count);
            CHECK(got == want[k]);
            CHECK(report.violations() == 0);
        }
        CHECK(g.serialize() == before);
    }
}

TEST_CASE("subgraph certificate round trips") {
    const auto corpus = testing::random_corpus(60, 4, 12, 14, testing::corpus_seed() + 11);
    std::mt19937_64 next(testing::corpus_seed() + 13);
    int trips = 0;
    for (const auto& sg : corpus) {
        Graph g = sg.build();
        const int k = 1 + static_cast<int>(next() % g.order());
        Journal j(&g);
        SubgraphCertificate cert(g, j, k);
        cert.reset(static_cast<VertexId>(next() % g.order()));
        // Random walk down the recursion tree, checking each undo exactly.
        while (cert.s_size() < k && cert.c_size() == k) {
            PickKind kind;
            const VertexId v = cert.choose(kind);
            const std::string graph_before = g.serialize(), cert_before = cert.serialize();
            const auto mark = j.mark();
            cert.extend(v, kind);
            CHECK(cert.valid());
            j.rollback(mark);
            CHECK(g.serialize() == graph_before);
            CHECK(cert.serialize() == cert_before);
            const bool ok = cert.exclude(v, kind);
            if (ok) CHECK(cert.valid());
            j.rollback(mark);
            CHECK(g.serialize() == graph_before);
            CHECK(cert.serialize() == cert_before);
            ++trips;
            if (next() % 2 || !ok) {
                cert.extend(v, kind);
            } else {
                cert.exclude(v, kind);
            }
            CHECK(cert.valid());
        }
        j.rollback_all();
        CHECK(g.serialize() == sg.build().serialize());
    }
    CHECK(trips > 200);
}
