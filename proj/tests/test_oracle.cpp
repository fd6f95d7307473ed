#include "doctest.h"
#include "patlist/oracle.hpp"
#include "support.hpp"

using namespace patlist;

TEST_CASE("oracle counts on fixtures") {
    auto tree = testing::fixture("g_tree.txt");
    CHECK(oracle::brute_subtrees(tree.graph)[3].size() == 9);
    auto sub = testing::fixture("g_sub.txt");
    CHECK(oracle::brute_subgraphs(sub.graph)[3].size() == 10);
    auto path = testing::fixture("g_path.txt");
    CHECK(oracle::brute_paths(path.graph, path.id_of("s"), path.id_of("t")).size() == 3);
    CHECK(oracle::brute_cycles(path.graph).size() == 3);
}

TEST_CASE("oracle counts on small families") {
    auto star = testing::named({{"c", "1"}, {"c", "2"}, {"c", "3"}, {"c", "4"}});
    CHECK(oracle::brute_subtrees(star.graph)[3].size() == 6);
    auto triangle = testing::named(gen::cycle(3));
    CHECK(oracle::brute_subtrees(triangle.graph)[3].size() == 3);
    auto k4 = testing::named(gen::complete(4));
    CHECK(oracle::brute_subgraphs(k4.graph)[3].size() == 4);
    CHECK(oracle::brute_subgraphs(k4.graph)[1].size() == 4);
    CHECK(oracle::brute_paths(k4.graph, 0, 3).size() == 5);
    CHECK(oracle::count_paths(k4.graph, 1, 2) == 5);
    auto d7 = testing::named(gen::diamond(2));
    CHECK(d7.graph.order() == 7);
    CHECK(d7.graph.size() == 9);
    CHECK(oracle::brute_cycles(d7.graph).size() == 6);
    auto tree = testing::named({{"a", "b"}, {"b", "c"}, {"b", "d"}});
    CHECK(oracle::count_cycles(tree.graph) == 0);
}

TEST_CASE("diamond cycle counts follow 2k^2 - k") {
    for (int k = 1; k <= 6; ++k) {
        auto d = testing::named(gen::diamond(k));
        CHECK(oracle::count_cycles(d.graph, 16) == static_cast<std::uint64_t>(2 * k * k - k));
    }
}

TEST_CASE("oracle refuses large graphs") {
    auto big = testing::named(gen::cycle(15));
    CHECK_THROWS_WITH_AS(oracle::brute_cycles(big.graph), doctest::Contains("TooLarge"), Error);
}

TEST_CASE("cycle keys are rotation and reflection invariant") {
    const std::vector<VertexId> ring{4, 2, 7, 1, 5};
    const Key want = cycle_key(ring);
    CHECK(want == Key{1, 5, 4, 2, 7});
    for (std::size_t r = 0; r < ring.size(); ++r) {
        std::vector<VertexId> rotated(ring.size());
        for (std::size_t i = 0; i < ring.size(); ++i) rotated[i] = ring[(i + r) % ring.size()];
        CHECK(cycle_key(rotated) == want);
        std::reverse(rotated.begin(), rotated.end());
        CHECK(cycle_key(rotated) == want);
    }
}

TEST_CASE("baseline agrees with the exhaustive oracle") {
    for (const auto& sg : testing::random_corpus(60, 3, 9, 5, 3)) {
        Graph g = sg.build();
        const std::string before = g.serialize();
        const auto want = oracle::brute_subtrees(g);
        for (int k = 2; k <= g.order(); ++k) {
            KeySet got;
            oracle::baseline_subtrees(g, k, [&](std::span<const EdgeId> es) { got.push_back(subtree_key(g, es)); });
            const auto count = got.size();
            sort_unique(got);
            CHECK(count == got.size());
            CHECK(got == want[k]);
        }
        CHECK(g.serialize() == before);
    }
    auto tree = testing::fixture("g_tree.txt");
    CHECK(oracle::baseline_subtrees(tree.graph, 3, [](auto) {}) == 9);
}
