#include "patlist/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace patlist::gen {

namespace {
std::string num(int i) { return std::to_string(i); }
}  // namespace

std::vector<NamePair> diamond(int k) {
    if (k < 1) throw Error(ErrorCode::Infeasible, "diamond needs k >= 1");
    std::vector<NamePair> edges{{"a", "c"}};
    for (int i = 1; i <= k; ++i) {
        const auto v = "v" + num(i);
        const auto u = "u" + num(i);
        edges.emplace_back("a", v);
        edges.emplace_back(v, "b");
        edges.emplace_back("b", u);
        edges.emplace_back(u, "c");
    }
    return edges;
}

std::vector<NamePair> complete(int n) {
    if (n < 2) throw Error(ErrorCode::Infeasible, "complete graph needs n >= 2");
    std::vector<NamePair> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(num(i), num(j));
    return edges;
}

std::vector<NamePair> cycle(int n) {
    if (n < 3) throw Error(ErrorCode::Infeasible, "cycle needs n >= 3");
    std::vector<NamePair> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(num(i), num((i + 1) % n));
    return edges;
}

std::vector<NamePair> random_connected(int n, int m, std::uint64_t seed) {
    const long long max_m = static_cast<long long>(n) * (n - 1) / 2;
    if (n < 2 || m < n - 1 || m > max_m) throw Error(ErrorCode::Infeasible, "random graph needs n-1 <= m <= n(n-1)/2");
    std::mt19937_64 rng(seed);
    std::set<std::pair<int, int>> present;
    std::vector<NamePair> edges;
    auto add = [&](int u, int v) {
        present.emplace(std::min(u, v), std::max(u, v));
        edges.emplace_back(num(u), num(v));
    };
    for (int v = 1; v < n; ++v) add(static_cast<int>(std::uniform_int_distribution<int>(0, v - 1)(rng)), v);
    std::uniform_int_distribution<int> pick(0, n - 1);
    if (m > max_m / 2) {
        // Dense: draw from the explicit complement to avoid long rejection runs.
        std::vector<std::pair<int, int>> missing;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!present.count({u, v})) missing.emplace_back(u, v);
        std::shuffle(missing.begin(), missing.end(), rng);
        for (int i = 0; static_cast<int>(edges.size()) < m; ++i) add(missing[i].first, missing[i].second);
        return edges;
    }
    while (static_cast<int>(edges.size()) < m) {
        int u = pick(rng), v = pick(rng);
        if (u == v || present.count({std::min(u, v), std::max(u, v)})) continue;
        add(u, v);
    }
    return edges;
}

}  // namespace patlist::gen
