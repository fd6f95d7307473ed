#include "patlist/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "patlist/marks.hpp"

namespace patlist::oracle {

namespace {

void check_cap(const Graph& g, int cap) {
    if (g.order() > cap) throw Error(ErrorCode::TooLarge, std::to_string(g.order()) + " vertices exceed cap " + std::to_string(cap));
}

std::vector<std::vector<VertexId>> live_neighbours(const Graph& g) {
    std::vector<std::vector<VertexId>> nbr(g.order());
    for (VertexId v = 0; v < g.order(); ++v) {
        if (!g.alive(v)) continue;
        for (ArcId a = g.first_arc(v); a != kNone; a = g.next_arc(a)) nbr[v].push_back(g.arc_target(a));
    }
    return nbr;
}

}  // namespace

namespace {

// Spanning trees of G[S] by choosing edges in order, each joining two components.
struct SpanningTrees {
    const std::vector<std::pair<VertexId, VertexId>>& edges;
    KeySet& out;
    Key chosen;

    void grow(std::size_t from, int need, const std::array<std::int8_t, 32>& comp) {
        if (need == 0) {
            out.push_back(chosen);
            return;
        }
        for (std::size_t i = from; i + need <= edges.size(); ++i) {
            const auto [u, v] = edges[i];
            const int cu = comp[u], cv = comp[v];
            if (cu == cv) continue;
            auto merged = comp;
            for (auto& c : merged)
                if (c == cv) c = cu;
            chosen.push_back(u);
            chosen.push_back(v);
            grow(i + 1, need - 1, merged);
            chosen.resize(chosen.size() - 2);
        }
    }
};

}  // namespace

std::vector<KeySet> brute_subtrees(const Graph& g, int cap) {
    check_cap(g, cap);
    const int n = g.order();
    if (n > 31) throw Error(ErrorCode::TooLarge, "subtree oracle takes at most 31 vertices");
    std::array<std::int8_t, 32> singletons{};
    for (int v = 0; v < 32; ++v) singletons[v] = static_cast<std::int8_t>(v);
    const auto nbr = live_neighbours(g);
    std::vector<KeySet> out(n + 1);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::uint32_t set = 1; set < (1u << n); ++set) {
        const int k = std::popcount(set);
        if (k < 2) continue;
        edges.clear();
        for (VertexId u = 0; u < n; ++u) {
            if (!(set >> u & 1)) continue;
            for (VertexId v : nbr[u])
                if (u < v && (set >> v & 1)) edges.emplace_back(u, v);
        }
        if (static_cast<int>(edges.size()) < k - 1) continue;
        std::sort(edges.begin(), edges.end());
        SpanningTrees{edges, out[k], {}}.grow(0, k - 1, singletons);
    }
    for (auto& keys : out) sort_unique(keys);
    return out;
}

std::vector<KeySet> brute_subgraphs(const Graph& g, int cap) {
    check_cap(g, cap);
    const int n = g.order();
    const auto nbr = live_neighbours(g);
    std::vector<KeySet> out(n + 1);
    std::vector<VertexId> members, stack;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        members.clear();
        bool dead = false;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) {
                if (!g.alive(v)) dead = true;
                members.push_back(v);
            }
        if (dead) continue;
        std::uint32_t seen = 1u << members[0];
        stack.assign(1, members[0]);
        while (!stack.empty()) {
            const VertexId x = stack.back();
            stack.pop_back();
            for (VertexId y : nbr[x])
                if ((mask >> y & 1) && !(seen >> y & 1)) {
                    seen |= 1u << y;
                    stack.push_back(y);
                }
        }
        if (seen != mask) continue;
        Key key = members;
        key.push_back(kNone);
        for (VertexId u : members)
            for (VertexId v : nbr[u])
                if (u < v && (mask >> v & 1)) {
                    key.push_back(u);
                    key.push_back(v);
                }
        // Pairs come out ordered by u then adjacency order; normalise.
        std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
        for (std::size_t i = members.size() + 1; i < key.size(); i += 2) pairs.emplace_back(key[i], key[i + 1]);
        std::sort(pairs.begin(), pairs.end());
        key.resize(members.size() + 1);
        for (auto [u, v] : pairs) {
            key.push_back(u);
            key.push_back(v);
        }
        out[members.size()].push_back(std::move(key));
    }
    for (auto& level : out) sort_unique(level);
    return out;
}

namespace {

// Simple-path backtracking from s; visit(walk) fires whenever the walk ends at t.
template <class Visit>
void walk_paths(const std::vector<std::vector<VertexId>>& nbr, VertexId s, VertexId t, Visit&& visit) {
    std::vector<char> on(nbr.size(), 0);
    std::vector<VertexId> walk{s};
    std::vector<std::size_t> cursor{0};
    on[s] = 1;
    while (!cursor.empty()) {
        const VertexId x = walk.back();
        if (x == t) {
            visit(walk);
            on[x] = 0;
            walk.pop_back();
            cursor.pop_back();
            continue;
        }
        auto& i = cursor.back();
        if (i == nbr[x].size()) {
            on[x] = 0;
            walk.pop_back();
            cursor.pop_back();
            continue;
        }
        const VertexId y = nbr[x][i++];
        if (on[y]) continue;
        on[y] = 1;
        walk.push_back(y);
        cursor.push_back(0);
    }
}

template <class Visit>
void walk_cycles(const std::vector<std::vector<VertexId>>& nbr, Visit&& visit) {
    const auto n = static_cast<VertexId>(nbr.size());
    std::vector<char> on(n, 0);
    for (VertexId r = 0; r < n; ++r) {
        std::vector<VertexId> walk{r};
        std::vector<std::size_t> cursor{0};
        on[r] = 1;
        while (!cursor.empty()) {
            const VertexId x = walk.back();
            auto& i = cursor.back();
            if (i == nbr[x].size()) {
                on[x] = 0;
                walk.pop_back();
                cursor.pop_back();
                continue;
            }
            const VertexId y = nbr[x][i++];
            if (y == r) {
                if (walk.size() >= 3 && walk[1] < walk.back()) visit(walk);
                continue;
            }
            if (y < r || on[y]) continue;
            on[y] = 1;
            walk.push_back(y);
            cursor.push_back(0);
        }
    }
}

void check_pair(const Graph& g, VertexId s, VertexId t) {
    if (s == t) throw Error(ErrorCode::SameVertex, "s equals t");
    if (s < 0 || t < 0 || s >= g.order() || t >= g.order() || !g.alive(s) || !g.alive(t))
        throw Error(ErrorCode::VertexNotLive, "endpoint not live");
}

}  // namespace

KeySet brute_paths(const Graph& g, VertexId s, VertexId t, int cap) {
    check_cap(g, cap);
    check_pair(g, s, t);
    KeySet out;
    walk_paths(live_neighbours(g), s, t, [&](const std::vector<VertexId>& walk) { out.push_back(walk); });
    sort_unique(out);
    return out;
}

std::uint64_t count_paths(const Graph& g, VertexId s, VertexId t, int cap) {
    check_cap(g, cap);
    check_pair(g, s, t);
    std::uint64_t count = 0;
    walk_paths(live_neighbours(g), s, t, [&](const std::vector<VertexId>&) { ++count; });
    return count;
}

KeySet brute_cycles(const Graph& g, int cap) {
    check_cap(g, cap);
    KeySet out;
    walk_cycles(live_neighbours(g), [&](const std::vector<VertexId>& walk) { out.push_back(cycle_key(walk)); });
    sort_unique(out);
    return out;
}

std::uint64_t count_cycles(const Graph& g, int cap) {
    check_cap(g, cap);
    std::uint64_t count = 0;
    walk_cycles(live_neighbours(g), [&](const std::vector<VertexId>&) { ++count; });
    return count;
}

namespace {

class Baseline {
public:
    Baseline(Graph& g, int k, const EdgeSink& sink) : g_(g), k_(k), sink_(sink), journal_(&g), in_s_(g.order()), seen_(g.order()) {}

    std::uint64_t run() {
        for (VertexId v = 0; v < g_.order(); ++v) {
            if (!g_.alive(v)) continue;
            vertices_.assign(1, v);
            edges_.clear();
            if (probe() == k_) recurse();
            g_.del_vertex(v, &journal_);
        }
        journal_.rollback_all();
        return count_;
    }

private:
    // Truncated DFS from the collapsed S; returns the number of vertices reached (capped at k).
    int probe() {
        seen_.clear();
        for (VertexId u : vertices_) seen_.set(u);
        int reached = static_cast<int>(vertices_.size());
        stack_.clear();
        for (VertexId u : vertices_) {
            stack_.push_back(g_.first_arc(u));
            owners_.assign(1, u);
            while (!stack_.empty() && reached < k_) {
                ArcId& a = stack_.back();
                if (a == kNone) {
                    stack_.pop_back();
                    owners_.pop_back();
                    continue;
                }
                const VertexId y = g_.arc_target(a);
                a = g_.next_arc(a);
                ops::add();
                if (seen_.test(y)) continue;
                seen_.set(y);
                ++reached;
                stack_.push_back(g_.first_arc(y));
                owners_.push_back(y);
            }
            stack_.clear();
            if (reached >= k_) break;
        }
        return reached;
    }

    ArcId choose() {
        in_s_.clear();
        for (VertexId u : vertices_) in_s_.set(u);
        for (VertexId u : vertices_)
            for (ArcId a = g_.first_arc(u); a != kNone; a = g_.next_arc(a)) {
                ops::add();
                if (!in_s_.test(g_.arc_target(a))) return a;
            }
        return kNone;
    }

    void recurse() {
        if (static_cast<int>(vertices_.size()) == k_) {
            ++count_;
            ops::add(edges_.size());
            sink_(edges_);
            return;
        }
        const ArcId a = choose();
        const EdgeId e = Graph::arc_edge(a);
        vertices_.push_back(g_.arc_target(a));
        edges_.push_back(e);
        recurse();
        vertices_.pop_back();
        edges_.pop_back();
        const auto mark = journal_.mark();
        g_.del_edge(e, &journal_);
        if (probe() == k_) recurse();
        journal_.rollback(mark);
    }

    Graph& g_;
    int k_;
    const EdgeSink& sink_;
    Journal journal_;
    EpochMarks in_s_, seen_;
    std::vector<VertexId> vertices_;
    std::vector<EdgeId> edges_;
    std::vector<ArcId> stack_;
    std::vector<VertexId> owners_;
    std::uint64_t count_ = 0;
};

}  // namespace

std::uint64_t baseline_subtrees(Graph& g, int k, const EdgeSink& sink) {
    if (k < 2 || k > g.order()) throw Error(ErrorCode::KOutOfRange, "k=" + std::to_string(k));
    return Baseline(g, k, sink).run();
}

}  // namespace patlist::oracle
