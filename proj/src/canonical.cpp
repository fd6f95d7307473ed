#include "patlist/canonical.hpp"

#include <algorithm>

namespace patlist {

namespace {

template <class Less>
std::vector<std::size_t> canonical_ring_order(std::size_t len, Less less) {
    std::size_t first = 0;
    for (std::size_t i = 1; i < len; ++i)
        if (less(i, first)) first = i;
    const std::size_t fwd = (first + 1) % len;
    const std::size_t back = (first + len - 1) % len;
    const bool forward = less(fwd, back);
    std::vector<std::size_t> order(len);
    for (std::size_t i = 0; i < len; ++i) order[i] = forward ? (first + i) % len : (first + len - i) % len;
    return order;
}

}  // namespace

Key subtree_key(const Graph& g, std::span<const EdgeId> edges) {
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    pairs.reserve(edges.size());
    for (EdgeId e : edges) pairs.emplace_back(std::min(g.tail(e), g.head(e)), std::max(g.tail(e), g.head(e)));
    std::sort(pairs.begin(), pairs.end());
    Key key;
    key.reserve(2 * pairs.size());
    for (auto [u, v] : pairs) {
        key.push_back(u);
        key.push_back(v);
    }
    return key;
}

Key subgraph_key(const Graph& g, std::span<const VertexId> vertices, std::span<const EdgeId> edges) {
    Key key(vertices.begin(), vertices.end());
    std::sort(key.begin(), key.end());
    key.push_back(kNone);
    const Key pairs = subtree_key(g, edges);
    key.insert(key.end(), pairs.begin(), pairs.end());
    return key;
}

Key path_key(std::span<const VertexId> walk) { return Key(walk.begin(), walk.end()); }

Key cycle_key(std::span<const VertexId> ring) {
    const auto order = canonical_ring_order(ring.size(), [&](std::size_t a, std::size_t b) { return ring[a] < ring[b]; });
    Key key;
    key.reserve(ring.size());
    for (auto i : order) key.push_back(ring[i]);
    return key;
}

void sort_unique(KeySet& keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

std::vector<std::string> sorted_names(const std::vector<std::string>& names, std::span<const VertexId> vertices) {
    std::vector<std::string> out;
    out.reserve(vertices.size());
    for (VertexId v : vertices) out.push_back(names[v]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::string, std::string>> sorted_name_pairs(const std::vector<std::string>& names,
                                                                   const Graph& g, std::span<const EdgeId> edges) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(edges.size());
    for (EdgeId e : edges) {
        const auto& a = names[g.tail(e)];
        const auto& b = names[g.head(e)];
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> path_names(const std::vector<std::string>& names, std::span<const VertexId> walk) {
    std::vector<std::string> out;
    out.reserve(walk.size());
    for (VertexId v : walk) out.push_back(names[v]);
    return out;
}

std::vector<std::string> cycle_names(const std::vector<std::string>& names, std::span<const VertexId> ring) {
    const auto order =
        canonical_ring_order(ring.size(), [&](std::size_t a, std::size_t b) { return names[ring[a]] < names[ring[b]]; });
    std::vector<std::string> out;
    out.reserve(ring.size());
    for (auto i : order) out.push_back(names[ring[i]]);
    return out;
}

}  // namespace patlist
