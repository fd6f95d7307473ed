#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patlist/graph.hpp"
#include "patlist/sinks.hpp"

namespace patlist {

enum class PickKind : std::uint8_t { External, Internal };

// Certificate for a connected vertex set S: a truncated multi-source DFS
// forest F over C \ S with |C| <= k, plus membership flags for C. Arcs from
// S into C are parked at their target while the target stays in C. Every
// change, parking included, is journaled.
class SubgraphCertificate {
public:
    SubgraphCertificate(Graph& g, Journal& j, int k);

    // S := {v}; C grown by DFS from v.
    void reset(VertexId v);
    VertexId choose(PickKind& kind);
    void extend(VertexId v, PickKind kind);
    // Deletes v from the graph and repairs C. Returns false when no
    // k-vertex extension of S survives.
    bool exclude(VertexId v, PickKind kind);

    int k() const { return k_; }
    int s_size() const { return s_size_; }
    int c_size() const { return c_size_; }
    // C is known to be the whole connected component of S.
    bool closed() const { return closed_ != 0; }
    bool in_c(VertexId v) const { return in_c_[v] != 0; }
    std::span<const VertexId> s_vertices() const { return {sv_.data(), static_cast<std::size_t>(s_size_)}; }
    std::span<const EdgeId> s_edges() const { return {es_.data(), static_cast<std::size_t>(es_size_)}; }
    void c_vertices(std::vector<VertexId>& out) const;

    std::string serialize() const;
    // Checks that C is a connected k-extension of S (or the whole component
    // of S when smaller), that F is a forest hanging from S, that the
    // preorder list and the parked arcs agree with it, and that E[S] is exact.
    bool valid() const;

private:
    void put(std::int32_t& slot, std::int32_t value) {
        if (slot != value) j_.set(slot, value);
    }
    void add_to_s(VertexId v);
    void attach(VertexId x, VertexId parent);
    void unlink_root(VertexId r);
    void append_roots(VertexId first, VertexId last);
    void grow();
    void probe_closed();
    void remove_last_leaf();
    void promote(VertexId r);
    void drop_last_tree();

    Graph& g_;
    Journal& j_;
    int k_;
    std::vector<std::int32_t> in_s_, in_c_, par_, fchild_, lchild_, nsib_, psib_, pnext_, pprev_;
    std::vector<std::int32_t> sv_, es_;
    std::int32_t s_size_ = 0, c_size_ = 0, es_size_ = 0;
    std::int32_t first_root_ = kNone, last_root_ = kNone, pre_head_ = kNone, pre_tail_ = kNone, closed_ = 0;
    std::vector<ArcId> cursor_;
    std::vector<VertexId> stack_;
};

struct SubgraphOptions {
    bool instrument = false;
    // With instrument: also validate the certificate at every node.
    bool self_check = true;
};

struct SubgraphReport {
    std::uint64_t count = 0;
    std::uint64_t output_edges = 0;
    std::uint64_t nodes = 0, leaves = 0, internal_picks = 0, external_picks = 0, pruned_right = 0;
    std::uint64_t bad_left_branch = 0;
    std::uint64_t bad_certificate = 0;
    std::uint64_t bad_node_count = 0;

    std::uint64_t violations() const { return bad_left_branch + bad_certificate + bad_node_count; }
};

// Lists every connected induced k-vertex subgraph once; the graph is
// restored on return.
SubgraphReport list_k_subgraphs(Graph& g, int k, const SubgraphSink& sink, const SubgraphOptions& options = {});

}  // namespace patlist
