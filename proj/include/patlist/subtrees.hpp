#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patlist/graph.hpp"
#include "patlist/marks.hpp"
#include "patlist/sinks.hpp"

namespace patlist {

enum class CutKind : std::uint8_t { External, Back, Tree };

// Certificate for a partial subtree S: the truncated multi-source DFS
// k-subtree D grown from S, split into S, the cut tree edges L and the
// forest F hanging below them. Every field write goes through the journal.
class SubtreeCertificate {
public:
    SubtreeCertificate(Graph& g, Journal& j, int k);

    // S := <v>, then rebuild D.
    void reset(VertexId v);
    // Picks the next cut edge; the returned arc points from S outwards.
    ArcId choose(CutKind& kind);
    // S += chosen edge; O(1) promotion when the node is unary.
    void extend(ArcId a);
    // Removes a non-certificate cut edge from the graph.
    void exclude(ArcId a);
    // Returns edges parked at x (internal to S while x was in S).
    std::size_t release(VertexId x);

    int k() const { return k_; }
    int s_size() const { return s_size_; }
    int d_size() const { return d_size_; }
    bool unary() const { return unary_ != 0; }
    bool in_s(VertexId v) const { return in_s_[v] != 0; }
    bool in_d(VertexId v) const { return in_d_[v] != 0; }
    VertexId source() const { return sv_[0]; }
    std::span<const VertexId> s_vertices() const { return {sv_.data(), static_cast<std::size_t>(s_size_)}; }
    std::span<const VertexId> d_vertices() const { return {dv_.data(), static_cast<std::size_t>(d_size_)}; }
    std::span<const EdgeId> s_edges() const { return {se_.data() + 1, static_cast<std::size_t>(s_size_ - 1)}; }
    void d_edges(std::vector<EdgeId>& out) const;
    std::uint64_t parks() const { return parks_; }

    std::string serialize() const;
    // Recomputes D from S from scratch (ignoring parked arcs) and compares
    // it, order included, with the maintained certificate.
    bool matches_fresh_build() const;

private:
    void put(std::int32_t& slot, std::int32_t value) {
        if (slot != value) j_.set(slot, value);
    }
    void rebuild();
    void discover(VertexId x, VertexId parent, EdgeId e);
    void append_root(VertexId x);
    void promote(VertexId r);
    void rescan_unary();
    void park(ArcId a);

    Graph& g_;
    Journal& j_;
    int k_;
    std::vector<std::int32_t> in_s_, in_d_, par_, pedge_, fchild_, lchild_, nsib_, psib_, ccount_, eta_;
    std::vector<std::int32_t> sv_, se_, dv_;
    std::int32_t s_size_ = 0, d_size_ = 0, first_root_ = kNone, last_root_ = kNone, unary_ = 0;
    std::vector<ArcId> cursor_;
    std::vector<VertexId> stack_;
    std::uint64_t parks_ = 0;
};

struct SubtreeOptions {
    // Emit each binary node's left certificate before (even) or after (odd)
    // its two calls instead of emitting at leaves.
    bool delay_mode = false;
    // Count recursion nodes and check the structural invariants.
    bool instrument = false;
    // With instrument: also compare the certificate with a fresh build at every node.
    bool self_check = true;
};

struct SubtreeReport {
    std::uint64_t count = 0;
    std::uint64_t nodes = 0, leaves = 0, unary = 0, binary = 0;
    std::uint64_t parks = 0, unparks = 0;
    // Largest operation-counter gap between consecutive emissions, measured
    // from the start of the run.
    std::uint64_t max_gap = 0;
    std::uint64_t bad_left_branches = 0;
    std::uint64_t bad_binary_count = 0;
    std::uint64_t bad_internal_count = 0;
    std::uint64_t bad_cyclomatic = 0;
    std::uint64_t bad_certificate = 0;
    std::uint64_t bad_parking = 0;

    std::uint64_t violations() const {
        return bad_left_branches + bad_binary_count + bad_internal_count + bad_cyclomatic + bad_certificate +
               bad_parking;
    }
};

// Lists every k-subtree once as its k-1 edges; the graph is restored on return.
SubtreeReport list_k_subtrees(Graph& g, int k, const EdgeSink& sink, const SubtreeOptions& options = {});

}  // namespace patlist
