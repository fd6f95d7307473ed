#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "patlist/error.hpp"
#include "patlist/ops.hpp"

namespace patlist {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
// Each edge e owns two arcs: 2e sits in adj(tail(e)), 2e+1 in adj(head(e)).
using ArcId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

class Journal;

// Mutable simple undirected graph. Adjacency lists are circular doubly
// linked lists over arcs with one sentinel per vertex; a removed arc keeps
// its own links, and reinsertion restores the original adjacency order by
// comparing ranks, so restores need not be strictly LIFO.
class Graph {
public:
    Graph() = default;
    Graph(VertexId n, std::span<const std::pair<VertexId, VertexId>> edges);

    VertexId order() const { return n_; }
    EdgeId size() const { return m_; }
    EdgeId live_edges() const { return live_m_; }

    VertexId tail(EdgeId e) const { return owner_[2 * e]; }
    VertexId head(EdgeId e) const { return owner_[2 * e + 1]; }
    VertexId other(EdgeId e, VertexId x) const { return tail(e) == x ? head(e) : tail(e); }

    bool alive(VertexId v) const { return alive_[v] != 0; }
    int degree(VertexId v) const { return deg_[v]; }
    bool edge_live(EdgeId e) const { return state_[2 * e] == kLive && state_[2 * e + 1] == kLive; }
    bool edge_deleted(EdgeId e) const { return state_[2 * e] == kDeleted; }
    bool arc_live(ArcId a) const { return state_[a] == kLive; }
    bool arc_parked(ArcId a) const { return state_[a] == kParked; }

    static EdgeId arc_edge(ArcId a) { return a >> 1; }
    VertexId arc_owner(ArcId a) const { return owner_[a]; }
    VertexId arc_target(ArcId a) const { return owner_[a ^ 1]; }
    ArcId arc_of(EdgeId e, VertexId owner) const { return owner_[2 * e] == owner ? 2 * e : 2 * e + 1; }
    // Position of the arc in the input adjacency order of its owner.
    std::int32_t arc_rank(ArcId a) const { return rank_[a]; }

    // Live adjacency traversal. Removing the current arc during a scan is
    // safe: a removed arc keeps its successor link.
    ArcId first_arc(VertexId v) const { return as_arc(next_[sentinel(v)]); }
    ArcId next_arc(ArcId a) const { return as_arc(next_[a]); }
    ArcId last_arc(VertexId v) const { return as_arc(prev_[sentinel(v)]); }
    ArcId prev_arc(ArcId a) const { return as_arc(prev_[a]); }

    // Parking list traversal (arcs held by v).
    ArcId first_parked(VertexId v) const { return as_arc(pnext_[sentinel(v)]); }
    ArcId next_parked(ArcId a) const { return as_arc(pnext_[a]); }
    int parked_count(VertexId v) const { return pcount_[v]; }
    VertexId parked_holder(ArcId a) const { return holder_[a]; }

    void del_edge(EdgeId e, Journal* j = nullptr);
    void undel_edge(EdgeId e);
    void del_vertex(VertexId v, Journal* j = nullptr);

    // Two-sided park: both arcs leave adjacency and join P[tail], P[head].
    void park_edge(EdgeId e, Journal* j = nullptr);
    // One-sided park: arc a leaves adj(owner) and joins the list of holder.
    void park_arc(ArcId a, VertexId holder, Journal* j = nullptr);
    // Returns every arc held by v to adjacency; a two-sided parked edge also
    // leaves the partner list.
    void unpark_all(VertexId v, Journal* j = nullptr);

    // Observable state: liveness, degrees, adjacency and parking order.
    std::string serialize() const;
    // Debug check that deg matches the live list lengths.
    bool degrees_consistent() const;

private:
    friend class Journal;

    enum : std::int8_t { kLive = 0, kDeleted = 1, kParked = 2 };

    std::int32_t sentinel(VertexId v) const { return 2 * m_ + v; }
    ArcId as_arc(std::int32_t node) const { return node >= 2 * m_ ? kNone : node; }

    void unlink_adj(ArcId a);
    void relink_adj(ArcId a);
    void append_parked(ArcId a, VertexId holder);
    void unlink_parked(ArcId a);
    void restore_parked(ArcId a);

    void undo_del_edge(EdgeId e);
    void undo_del_vertex(VertexId v);
    void undo_park(ArcId a);
    void undo_unpark(ArcId a, bool partner);

    VertexId n_ = 0;
    EdgeId m_ = 0;
    EdgeId live_m_ = 0;
    std::vector<VertexId> owner_;
    std::vector<std::int32_t> rank_;
    std::vector<std::int8_t> state_;
    std::vector<std::int8_t> paired_;
    std::vector<std::int32_t> next_, prev_;
    std::vector<std::int32_t> pnext_, pprev_;
    std::vector<VertexId> holder_;
    std::vector<std::int32_t> deg_;
    std::vector<std::int32_t> pcount_;
    std::vector<std::int8_t> alive_;
};

// Undo log shared by the graph and by certificate structures. Records are
// replayed in reverse by rollback().
class Journal {
public:
    explicit Journal(Graph* g = nullptr) : graph_(g) {}

    std::size_t mark() const { return log_.size(); }
    std::size_t size() const { return log_.size(); }
    void rollback(std::size_t to);
    void rollback_all() { rollback(0); }

    // Journaled word write.
    void set(std::int32_t& slot, std::int32_t value) {
        log_.push_back({Kind::Write, &slot, slot});
        slot = value;
        ops::add();
    }

    enum class Kind : std::uint8_t { Write, DelEdge, DelVertex, Park, Unpark, UnparkPartner };
    void record(Kind kind, std::int32_t id) { log_.push_back({kind, nullptr, id}); }

private:
    struct Entry {
        Kind kind;
        std::int32_t* slot;
        std::int32_t value;
    };
    Graph* graph_;
    std::vector<Entry> log_;
};

}  // namespace patlist
