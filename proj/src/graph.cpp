#include "patlist/graph.hpp"

#include <algorithm>
#include <sstream>

#include "patlist/ops.hpp"

namespace patlist {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::ParallelEdge: return "ParallelEdge";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::EdgeNotLive: return "EdgeNotLive";
        case ErrorCode::NotDeleted: return "NotDeleted";
        case ErrorCode::VertexNotLive: return "VertexNotLive";
        case ErrorCode::KOutOfRange: return "KOutOfRange";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::SameVertex: return "SameVertex";
        case ErrorCode::NotBackEdge: return "NotBackEdge";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::JournalMismatch: return "JournalMismatch";
        case ErrorCode::NotUnary: return "NotUnary";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

Graph::Graph(VertexId n, std::span<const std::pair<VertexId, VertexId>> edges)
    : n_(n), m_(static_cast<EdgeId>(edges.size())), live_m_(m_) {
    std::vector<std::pair<VertexId, VertexId>> keys;
    keys.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorCode::Parse, "vertex id out of range");
        if (u == v) throw Error(ErrorCode::SelfLoop, "edge on vertex " + std::to_string(u));
        keys.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(keys.begin(), keys.end());
    if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end())
        throw Error(ErrorCode::ParallelEdge,
                    "between " + std::to_string(dup->first) + " and " + std::to_string(dup->second));

    const std::size_t nodes = 2 * static_cast<std::size_t>(m_) + n_;
    owner_.resize(2 * m_);
    rank_.resize(2 * m_);
    state_.assign(2 * m_, kLive);
    paired_.assign(2 * m_, 0);
    holder_.assign(2 * m_, kNone);
    next_.resize(nodes);
    prev_.resize(nodes);
    pnext_.resize(nodes);
    pprev_.resize(nodes);
    deg_.assign(n_, 0);
    pcount_.assign(n_, 0);
    alive_.assign(n_, 1);

    for (VertexId v = 0; v < n_; ++v) {
        const auto s = sentinel(v);
        next_[s] = prev_[s] = s;
        pnext_[s] = pprev_[s] = s;
    }
    for (EdgeId e = 0; e < m_; ++e) {
        owner_[2 * e] = edges[e].first;
        owner_[2 * e + 1] = edges[e].second;
        for (ArcId a : {2 * e, 2 * e + 1}) {
            const VertexId x = owner_[a];
            const auto s = sentinel(x);
            rank_[a] = deg_[x]++;
            const auto last = prev_[s];
            next_[last] = a;
            prev_[a] = last;
            next_[a] = s;
            prev_[s] = a;
        }
    }
}

void Graph::unlink_adj(ArcId a) {
    next_[prev_[a]] = next_[a];
    prev_[next_[a]] = prev_[a];
    ops::add();
}

// Reinsert a by rank. The frozen prev chain of removed arcs has strictly
// decreasing ranks, so it ends at a live arc (or the sentinel) that precedes
// a; a short forward walk then skips arcs reinserted meanwhile.
void Graph::relink_adj(ArcId a) {
    const auto s = sentinel(owner_[a]);
    std::int32_t p = prev_[a];
    while (p != s && state_[p] != kLive) {
        p = prev_[p];
        ops::add();
    }
    std::int32_t q = next_[p];
    while (q != s && rank_[q] < rank_[a]) {
        p = q;
        q = next_[q];
        ops::add();
    }
    next_[p] = a;
    prev_[a] = p;
    next_[a] = q;
    prev_[q] = a;
    ops::add();
}

void Graph::append_parked(ArcId a, VertexId holder) {
    const auto s = sentinel(holder);
    const auto last = pprev_[s];
    pnext_[last] = a;
    pprev_[a] = last;
    pnext_[a] = s;
    pprev_[s] = a;
    holder_[a] = holder;
    ++pcount_[holder];
    ops::add();
}

void Graph::unlink_parked(ArcId a) {
    pnext_[pprev_[a]] = pnext_[a];
    pprev_[pnext_[a]] = pprev_[a];
    --pcount_[holder_[a]];
    ops::add();
}

void Graph::restore_parked(ArcId a) {
    pnext_[pprev_[a]] = a;
    pprev_[pnext_[a]] = a;
    ++pcount_[holder_[a]];
    ops::add();
}

void Graph::del_edge(EdgeId e, Journal* j) {
    if (e < 0 || e >= m_ || !edge_live(e)) throw Error(ErrorCode::EdgeNotLive, "edge " + std::to_string(e));
    for (ArcId a : {2 * e, 2 * e + 1}) {
        unlink_adj(a);
        state_[a] = kDeleted;
        --deg_[owner_[a]];
    }
    --live_m_;
    if (j) j->record(Journal::Kind::DelEdge, e);
}

void Graph::undo_del_edge(EdgeId e) {
    for (ArcId a : {2 * e + 1, 2 * e}) {
        relink_adj(a);
        state_[a] = kLive;
        ++deg_[owner_[a]];
    }
    ++live_m_;
}

void Graph::undel_edge(EdgeId e) {
    if (e < 0 || e >= m_ || state_[2 * e] != kDeleted || state_[2 * e + 1] != kDeleted)
        throw Error(ErrorCode::NotDeleted, "edge " + std::to_string(e));
    undo_del_edge(e);
}

void Graph::del_vertex(VertexId v, Journal* j) {
    if (v < 0 || v >= n_ || !alive(v)) throw Error(ErrorCode::VertexNotLive, "vertex " + std::to_string(v));
    if (pcount_[v] > 0) throw Error(ErrorCode::EdgeNotLive, "vertex has parked edges");
    for (ArcId a = first_arc(v); a != kNone; a = first_arc(v)) {
        if (state_[a ^ 1] != kLive) throw Error(ErrorCode::EdgeNotLive, "incident edge parked");
        del_edge(arc_edge(a), j);
    }
    alive_[v] = 0;
    ops::add();
    if (j) j->record(Journal::Kind::DelVertex, v);
}

void Graph::undo_del_vertex(VertexId v) { alive_[v] = 1; }

void Graph::park_arc(ArcId a, VertexId holder, Journal* j) {
    if (a < 0 || a >= 2 * m_ || state_[a] != kLive) throw Error(ErrorCode::EdgeNotLive, "arc " + std::to_string(a));
    unlink_adj(a);
    state_[a] = kParked;
    paired_[a] = 0;
    --deg_[owner_[a]];
    append_parked(a, holder);
    if (j) j->record(Journal::Kind::Park, a);
}

void Graph::park_edge(EdgeId e, Journal* j) {
    if (e < 0 || e >= m_ || !edge_live(e)) throw Error(ErrorCode::EdgeNotLive, "edge " + std::to_string(e));
    for (ArcId a : {2 * e, 2 * e + 1}) {
        park_arc(a, owner_[a], j);
        paired_[a] = 1;
    }
}

void Graph::undo_park(ArcId a) {
    unlink_parked(a);
    relink_adj(a);
    state_[a] = kLive;
    ++deg_[owner_[a]];
}

void Graph::unpark_all(VertexId v, Journal* j) {
    const auto s = sentinel(v);
    // Tail first, so that a journal replay re-parks in the original order.
    while (pprev_[s] != s) {
        const ArcId a = pprev_[s];
        undo_park(a);
        if (j) j->record(Journal::Kind::Unpark, a);
        if (paired_[a] && state_[a ^ 1] == kParked) {
            undo_park(a ^ 1);
            if (j) j->record(Journal::Kind::UnparkPartner, a ^ 1);
        }
    }
}

// An arc taken from the tail of its list goes back to the tail: the list is
// exactly as unpark_all left it, and its saved links may be stale if the arc
// was parked again in between. A partner arc left from the middle of its list
// and relies on its saved links.
void Graph::undo_unpark(ArcId a, bool partner) {
    unlink_adj(a);
    --deg_[owner_[a]];
    state_[a] = kParked;
    if (partner) {
        restore_parked(a);
    } else {
        append_parked(a, holder_[a]);
    }
}

std::string Graph::serialize() const {
    std::ostringstream out;
    out << n_ << ' ' << m_ << ' ' << live_m_ << '\n';
    for (VertexId v = 0; v < n_; ++v) {
        out << v << (alive(v) ? " +" : " -") << " d" << deg_[v] << " :";
        for (ArcId a = first_arc(v); a != kNone; a = next_arc(a)) out << ' ' << a;
        out << " | P" << pcount_[v] << ':';
        for (ArcId a = first_parked(v); a != kNone; a = next_parked(a)) out << ' ' << a << (paired_[a] ? "p" : "");
        out << '\n';
    }
    return out.str();
}

bool Graph::degrees_consistent() const {
    for (VertexId v = 0; v < n_; ++v) {
        int count = 0;
        std::int32_t last_rank = -1;
        for (ArcId a = first_arc(v); a != kNone; a = next_arc(a)) {
            if (state_[a] != kLive || rank_[a] <= last_rank) return false;
            last_rank = rank_[a];
            ++count;
        }
        if (count != deg_[v]) return false;
        int parked = 0;
        for (ArcId a = first_parked(v); a != kNone; a = next_parked(a)) ++parked;
        if (parked != pcount_[v]) return false;
    }
    return true;
}

void Journal::rollback(std::size_t to) {
    if (to > log_.size()) throw Error(ErrorCode::JournalMismatch, "rollback past journal end");
    while (log_.size() > to) {
        const Entry entry = log_.back();
        log_.pop_back();
        ops::add();
        switch (entry.kind) {
            case Kind::Write: *entry.slot = entry.value; break;
            case Kind::DelEdge: graph_->undo_del_edge(entry.value); break;
            case Kind::DelVertex: graph_->undo_del_vertex(entry.value); break;
            case Kind::Park: graph_->undo_park(entry.value); break;
            case Kind::Unpark: graph_->undo_unpark(entry.value, false); break;
            case Kind::UnparkPartner: graph_->undo_unpark(entry.value, true); break;
        }
    }
}

}  // namespace patlist
