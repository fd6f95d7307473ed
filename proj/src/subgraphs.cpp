#include "patlist/subgraphs.hpp"

#include <algorithm>
#include <sstream>

namespace patlist {

SubgraphCertificate::SubgraphCertificate(Graph& g, Journal& j, int k)
    : g_(g), j_(j), k_(k),
      in_s_(g.order(), 0), in_c_(g.order(), 0), par_(g.order(), kNone), fchild_(g.order(), kNone),
      lchild_(g.order(), kNone), nsib_(g.order(), kNone), psib_(g.order(), kNone), pnext_(g.order(), kNone),
      pprev_(g.order(), kNone), sv_(k, kNone),
      es_(std::min<std::int64_t>(g.size(), static_cast<std::int64_t>(k) * (k - 1) / 2), kNone),
      cursor_(g.order(), kNone) {}

void SubgraphCertificate::reset(VertexId v) {
    if (s_size_ != 0) throw Error(ErrorCode::JournalMismatch, "reset needs an empty certificate");
    put(sv_[0], v);
    put(s_size_, 1);
    put(in_s_[v], 1);
    put(in_c_[v], 1);
    put(c_size_, 1);
    grow();
}

void SubgraphCertificate::append_roots(VertexId first, VertexId last) {
    if (last_root_ == kNone) {
        put(first_root_, first);
    } else {
        put(nsib_[last_root_], first);
        put(psib_[first], last_root_);
    }
    put(last_root_, last);
}

void SubgraphCertificate::unlink_root(VertexId r) {
    const VertexId before = psib_[r], after = nsib_[r];
    if (before == kNone) {
        put(first_root_, after);
    } else {
        put(nsib_[before], after);
    }
    if (after == kNone) {
        put(last_root_, before);
    } else {
        put(psib_[after], before);
    }
}

void SubgraphCertificate::attach(VertexId x, VertexId parent) {
    put(in_c_[x], 1);
    put(par_[x], parent);
    put(fchild_[x], kNone);
    put(lchild_[x], kNone);
    put(nsib_[x], kNone);
    put(psib_[x], kNone);
    if (in_s_[parent]) {
        append_roots(x, x);
    } else {
        if (lchild_[parent] == kNone) {
            put(fchild_[parent], x);
        } else {
            put(nsib_[lchild_[parent]], x);
            put(psib_[x], lchild_[parent]);
        }
        put(lchild_[parent], x);
    }
    put(pnext_[x], kNone);
    put(pprev_[x], pre_tail_);
    if (pre_tail_ == kNone) {
        put(pre_head_, x);
    } else {
        put(pnext_[pre_tail_], x);
    }
    put(pre_tail_, x);
    put(c_size_, c_size_ + 1);
}

// DFS from the sources in S order, reusing every vertex already in C.
void SubgraphCertificate::grow() {
    for (int j = 0; j < s_size_ && c_size_ < k_; ++j) {
        const VertexId x = sv_[j];
        for (ArcId a = g_.first_arc(x); a != kNone && c_size_ < k_; a = g_.next_arc(a)) {
            ops::add();
            const VertexId y = g_.arc_target(a);
            if (in_c_[y]) {
                g_.park_arc(a, y, &j_);
                continue;
            }
            attach(y, x);
            stack_.assign(1, y);
            cursor_[y] = g_.first_arc(y);
            while (!stack_.empty() && c_size_ < k_) {
                const VertexId z = stack_.back();
                const ArcId b = cursor_[z];
                if (b == kNone) {
                    stack_.pop_back();
                    continue;
                }
                cursor_[z] = g_.next_arc(b);
                ops::add();
                const VertexId w = g_.arc_target(b);
                if (in_c_[w]) continue;
                attach(w, z);
                stack_.push_back(w);
                cursor_[w] = g_.first_arc(w);
            }
        }
    }
    if (c_size_ == k_) {
        probe_closed();
    } else {
        put(closed_, 1);
    }
}

// C is closed when no live arc leaves it; stops at the first one that does.
void SubgraphCertificate::probe_closed() {
    auto leaves = [&](VertexId x) {
        for (ArcId a = g_.first_arc(x); a != kNone; a = g_.next_arc(a)) {
            ops::add();
            if (!in_c_[g_.arc_target(a)]) return true;
        }
        return false;
    };
    for (int j = 0; j < s_size_; ++j)
        if (leaves(sv_[j])) return put(closed_, 0);
    for (VertexId x = pre_head_; x != kNone; x = pnext_[x])
        if (leaves(x)) return put(closed_, 0);
    put(closed_, 1);
}

VertexId SubgraphCertificate::choose(PickKind& kind) {
    for (int j = 0; j < s_size_; ++j) {
        const VertexId x = sv_[j];
        for (ArcId a = g_.first_arc(x); a != kNone; a = g_.next_arc(a)) {
            ops::add();
            const VertexId y = g_.arc_target(a);
            if (in_c_[y]) {
                g_.park_arc(a, y, &j_);
                continue;
            }
            kind = PickKind::External;
            return y;
        }
    }
    kind = PickKind::Internal;
    return last_root_;
}

void SubgraphCertificate::remove_last_leaf() {
    const VertexId l = pre_tail_;
    const VertexId p = par_[l];
    if (in_s_[p]) {
        unlink_root(l);
    } else {
        const VertexId q = psib_[l];
        put(lchild_[p], q);
        if (q == kNone) {
            put(fchild_[p], kNone);
        } else {
            put(nsib_[q], kNone);
        }
    }
    const VertexId before = pprev_[l];
    put(pre_tail_, before);
    if (before == kNone) {
        put(pre_head_, kNone);
    } else {
        put(pnext_[before], kNone);
    }
    put(in_c_[l], 0);
    put(c_size_, c_size_ - 1);
    g_.unpark_all(l, &j_);
}

void SubgraphCertificate::promote(VertexId r) {
    unlink_root(r);
    if (fchild_[r] != kNone) append_roots(fchild_[r], lchild_[r]);
    const VertexId before = pprev_[r], after = pnext_[r];
    if (before == kNone) {
        put(pre_head_, after);
    } else {
        put(pnext_[before], after);
    }
    if (after == kNone) {
        put(pre_tail_, before);
    } else {
        put(pprev_[after], before);
    }
}

void SubgraphCertificate::add_to_s(VertexId v) {
    put(sv_[s_size_], v);
    put(s_size_, s_size_ + 1);
    put(in_s_[v], 1);
}

void SubgraphCertificate::extend(VertexId v, PickKind kind) {
    if (kind == PickKind::Internal) {
        promote(v);
        add_to_s(v);
        // choose parked every arc from S into v.
        for (ArcId a = g_.first_parked(v); a != kNone; a = g_.next_parked(a)) {
            ops::add();
            put(es_[es_size_], Graph::arc_edge(a));
            put(es_size_, es_size_ + 1);
        }
        return;
    }
    remove_last_leaf();
    add_to_s(v);
    put(in_c_[v], 1);
    put(c_size_, c_size_ + 1);
    for (ArcId a = g_.first_arc(v); a != kNone; a = g_.next_arc(a)) {
        ops::add();
        const VertexId y = g_.arc_target(a);
        if (!in_s_[y]) continue;
        put(es_[es_size_], Graph::arc_edge(a));
        put(es_size_, es_size_ + 1);
        g_.park_arc(a, y, &j_);
    }
}

void SubgraphCertificate::drop_last_tree() {
    const VertexId r = last_root_;
    for (VertexId w = r; w != kNone; w = pnext_[w]) {
        put(in_c_[w], 0);
        put(c_size_, c_size_ - 1);
        g_.unpark_all(w, &j_);
    }
    const VertexId before = pprev_[r];
    put(pre_tail_, before);
    if (before == kNone) {
        put(pre_head_, kNone);
    } else {
        put(pnext_[before], kNone);
    }
    unlink_root(r);
}

bool SubgraphCertificate::exclude(VertexId v, PickKind kind) {
    if (kind == PickKind::External) {
        g_.del_vertex(v, &j_);
        return true;
    }
    // A closed C of size k loses a vertex and nothing can replace it.
    if (closed_) return false;
    drop_last_tree();
    g_.del_vertex(v, &j_);
    grow();
    return c_size_ == k_;
}

void SubgraphCertificate::c_vertices(std::vector<VertexId>& out) const {
    out.assign(sv_.begin(), sv_.begin() + s_size_);
    for (VertexId x = pre_head_; x != kNone; x = pnext_[x]) out.push_back(x);
}

std::string SubgraphCertificate::serialize() const {
    std::ostringstream out;
    out << "S";
    for (int i = 0; i < s_size_; ++i) out << ' ' << sv_[i];
    out << "\nE";
    for (int i = 0; i < es_size_; ++i) out << ' ' << es_[i];
    out << "\nF";
    for (VertexId x = pre_head_; x != kNone; x = pnext_[x])
        out << ' ' << x << '<' << par_[x] << '[' << fchild_[x] << ',' << lchild_[x] << "]s[" << psib_[x] << ','
            << nsib_[x] << ']';
    out << "\nroots " << first_root_ << ' ' << last_root_ << " tail " << pre_tail_ << " size " << c_size_ << " closed "
        << closed_ << '\n';
    for (VertexId v = 0; v < g_.order(); ++v)
        if (in_c_[v]) out << v << (in_s_[v] ? 'S' : 'C');
    out << '\n';
    return out.str();
}

bool SubgraphCertificate::valid() const {
    const VertexId n = g_.order();
    std::vector<char> member(n, 0), s_member(n, 0);
    for (int i = 0; i < s_size_; ++i) {
        if (s_member[sv_[i]] || !in_s_[sv_[i]] || !in_c_[sv_[i]]) return false;
        s_member[sv_[i]] = member[sv_[i]] = 1;
    }
    std::vector<std::vector<VertexId>> kids(n);
    std::vector<VertexId> roots;
    int size = s_size_;
    VertexId prev = kNone;
    for (VertexId x = pre_head_; x != kNone; prev = x, x = pnext_[x]) {
        if (pprev_[x] != prev || member[x] || in_s_[x] || !in_c_[x]) return false;
        const VertexId p = par_[x];
        if (p < 0 || !member[p]) return false;  // parents precede children in preorder
        bool linked = false;
        for (ArcId a = g_.first_arc(x); a != kNone && !linked; a = g_.next_arc(a)) linked = g_.arc_target(a) == p;
        if (!linked) return false;
        member[x] = 1;
        ++size;
        (s_member[p] ? roots : kids[p]).push_back(x);
    }
    if (prev != pre_tail_ || size != c_size_) return false;
    for (VertexId v = 0; v < n; ++v)
        if ((in_c_[v] != 0) != (member[v] != 0) || (in_s_[v] != 0) != (s_member[v] != 0)) return false;
    auto same_list = [&](VertexId head, VertexId tail, const std::vector<VertexId>& want) {
        VertexId x = head, last = kNone;
        for (VertexId w : want) {
            if (x != w || psib_[x] != last) return false;
            last = x;
            x = nsib_[x];
        }
        return x == kNone && tail == last;
    };
    if (!same_list(first_root_, last_root_, roots)) return false;
    for (VertexId x = pre_head_; x != kNone; x = pnext_[x])
        if (!same_list(fchild_[x], lchild_[x], kids[x])) return false;

    // Parked arcs run from S into C and sit at their target.
    for (VertexId y = 0; y < n; ++y)
        for (ArcId a = g_.first_parked(y); a != kNone; a = g_.next_parked(a))
            if (g_.arc_target(a) != y || !member[y] || !s_member[g_.arc_owner(a)]) return false;

    // E[S] is exactly the undeleted edges inside S.
    std::vector<EdgeId> want, got(es_.begin(), es_.begin() + es_size_);
    for (EdgeId e = 0; e < g_.size(); ++e)
        if (!g_.edge_deleted(e) && s_member[g_.tail(e)] && s_member[g_.head(e)]) want.push_back(e);
    std::sort(got.begin(), got.end());
    if (want != got) return false;

    bool escapes = false;
    for (VertexId x = 0; x < n && !escapes; ++x)
        if (member[x])
            for (ArcId a = g_.first_arc(x); a != kNone; a = g_.next_arc(a))
                if (!member[g_.arc_target(a)]) escapes = true;
    if (closed_ && escapes) return false;
    return c_size_ == k_ || !escapes;
}

namespace {

class SubgraphRun {
public:
    SubgraphRun(Graph& g, int k, const SubgraphSink& sink, const SubgraphOptions& options)
        : g_(g), k_(k), sink_(sink), opt_(options), journal_(&g), cert_(g, journal_, k) {}

    SubgraphReport run() {
        std::vector<VertexId> doomed;
        for (VertexId v = 0; v < g_.order(); ++v) {
            if (!g_.alive(v)) continue;
            const auto mark = journal_.mark();
            cert_.reset(v);
            if (cert_.c_size() < k_) {
                cert_.c_vertices(doomed);
                journal_.rollback(mark);
                for (VertexId x : doomed) g_.del_vertex(x, &journal_);
                continue;
            }
            const auto leaves = report_.leaves, nodes = report_.nodes;
            list_from_source();
            journal_.rollback(mark);
            if (opt_.instrument && report_.nodes - nodes > 2 * static_cast<std::uint64_t>(k_) * (report_.leaves - leaves))
                ++report_.bad_node_count;
            g_.del_vertex(v, &journal_);
        }
        journal_.rollback_all();
        return report_;
    }

private:
    struct Frame {
        VertexId pick = kNone;
        PickKind kind = PickKind::External;
        std::size_t mark = 0;
        std::uint8_t phase = 0;
        std::uint64_t leaves_before = 0;
    };

    void list_from_source() {
        stack_.assign(1, Frame{});
        while (!stack_.empty()) {
            Frame& f = stack_.back();
            if (f.phase == 0) {
                enter(f);
            } else if (f.phase == 1) {
                after_left(f);
            } else {
                journal_.rollback(f.mark);
                stack_.pop_back();
            }
        }
    }

    void enter(Frame& f) {
        ++report_.nodes;
        if (opt_.instrument) {
            ops::Pause pause;
            if (opt_.self_check && !cert_.valid()) ++report_.bad_certificate;
        }
        if (cert_.s_size() == k_) {
            ++report_.leaves;
            ++report_.count;
            const auto edges = cert_.s_edges();
            report_.output_edges += edges.size();
            ops::add(k_ + edges.size());
            sink_(cert_.s_vertices(), edges);
            stack_.pop_back();
            return;
        }
        f.pick = cert_.choose(f.kind);
        (f.kind == PickKind::Internal ? report_.internal_picks : report_.external_picks) += 1;
        f.mark = journal_.mark();
        f.phase = 1;
        f.leaves_before = report_.leaves;
        cert_.extend(f.pick, f.kind);
        stack_.push_back(Frame{});
    }

    void after_left(Frame& f) {
        if (opt_.instrument && report_.leaves == f.leaves_before) ++report_.bad_left_branch;
        journal_.rollback(f.mark);
        if (!cert_.exclude(f.pick, f.kind)) {
            ++report_.pruned_right;
            journal_.rollback(f.mark);
            stack_.pop_back();
            return;
        }
        f.phase = 2;
        stack_.push_back(Frame{});
    }

    Graph& g_;
    int k_;
    const SubgraphSink& sink_;
    SubgraphOptions opt_;
    Journal journal_;
    SubgraphCertificate cert_;
    SubgraphReport report_;
    std::vector<Frame> stack_;
};

}  // namespace

SubgraphReport list_k_subgraphs(Graph& g, int k, const SubgraphSink& sink, const SubgraphOptions& options) {
    if (k < 1 || k > g.order()) throw Error(ErrorCode::KOutOfRange, "k=" + std::to_string(k));
    return SubgraphRun(g, k, sink, options).run();
}

}  // namespace patlist
