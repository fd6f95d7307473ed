#include "patlist/subtrees.hpp"

#include <algorithm>
#include <sstream>

namespace patlist {

SubtreeCertificate::SubtreeCertificate(Graph& g, Journal& j, int k)
    : g_(g), j_(j), k_(k),
      in_s_(g.order(), 0), in_d_(g.order(), 0), par_(g.order(), kNone), pedge_(g.order(), kNone),
      fchild_(g.order(), kNone), lchild_(g.order(), kNone), nsib_(g.order(), kNone), psib_(g.order(), kNone),
      ccount_(g.order(), 0), eta_(g.order(), 0),
      sv_(k, kNone), se_(k, kNone), dv_(k, kNone),
      cursor_(g.order(), kNone) {}

void SubtreeCertificate::reset(VertexId v) {
    for (int i = 0; i < d_size_; ++i) {
        put(in_s_[dv_[i]], 0);
        put(in_d_[dv_[i]], 0);
    }
    put(s_size_, 1);
    put(d_size_, 0);
    put(sv_[0], v);
    put(se_[0], kNone);
    put(in_s_[v], 1);
    put(in_d_[v], 1);
    put(par_[v], kNone);
    put(pedge_[v], kNone);
    rebuild();
}

void SubtreeCertificate::park(ArcId a) {
    g_.park_edge(Graph::arc_edge(a));
    ++parks_;
}

void SubtreeCertificate::discover(VertexId x, VertexId parent, EdgeId e) {
    put(in_d_[x], 1);
    put(par_[x], parent);
    put(pedge_[x], e);
    put(fchild_[x], kNone);
    put(lchild_[x], kNone);
    put(nsib_[x], kNone);
    put(psib_[x], kNone);
    put(ccount_[x], 0);
    put(dv_[d_size_], x);
    put(d_size_, d_size_ + 1);
}

void SubtreeCertificate::append_root(VertexId x) {
    if (last_root_ == kNone) {
        put(first_root_, x);
    } else {
        put(nsib_[last_root_], x);
        put(psib_[x], last_root_);
    }
    put(last_root_, x);
}

// Multi-source truncated DFS from S in S order; S is pre-marked.
void SubtreeCertificate::rebuild() {
    for (int i = 0; i < d_size_; ++i)
        if (!in_s_[dv_[i]]) put(in_d_[dv_[i]], 0);
    for (int i = 0; i < s_size_; ++i) {
        put(dv_[i], sv_[i]);
        put(eta_[sv_[i]], 0);
    }
    put(d_size_, s_size_);
    put(first_root_, kNone);
    put(last_root_, kNone);

    for (int j = 0; j < s_size_ && d_size_ < k_; ++j) {
        const VertexId u = sv_[j];
        for (ArcId a = g_.first_arc(u); a != kNone && d_size_ < k_; a = g_.next_arc(a)) {
            ops::add();
            const VertexId x = g_.arc_target(a);
            if (in_s_[x]) {
                park(a);
                continue;
            }
            if (in_d_[x]) continue;
            discover(x, u, Graph::arc_edge(a));
            append_root(x);
            put(eta_[u], eta_[u] + 1);

            stack_.assign(1, x);
            cursor_[x] = g_.first_arc(x);
            while (!stack_.empty() && d_size_ < k_) {
                const VertexId y = stack_.back();
                const ArcId b = cursor_[y];
                if (b == kNone) {
                    stack_.pop_back();
                    continue;
                }
                cursor_[y] = g_.next_arc(b);
                ops::add();
                const VertexId z = g_.arc_target(b);
                if (in_d_[z]) continue;
                discover(z, y, Graph::arc_edge(b));
                if (lchild_[y] == kNone) {
                    put(fchild_[y], z);
                } else {
                    put(nsib_[lchild_[y]], z);
                    put(psib_[z], lchild_[y]);
                }
                put(lchild_[y], z);
                put(ccount_[y], ccount_[y] + 1);
                stack_.push_back(z);
                cursor_[z] = g_.first_arc(z);
            }
        }
    }
    rescan_unary();
}

// Unary iff every live cut edge of S is a tree edge of D. Stops at the first
// other cut edge; internal edges met on the way are parked.
void SubtreeCertificate::rescan_unary() {
    for (int j = 0; j < s_size_; ++j) {
        const VertexId u = sv_[j];
        for (ArcId a = g_.first_arc(u); a != kNone; a = g_.next_arc(a)) {
            ops::add();
            const VertexId x = g_.arc_target(a);
            if (in_s_[x]) {
                park(a);
                continue;
            }
            if (in_d_[x] && pedge_[x] == Graph::arc_edge(a)) continue;
            put(unary_, 0);
            return;
        }
    }
    put(unary_, 1);
}

ArcId SubtreeCertificate::choose(CutKind& kind) {
    if (!unary_) {
        ArcId back = kNone;
        for (int j = 0; j < s_size_; ++j) {
            const VertexId u = sv_[j];
            for (ArcId a = g_.first_arc(u); a != kNone; a = g_.next_arc(a)) {
                ops::add();
                const VertexId x = g_.arc_target(a);
                if (in_s_[x]) {
                    park(a);
                    continue;
                }
                if (!in_d_[x]) {
                    kind = CutKind::External;
                    return a;
                }
                if (back == kNone && pedge_[x] != Graph::arc_edge(a)) back = a;
            }
        }
        if (back != kNone) {
            kind = CutKind::Back;
            return back;
        }
        put(unary_, 1);  // only parked edges were in the way
    }
    kind = CutKind::Tree;
    const VertexId r = last_root_;
    return g_.arc_of(pedge_[r], par_[r]);
}

void SubtreeCertificate::promote(VertexId r) {
    if (!unary_ || r != last_root_) throw Error(ErrorCode::NotUnary, "promote needs the last root of a unary node");
    put(in_s_[r], 1);
    put(sv_[s_size_], r);
    put(se_[s_size_], pedge_[r]);
    put(s_size_, s_size_ + 1);

    const VertexId prev = psib_[r];
    put(last_root_, prev);
    if (prev == kNone) {
        put(first_root_, kNone);
    } else {
        put(nsib_[prev], kNone);
    }
    if (const VertexId c = fchild_[r]; c != kNone) {
        if (last_root_ == kNone) {
            put(first_root_, c);
        } else {
            put(nsib_[last_root_], c);
            put(psib_[c], last_root_);
        }
        put(last_root_, lchild_[r]);
    }
    put(eta_[par_[r]], eta_[par_[r]] - 1);
    put(eta_[r], ccount_[r]);
    if (g_.degree(r) > ccount_[r] + 1) put(unary_, 0);
}

void SubtreeCertificate::extend(ArcId a) {
    const VertexId x = g_.arc_target(a);
    if (unary_) {
        promote(x);
        return;
    }
    put(in_s_[x], 1);
    put(in_d_[x], 1);
    put(par_[x], g_.arc_owner(a));
    put(pedge_[x], Graph::arc_edge(a));
    put(sv_[s_size_], x);
    put(se_[s_size_], Graph::arc_edge(a));
    put(s_size_, s_size_ + 1);
    rebuild();
}

void SubtreeCertificate::exclude(ArcId a) {
    g_.del_edge(Graph::arc_edge(a), &j_);
    rescan_unary();
}

std::size_t SubtreeCertificate::release(VertexId x) {
    const auto held = static_cast<std::size_t>(g_.parked_count(x));
    g_.unpark_all(x);
    return held;
}

void SubtreeCertificate::d_edges(std::vector<EdgeId>& out) const {
    out.clear();
    for (int i = 0; i < d_size_; ++i)
        if (pedge_[dv_[i]] != kNone) out.push_back(pedge_[dv_[i]]);
}

std::string SubtreeCertificate::serialize() const {
    std::ostringstream out;
    out << "S";
    for (int i = 0; i < s_size_; ++i) out << ' ' << sv_[i] << '/' << se_[i] << ":eta" << eta_[sv_[i]];
    out << "\nD";
    for (int i = 0; i < d_size_; ++i) {
        const VertexId x = dv_[i];
        out << ' ' << x << '<' << par_[x] << '/' << pedge_[x];
        if (!in_s_[x]) out << " c" << ccount_[x] << '[' << fchild_[x] << ',' << lchild_[x] << "] s[" << psib_[x] << ',' << nsib_[x] << ']';
    }
    out << "\nroots " << first_root_ << ' ' << last_root_ << " unary " << unary_ << '\n';
    for (VertexId v = 0; v < g_.order(); ++v)
        if (in_s_[v] || in_d_[v]) out << v << (in_s_[v] ? 'S' : 'D');
    out << '\n';
    return out.str();
}

bool SubtreeCertificate::matches_fresh_build() const {
    const VertexId n = g_.order();
    std::vector<char> seen(n, 0);
    std::vector<VertexId> order, roots, parent(n, kNone);
    std::vector<EdgeId> via(n, kNone);
    std::vector<std::vector<VertexId>> kids(n);
    std::vector<int> eta(n, 0);
    int size = s_size_;
    for (int i = 0; i < s_size_; ++i) seen[sv_[i]] = 1;

    std::vector<std::pair<VertexId, ArcId>> stack;
    for (int j = 0; j < s_size_ && size < k_; ++j) {
        const VertexId u = sv_[j];
        for (ArcId a = g_.first_arc(u); a != kNone && size < k_; a = g_.next_arc(a)) {
            const VertexId x = g_.arc_target(a);
            if (seen[x]) continue;
            seen[x] = 1;
            ++size;
            order.push_back(x);
            roots.push_back(x);
            parent[x] = u;
            via[x] = Graph::arc_edge(a);
            ++eta[u];
            stack.assign(1, {x, g_.first_arc(x)});
            while (!stack.empty() && size < k_) {
                auto& [y, b] = stack.back();
                if (b == kNone) {
                    stack.pop_back();
                    continue;
                }
                const ArcId here = b;
                b = g_.next_arc(b);
                const VertexId z = g_.arc_target(here);
                if (seen[z]) continue;
                seen[z] = 1;
                ++size;
                order.push_back(z);
                parent[z] = y;
                via[z] = Graph::arc_edge(here);
                kids[y].push_back(z);
                stack.push_back({z, g_.first_arc(z)});
            }
        }
    }
    bool unary = true;
    for (int j = 0; j < s_size_ && unary; ++j)
        for (ArcId a = g_.first_arc(sv_[j]); a != kNone; a = g_.next_arc(a)) {
            const VertexId x = g_.arc_target(a);
            if (in_s_[x]) continue;
            if (!seen[x] || via[x] != Graph::arc_edge(a)) {
                unary = false;
                break;
            }
        }

    if (size != d_size_ || unary != (unary_ != 0)) return false;
    std::vector<VertexId> kept;
    for (int i = 0; i < d_size_; ++i)
        if (!in_s_[dv_[i]]) kept.push_back(dv_[i]);
    if (kept != order) return false;
    for (VertexId x : order) {
        if (!in_d_[x] || par_[x] != parent[x] || pedge_[x] != via[x] || ccount_[x] != static_cast<int>(kids[x].size()))
            return false;
        VertexId c = fchild_[x];
        for (VertexId want : kids[x]) {
            if (c != want) return false;
            c = nsib_[c];
        }
        if (c != kNone) return false;
    }
    VertexId r = first_root_;
    for (VertexId want : roots) {
        if (r != want) return false;
        r = nsib_[r];
    }
    if (r != kNone || (roots.empty() ? kNone : roots.back()) != last_root_) return false;
    for (int i = 0; i < s_size_; ++i)
        if (eta_[sv_[i]] != eta[sv_[i]]) return false;
    return true;
}

namespace {

// Cyclomatic number of G[V[D]] ignoring edges internal to S.
std::int64_t cyclomatic(const Graph& g, const SubtreeCertificate& cert) {
    std::int64_t edges = 0;
    for (VertexId x : cert.d_vertices())
        for (ArcId a = g.first_arc(x); a != kNone; a = g.next_arc(a)) {
            const VertexId y = g.arc_target(a);
            if (x < y && cert.in_d(y) && !(cert.in_s(x) && cert.in_s(y))) ++edges;
        }
    return edges - cert.d_size() + 1;
}

class SubtreeRun {
public:
    SubtreeRun(Graph& g, int k, const EdgeSink& sink, const SubtreeOptions& options)
        : g_(g), k_(k), sink_(sink), opt_(options), journal_(&g), cert_(g, journal_, k) {}

    SubtreeReport run() {
        last_emit_ = ops::count();
        std::vector<VertexId> doomed;
        for (VertexId v = 0; v < g_.order(); ++v) {
            if (!g_.alive(v)) continue;
            const auto mark = journal_.mark();
            cert_.reset(v);
            if (cert_.d_size() < k_) {
                doomed.assign(cert_.d_vertices().begin(), cert_.d_vertices().end());
                journal_.rollback(mark);
                for (VertexId x : doomed) g_.del_vertex(x, &journal_);
                continue;
            }
            const auto leaves = report_.leaves, binary = report_.binary, nodes = report_.nodes;
            list_from_source();
            journal_.rollback(mark);
            if (opt_.instrument) {
                const auto s = report_.leaves - leaves, b = report_.binary - binary;
                if (b + 1 != s) ++report_.bad_binary_count;
                if (report_.nodes - nodes - s > s * static_cast<std::uint64_t>(k_)) ++report_.bad_internal_count;
            }
            g_.del_vertex(v, &journal_);
        }
        journal_.rollback_all();
        report_.parks = cert_.parks();
        if (opt_.instrument && report_.parks != report_.unparks) ++report_.bad_parking;
        return report_;
    }

private:
    struct Frame {
        ArcId arc = kNone;
        std::size_t mark = 0;
        std::uint8_t phase = 0;
        bool binary = false;
        bool muted = false;
        int binary_above = 0;
        int lefts = 0;
        std::size_t saved = 0;
        std::uint64_t leaves_before = 0;
        std::int64_t nu = 0;
    };

    void emit(std::span<const EdgeId> edges) {
        const auto now = ops::count();
        report_.max_gap = std::max(report_.max_gap, now - last_emit_);
        ++report_.count;
        ops::add(edges.size());
        sink_(edges);
        last_emit_ = ops::count();
    }

    void list_from_source() {
        stack_.clear();
        stack_.push_back(Frame{});
        while (!stack_.empty()) {
            Frame& f = stack_.back();
            switch (f.phase) {
                case 0: enter(f); break;
                case 1: after_left(f); break;
                default: after_right(f); break;
            }
        }
    }

    void enter(Frame& f) {
        if (opt_.instrument) {
            ops::Pause pause;
            ++report_.nodes;
            if (opt_.self_check && !cert_.matches_fresh_build()) ++report_.bad_certificate;
        }
        if (cert_.s_size() == k_) {
            ++report_.leaves;
            if (opt_.instrument && f.lefts != k_ - 1) ++report_.bad_left_branches;
            if (!opt_.delay_mode || !f.muted) emit(cert_.s_edges());
            stack_.pop_back();
            return;
        }
        CutKind kind;
        f.arc = cert_.choose(kind);
        f.binary = kind != CutKind::Tree;
        f.mark = journal_.mark();
        f.phase = 1;
        (f.binary ? report_.binary : report_.unary) += 1;
        cert_.extend(f.arc);

        if (f.binary && opt_.delay_mode) {
            cert_.d_edges(scratch_);
            if (f.binary_above % 2 == 0) {
                emit(scratch_);
            } else {
                f.saved = saved_.size();
                saved_.insert(saved_.end(), scratch_.begin(), scratch_.end());
            }
        }
        if (f.binary && opt_.instrument) {
            ops::Pause pause;
            f.nu = cyclomatic(g_, cert_);
            f.leaves_before = report_.leaves;
        }
        Frame child;
        child.muted = f.muted || f.binary;
        child.binary_above = f.binary_above + (f.binary ? 1 : 0);
        child.lefts = f.lefts + 1;
        stack_.push_back(child);
    }

    void after_left(Frame& f) {
        if (f.binary && opt_.instrument && static_cast<std::int64_t>(report_.leaves - f.leaves_before) < f.nu)
            ++report_.bad_cyclomatic;
        journal_.rollback(f.mark);
        const VertexId added = g_.arc_target(f.arc);
        // The chosen edge itself becomes internal once added, so it may sit in P[added].
        const std::size_t own = g_.arc_parked(f.arc) ? 1 : 0;
        const auto held = cert_.release(added);
        report_.unparks += held;
        if (opt_.instrument && held - own > (f.binary ? static_cast<std::size_t>(k_ - 2) : 0)) ++report_.bad_parking;
        if (!f.binary) {
            stack_.pop_back();
            return;
        }
        cert_.exclude(f.arc);
        f.phase = 2;
        Frame child;
        child.muted = f.muted;
        child.binary_above = f.binary_above + 1;
        child.lefts = f.lefts;
        stack_.push_back(child);
    }

    void after_right(Frame& f) {
        journal_.rollback(f.mark);
        if (opt_.delay_mode && f.binary_above % 2 == 1) {
            const std::size_t from = f.saved;
            emit(std::span<const EdgeId>(saved_.data() + from, saved_.size() - from));
            saved_.resize(from);
        }
        stack_.pop_back();
    }

    Graph& g_;
    int k_;
    const EdgeSink& sink_;
    SubtreeOptions opt_;
    Journal journal_;
    SubtreeCertificate cert_;
    SubtreeReport report_;
    std::vector<Frame> stack_;
    std::vector<EdgeId> scratch_, saved_;
    std::uint64_t last_emit_ = 0;
};

}  // namespace

SubtreeReport list_k_subtrees(Graph& g, int k, const EdgeSink& sink, const SubtreeOptions& options) {
    if (k < 2 || k > g.order()) throw Error(ErrorCode::KOutOfRange, "k=" + std::to_string(k));
    return SubtreeRun(g, k, sink, options).run();
}

}  // namespace patlist
