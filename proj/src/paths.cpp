#include "patlist/paths.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <sstream>

namespace patlist {

namespace {
constexpr std::int32_t kHigh = INT32_MAX;
}

std::vector<EdgeRef> component_edges(const Graph& g, VertexId v) {
    std::vector<EdgeRef> out;
    std::vector<char> seen(g.order(), 0);
    std::vector<VertexId> queue{v};
    seen[v] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const VertexId x = queue[i];
        for (ArcId a = g.first_arc(x); a != kNone; a = g.next_arc(a)) {
            ops::add();
            const VertexId y = g.arc_target(a);
            if ((a & 1) == 0) out.push_back({x, y, Graph::arc_edge(a)});
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    }
    return out;
}

RootedBlocks rooted_blocks(std::span<const EdgeRef> edges, VertexId root, LocalIndex& index) {
    index.clear();
    index.add(root);
    for (const auto& e : edges) {
        index.add(e.a);
        index.add(e.b);
    }
    const int n = index.size();
    std::vector<int> off(n + 1, 0);
    for (const auto& e : edges) {
        ++off[index.find(e.a) + 1];
        ++off[index.find(e.b) + 1];
    }
    for (int i = 0; i < n; ++i) off[i + 1] += off[i];
    std::vector<std::pair<int, int>> adj(off[n]);  // (neighbour, edge position)
    {
        std::vector<int> fill(off.begin(), off.end() - 1);
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            const int a = index.find(edges[i].a), b = index.find(edges[i].b);
            adj[fill[a]++] = {b, i};
            adj[fill[b]++] = {a, i};
        }
    }
    ops::add(edges.size() + n);

    RootedBlocks out;
    out.parent.assign(n, kNone);
    out.parent_edge.assign(n, kNone);
    out.block.assign(n, -1);
    out.reached.assign(n, 0);
    std::vector<int> disc(n, -1), low(n, 0), via(n, -1), cursor(off.begin(), off.end() - 1);
    std::vector<int> stack{0}, edge_stack;
    int clock = 0;
    disc[0] = low[0] = clock++;
    out.reached[0] = 1;
    while (!stack.empty()) {
        const int x = stack.back();
        if (cursor[x] == off[x + 1]) {
            stack.pop_back();
            if (x == 0) continue;
            const int p = index.find(out.parent[x]);
            low[p] = std::min(low[p], low[x]);
            if (low[x] >= disc[p]) {
                const int id = static_cast<int>(out.top.size());
                out.top.push_back(out.parent[x]);
                auto& list = out.edges.emplace_back();
                int i;
                do {
                    i = edge_stack.back();
                    edge_stack.pop_back();
                    list.push_back(edges[i]);
                    for (int y : {index.find(edges[i].a), index.find(edges[i].b)})
                        if (via[y] == i) out.block[y] = id;
                    ops::add();
                } while (i != via[x]);
            }
            continue;
        }
        const auto [y, i] = adj[cursor[x]++];
        ops::add();
        if (i == via[x]) continue;
        if (disc[y] < 0) {
            edge_stack.push_back(i);
            via[y] = i;
            out.parent[y] = index.vertex(x);
            out.parent_edge[y] = edges[i].id;
            out.reached[y] = 1;
            disc[y] = low[y] = clock++;
            stack.push_back(y);
        } else if (disc[y] < disc[x]) {
            edge_stack.push_back(i);
            low[x] = std::min(low[x], disc[y]);
            if (out.first_back.id == kNone) out.first_back = {index.vertex(x), index.vertex(y), edges[i].id};
        }
    }
    return out;
}

PathCertificate::PathCertificate(const Graph& g, Journal& j)
    : g_(g), j_(j), index_(g.order()) {
    const VertexId n = g.order();
    const EdgeId m = g.size();
    for (auto* v : {&par_, &pedge_, &fch_, &lch_, &nsib_, &psib_, &lbh_, &lbt_, &abh_, &abt_, &tpar_, &tpedge_, &tblk_})
        v->assign(n, kNone);
    for (auto* v : {&gam_, &low_, &post_, &lo_, &left_}) v->assign(n, 0);
    for (auto* v : {&lbn_, &lbp_, &abn_, &abp_}) v->assign(m, kNone);
}

void PathCertificate::append_child(VertexId p, VertexId c) {
    put(psib_[c], lch_[p]);
    put(nsib_[c], kNone);
    if (lch_[p] == kNone) {
        put(fch_[p], c);
    } else {
        put(nsib_[lch_[p]], c);
    }
    put(lch_[p], c);
}

void PathCertificate::unlink_child(VertexId c) {
    const VertexId p = par_[c], before = psib_[c], after = nsib_[c];
    if (before == kNone) {
        put(fch_[p], after);
    } else {
        put(nsib_[before], after);
    }
    if (after == kNone) {
        put(lch_[p], before);
    } else {
        put(psib_[after], before);
    }
}

void PathCertificate::lb_append(VertexId v, EdgeId e) {
    put(lbp_[e], lbt_[v]);
    put(lbn_[e], kNone);
    if (lbt_[v] == kNone) {
        put(lbh_[v], e);
    } else {
        put(lbn_[lbt_[v]], e);
    }
    put(lbt_[v], e);
}

void PathCertificate::lb_unlink(VertexId v, EdgeId e) {
    const EdgeId before = lbp_[e], after = lbn_[e];
    if (before == kNone) {
        put(lbh_[v], after);
    } else {
        put(lbn_[before], after);
    }
    if (after == kNone) {
        put(lbt_[v], before);
    } else {
        put(lbp_[after], before);
    }
}

void PathCertificate::ab_append(VertexId v, EdgeId e) {
    put(abp_[e], abt_[v]);
    put(abn_[e], kNone);
    if (abt_[v] == kNone) {
        put(abh_[v], e);
    } else {
        put(abn_[abt_[v]], e);
    }
    put(abt_[v], e);
}

void PathCertificate::ab_unlink(VertexId v, EdgeId e) {
    const EdgeId before = abp_[e], after = abn_[e];
    if (before == kNone) {
        put(abh_[v], after);
    } else {
        put(abn_[before], after);
    }
    if (after == kNone) {
        put(abt_[v], before);
    } else {
        put(abp_[after], before);
    }
}

void PathCertificate::build(std::span<const EdgeRef> edges, VertexId s, VertexId t) {
    if (s == t) throw Error(ErrorCode::SameVertex, "s equals t");
    target_ = t;
    put(gam_[t], 0);
    put(fch_[t], kNone);
    put(lch_[t], kNone);
    put(lbh_[t], kNone);
    put(lbt_[t], kNone);
    open(edges, t, kNone, kNone);
    const int ls = index_.find(s);
    if (ls < 0 || !spines_.back().top.size() || tblk_[s] == kNone) {
        spines_.pop_back();
        throw Error(ErrorCode::Disconnected, "s and t in different components");
    }
    materialize(spines_.back(), s);
    spines_.pop_back();
}

void PathCertificate::open(std::span<const EdgeRef> edges, VertexId exit, VertexId beyond, EdgeId lb_cut) {
    const RootedBlocks rb = rooted_blocks(edges, exit, index_);
    for (int i = 1; i < index_.size(); ++i) {
        if (!rb.reached[i]) continue;
        const VertexId v = index_.vertex(i);
        put(tpar_[v], rb.parent[i]);
        put(tpedge_[v], rb.parent_edge[i]);
        put(tblk_[v], rb.block[i]);
    }
    Spine& spine = spines_.emplace_back();
    spine.exit = exit;
    spine.beyond = beyond;
    spine.lb_cut = lb_cut;
    spine.top = rb.top;
    spine.edges = rb.edges;
}

void PathCertificate::open_spine(HeadShape* shape) {
    const VertexId u = root_;
    VertexId exit = fch_[u];
    while (exit != target_) {
        ops::add();
        const VertexId next = fch_[exit];
        if (low_[next] >= gam_[exit]) break;
        exit = next;
    }
    const VertexId beyond = exit == target_ ? kNone : fch_[exit];
    EdgeId cut = kNone;
    if (beyond != kNone) {
        cut = lbt_[exit];
        while (cut != kNone && post_[other(cut, exit)] > post_[beyond]) {
            ops::add();
            cut = lbp_[cut];
        }
    }

    // Head vertices, then the head edges not touching u.
    order_.clear();
    stack_.assign(1, u);
    while (!stack_.empty()) {
        const VertexId x = stack_.back();
        stack_.pop_back();
        order_.push_back(x);
        for (VertexId c = fch_[x]; c != kNone; c = nsib_[c]) {
            ops::add();
            if (c != beyond) stack_.push_back(c);
        }
    }
    std::vector<EdgeRef> edges;
    for (VertexId x : order_) {
        if (x == u) continue;
        if (par_[x] != u) edges.push_back({par_[x], x, pedge_[x]});
        for (EdgeId e = abh_[x]; e != kNone; e = abn_[e]) {
            ops::add();
            const VertexId y = other(e, x);
            if (y != u) edges.push_back({x, y, e});
        }
    }

    if (shape) {
        ops::Pause pause;
        int at_u = 1;
        for (EdgeId e = lbh_[u]; e != kNone; e = lbn_[e]) ++at_u;
        degree_.assign(g_.order(), 0);
        for (const auto& e : edges) ++degree_[e.a], ++degree_[e.b];
        degree_[fch_[u]] += 1;
        for (EdgeId e = lbh_[u]; e != kNone; e = lbn_[e]) ++degree_[other(e, u)];
        int contracted = 0;
        for (VertexId x : order_) {
            if (x == u || x == exit) continue;
            bool leaf = true;
            for (VertexId c = fch_[x]; c != kNone && leaf; c = nsib_[c]) leaf = c == beyond;
            if (!leaf && degree_[x] == 2) ++contracted;
        }
        shape->vertices = static_cast<int>(order_.size());
        shape->edges = static_cast<int>(edges.size()) + at_u;
        shape->compact_vertices = shape->vertices - contracted;
        shape->compact_edges = shape->edges - contracted;
    }
    open(edges, exit, beyond, cut);
}

void PathCertificate::close_spine() { spines_.pop_back(); }

EdgeId PathCertificate::choose(VertexId& next) const {
    const VertexId u = root_;
    if (lbt_[u] != kNone) {
        next = other(lbt_[u], u);
        return lbt_[u];
    }
    next = fch_[u];
    return pedge_[next];
}

void PathCertificate::prune(VertexId w) {
    const VertexId p = par_[w];
    unlink_child(w);
    stack_.assign(1, w);
    while (!stack_.empty()) {
        const VertexId x = stack_.back();
        stack_.pop_back();
        ops::add();
        // Nothing below w reaches above p, so an edge to p leads ab(x).
        const EdgeId e = abh_[x];
        if (e != kNone && other(e, x) == p) lb_unlink(p, e);
        for (VertexId c = fch_[x]; c != kNone; c = nsib_[c]) stack_.push_back(c);
    }
}

void PathCertificate::right_update(EdgeId e) {
    const VertexId u = root_;
    if (lbt_[u] != e) throw Error(ErrorCode::NotBackEdge, "edge " + std::to_string(e));
    const VertexId z = other(e, u);
    lb_unlink(u, e);
    ab_unlink(z, e);
    const std::int32_t gu = gam_[u];
    for (VertexId w = z; w != u;) {
        ops::add();
        if (low_[w] != gu) break;
        const EdgeId last = lbt_[u];
        // lb(u) is sorted by postorder and everything left precedes z.
        if (last != kNone && post_[other(last, u)] >= lo_[w]) break;
        std::int32_t l = abh_[w] != kNone ? gam_[other(abh_[w], w)] : kHigh;
        for (VertexId c = fch_[w]; c != kNone; c = nsib_[c]) {
            ops::add();
            l = std::min(l, low_[c]);
        }
        put(low_[w], l);
        const VertexId p = par_[w];
        if (!left_[w] && l >= gam_[p]) prune(w);
        w = p;
    }
}

void PathCertificate::left_update(EdgeId e, VertexId next) {
    if (!binary()) {
        if (pedge_[next] != e || par_[next] != root_) throw Error(ErrorCode::NotUnary, "edge " + std::to_string(e));
        put(root_, next);
        return;
    }
    materialize(spines_.back(), next);
}

void PathCertificate::materialize(const Spine& spine, VertexId z) {
    const VertexId exit = spine.exit;
    auto reset_exit = [&] {
        if (spine.beyond == kNone) {
            put(fch_[exit], kNone);
            put(lch_[exit], kNone);
        } else {
            put(fch_[exit], spine.beyond);
            put(lch_[exit], spine.beyond);
            put(nsib_[spine.beyond], kNone);
        }
        if (spine.lb_cut == kNone) {
            put(lbh_[exit], kNone);
            put(lbt_[exit], kNone);
        } else {
            put(lbt_[exit], spine.lb_cut);
            put(lbn_[spine.lb_cut], kNone);
        }
    };
    if (z == exit) {
        reset_exit();
        put(lo_[exit], spine.beyond == kNone ? post_[exit] : lo_[spine.beyond]);
    } else {
        chain_.clear();
        for (VertexId x = z;;) {
            ops::add();
            chain_.push_back(x);
            const VertexId y = spine.top[tblk_[x]];
            if (y == exit) break;
            x = y;
        }
        reset_exit();
        for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) build_block(spine, tblk_[*it], *it);
        put(clock_, clock_ + 1);
        put(post_[z], clock_);
        put(lo_[z], lo_[fch_[z]]);
    }
    put(par_[z], kNone);
    put(pedge_[z], kNone);
    put(abh_[z], kNone);
    put(abt_[z], kNone);
    put(low_[z], gam_[z]);
    put(left_[z], 1);
    put(root_, z);
}

// DFS of one bead from its entry x, walking the tree path to the bead's top
// first. The top keeps the part of the certificate already built below it
// as its leftmost child.
void PathCertificate::build_block(const Spine& spine, int block, VertexId x) {
    const VertexId y = spine.top[block];
    const auto& edges = spine.edges[block];

    index_.clear();
    for (const auto& e : edges) {
        index_.add(e.a);
        index_.add(e.b);
    }
    const int n = index_.size();
    adj_off_.assign(n + 1, 0);
    for (const auto& e : edges) {
        ++adj_off_[index_.find(e.a) + 1];
        ++adj_off_[index_.find(e.b) + 1];
    }
    for (int i = 0; i < n; ++i) adj_off_[i + 1] += adj_off_[i];
    adj_.resize(adj_off_[n]);
    cursor_.assign(adj_off_.begin(), adj_off_.end() - 1);
    for (const auto& e : edges) {
        ops::add();
        adj_[cursor_[index_.find(e.a)]++] = {e.b, e.id};
        adj_[cursor_[index_.find(e.b)]++] = {e.a, e.id};
    }
    cursor_.assign(adj_off_.begin(), adj_off_.end() - 1);
    on_path_.assign(n, 0);
    preferred_done_.assign(n, 0);
    seen_.assign(n, 0);
    via_.assign(n, kNone);

    // Path x ~> y along the decomposition tree; gamma counts down to y.
    order_.clear();
    for (VertexId q = x; q != y; q = tpar_[q]) order_.push_back(q);
    for (std::size_t i = 0; i < order_.size(); ++i) {
        on_path_[index_.find(order_[i])] = 1;
        put(gam_[order_[i]], gam_[y] - static_cast<std::int32_t>(order_.size() - i));
    }
    on_path_[index_.find(y)] = 1;

    put(fch_[x], kNone);
    put(lch_[x], kNone);
    put(lbh_[x], kNone);
    put(lbt_[x], kNone);
    put(left_[x], 1);

    order_.clear();
    post_order_.clear();
    order_.push_back(x);
    seen_[index_.find(x)] = 1;
    stack_.assign(1, x);
    auto discover = [&](VertexId v, VertexId p, EdgeId e) {
        const int lv = index_.find(v);
        seen_[lv] = 1;
        via_[lv] = e;
        put(par_[v], p);
        put(pedge_[v], e);
        append_child(p, v);
        put(abh_[v], kNone);
        put(abt_[v], kNone);
        put(left_[v], on_path_[lv]);
        if (v != y) {
            put(fch_[v], kNone);
            put(lch_[v], kNone);
            put(lbh_[v], kNone);
            put(lbt_[v], kNone);
            if (!on_path_[lv]) put(gam_[v], gam_[p] + 1);
        }
        order_.push_back(v);
        stack_.push_back(v);
    };
    while (!stack_.empty()) {
        const VertexId w = stack_.back();
        const int lw = index_.find(w);
        if (on_path_[lw] && w != y && !preferred_done_[lw]) {
            preferred_done_[lw] = 1;
            discover(tpar_[w], w, tpedge_[w]);
            continue;
        }
        if (cursor_[lw] == adj_off_[lw + 1]) {
            stack_.pop_back();
            if (w != x) {
                put(clock_, clock_ + 1);
                put(post_[w], clock_);
                put(lo_[w], fch_[w] != kNone ? lo_[fch_[w]] : post_[w]);
                post_order_.push_back(w);
            }
            continue;
        }
        const auto [v, e] = adj_[cursor_[lw]++];
        ops::add();
        if (!seen_[index_.find(v)]) discover(v, w, e);
    }

    auto tree_edge = [&](VertexId w, VertexId v, EdgeId e) {
        return via_[index_.find(w)] == e || via_[index_.find(v)] == e;
    };
    for (VertexId w : order_) {
        const int lw = index_.find(w);
        for (int k = adj_off_[lw]; k < adj_off_[lw + 1]; ++k) {
            ops::add();
            const auto [v, e] = adj_[k];
            if (!tree_edge(w, v, e) && gam_[v] > gam_[w]) ab_append(v, e);
        }
    }
    for (VertexId w : post_order_) {
        const int lw = index_.find(w);
        for (int k = adj_off_[lw]; k < adj_off_[lw + 1]; ++k) {
            ops::add();
            const auto [v, e] = adj_[k];
            if (!tree_edge(w, v, e) && gam_[v] < gam_[w]) lb_append(v, e);
        }
        std::int32_t l = abh_[w] != kNone ? gam_[other(abh_[w], w)] : kHigh;
        for (VertexId c = fch_[w]; c != kNone; c = nsib_[c]) {
            ops::add();
            l = std::min(l, low_[c]);
        }
        put(low_[w], l);
    }
}

std::string PathCertificate::serialize() const {
    std::ostringstream out;
    out << "root " << root_ << " clock " << clock_ << " target " << target_ << " spines " << spines_.size() << '\n';
    for (VertexId v = 0; v < g_.order(); ++v)
        out << v << ": " << par_[v] << ' ' << pedge_[v] << " c" << fch_[v] << ',' << lch_[v] << " s" << psib_[v] << ','
            << nsib_[v] << " g" << gam_[v] << " l" << low_[v] << " p" << lo_[v] << '-' << post_[v] << (left_[v] ? " L" : "")
            << " lb" << lbh_[v] << ',' << lbt_[v] << " ab" << abh_[v] << ',' << abt_[v] << " t" << tpar_[v] << ','
            << tpedge_[v] << ',' << tblk_[v] << '\n';
    for (EdgeId e = 0; e < g_.size(); ++e)
        out << 'e' << e << ' ' << lbp_[e] << ',' << lbn_[e] << ' ' << abp_[e] << ',' << abn_[e] << '\n';
    return out.str();
}

bool PathCertificate::consistent() const {
    const VertexId n = g_.order();
    std::vector<char> in(n, 0), on_left(n, 0);
    std::vector<VertexId> vs;
    std::vector<VertexId> stack{root_};
    while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        if (in[x]) return false;
        in[x] = 1;
        vs.push_back(x);
        VertexId before = kNone;
        for (VertexId c = fch_[x]; c != kNone; before = c, c = nsib_[c]) {
            if (par_[c] != x || psib_[c] != before || gam_[c] <= gam_[x]) return false;
            if (g_.other(pedge_[c], c) != x) return false;
            stack.push_back(c);
        }
        if (lch_[x] != before) return false;
    }
    if (!in[target_]) return false;
    for (VertexId x = root_;; x = fch_[x]) {
        on_left[x] = 1;
        if (x == target_) break;
        if (fch_[x] == kNone) return false;
    }
    if (root_ != target_ && fch_[root_] != lch_[root_]) return false;

    // Postorder intervals nest like the tree. A prune may leave lo below the
    // live minimum; the gap only covers detached vertices.
    for (VertexId x : vs) {
        if ((left_[x] != 0) != (on_left[x] != 0)) return false;
        const std::int32_t first = fch_[x] != kNone ? lo_[fch_[x]] : post_[x];
        if (lo_[x] > first || lo_[x] > post_[x]) return false;
        std::int32_t last = lo_[x] - 1;
        for (VertexId c = fch_[x]; c != kNone; c = nsib_[c]) {
            if (lo_[c] <= last) return false;
            last = post_[c];
        }
        if (last >= post_[x]) return false;
    }
    auto descends = [&](VertexId d, VertexId a) { return lo_[a] <= post_[d] && post_[d] < post_[a]; };

    std::size_t lb_total = 0, ab_total = 0;
    std::vector<char> in_ab(g_.size(), 0);
    for (VertexId x : vs) {
        std::int32_t last_gamma = INT32_MIN;
        EdgeId before = kNone;
        for (EdgeId e = abh_[x]; e != kNone; before = e, e = abn_[e]) {
            const VertexId a = other(e, x);
            if (abp_[e] != before || !in[a] || !descends(x, a) || gam_[a] <= last_gamma || pedge_[x] == e) return false;
            last_gamma = gam_[a];
            in_ab[e] = 1;
            ++ab_total;
        }
        if (abt_[x] != before) return false;
    }
    for (VertexId x : vs) {
        std::int32_t last_post = INT32_MIN;
        EdgeId before = kNone;
        for (EdgeId e = lbh_[x]; e != kNone; before = e, e = lbn_[e]) {
            const VertexId d = other(e, x);
            if (lbp_[e] != before || !in[d] || !descends(d, x) || post_[d] <= last_post || !in_ab[e]) return false;
            last_post = post_[d];
            ++lb_total;
        }
        if (lbt_[x] != before) return false;
    }
    if (lb_total != ab_total) return false;

    for (VertexId x : vs) {
        if (x == root_) continue;
        std::int32_t l = abh_[x] != kNone ? gam_[other(abh_[x], x)] : kHigh;
        for (VertexId c = fch_[x]; c != kNone; c = nsib_[c]) l = std::min(l, low_[c]);
        if (low_[x] != l) return false;
        if (!left_[x] && low_[x] >= gam_[par_[x]]) return false;
    }
    return true;
}

void PathReport::merge(const PathReport& o) {
    count += o.count;
    output_size += o.output_size;
    nodes += o.nodes;
    leaves += o.leaves;
    unary += o.unary;
    binary += o.binary;
    spines += o.spines;
    bad_left_branches += o.bad_left_branches;
    bad_binary_count += o.bad_binary_count;
    bad_density += o.bad_density;
    bad_spine_leaves += o.bad_spine_leaves;
    bad_certificate += o.bad_certificate;
    dense_heads += o.dense_heads;
}

namespace {

class PathRun {
public:
    PathRun(const Graph& g, const PathOptions& options) : opt_(options), journal_(nullptr), cert_(g, journal_) {}

    PathReport run(std::span<const EdgeRef> edges, VertexId s, VertexId t, const WalkSink& sink) {
        report_ = {};
        cert_.build(edges, s, t);
        pi_.assign(1, s);
        stack_.assign(1, Frame{});
        while (!stack_.empty()) {
            Frame& f = stack_.back();
            if (f.phase == 0) {
                enter(f, t, sink);
            } else if (f.phase == 1) {
                after_right(f);
            } else {
                after_left(f);
            }
        }
        journal_.rollback_all();
        if (opt_.instrument && report_.leaves > 0 && report_.binary + 1 != report_.leaves) ++report_.bad_binary_count;
        return report_;
    }

private:
    struct Frame {
        std::size_t mark = 0;
        EdgeId e = kNone;
        VertexId next = kNone;
        std::uint8_t phase = 0;
        bool spine_start = true;
        bool owns_spine = false;
        int lefts = 0;
        std::int64_t need = 0;
        std::uint64_t leaves_before = 0;
    };

    void enter(Frame& f, VertexId t, const WalkSink& sink) {
        ++report_.nodes;
        if (opt_.instrument) {
            ops::Pause pause;
            if (opt_.self_check && !cert_.consistent()) ++report_.bad_certificate;
        }
        if (cert_.root() == t) {
            ++report_.leaves;
            ++report_.count;
            report_.output_size += pi_.size() - 1;
            ops::add(pi_.size());
            if (opt_.instrument && f.lefts + 1 != static_cast<int>(pi_.size())) ++report_.bad_left_branches;
            sink(pi_);
            stack_.pop_back();
            return;
        }
        if (!cert_.binary()) {
            ++report_.unary;
            f.e = cert_.choose(f.next);
            descend_left(f);
            return;
        }
        ++report_.binary;
        if (f.spine_start) {
            HeadShape shape;
            cert_.open_spine(opt_.instrument ? &shape : nullptr);
            f.owns_spine = true;
            ++report_.spines;
            if (opt_.instrument) {
                // A cycle head compacts to a double edge and is exempt.
                if (shape.compact_vertices >= 3 && shape.edges > shape.vertices) {
                    ++report_.dense_heads;
                    if (10 * shape.compact_edges < 11 * shape.compact_vertices) ++report_.bad_density;
                }
                f.need = shape.compact_edges - shape.compact_vertices + 1;
                f.leaves_before = report_.leaves;
            }
        }
        f.e = cert_.choose(f.next);
        f.mark = journal_.mark();
        f.phase = 1;
        cert_.right_update(f.e);
        stack_.push_back(Frame{.spine_start = false, .lefts = f.lefts});
    }

    void descend_left(Frame& f) {
        f.mark = journal_.mark();
        f.phase = 2;
        cert_.left_update(f.e, f.next);
        pi_.push_back(f.next);
        const int lefts = f.lefts + 1;
        stack_.push_back(Frame{.lefts = lefts});
    }

    void after_right(Frame& f) {
        journal_.rollback(f.mark);
        descend_left(f);
    }

    void after_left(Frame& f) {
        journal_.rollback(f.mark);
        pi_.pop_back();
        if (f.owns_spine) {
            cert_.close_spine();
            if (opt_.instrument && static_cast<std::int64_t>(report_.leaves - f.leaves_before) < f.need)
                ++report_.bad_spine_leaves;
        }
        stack_.pop_back();
    }

    PathOptions opt_;
    Journal journal_;
    PathCertificate cert_;
    PathReport report_;
    std::vector<VertexId> pi_;
    std::vector<Frame> stack_;
};

void check_endpoints(const Graph& g, VertexId s, VertexId t) {
    if (s < 0 || t < 0 || s >= g.order() || t >= g.order()) throw Error(ErrorCode::UnknownVertex, "endpoint out of range");
    if (s == t) throw Error(ErrorCode::SameVertex, "s equals t");
}

}  // namespace

PathReport list_st_paths(const Graph& g, std::span<const EdgeRef> edges, VertexId s, VertexId t, const WalkSink& sink,
                         const PathOptions& options) {
    check_endpoints(g, s, t);
    return PathRun(g, options).run(edges, s, t, sink);
}

PathReport list_st_paths(const Graph& g, VertexId s, VertexId t, const WalkSink& sink, const PathOptions& options) {
    check_endpoints(g, s, t);
    const auto edges = component_edges(g, t);
    return PathRun(g, options).run(edges, s, t, sink);
}

CycleReport list_cycles(const Graph& g, const WalkSink& sink, const CycleOptions& options) {
    CycleReport report;
    LocalIndex index(g.order());
    std::deque<std::vector<EdgeRef>> work;
    {
        std::vector<char> done(g.order(), 0);
        for (VertexId v = 0; v < g.order(); ++v) {
            if (done[v] || !g.alive(v) || g.degree(v) == 0) continue;
            const auto edges = component_edges(g, v);
            auto rb = rooted_blocks(edges, v, index);
            for (int i = 0; i < index.size(); ++i) done[index.vertex(i)] = 1;
            for (auto& block : rb.edges)
                if (block.size() >= 3) work.push_back(std::move(block));
        }
    }
    PathRun run(g, {.instrument = options.instrument, .self_check = options.self_check});
    std::vector<EdgeRef> rest;
    while (!work.empty()) {
        const std::vector<EdgeRef> block = std::move(work.front());
        work.pop_front();
        const EdgeRef back = rooted_blocks(block, block.front().a, index).first_back;
        rest.clear();
        for (const auto& e : block)
            if (e.id != back.id) rest.push_back(e);
        const PathReport paths = run.run(rest, back.a, back.b, sink);
        ++report.rounds;
        report.count += paths.count;
        report.output_size += paths.output_size + paths.count;
        report.paths.merge(paths);
        if (options.record_schedule) report.schedule.push_back({block, back, paths.count});
        auto rb = rooted_blocks(rest, back.a, index);
        for (auto& b : rb.edges)
            if (b.size() >= 3) work.push_back(std::move(b));
    }
    return report;
}

}  // namespace patlist
