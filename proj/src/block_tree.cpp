#include "patlist/block_tree.hpp"

#include <algorithm>
#include <deque>

#include "patlist/ops.hpp"

namespace patlist {

BlockTree biconnected_components(const Graph& g, std::span<const char> mask) {
    const VertexId n = g.order();
    auto inside = [&](VertexId v) { return g.alive(v) && (mask.empty() || mask[v]); };

    BlockTree bt;
    bt.blocks_of.resize(n);
    bt.block_of_edge.assign(g.size(), kNone);

    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<ArcId> via(n, kNone);  // arc from the DFS parent
    std::vector<ArcId> cursor(n, kNone);
    std::vector<VertexId> stack;
    std::vector<EdgeId> edge_stack;
    int clock = 0;

    auto close_component = [&](EdgeId until) {
        const int id = bt.size();
        auto& es = bt.edges.emplace_back();
        auto& vs = bt.vertices.emplace_back();
        EdgeId e;
        do {
            e = edge_stack.back();
            edge_stack.pop_back();
            es.push_back(e);
            bt.block_of_edge[e] = id;
            for (VertexId x : {g.tail(e), g.head(e)})
                if (bt.blocks_of[x].empty() || bt.blocks_of[x].back() != id) {
                    bt.blocks_of[x].push_back(id);
                    vs.push_back(x);
                }
            ops::add();
        } while (e != until);
        std::reverse(es.begin(), es.end());
        std::sort(vs.begin(), vs.end(), [&](VertexId a, VertexId b) { return disc[a] < disc[b]; });
    };

    for (VertexId root = 0; root < n; ++root) {
        if (!inside(root) || disc[root] >= 0) continue;
        disc[root] = low[root] = clock++;
        cursor[root] = g.first_arc(root);
        stack.assign(1, root);
        while (!stack.empty()) {
            const VertexId x = stack.back();
            ArcId& a = cursor[x];
            if (a == kNone) {
                stack.pop_back();
                if (via[x] != kNone) {
                    const VertexId p = g.arc_owner(via[x]);
                    low[p] = std::min(low[p], low[x]);
                    if (low[x] >= disc[p]) close_component(Graph::arc_edge(via[x]));
                }
                continue;
            }
            const ArcId here = a;
            a = g.next_arc(a);
            ops::add();
            const VertexId y = g.arc_target(here);
            if (!inside(y) || (here ^ 1) == via[x]) continue;
            if (disc[y] < 0) {
                edge_stack.push_back(Graph::arc_edge(here));
                via[y] = here;
                disc[y] = low[y] = clock++;
                cursor[y] = g.first_arc(y);
                stack.push_back(y);
            } else if (disc[y] < disc[x]) {
                edge_stack.push_back(Graph::arc_edge(here));
                low[x] = std::min(low[x], disc[y]);
            }
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        std::sort(bt.blocks_of[v].begin(), bt.blocks_of[v].end());
        if (bt.blocks_of[v].size() >= 2) bt.cut_vertices.push_back(v);
    }
    return bt;
}

BeadString bead_string(const BlockTree& bt, VertexId s, VertexId t) {
    const auto n = static_cast<VertexId>(bt.blocks_of.size());
    if (s == t) throw Error(ErrorCode::SameVertex, "s equals t");
    if (s < 0 || t < 0 || s >= n || t >= n) throw Error(ErrorCode::UnknownVertex, "endpoint out of range");
    if (bt.blocks_of[s].empty() || bt.blocks_of[t].empty()) throw Error(ErrorCode::Disconnected, "isolated endpoint");

    // Block-cut tree: nodes [0, B) are blocks, B + v is cut vertex v.
    const int blocks = bt.size();
    auto node_of = [&](VertexId v) { return bt.is_cut(v) ? blocks + v : bt.blocks_of[v].front(); };
    const int from = node_of(s), to = node_of(t);
    std::vector<int> parent(blocks + n, -2);
    std::deque<int> queue{from};
    parent[from] = -1;
    while (!queue.empty() && parent[to] == -2) {
        const int x = queue.front();
        queue.pop_front();
        auto visit = [&](int y) {
            if (parent[y] == -2) {
                parent[y] = x;
                queue.push_back(y);
            }
        };
        if (x < blocks) {
            for (VertexId v : bt.vertices[x])
                if (bt.is_cut(v)) visit(blocks + v);
        } else {
            for (int b : bt.blocks_of[x - blocks]) visit(b);
        }
    }
    if (parent[to] == -2) throw Error(ErrorCode::Disconnected, "s and t in different components");

    std::vector<int> route;
    for (int x = to; x != -1; x = parent[x]) route.push_back(x);
    std::reverse(route.begin(), route.end());
    BeadString out;
    for (int x : route) {
        if (x < blocks) {
            out.beads.push_back(x);
        } else if (x - blocks != s && x - blocks != t) {
            out.joints.push_back(x - blocks);
        }
    }
    return out;
}

}  // namespace patlist
