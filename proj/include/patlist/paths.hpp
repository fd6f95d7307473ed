#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "patlist/graph.hpp"
#include "patlist/marks.hpp"
#include "patlist/sinks.hpp"

namespace patlist {

struct EdgeRef {
    VertexId a = kNone, b = kNone;
    EdgeId id = kNone;
};

// Live edges of the connected component containing v.
std::vector<EdgeRef> component_edges(const Graph& g, VertexId v);

// Reusable map from vertex ids to dense local indices.
class LocalIndex {
public:
    explicit LocalIndex(VertexId n = 0) : id_(n), marks_(n) {}

    void clear() {
        marks_.clear();
        vertices_.clear();
    }
    int find(VertexId v) const { return marks_.test(v) ? id_[v] : -1; }
    int add(VertexId v) {
        if (!marks_.test(v)) {
            marks_.set(v);
            id_[v] = static_cast<int>(vertices_.size());
            vertices_.push_back(v);
        }
        return id_[v];
    }
    int size() const { return static_cast<int>(vertices_.size()); }
    VertexId vertex(int i) const { return vertices_[i]; }

private:
    std::vector<int> id_;
    EpochMarks marks_;
    std::vector<VertexId> vertices_;
};

// Tarjan decomposition of an edge list from a fixed root. Per local vertex
// (indices from `index`): DFS parent, tree edge from it, and the block of
// that edge. A block's top is its vertex closest to the root.
struct RootedBlocks {
    std::vector<VertexId> parent;
    std::vector<EdgeId> parent_edge;
    std::vector<int> block;
    std::vector<char> reached;
    std::vector<VertexId> top;
    std::vector<std::vector<EdgeRef>> edges;
    EdgeRef first_back;  // first non-tree edge met by the DFS, descendant end in `a`
};

RootedBlocks rooted_blocks(std::span<const EdgeRef> edges, VertexId root, LocalIndex& index);

// Sizes of the first bead of a spine, before and after contracting chains
// of degree-2 vertices other than the root, the exit and tree leaves.
struct HeadShape {
    int vertices = 0, edges = 0;
    int compact_vertices = 0, compact_edges = 0;
};

// DFS tree of the bead string from the current root to t, with t on the
// leftmost path. Per vertex: parent links, gamma (increasing away from the
// root), lowpoint, postorder interval, and two back edge lists: lb(v) holds
// edges to descendants sorted by the descendant's postorder, ab(v) edges to
// ancestors sorted by the ancestor's preorder. The graph is never mutated;
// every change is a journaled word write.
class PathCertificate {
public:
    PathCertificate(const Graph& g, Journal& j);

    // Certificate of B_{s,t} inside `edges`.
    void build(std::span<const EdgeRef> edges, VertexId s, VertexId t);

    VertexId root() const { return root_; }
    VertexId target() const { return target_; }
    bool binary() const { return lbh_[root_] != kNone; }
    // Last back edge of lb(root), else the tree edge to the only child.
    EdgeId choose(VertexId& next) const;

    // Drops the back edge e = (z, root) and prunes what leaves the bead string.
    void right_update(EdgeId e);
    // Decomposes the first bead minus the root so that left updates along
    // the spine can rebuild it. Call on the first node of a binary spine.
    void open_spine(HeadShape* shape = nullptr);
    void close_spine();
    // Moves the root to `next` across e.
    void left_update(EdgeId e, VertexId next);

    std::string serialize() const;
    // Structural self-check of the tree hanging from the root.
    bool consistent() const;

private:
    struct Spine {
        VertexId exit = kNone, beyond = kNone;
        EdgeId lb_cut = kNone;
        std::vector<VertexId> top;
        std::vector<std::vector<EdgeRef>> edges;
    };

    void put(std::int32_t& slot, std::int32_t value) {
        if (slot != value) j_.set(slot, value);
    }
    VertexId other(EdgeId e, VertexId x) const { return g_.other(e, x); }

    void append_child(VertexId p, VertexId c);
    void unlink_child(VertexId c);
    void lb_append(VertexId v, EdgeId e);
    void lb_unlink(VertexId v, EdgeId e);
    void ab_append(VertexId v, EdgeId e);
    void ab_unlink(VertexId v, EdgeId e);
    void prune(VertexId w);

    void open(std::span<const EdgeRef> edges, VertexId exit, VertexId beyond, EdgeId lb_cut);
    void materialize(const Spine& spine, VertexId z);
    void build_block(const Spine& spine, int block, VertexId x);

    const Graph& g_;
    Journal& j_;
    VertexId target_ = kNone;
    std::int32_t root_ = kNone, clock_ = 0;

    std::vector<std::int32_t> par_, pedge_, fch_, lch_, nsib_, psib_, gam_, low_, post_, lo_, left_;
    std::vector<std::int32_t> lbh_, lbt_, abh_, abt_;
    std::vector<std::int32_t> lbn_, lbp_, abn_, abp_;
    // Decomposition of the open spine, journaled so that nested spines
    // restore it on rollback.
    std::vector<std::int32_t> tpar_, tpedge_, tblk_;
    std::vector<Spine> spines_;

    // Scratch.
    LocalIndex index_;
    std::vector<VertexId> order_, post_order_, stack_, chain_;
    std::vector<int> cursor_, adj_off_, degree_;
    std::vector<EdgeId> via_;
    std::vector<char> on_path_, preferred_done_, seen_;
    std::vector<std::pair<VertexId, EdgeId>> adj_;
};

struct PathOptions {
    bool instrument = false;
    // With instrument: also verify the certificate at every node.
    bool self_check = true;
};

struct PathReport {
    std::uint64_t count = 0;
    std::uint64_t output_size = 0;  // total edges over listed patterns
    std::uint64_t nodes = 0, leaves = 0, unary = 0, binary = 0, spines = 0;
    std::uint64_t bad_left_branches = 0;
    std::uint64_t bad_binary_count = 0;
    std::uint64_t bad_density = 0;
    std::uint64_t bad_spine_leaves = 0;
    std::uint64_t bad_certificate = 0;
    std::uint64_t dense_heads = 0;  // heads that met the density check

    std::uint64_t violations() const {
        return bad_left_branches + bad_binary_count + bad_density + bad_spine_leaves + bad_certificate;
    }
    void merge(const PathReport& other);
};

// Lists every simple st-path as its vertex sequence s..t.
PathReport list_st_paths(const Graph& g, VertexId s, VertexId t, const WalkSink& sink, const PathOptions& options = {});
// Same, restricted to an edge list.
PathReport list_st_paths(const Graph& g, std::span<const EdgeRef> edges, VertexId s, VertexId t,
                         const WalkSink& sink, const PathOptions& options = {});

// One step of the cycle reduction: st-paths of block minus (s, t), each
// closed by the edge back.
struct CycleRound {
    std::vector<EdgeRef> block;
    EdgeRef back;
    std::uint64_t paths = 0;
};

struct CycleOptions {
    bool instrument = false;
    bool self_check = true;
    bool record_schedule = false;
};

struct CycleReport {
    std::uint64_t count = 0;
    std::uint64_t output_size = 0;
    std::uint64_t rounds = 0;
    PathReport paths;
    std::vector<CycleRound> schedule;
};

// Lists every simple cycle once as a vertex ring, starting at the back
// edge's descendant end and ending at its ancestor end.
CycleReport list_cycles(const Graph& g, const WalkSink& sink, const CycleOptions& options = {});

}  // namespace patlist
