#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "patlist/canonical.hpp"
#include "patlist/edge_list.hpp"
#include "patlist/generators.hpp"
#include "patlist/oracle.hpp"
#include "patlist/paths.hpp"
#include "patlist/subgraphs.hpp"
#include "patlist/subtrees.hpp"

namespace patlist::cli {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240601;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PATTERN_LISTER_SEED")) return std::strtoull(env, nullptr, 10);
    return kDefaultSeed;
}

struct ListArgs {
    std::string kind, file, format = "lines", report;
    int k = 0;
    std::string s, t;
    bool count_only = false, check_oracle = false, instrument = false, delay_mode = false;
};

// Streams patterns in the chosen format.
class Emitter {
public:
    Emitter(std::ostream& out, bool json_format, bool silent) : out_(out), json_(json_format), silent_(silent) {}

    void names(const std::vector<std::string>& row) {
        if (silent_) return;
        if (json_) {
            open();
            out_ << json(row).dump();
        } else {
            for (std::size_t i = 0; i < row.size(); ++i) out_ << (i ? " " : "") << row[i];
            out_ << '\n';
        }
    }
    void pairs(const std::vector<std::pair<std::string, std::string>>& row) {
        if (silent_) return;
        if (json_) {
            open();
            json arr = json::array();
            for (const auto& [a, b] : row) arr.push_back({a, b});
            out_ << arr.dump();
        } else {
            for (std::size_t i = 0; i < row.size(); ++i) out_ << (i ? " " : "") << row[i].first << '-' << row[i].second;
            out_ << '\n';
        }
    }
    void finish() {
        if (silent_ || !json_) return;
        out_ << (first_ ? "[" : "") << "]\n";
    }

private:
    void open() {
        out_ << (first_ ? "[" : ",");
        first_ = false;
    }

    std::ostream& out_;
    bool json_, silent_, first_ = true;
};

VertexId lookup(const NamedGraph& g, const std::string& name, const char* flag) {
    if (name.empty()) throw CLI::ValidationError(std::string(flag) + " is required");
    return g.id_of(name);
}

int cmd_list(const ListArgs& a, std::ostream& out, std::ostream& err) {
    NamedGraph ng = load_edge_list(a.file);
    Graph& g = ng.graph;
    if (a.delay_mode && a.kind != "subtrees") throw CLI::ValidationError("--delay-mode applies to subtrees only");
    Emitter emit(out, a.format == "json", a.count_only);
    KeySet keys;
    json report = {{"pattern", a.kind}, {"n", g.order()}, {"m", g.size()}};
    json invariants = json::object();
    std::uint64_t count = 0, output_size = 0, sink_calls = 0;

    ops::reset();
    const auto start = std::chrono::steady_clock::now();
    if (a.kind == "subtrees") {
        SubtreeReport r = list_k_subtrees(
            g, a.k,
            [&](std::span<const EdgeId> es) {
                ++sink_calls;
                if (a.check_oracle) keys.push_back(subtree_key(g, es));
                emit.pairs(sorted_name_pairs(ng.names, g, es));
            },
            {.delay_mode = a.delay_mode, .instrument = a.instrument});
        count = r.count;
        output_size = r.count * static_cast<std::uint64_t>(a.k - 1);
        report["k"] = a.k;
        if (a.delay_mode) report["max_gap"] = r.max_gap;
        if (a.instrument)
            invariants = {{"left_branches", r.bad_left_branches},   {"binary_count", r.bad_binary_count},
                          {"internal_count", r.bad_internal_count}, {"cyclomatic", r.bad_cyclomatic},
                          {"certificate", r.bad_certificate},       {"parking", r.bad_parking}};
    } else if (a.kind == "subgraphs") {
        SubgraphReport r = list_k_subgraphs(
            g, a.k,
            [&](std::span<const VertexId> vs, std::span<const EdgeId> es) {
                ++sink_calls;
                if (a.check_oracle) keys.push_back(subgraph_key(g, vs, es));
                emit.names(sorted_names(ng.names, vs));
            },
            {.instrument = a.instrument});
        count = r.count;
        output_size = r.output_edges;
        report["k"] = a.k;
        if (a.instrument)
            invariants = {{"left_branch", r.bad_left_branch},
                          {"certificate", r.bad_certificate},
                          {"node_count", r.bad_node_count}};
    } else if (a.kind == "paths" || a.kind == "cycles") {
        auto sink = [&](std::span<const VertexId> w) {
            ++sink_calls;
            if (a.kind == "paths") {
                if (a.check_oracle) keys.push_back(path_key(w));
                emit.names(path_names(ng.names, w));
            } else {
                if (a.check_oracle) keys.push_back(cycle_key(w));
                emit.names(cycle_names(ng.names, w));
            }
        };
        PathReport r;
        if (a.kind == "paths") {
            const VertexId s = lookup(ng, a.s, "-s"), t = lookup(ng, a.t, "-t");
            r = list_st_paths(g, s, t, sink, {.instrument = a.instrument});
            report["s"] = a.s;
            report["t"] = a.t;
            count = r.count;
            output_size = r.output_size;
        } else {
            CycleReport c = list_cycles(g, sink, {.instrument = a.instrument});
            r = c.paths;
            count = c.count;
            output_size = c.output_size;
            report["rounds"] = c.rounds;
        }
        if (a.instrument)
            invariants = {{"left_branches", r.bad_left_branches}, {"binary_count", r.bad_binary_count},
                          {"density", r.bad_density},             {"spine_leaves", r.bad_spine_leaves},
                          {"certificate", r.bad_certificate},     {"dense_heads", r.dense_heads}};
    } else {
        throw CLI::ValidationError("unknown pattern kind " + a.kind);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::uint64_t operations = ops::count();
    emit.finish();
    if (a.count_only) out << count << '\n';

    int status = 0;
    report["count"] = count;
    report["output_size"] = output_size;
    report["operations"] = operations;
    report["seconds"] = seconds;
    if (sink_calls != count) status = 1;
    if (a.instrument) {
        report["invariants"] = invariants;
        for (const auto& [name, value] : invariants.items())
            if (name != "dense_heads" && value.get<std::uint64_t>() != 0) status = 1;
    }
    if (a.check_oracle) {
        KeySet expected;
        if (a.kind == "subtrees") {
            const auto all = oracle::brute_subtrees(g);
            if (a.k < static_cast<int>(all.size())) expected = all[a.k];
        } else if (a.kind == "subgraphs") {
            const auto all = oracle::brute_subgraphs(g);
            if (a.k < static_cast<int>(all.size())) expected = all[a.k];
        } else if (a.kind == "paths") {
            expected = oracle::brute_paths(g, ng.id_of(a.s), ng.id_of(a.t));
        } else {
            expected = oracle::brute_cycles(g);
        }
        const std::size_t listed = keys.size();
        sort_unique(keys);
        const bool match = keys.size() == listed && keys == expected;
        report["oracle"] = match ? "MATCH" : "MISMATCH";
        err << "oracle: " << (match ? "MATCH" : "MISMATCH") << '\n';
        if (!match) status = 1;
    }
    if (a.report.empty()) {
        err << report.dump() << '\n';
    } else {
        std::ofstream file(a.report);
        if (!file) throw Error(ErrorCode::Parse, "cannot write " + a.report);
        file << report.dump(2) << '\n';
    }
    return status;
}

struct GenArgs {
    std::string family;
    int k = 0, n = 0, m = 0;
    std::uint64_t seed = 0;
};

std::vector<NamePair> generate(const std::string& family, int size, int m, std::uint64_t seed) {
    if (family == "diamond") return gen::diamond(size);
    if (family == "complete") return gen::complete(size);
    if (family == "cycle") return gen::cycle(size);
    if (family == "random") return gen::random_connected(size, m, seed);
    throw CLI::ValidationError("unknown family " + family);
}

struct BenchArgs {
    std::string family, lister = "cycles", sizes;
    int k = 3;
    double edges_per_vertex = 1.5;
    std::uint64_t seed = 0;
};

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        if (const auto dots = item.find(".."); dots != std::string::npos) {
            const int lo = std::stoi(item.substr(0, dots)), hi = std::stoi(item.substr(dots + 2));
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else if (!item.empty()) {
            out.push_back(std::stoi(item));
        }
    }
    if (out.empty()) throw CLI::ValidationError("--sizes is empty");
    return out;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    out << "family,size,n,m,lister,variant,count,output_size,operations,ratio\n";
    for (int size : parse_sizes(a.sizes)) {
        const int m = std::min(size * (size - 1) / 2, static_cast<int>(size * a.edges_per_vertex));
        NamedGraph ng = make_named_graph(generate(a.family, size, m, a.seed + size));
        Graph& g = ng.graph;
        auto row = [&](const char* variant, std::uint64_t count, std::uint64_t output_size) {
            const std::uint64_t operations = ops::count();
            out << a.family << ',' << size << ',' << g.order() << ',' << g.size() << ',' << a.lister << ','
                << variant << ',' << count << ',' << output_size << ',' << operations << ','
                << static_cast<double>(operations) / static_cast<double>(g.size() + output_size) << '\n';
        };
        ops::reset();
        if (a.lister == "subtrees") {
            const auto r = list_k_subtrees(g, a.k, [](std::span<const EdgeId>) {});
            row("optimal", r.count, r.count * (a.k - 1));
            ops::reset();
            const auto c = oracle::baseline_subtrees(g, a.k, [](std::span<const EdgeId>) {});
            row("baseline", c, c * (a.k - 1));
        } else if (a.lister == "subgraphs") {
            const auto r = list_k_subgraphs(g, a.k, [](std::span<const VertexId>, std::span<const EdgeId>) {});
            row("optimal", r.count, r.output_edges);
        } else if (a.lister == "paths") {
            const auto r = list_st_paths(g, 0, g.order() - 1, [](std::span<const VertexId>) {});
            row("optimal", r.count, r.output_size);
        } else if (a.lister == "cycles") {
            const auto r = list_cycles(g, [](std::span<const VertexId>) {});
            row("optimal", r.count, r.output_size);
        } else {
            throw CLI::ValidationError("unknown lister " + a.lister);
        }
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"List subtrees, induced subgraphs, st-paths and cycles of undirected graphs"};
    app.require_subcommand(1);

    ListArgs list;
    auto* list_cmd = app.add_subcommand("list", "List the patterns of a graph read from an edge list");
    list_cmd->add_option("kind", list.kind, "subtrees, subgraphs, paths or cycles")
        ->required()
        ->check(CLI::IsMember({"subtrees", "subgraphs", "paths", "cycles"}));
    list_cmd->add_option("file", list.file, "edge list, one `u v` pair per line")->required();
    list_cmd->add_option("-k", list.k, "pattern size for subtrees and subgraphs");
    list_cmd->add_option("-s", list.s, "first endpoint for paths");
    list_cmd->add_option("-t", list.t, "last endpoint for paths");
    list_cmd->add_flag("--count-only", list.count_only, "print only the number of patterns");
    list_cmd->add_option("--format", list.format, "lines or json")->check(CLI::IsMember({"lines", "json"}));
    list_cmd->add_flag("--check-oracle", list.check_oracle, "compare with exhaustive search");
    list_cmd->add_flag("--instrument", list.instrument, "check structural invariants while listing");
    list_cmd->add_flag("--delay-mode", list.delay_mode, "subtrees: bound the work between emissions");
    list_cmd->add_option("--report", list.report, "write the run report to this file instead of stderr");

    GenArgs gen_args;
    gen_args.seed = default_seed();
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph as an edge list");
    gen_cmd->add_option("family", gen_args.family, "diamond, complete, cycle or random")
        ->required()
        ->check(CLI::IsMember({"diamond", "complete", "cycle", "random"}));
    gen_cmd->add_option("-k", gen_args.k, "diamond detours");
    gen_cmd->add_option("-n", gen_args.n, "vertices");
    gen_cmd->add_option("-m", gen_args.m, "edges (random)");
    gen_cmd->add_option("--seed", gen_args.seed, "random seed");

    BenchArgs bench;
    bench.seed = default_seed();
    auto* bench_cmd = app.add_subcommand("bench", "Operation counts over a size sweep, as CSV");
    bench_cmd->add_option("family", bench.family, "diamond, complete, cycle or random")
        ->required()
        ->check(CLI::IsMember({"diamond", "complete", "cycle", "random"}));
    bench_cmd->add_option("--lister", bench.lister, "subtrees, subgraphs, paths or cycles")
        ->check(CLI::IsMember({"subtrees", "subgraphs", "paths", "cycles"}));
    bench_cmd->add_option("--sizes", bench.sizes, "comma list, ranges as lo..hi")->required();
    bench_cmd->add_option("-k", bench.k, "pattern size for subtrees and subgraphs");
    bench_cmd->add_option("--edges-per-vertex", bench.edges_per_vertex, "random family density");
    bench_cmd->add_option("--seed", bench.seed, "random seed base");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (*list_cmd) {
            if ((list.kind == "subtrees" || list.kind == "subgraphs") && list.k <= 0 && !list_cmd->count("-k"))
                throw CLI::ValidationError("-k is required for " + list.kind);
            return cmd_list(list, out, err);
        }
        if (*gen_cmd) {
            const int size = gen_args.family == "diamond" ? gen_args.k : gen_args.n;
            out << to_edge_list(make_named_graph(generate(gen_args.family, size, gen_args.m, gen_args.seed)));
            return 0;
        }
        return cmd_bench(bench, out);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace patlist::cli
