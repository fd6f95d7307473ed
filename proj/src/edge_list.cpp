#include "patlist/edge_list.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace patlist {

VertexId NamedGraph::id_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<VertexId>(i);
    throw Error(ErrorCode::UnknownVertex, std::string(name));
}

NamedGraph make_named_graph(std::span<const NamePair> edges) {
    if (edges.empty()) throw Error(ErrorCode::EmptyInput, "no edges");
    NamedGraph out;
    std::unordered_map<std::string, VertexId> ids;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    pairs.reserve(edges.size());
    auto intern = [&](const std::string& name) {
        auto [it, fresh] = ids.try_emplace(name, static_cast<VertexId>(out.names.size()));
        if (fresh) out.names.push_back(name);
        return it->second;
    };
    for (const auto& [u, v] : edges) {
        const VertexId a = intern(u);
        const VertexId b = intern(v);
        pairs.emplace_back(a, b);
    }
    try {
        out.graph = Graph(static_cast<VertexId>(out.names.size()), pairs);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::SelfLoop || err.code() == ErrorCode::ParallelEdge) {
            // Re-throw with names instead of ids.
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (edges[i].first == edges[i].second) throw Error(ErrorCode::SelfLoop, edges[i].first);
            }
            throw Error(ErrorCode::ParallelEdge, "duplicate edge in input");
        }
        throw;
    }
    return out;
}

NamedGraph parse_edge_list(std::istream& in) {
    std::vector<NamePair> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string u, v, extra;
        if (!(fields >> u) || u.front() == '#') continue;
        if (!(fields >> v) || (fields >> extra))
            throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected two vertex names");
        edges.emplace_back(std::move(u), std::move(v));
    }
    return make_named_graph(edges);
}

NamedGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
    return parse_edge_list(in);
}

std::string to_edge_list(const NamedGraph& g) {
    std::string out;
    for (EdgeId e = 0; e < g.graph.size(); ++e) {
        out += g.names[g.graph.tail(e)];
        out += ' ';
        out += g.names[g.graph.head(e)];
        out += '\n';
    }
    return out;
}

}  // namespace patlist
