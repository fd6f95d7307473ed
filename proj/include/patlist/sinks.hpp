#pragma once

#include <functional>
#include <span>

#include "patlist/graph.hpp"

namespace patlist {

// Callbacks receiving each listed pattern. The spans are only valid for the
// duration of the call.
using EdgeSink = std::function<void(std::span<const EdgeId>)>;
using SubgraphSink = std::function<void(std::span<const VertexId> vertices, std::span<const EdgeId> edges)>;
using WalkSink = std::function<void(std::span<const VertexId>)>;

}  // namespace patlist
