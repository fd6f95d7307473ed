#pragma once

#include <cstdint>
#include <vector>

#include "patlist/edge_list.hpp"

namespace patlist::gen {

// Hubs a, b, c with k two-edge detours a-v_i-b and b-u_i-c plus the chord a-c.
std::vector<NamePair> diamond(int k);
std::vector<NamePair> complete(int n);
std::vector<NamePair> cycle(int n);
// Connected: a random spanning tree first, then distinct extra edges.
std::vector<NamePair> random_connected(int n, int m, std::uint64_t seed);

}  // namespace patlist::gen
