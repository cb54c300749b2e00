#pragma once

// Builtin helix seeds: p2, quadric, dp1, dp2.

#include <string>
#include <vector>

#include "hx/helix.hpp"

namespace hx {

const std::vector<std::string>& seed_names();
Helix seed(const std::string& name);
// Block decomposition of the seed thread (3 or 4 mutually orthogonal blocks).
BlockStructure seed_blocks(const std::string& name);

}  // namespace hx
