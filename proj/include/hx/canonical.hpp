#pragma once

#include <string>

#include "hx/cy3quiver.hpp"

namespace hx {

// Isomorphism-invariant key of the arrow matrix: equal for two quivers iff
// they differ by a vertex permutation. Labels are ignored.
std::string canonical_quiver_key(const Quiver& q);
std::string canonical_quiver_key(const IntMatrix& arrows);

}  // namespace hx
