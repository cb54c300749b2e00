#pragma once

// Skew Euler matrices of rolled-up helix algebras, their quivers, and
// quiver mutation.

#include <string>
#include <vector>

#include "hx/helix.hpp"

namespace hx {

struct BMatrix {
  IntMatrix b;

  std::size_t size() const noexcept { return b.size(); }
  Int operator()(std::size_t i, std::size_t j) const { return b[i][j]; }
  bool operator==(const BMatrix&) const = default;
};

struct Quiver {
  std::vector<std::string> labels;
  IntMatrix arrows;  // arrows[i][j]: number of arrows i -> j

  std::size_t size() const noexcept { return arrows.size(); }
  bool operator==(const Quiver&) const = default;
};

bool is_skew(const IntMatrix& m);
// Diagonal zero and no pair i, j with arrows both ways.
bool has_loops_or_two_cycles(const IntMatrix& arrows);

Quiver thread_quiver(const Collection& c);
// b_ij = chi(F_i, F_j) - chi(F_j, F_i) over the dual of the given thread
BMatrix skew_euler_matrix(const Collection& thread);
// Vertex k of the result is helix index (start + k) mod n.
BMatrix rolled_b_matrix(const Helix& h, Int start = 0);
Quiver rolled_quiver(const BMatrix& b, std::vector<std::string> labels = {});
std::vector<std::string> vertex_labels(const Helix& h);

BMatrix fz_mutate(const BMatrix& b, std::size_t k);
// Rows express the new simples in the old ones:
// left:  U_i = -S_i, U_j = S_j + ext1(S_i, S_j) S_i
// right: U_i = -S_i, U_j = S_j + ext1(S_j, S_i) S_i
IntMatrix tilted_simple_classes(const BMatrix& b, std::size_t i, Direction direction = Direction::left);
// t * b * t^T
IntMatrix conjugate(const IntMatrix& t, const IntMatrix& b);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

struct CrossCheck {
  bool match = false;
  std::size_t vertex = 0;
  BMatrix before;    // b of the input helix
  BMatrix expected;  // fz_mutate(before, vertex)
  BMatrix actual;    // b of the tilted helix, relabelled through the vertex map
  std::vector<std::size_t> vertex_map;
  Helix tilted;
};

CrossCheck cross_check_tilt(const Helix& h, std::size_t vertex, Direction direction = Direction::left);
// Same, reusing a known b-matrix of h and skipping the input geometricity scan.
CrossCheck cross_check_tilt(const Helix& h, const BMatrix& before, std::size_t vertex, Direction direction);

std::string to_dot(const Quiver& q);

}  // namespace hx
