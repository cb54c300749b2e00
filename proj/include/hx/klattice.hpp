#pragma once

// Numerical K-theory of del Pezzo surfaces.
//
// Basis conventions: a blow-up of P^2 at m points uses (h, e1, ..., em);
// the quadric P^1 x P^1 uses the two rulings (a, b). P^2 is blowup(0).

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "hx/checked.hpp"

namespace hx {

using Divisor = std::vector<Int>;
using IntMatrix = std::vector<std::vector<Int>>;

class Surface {
 public:
  enum class Kind { blowup, quadric };

  static Surface blowup(int points);
  static Surface quadric();

  Kind kind() const noexcept { return kind_; }
  int points() const noexcept { return points_; }
  std::size_t picard_rank() const noexcept;
  // rank of the numerical K-group: rank, c1, and one more for ch2
  std::size_t k_rank() const noexcept { return picard_rank() + 2; }
  Int degree() const noexcept;  // K.K
  const Divisor& canonical() const noexcept { return canonical_; }
  Int form(std::size_t i, std::size_t j) const;
  IntMatrix intersection_form() const;
  std::string name() const;

  bool operator==(const Surface& o) const noexcept { return kind_ == o.kind_ && points_ == o.points_; }

 private:
  Surface(Kind kind, int points);

  Kind kind_;
  int points_;
  Divisor canonical_;
};

Int intersection(const Surface& s, std::span<const Int> u, std::span<const Int> v);
// c1 . (-K)
Int anticanonical_degree(const Surface& s, std::span<const Int> c1);

struct ChernClass {
  Int rank = 0;
  Divisor c1;
  Int ch2_x2 = 0;  // twice ch2

  auto operator<=>(const ChernClass&) const = default;
  bool operator==(const ChernClass&) const = default;
};

ChernClass operator-(const ChernClass& v);
ChernClass operator+(const ChernClass& v, const ChernClass& w);
ChernClass operator*(Int k, const ChernClass& v);
ChernClass operator-(const ChernClass& v, const ChernClass& w);

ChernClass line_bundle(const Surface& s, Divisor d);
void check_class(const Surface& s, const ChernClass& v);  // length and integrality
bool is_integral(const Surface& s, const ChernClass& v);

Int euler_pairing(const Surface& s, const ChernClass& v, const ChernClass& w);
Int euler_characteristic(const Surface& s, const ChernClass& v);  // chi(O, v)
ChernClass serre_twist(const Surface& s, const ChernClass& v, Int p);

enum class SlopeOrder { less, greater, incomparable, equal };

SlopeOrder slope_compare(const Surface& s, const ChernClass& v, const ChernClass& w);
const char* to_string(SlopeOrder o);

struct Normalized {
  ChernClass cls;
  int parity = 0;  // 1 when the input was negated
};

Normalized sheaf_normalize(const Surface& s, const ChernClass& signed_class);
bool is_sheaf_normalized(const Surface& s, const ChernClass& v);

// Human-readable form: O(1,0), O(2h-e1), or (r; c1; ch2).
std::string describe(const Surface& s, const ChernClass& v);

}  // namespace hx
