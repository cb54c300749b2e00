#include "hx/klattice.hpp"

#include <sstream>

namespace hx {

using checked::add;
using checked::mul;
using checked::sub;

Surface::Surface(Kind kind, int points) : kind_(kind), points_(points) {
  if (kind == Kind::quadric) {
    canonical_ = {-2, -2};
  } else {
    canonical_.assign(static_cast<std::size_t>(points) + 1, 1);
    canonical_[0] = -3;
  }
}

Surface Surface::blowup(int points) {
  if (points < 0 || points > 8)
    fail(ErrorKind::input, "bad_surface", "blow-up of P2 needs 0..8 points, got " + std::to_string(points));
  return Surface(Kind::blowup, points);
}

Surface Surface::quadric() { return Surface(Kind::quadric, 0); }

std::size_t Surface::picard_rank() const noexcept {
  return kind_ == Kind::quadric ? 2 : static_cast<std::size_t>(points_) + 1;
}

Int Surface::degree() const noexcept { return kind_ == Kind::quadric ? 8 : 9 - points_; }

Int Surface::form(std::size_t i, std::size_t j) const {
  if (kind_ == Kind::quadric) return i == j ? 0 : 1;
  if (i != j) return 0;
  return i == 0 ? 1 : -1;
}

IntMatrix Surface::intersection_form() const {
  auto n = picard_rank();
  IntMatrix m(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = form(i, j);
  return m;
}

std::string Surface::name() const {
  if (kind_ == Kind::quadric) return "quadric";
  return "blowup(" + std::to_string(points_) + ")";
}

Int intersection(const Surface& s, std::span<const Int> u, std::span<const Int> v) {
  auto n = s.picard_rank();
  if (u.size() != n || v.size() != n)
    fail(ErrorKind::input, "dimension_mismatch",
         "divisor length " + std::to_string(u.size()) + "/" + std::to_string(v.size()) + " on " + s.name() +
             " (Picard rank " + std::to_string(n) + ")");
  if (s.kind() == Surface::Kind::quadric) return add(mul(u[0], v[1]), mul(u[1], v[0]));
  Int r = mul(u[0], v[0]);
  for (std::size_t i = 1; i < n; ++i) r = sub(r, mul(u[i], v[i]));
  return r;
}

Int anticanonical_degree(const Surface& s, std::span<const Int> c1) {
  return -intersection(s, s.canonical(), c1);
}

ChernClass operator-(const ChernClass& v) {
  ChernClass r{-v.rank, v.c1, -v.ch2_x2};
  for (auto& x : r.c1) x = -x;
  return r;
}

ChernClass operator+(const ChernClass& v, const ChernClass& w) {
  if (v.c1.size() != w.c1.size()) fail(ErrorKind::input, "dimension_mismatch", "adding classes of different length");
  ChernClass r{add(v.rank, w.rank), v.c1, add(v.ch2_x2, w.ch2_x2)};
  for (std::size_t i = 0; i < r.c1.size(); ++i) r.c1[i] = add(r.c1[i], w.c1[i]);
  return r;
}

ChernClass operator*(Int k, const ChernClass& v) {
  ChernClass r{mul(k, v.rank), v.c1, mul(k, v.ch2_x2)};
  for (auto& x : r.c1) x = mul(k, x);
  return r;
}

ChernClass operator-(const ChernClass& v, const ChernClass& w) { return v + (-w); }

ChernClass line_bundle(const Surface& s, Divisor d) {
  Int sq = intersection(s, d, d);
  return ChernClass{1, std::move(d), sq};
}

bool is_integral(const Surface& s, const ChernClass& v) {
  if (v.c1.size() != s.picard_rank()) return false;
  Int t = add(v.ch2_x2, intersection(s, s.canonical(), v.c1));
  return t % 2 == 0;
}

void check_class(const Surface& s, const ChernClass& v) {
  if (v.c1.size() != s.picard_rank())
    fail(ErrorKind::input, "dimension_mismatch",
         "c1 has length " + std::to_string(v.c1.size()) + ", expected " + std::to_string(s.picard_rank()));
  if (!is_integral(s, v))
    fail(ErrorKind::domain, "not_integral", "class " + describe(s, v) + " violates integrality (ch2_x2 + K.c1 odd)");
}

Int euler_pairing(const Surface& s, const ChernClass& v, const ChernClass& w) {
  const auto& K = s.canonical();
  Int cross = intersection(s, v.c1, w.c1);
  Int kw = intersection(s, K, w.c1);
  Int kv = intersection(s, K, v.c1);
  Int twice = mul(2, mul(v.rank, w.rank));
  twice = add(twice, mul(v.rank, w.ch2_x2));
  twice = add(twice, mul(w.rank, v.ch2_x2));
  twice = sub(twice, mul(2, cross));
  twice = sub(twice, sub(mul(v.rank, kw), mul(w.rank, kv)));
  if (twice % 2 != 0)
    fail(ErrorKind::domain, "not_integral",
         "odd doubled Euler pairing for " + describe(s, v) + " and " + describe(s, w));
  return twice / 2;
}

Int euler_characteristic(const Surface& s, const ChernClass& v) {
  ChernClass structure{1, Divisor(s.picard_rank(), 0), 0};
  return euler_pairing(s, structure, v);
}

ChernClass serre_twist(const Surface& s, const ChernClass& v, Int p) {
  const auto& K = s.canonical();
  ChernClass r = v;
  Int pr = mul(p, v.rank);
  for (std::size_t i = 0; i < r.c1.size(); ++i) r.c1[i] = add(r.c1[i], mul(pr, K[i]));
  Int kc = intersection(s, v.c1, K);
  r.ch2_x2 = add(r.ch2_x2, mul(mul(2, p), kc));
  r.ch2_x2 = add(r.ch2_x2, mul(mul(p, pr), s.degree()));
  return r;
}

namespace {

void require_exceptional(const Surface& s, const ChernClass& v) {
  if (euler_pairing(s, v, v) != 1)
    fail(ErrorKind::domain, "not_exceptional", "class " + describe(s, v) + " has chi(v,v) != 1");
}

}  // namespace

bool is_sheaf_normalized(const Surface& s, const ChernClass& v) {
  if (v.rank > 0) return true;
  return v.rank == 0 && anticanonical_degree(s, v.c1) == 1;
}

SlopeOrder slope_compare(const Surface& s, const ChernClass& v, const ChernClass& w) {
  require_exceptional(s, v);
  require_exceptional(s, w);
  if (!is_sheaf_normalized(s, v) || !is_sheaf_normalized(s, w))
    fail(ErrorKind::domain, "not_normalized", "slope comparison needs sheaf-normalized classes");
  if (v.rank > 0 && w.rank > 0) {
    Int lhs = mul(anticanonical_degree(s, v.c1), w.rank);
    Int rhs = mul(anticanonical_degree(s, w.c1), v.rank);
    if (lhs < rhs) return SlopeOrder::less;
    if (lhs > rhs) return SlopeOrder::greater;
    return v == w ? SlopeOrder::equal : SlopeOrder::incomparable;
  }
  if (v.rank == 0 && w.rank > 0) return SlopeOrder::greater;
  if (v.rank > 0 && w.rank == 0) return SlopeOrder::less;
  // two torsion sheaves O_C(d): same curve compares d, different curves are disjoint
  if (v.c1 != w.c1) return SlopeOrder::incomparable;
  if (v.ch2_x2 < w.ch2_x2) return SlopeOrder::less;
  if (v.ch2_x2 > w.ch2_x2) return SlopeOrder::greater;
  return SlopeOrder::equal;
}

const char* to_string(SlopeOrder o) {
  switch (o) {
    case SlopeOrder::less: return "less";
    case SlopeOrder::greater: return "greater";
    case SlopeOrder::incomparable: return "incomparable";
    case SlopeOrder::equal: return "equal";
  }
  return "?";
}

Normalized sheaf_normalize(const Surface& s, const ChernClass& signed_class) {
  require_exceptional(s, signed_class);
  if (signed_class.rank > 0) return {signed_class, 0};
  if (signed_class.rank < 0) return {-signed_class, 1};
  Int d = anticanonical_degree(s, signed_class.c1);
  if (d == 1) return {signed_class, 0};
  if (d == -1) return {-signed_class, 1};
  fail(ErrorKind::domain, "bad_torsion_class",
       "rank-0 class " + describe(s, signed_class) + " has c1.(-K) = " + std::to_string(d) + ", expected +-1");
}

namespace {

std::string divisor_string(const Surface& s, const Divisor& d) {
  std::ostringstream out;
  if (s.kind() == Surface::Kind::quadric) {
    out << d[0] << ',' << d[1];
    return out.str();
  }
  bool first = true;
  auto term = [&](Int c, const std::string& sym) {
    if (c == 0) return;
    if (c < 0) out << '-';
    else if (!first) out << '+';
    Int a = c < 0 ? -c : c;
    if (a != 1) out << a;
    out << sym;
    first = false;
  };
  term(d[0], "h");
  for (std::size_t i = 1; i < d.size(); ++i) term(d[i], "e" + std::to_string(i));
  if (first) out << '0';
  return out.str();
}

}  // namespace

std::string describe(const Surface& s, const ChernClass& v) {
  if (v.c1.size() != s.picard_rank()) return "(malformed class)";
  if (v.rank == 1 && v.ch2_x2 == intersection(s, v.c1, v.c1)) {
    bool trivial = true;
    for (auto x : v.c1) trivial = trivial && x == 0;
    if (trivial) return "O";
    return "O(" + divisor_string(s, v.c1) + ")";
  }
  std::ostringstream out;
  out << "(r=" << v.rank << "; c1=" << divisor_string(s, v.c1) << "; ch2=";
  if (v.ch2_x2 % 2 == 0) out << v.ch2_x2 / 2;
  else out << v.ch2_x2 << "/2";
  out << ')';
  return out.str();
}

}  // namespace hx
