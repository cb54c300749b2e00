#pragma once

#include <random>
#include <vector>

#include "hx/seeds.hpp"

namespace hx::test {

inline ExcObject lb(const Surface& s, Divisor d, int shift = 0) { return ExcObject{line_bundle(s, std::move(d)), shift}; }

inline Collection collection(const Surface& s, const std::vector<Divisor>& ds) {
  std::vector<ExcObject> objs;
  for (const auto& d : ds) objs.push_back(lb(s, d));
  return Collection(s, std::move(objs));
}

inline const std::vector<std::string>& all_seeds() { return seed_names(); }

// Random integral class on s with bounded entries.
inline ChernClass random_class(const Surface& s, std::mt19937_64& rng, Int bound = 6) {
  std::uniform_int_distribution<Int> d(-bound, bound);
  ChernClass v{d(rng), {}, 0};
  for (std::size_t i = 0; i < s.picard_rank(); ++i) v.c1.push_back(d(rng));
  v.ch2_x2 = 2 * d(rng);
  if (!is_integral(s, v)) v.ch2_x2 += 1;
  return v;
}

inline Int brute_chi(const Surface& s, const ChernClass& v, const ChernClass& w) {
  // Riemann-Roch written out independently: chi(v, w) = int ch(v)^* ch(w) td(Z)
  // on a surface, with td = 1 - K/2 + pt.
  Int rv = v.rank, rw = w.rank;
  Int cc = intersection(s, v.c1, w.c1);
  Int kv = intersection(s, s.canonical(), v.c1), kw = intersection(s, s.canonical(), w.c1);
  Int twice = 2 * rv * rw + rv * w.ch2_x2 + rw * v.ch2_x2 - 2 * cc - (rv * kw - rw * kv);
  return twice / 2;
}

}  // namespace hx::test
