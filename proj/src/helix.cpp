#include "hx/helix.hpp"

#include <algorithm>
#include <functional>

namespace hx {

Helix::Helix(Collection thread) : thread_(std::move(thread)) {
  const auto& s = thread_.surface();
  if (thread_.size() != s.k_rank())
    fail(ErrorKind::structure, "not_full",
         "helix thread on " + s.name() + " needs " + std::to_string(s.k_rank()) + " objects, got " +
             std::to_string(thread_.size()));
  if (!is_numerically_full(thread_))
    fail(ErrorKind::structure, "not_full", "helix thread is not numerically full (class matrix not unimodular)");
}

Helix Helix::from_window(const Surface& s, std::vector<ExcObject> objects, Int start) {
  auto n = static_cast<Int>(objects.size());
  if (n == 0) fail(ErrorKind::structure, "not_full", "empty helix window");
  std::vector<ExcObject> thread(objects.size());
  for (Int k = 0; k < n; ++k) {
    Int idx = start + k;
    auto& o = objects[static_cast<std::size_t>(k)];
    thread[static_cast<std::size_t>(floor_mod(idx, n))] =
        ExcObject{serre_twist(s, o.cls, floor_div(idx, n)), o.shift};
  }
  return Helix(Collection(s, std::move(thread)));
}

ExcObject Helix::at(Int i) const {
  auto n = static_cast<Int>(period());
  const auto& o = thread_[static_cast<std::size_t>(floor_mod(i, n))];
  return ExcObject{serre_twist(surface(), o.cls, -floor_div(i, n)), o.shift};
}

std::vector<ExcObject> Helix::window(Int start) const {
  std::vector<ExcObject> w;
  for (std::size_t k = 0; k < period(); ++k) w.push_back(at(start + static_cast<Int>(k)));
  return w;
}

Collection Helix::thread_at(Int start) const { return Collection(surface(), window(start)); }

Helix rho(const Helix& h) { return Helix(h.thread_at(1)); }

Helix sigma_helix(const Helix& h, Int i) {
  auto w = sigma(h.thread_at(i - 1), 1);
  return Helix::from_window(h.surface(), w.objects(), i - 1);
}

Helix sigma_helix_inverse(const Helix& h, Int i) {
  auto w = sigma_inverse(h.thread_at(i - 1), 1);
  return Helix::from_window(h.surface(), w.objects(), i - 1);
}

std::optional<Int> reindex_offset(const Helix& a, const Helix& b) {
  if (!(a.surface() == b.surface()) || a.period() != b.period()) return std::nullopt;
  auto n = static_cast<Int>(a.period());
  for (Int t = -2 * n; t <= 2 * n; ++t) {
    bool same = true;
    for (Int j = 0; j < n && same; ++j) same = b.at(j) == a.at(j + t);
    if (same) return t;
  }
  return std::nullopt;
}

std::optional<Int> twist_offset(const Surface& s, const ExcObject& a, const ExcObject& b) {
  if (a.shift != b.shift || a.cls.rank != b.cls.rank) return std::nullopt;
  Int p = 0;
  if (a.cls.rank != 0) {
    Int step = checked::mul(a.cls.rank, s.canonical()[0]);
    Int delta = checked::sub(b.cls.c1[0], a.cls.c1[0]);
    if (delta % step != 0) return std::nullopt;
    p = delta / step;
  } else {
    // torsion: c1.K = -1, so each twist lowers ch2_x2 by 2
    Int delta = checked::sub(b.cls.ch2_x2, a.cls.ch2_x2);
    if (delta % 2 != 0) return std::nullopt;
    p = -delta / 2;
  }
  if (serre_twist(s, a.cls, p) != b.cls) return std::nullopt;
  return p;
}

bool is_strong_helix(const Helix& h) {
  for (std::size_t s = 0; s < h.period(); ++s)
    if (!is_strong(h.thread_at(static_cast<Int>(s)))) return false;
  return true;
}

namespace {

// Hom complex of two exceptional bundles further apart than one thread.
// Hom and Ext^2 vanishing are decided by stability; the remaining degree
// is read off the sign of chi. nullopt when chi contradicts the vanishing.
std::optional<HomProfile> far_profile(const Surface& s, const ExcObject& a, const ExcObject& b) {
  using checked::mul;
  using checked::sub;
  Int ra = a.cls.rank, rb = b.cls.rank;
  Int da = anticanonical_degree(s, a.cls.c1), db = anticanonical_degree(s, b.cls.c1);
  Int mu_a = mul(da, rb), mu_b = mul(db, ra);  // slopes scaled by ra*rb
  bool hom_possible = mu_a < mu_b || a.cls == b.cls;
  bool ext2_possible = mu_b < sub(mu_a, mul(s.degree(), mul(ra, rb))) || b.cls == serre_twist(s, a.cls, 1);
  Int x = euler_pairing(s, a.cls, b.cls);
  int degree;
  if (!hom_possible && !ext2_possible) {
    if (x > 0) return std::nullopt;
    degree = 1;
  } else if (hom_possible) {
    degree = x >= 0 ? 0 : 1;
  } else {
    degree = x >= 0 ? 2 : 1;
  }
  if (x == 0) return HomProfile::none();
  return HomProfile::concentrated(degree + a.shift - b.shift, x > 0 ? x : -x);
}

}  // namespace

std::optional<std::string> geometric_defect(const Helix& h) {
  const auto& s = h.surface();
  auto n = static_cast<Int>(h.period());
  for (Int i = 0; i < n; ++i)
    if (h.at(i).cls.rank == 0)
      // Ext^1(O_C(d), O_C(d+1)) != 0 for the object and its own twist
      return "object " + std::to_string(i) + " (" + describe(s, h.at(i)) + ") is torsion";
  for (Int t = 0; t < n; ++t)
    if (!is_strong(h.thread_at(t))) return "thread starting at " + std::to_string(t) + " is not strong";
  for (Int a = 0; a < n; ++a) {
    auto ea = h.at(a);
    for (Int b = 0; b < n; ++b) {
      for (Int p = 1;; ++p) {
        if (p > 100000) fail(ErrorKind::invariant, "geometric_bound", "geometricity scan did not stabilise");
        Int idx = b + p * n;
        if (idx < a + n) continue;
        auto eb = h.at(idx);
        auto prof = far_profile(s, ea, eb);
        if (!prof)
          return "chi(" + describe(s, ea) + ", " + describe(s, eb) + ") contradicts vanishing of Hom and Ext^2";
        if (!prof->concentrated_in(0))
          return "Hom(E" + std::to_string(a) + ", E" + std::to_string(idx) + ") = " + to_string(*prof) + " for " +
                 describe(s, ea) + ", " + describe(s, eb);
        // past this point slopes keep growing and chi is positive and increasing
        Int ra = ea.cls.rank, rb = eb.cls.rank;
        bool slope_past = checked::mul(anticanonical_degree(s, ea.cls.c1), rb) <
                          checked::mul(anticanonical_degree(s, eb.cls.c1), ra);
        Int x0 = euler_pairing(s, ea.cls, eb.cls);
        Int x1 = euler_pairing(s, ea.cls, serre_twist(s, eb.cls, -1));
        if (slope_past && x0 > 0 && x1 > x0 && ea.shift == eb.shift) break;
      }
    }
  }
  return std::nullopt;
}

bool is_geometric(const Helix& h) { return !geometric_defect(h).has_value(); }

int Levelling::at(Int i) const {
  auto n = static_cast<Int>(values.size());
  return values[static_cast<std::size_t>(floor_mod(i, n))] + helix_step * static_cast<int>(floor_div(i, n));
}

bool is_monotone(const Levelling& phi) {
  if (phi.values.empty()) return false;
  for (std::size_t k = 0; k + 1 < phi.values.size(); ++k)
    if (phi.values[k] > phi.values[k + 1]) return false;
  return phi.values.back() <= phi.values.front() + helix_step;
}

std::vector<Int> level_indices(const Levelling& phi, int m) {
  std::vector<Int> out;
  auto n = static_cast<Int>(phi.values.size());
  for (Int r = 0; r < n; ++r) {
    Int diff = m - phi.values[static_cast<std::size_t>(r)];
    if (floor_mod(diff, helix_step) == 0) out.push_back(r + diff / helix_step * n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Levelling levelling_from_window(const std::vector<int>& window_values, Int start) {
  auto n = static_cast<Int>(window_values.size());
  Levelling phi{std::vector<int>(window_values.size())};
  for (Int k = 0; k < n; ++k) {
    Int idx = start + k;
    phi.values[static_cast<std::size_t>(floor_mod(idx, n))] =
        window_values[static_cast<std::size_t>(k)] - helix_step * static_cast<int>(floor_div(idx, n));
  }
  return phi;
}

HomProfile p_relatedness(const Collection& c, std::size_t i, std::size_t j) {
  if (i > j || j >= c.size())
    fail(ErrorKind::input, "bad_index", "relatedness needs i <= j < " + std::to_string(c.size()));
  if (i == j) return HomProfile::concentrated(0, 1);
  auto f = dual_by_index(c.surface(), c.objects());
  return hom_profile(c.surface(), f[j], f[i]);
}

bool is_tilting_at_level(const Collection& c, const std::vector<int>& values, int m) {
  if (values.size() != c.size())
    fail(ErrorKind::input, "bad_levelling", "levelling has " + std::to_string(values.size()) + " values for " +
                                                std::to_string(c.size()) + " objects");
  for (std::size_t k = 0; k + 1 < values.size(); ++k)
    if (values[k] > values[k + 1]) fail(ErrorKind::structure, "bad_levelling", "levelling is not monotone");
  const auto& s = c.surface();
  auto f = dual_by_index(s, c.objects());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (values[i] != m) continue;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j == i) continue;
      int p = values[j];
      bool ok = i < j ? hom_profile(s, f[j], f[i]).concentrated_in(p - m)
                      : hom_profile(s, f[i], f[j]).concentrated_in(m - p);
      if (!ok) return false;
    }
  }
  return true;
}

bool is_tilting_at_level(const Helix& h, const Levelling& phi, int m, Int start) {
  if (phi.values.size() != h.period()) fail(ErrorKind::input, "bad_levelling", "levelling length != period");
  if (!is_monotone(phi)) fail(ErrorKind::structure, "bad_levelling", "levelling is not monotone");
  auto n = static_cast<Int>(h.period());
  for (auto idx : level_indices(phi, m))
    if (idx < start || idx >= start + n)
      fail(ErrorKind::structure, "no_thread", "thread at " + std::to_string(start) + " misses level " +
                                                 std::to_string(m));
  std::vector<int> values;
  for (Int k = 0; k < n; ++k) values.push_back(phi.at(start + k));
  return is_tilting_at_level(h.thread_at(start), values, m);
}

bool is_tilting_at_level(const Helix& h, const Levelling& phi, int m) {
  if (phi.values.size() != h.period()) fail(ErrorKind::input, "bad_levelling", "levelling length != period");
  if (!is_monotone(phi)) fail(ErrorKind::structure, "bad_levelling", "levelling is not monotone");
  auto idx = level_indices(phi, m);
  if (idx.empty()) return true;
  if (idx.back() - idx.front() >= static_cast<Int>(h.period()))
    fail(ErrorKind::structure, "no_thread", "no thread contains level " + std::to_string(m));
  return is_tilting_at_level(h, phi, m, idx.front());
}

namespace {

// Clause of the reordering: for lower index j below i, f(F_i) >= f(F_j) and
// equal shifts force F_i > F_j or incomparability.
bool out_of_order(const Surface& s, const ExcObject& lower, const ExcObject& upper) {
  if (upper.shift != lower.shift) return upper.shift < lower.shift;
  return slope_compare(s, upper.cls, lower.cls) == SlopeOrder::less;
}

bool orthogonal(const Surface& s, const ExcObject& a, const ExcObject& b) {
  return euler_pairing(s, a.cls, b.cls) == 0 && euler_pairing(s, b.cls, a.cls) == 0;
}

}  // namespace

Collection reorder_collection(const Collection& c) {
  if (!is_strong(c)) fail(ErrorKind::unsupported, "not_strong", "reordering needs a strong collection");
  const auto& s = c.surface();
  auto objs = c.objects();
  auto n = objs.size();
  std::size_t budget = 4 * n * n + 8;
  for (bool changed = true; changed;) {
    changed = false;
    auto f = dual_by_index(s, objs);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (out_of_order(s, f[k], f[k + 1]) && orthogonal(s, objs[k], objs[k + 1])) {
        std::swap(objs[k], objs[k + 1]);
        changed = true;
        break;
      }
    }
    if (changed && --budget == 0) fail(ErrorKind::structure, "reorder_failed", "reordering did not settle");
  }
  auto f = dual_by_index(s, objs);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i)
      if (out_of_order(s, f[j], f[i]))
        fail(ErrorKind::structure, "reorder_failed",
             "cannot reorder: duals " + describe(s, f[j]) + " and " + describe(s, f[i]) + " stay out of order");
  return Collection(s, std::move(objs));
}

std::vector<int> split_levelling(const Collection& c, std::size_t pos) {
  const auto& s = c.surface();
  auto f = dual_by_index(s, c.objects());
  const auto& anchor = f.at(pos).cls;
  int p = f[pos].shift;
  std::vector<int> values;
  for (std::size_t j = 0; j < f.size(); ++j) {
    int v = f[j].shift - p;
    if (j != pos) {
      auto order = slope_compare(s, f[j].cls, anchor);
      if (j > pos && order == SlopeOrder::greater) ++v;
      if (j < pos && order == SlopeOrder::less) --v;
      // orthogonal neighbours on the distinguished level move off it
      if (v == 0) v = j < pos ? -1 : 1;
    }
    values.push_back(v);
  }
  if (!std::is_sorted(values.begin(), values.end()))
    fail(ErrorKind::structure, "split_not_monotone", "split levelling is not monotone; reorder first");
  return values;
}

namespace {

// Height function on the thread that starts at the distinguished object,
// taking every unconstrained value as small as possible.
std::optional<HeightFunction> height_from_start(const Helix& h, Int e) {
  const auto& s = h.surface();
  auto w = h.window(e);
  auto f = dual_by_index(s, w);
  std::vector<int> values{0};
  int floor = 1;
  for (std::size_t j = 1; j < w.size(); ++j) {
    auto prof = hom_profile(s, f[j], f[0]);
    int v = floor;
    if (!prof.zero) {
      if (prof.degree < floor) return std::nullopt;
      v = prof.degree;
    }
    values.push_back(v);
    floor = v;
  }
  if (values.back() > helix_step - 1) return std::nullopt;
  auto phi = levelling_from_window(values, e);
  if (!is_monotone(phi) || level_indices(phi, 0) != std::vector<Int>{e} || !is_tilting_at_level(h, phi, 0, e))
    fail(ErrorKind::invariant, "height_function_invalid", "constructed levelling is not a height function");
  return HeightFunction{h, std::move(phi), e};
}

}  // namespace

HeightFunction build_height_function(const Helix& h, std::size_t index) {
  if (index >= h.period())
    fail(ErrorKind::input, "bad_vertex", "vertex " + std::to_string(index) + " outside 0.." +
                                            std::to_string(h.period() - 1));
  if (!is_strong_helix(h)) fail(ErrorKind::unsupported, "not_strong", "height functions need a strong helix");
  auto e = static_cast<Int>(index);
  if (auto direct = height_from_start(h, e)) return *direct;

  const auto& s = h.surface();
  auto target = h.at(e);
  auto reordered = reorder_collection(h.thread_at(e));
  auto h2 = Helix::from_window(s, reordered.objects(), e);
  auto pos = static_cast<std::size_t>(
      std::find(reordered.objects().begin(), reordered.objects().end(), target) - reordered.objects().begin());
  Int e2 = e + static_cast<Int>(pos);
  if (auto direct = height_from_start(h2, e2)) return *direct;

  auto values = split_levelling(reordered, pos);
  auto phi = levelling_from_window(values, e);
  if (values.back() - values.front() <= helix_step && is_monotone(phi) &&
      level_indices(phi, 0) == std::vector<Int>{e2} && is_tilting_at_level(h2, phi, 0, e))
    return HeightFunction{h2, std::move(phi), e2};
  fail(ErrorKind::structure, "height_function_failed",
       "no height function found for " + describe(s, target) + " at vertex " + std::to_string(index));
}

std::vector<std::vector<int>> enumerate_height_functions(const Collection& c, std::size_t index, int bound) {
  if (index >= c.size()) fail(ErrorKind::input, "bad_index", "object index outside the collection");
  std::vector<std::vector<int>> out;
  if (bound < 0) return out;
  if (!is_strong(c)) fail(ErrorKind::unsupported, "not_strong", "height functions need a strong collection");
  const auto& s = c.surface();
  auto f = dual_by_index(s, c.objects());
  auto n = c.size();
  // forced[j]: the only allowed value, when the dual pair is not orthogonal
  std::vector<std::optional<int>> forced(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == index) continue;
    auto prof = j > index ? hom_profile(s, f[j], f[index]) : hom_profile(s, f[index], f[j]);
    if (!prof.zero) forced[j] = j > index ? prof.degree : -prof.degree;
  }
  std::vector<int> values(n);
  std::function<void(std::size_t, int)> walk = [&](std::size_t j, int low) {
    if (j == n) {
      if (is_tilting_at_level(c, values, 0)) out.push_back(values);
      return;
    }
    int lo = std::max(low, -bound), hi = bound;
    if (j < index) hi = std::min(hi, -1);
    if (j == index) lo = std::max(lo, 0), hi = std::min(hi, 0);
    if (j > index) lo = std::max(lo, 1);
    if (forced[j]) lo = std::max(lo, *forced[j]), hi = std::min(hi, *forced[j]);
    for (int v = lo; v <= hi; ++v) {
      values[j] = v;
      walk(j + 1, v);
    }
  };
  walk(0, -bound);
  return out;
}

namespace {

struct LevelWindow {
  Int start;
  std::size_t lower;  // size of level m-1
  std::size_t upper;  // size of level m
};

LevelWindow locate_levels(const Helix& h, const Levelling& phi, int m) {
  if (phi.values.size() != h.period()) fail(ErrorKind::input, "bad_levelling", "levelling length != period");
  if (!is_monotone(phi)) fail(ErrorKind::structure, "bad_levelling", "levelling is not monotone");
  auto lo = level_indices(phi, m - 1);
  auto hi = level_indices(phi, m);
  Int start = lo.empty() ? (hi.empty() ? 0 : hi.front()) : lo.front();
  if (lo.size() + hi.size() > h.period())
    fail(ErrorKind::structure, "no_thread", "levels do not fit into one thread");
  return {start, lo.size(), hi.size()};
}

LevelledHelix rebuild(const Helix& h, const Levelling& phi, int m, const LevelWindow& lw,
                      std::vector<ExcObject> head, std::size_t first_part) {
  auto w = h.window(lw.start);
  std::size_t used = lw.lower + lw.upper;
  std::vector<int> values;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k < first_part) values.push_back(m - 1);
    else if (k < used) values.push_back(m);
    else values.push_back(phi.at(lw.start + static_cast<Int>(k)));
  }
  head.insert(head.end(), w.begin() + static_cast<std::ptrdiff_t>(used), w.end());
  return {Helix::from_window(h.surface(), std::move(head), lw.start), levelling_from_window(values, lw.start)};
}

}  // namespace

LevelledHelix levelled_sigma(const Helix& h, const Levelling& phi, int m) {
  auto lw = locate_levels(h, phi, m);
  if (lw.lower + lw.upper == 0) return {h, phi};
  auto w = h.window(lw.start);
  std::vector<ExcObject> lower(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(lw.lower));
  std::vector<ExcObject> head;
  for (std::size_t k = lw.lower; k < lw.lower + lw.upper; ++k)
    head.push_back(shifted(mutate_through(h.surface(), lower, w[k], Side::left), -1));
  head.insert(head.end(), lower.begin(), lower.end());
  return rebuild(h, phi, m, lw, std::move(head), lw.upper);
}

LevelledHelix levelled_sigma_inverse(const Helix& h, const Levelling& phi, int m) {
  auto lw = locate_levels(h, phi, m);
  if (lw.lower + lw.upper == 0) return {h, phi};
  auto w = h.window(lw.start);
  std::vector<ExcObject> upper(w.begin() + static_cast<std::ptrdiff_t>(lw.lower),
                               w.begin() + static_cast<std::ptrdiff_t>(lw.lower + lw.upper));
  std::vector<ExcObject> head = upper;
  for (std::size_t k = 0; k < lw.lower; ++k)
    head.push_back(shifted(mutate_through(h.surface(), upper, w[k], Side::right), 1));
  return rebuild(h, phi, m, lw, std::move(head), lw.upper);
}

TiltResult tilt_unchecked(const Helix& h, std::size_t vertex, Direction direction) {
  auto hf = build_height_function(h, vertex);
  auto left = levelled_sigma(hf.helix, hf.levels, 0);
  auto right = levelled_sigma_inverse(hf.helix, hf.levels, 1);
  if (!reindex_offset(left.helix, right.helix))
    fail(ErrorKind::invariant, "tilt_sides_differ", "left and right tilts differ beyond reindexing");
  auto& out = direction == Direction::left ? left.helix : right.helix;
  if (auto defect = geometric_defect(out))
    fail(ErrorKind::invariant, "tilt_not_geometric", "tilted helix is not geometric: " + *defect);

  const auto& s = h.surface();
  auto n = h.period();
  std::vector<std::size_t> map(n, n);
  std::vector<bool> taken(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == vertex) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (twist_offset(s, h.thread()[j], out.thread()[k])) {
        if (taken[k] || map[j] != n) fail(ErrorKind::invariant, "vertex_map", "ambiguous vertex correspondence");
        map[j] = k;
        taken[k] = true;
      }
    }
    if (map[j] == n) fail(ErrorKind::invariant, "vertex_map", "object lost in tilt");
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!taken[k]) map[vertex] = k;
  return TiltResult{out, std::move(map), std::move(hf)};
}

TiltResult tilt(const Helix& h, std::size_t vertex, Direction direction) {
  if (vertex >= h.period())
    fail(ErrorKind::input, "bad_vertex", "vertex " + std::to_string(vertex) + " outside 0.." +
                                            std::to_string(h.period() - 1));
  if (auto defect = geometric_defect(h))
    fail(ErrorKind::unsupported, "not_geometric", "tilting needs a geometric helix: " + *defect);
  return tilt_unchecked(h, vertex, direction);
}

}  // namespace hx
