#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hx/web.hpp"
#include "support/words.hpp"

using namespace hx;
using hx::test::collection;
using hx::test::lb;

namespace {

// Geometric helices from the depth-2 webs of every seed.
const std::vector<Helix>& web_helices() {
  static const std::vector<Helix> all = [] {
    std::vector<Helix> r;
    for (const auto& name : seed_names())
      for (auto& node : web_bfs(seed(name), 2).nodes) r.push_back(node.helix);
    return r;
  }();
  return all;
}

std::vector<ExcObject> sorted(std::vector<ExcObject> v) {
  std::sort(v.begin(), v.end(), [](const ExcObject& a, const ExcObject& b) {
    return std::tie(a.cls, a.shift) < std::tie(b.cls, b.shift);
  });
  return v;
}

std::vector<ExcObject> pick(const Helix& h, const std::vector<Int>& idx) {
  std::vector<ExcObject> r;
  for (auto i : idx) r.push_back(h.at(i));
  return r;
}

}  // namespace

TEST_CASE("helix indexing") {
  auto p2 = seed("p2");
  auto s = p2.surface();
  CHECK(p2.at(-1) == lb(s, {-1}));
  CHECK(p2.at(-3) == lb(s, {-3}));
  CHECK(p2.at(3) == lb(s, {3}));
  CHECK(p2.at(7) == lb(s, {7}));
  auto q = seed("quadric");
  CHECK(q.at(4) == lb(q.surface(), {2, 2}));
  CHECK(q.at(-1) == lb(q.surface(), {-1, -1}));
  for (Int k = -5; k <= 5; ++k) CHECK(Helix::from_window(q.surface(), q.window(k), k) == q);
  CHECK(object_at(q, 6) == q.at(6));
  CHECK_THROWS_AS(Helix(collection(q.surface(), {{0, 0}, {1, 0}})), Error);
}

TEST_CASE("rho and reindexing") {
  for (const auto& name : seed_names()) {
    auto h = seed(name);
    auto r = rho(h);
    CHECK(r.thread().objects() == h.window(1));
    CHECK(reindex_offset(h, r) == Int{1});
    CHECK(reindex_offset(r, h) == Int{-1});
    CHECK(reindex_offset(h, h) == Int{0});
  }
  CHECK_FALSE(reindex_offset(seed("quadric"), sigma_helix(seed("quadric"), 2)));
}

TEST_CASE("twist offsets") {
  auto q = Surface::quadric();
  CHECK(twist_offset(q, lb(q, {0, 0}), lb(q, {2, 2})) == Int{-1});
  CHECK(twist_offset(q, lb(q, {1, 0}), lb(q, {-1, -2})) == Int{1});
  CHECK_FALSE(twist_offset(q, lb(q, {1, 0}), lb(q, {0, 1})));
  CHECK_FALSE(twist_offset(q, lb(q, {0, 0}), lb(q, {2, 2}, 1)));
}

TEST_CASE("helix braid relations, periodicity and rho conjugation") {
  std::mt19937_64 rng(4);
  for (const auto& name : seed_names()) {
    auto base = seed(name);
    auto n = static_cast<Int>(base.period());
    for (int k = 0; k < 40; ++k) {
      auto h = Helix(hx::test::random_mutation(base.thread(), rng, static_cast<int>(rng() % 4)));
      for (Int i = -n; i <= n; ++i) {
        CHECK(sigma_helix(sigma_helix(sigma_helix(h, i), i + 1), i) ==
              sigma_helix(sigma_helix(sigma_helix(h, i + 1), i), i + 1));
        CHECK(sigma_helix(h, i + n) == sigma_helix(h, i));
        CHECK(rho(sigma_helix(h, i)) == sigma_helix(rho(h), i - 1));
        CHECK(sigma_helix_inverse(sigma_helix(h, i), i) == h);
        for (Int j = i + 2; j <= i + n - 2; ++j)
          CHECK(sigma_helix(sigma_helix(h, i), j) == sigma_helix(sigma_helix(h, j), i));
      }
    }
  }
}

TEST_CASE("geometricity") {
  for (const auto& name : seed_names()) {
    CHECK(is_geometric(seed(name)));
    CHECK(is_strong_helix(seed(name)));
  }
  auto q = Surface::quadric();
  Helix eghel_c(collection(q, {{0, 0}, {1, 0}, {3, 1}, {4, 1}}));
  CHECK(is_strong(eghel_c.thread()));
  CHECK_FALSE(is_strong_helix(eghel_c));
  CHECK_FALSE(is_geometric(eghel_c));
  CHECK(geometric_defect(eghel_c)->find("not strong") != std::string::npos);
  CHECK_FALSE(is_strong(collection(q, {{0, 0}, {1, 0}, {-2, 1}, {-1, 1}})));
  CHECK_FALSE(is_geometric(sigma_helix(seed("quadric"), 2)));
  auto dp1 = Surface::blowup(1);
  // a helix through the torsion sheaf of the exceptional curve
  auto with_torsion = sigma(seed("dp1").thread(), 2);
  bool torsion = false;
  for (const auto& o : with_torsion.objects()) torsion = torsion || o.cls.rank == 0;
  if (torsion) CHECK_FALSE(is_geometric(Helix(with_torsion)));
  for (const auto& h : web_helices()) CHECK(is_geometric(h));
}

TEST_CASE("levellings") {
  Levelling phi{{0, 1, 1, 2}};
  CHECK(phi.at(4) == 3);
  CHECK(phi.at(-1) == -1);
  CHECK(is_monotone(phi));
  CHECK_FALSE(is_monotone(Levelling{{0, 2, 1, 2}}));
  CHECK_FALSE(is_monotone(Levelling{{0, 1, 1, 4}}));
  CHECK(level_indices(phi, 1) == std::vector<Int>{1, 2});
  CHECK(level_indices(phi, 3) == std::vector<Int>{4});
  CHECK(level_indices(phi, -2) == std::vector<Int>{-3, -2});
  CHECK(levelling_from_window({3, 4, 4, 5}, 4) == phi);
}

TEST_CASE("block levellings are tilting at every level") {
  auto q = seed("quadric");
  Levelling phi{{0, 1, 1, 2}};
  for (int m = -3; m <= 5; ++m) CHECK(is_tilting_at_level(q, phi, m));
  CHECK(is_tilting_at_level(q.thread(), {0, 1, 1, 2}, 1));
  CHECK_FALSE(is_tilting_at_level(q.thread(), {0, 0, 1, 2}, 0));
  CHECK_THROWS_AS(is_tilting_at_level(q.thread(), {0, 2, 1, 2}, 0), Error);
  CHECK(p_relatedness(q.thread(), 0, 1) == HomProfile::concentrated(1, 2));
  CHECK(p_relatedness(q.thread(), 1, 2) == HomProfile::none());
  CHECK(p_relatedness(q.thread(), 0, 3) == HomProfile::concentrated(2, 4));
}

TEST_CASE("height function enumeration on the quadric collection") {
  auto q = Surface::quadric();
  auto c = collection(q, {{0, 0}, {1, 0}, {1, 1}, {2, 1}});
  CHECK(dual_collection(c).objects() ==
        std::vector<ExcObject>{lb(q, {0, -1}, 2), lb(q, {1, -1}, 1), lb(q, {-1, 0}, 1), lb(q, {0, 0})});
  CHECK(enumerate_height_functions(c, 3, 3) == std::vector<std::vector<int>>{{-2, -2, -1, 0}, {-2, -1, -1, 0}});
  CHECK(enumerate_height_functions(c, 1, 3) ==
        std::vector<std::vector<int>>{{-1, 0, 1, 1}, {-1, 0, 1, 2}, {-1, 0, 1, 3}});
  CHECK(enumerate_height_functions(c, 1, 5).size() == 5);
  for (std::size_t pos = 0; pos < 4; ++pos) {
    auto all = enumerate_height_functions(c, pos, 4);
    CHECK(std::find(all.begin(), all.end(), split_levelling(c, pos)) != all.end());
  }
  CHECK(enumerate_height_functions(c, 1, -1).empty());
  CHECK_THROWS_AS(enumerate_height_functions(c, 4, 3), Error);
}

TEST_CASE("constructed height functions are height functions") {
  for (const auto& h : web_helices())
    for (std::size_t v = 0; v < h.period(); ++v) {
      auto hf = build_height_function(h, v);
      CHECK(is_monotone(hf.levels));
      CHECK(level_indices(hf.levels, 0) == std::vector<Int>{hf.index});
      CHECK(hf.helix.at(hf.index) == h.at(static_cast<Int>(v)));
      CHECK(is_tilting_at_level(hf.helix, hf.levels, 0));
      // every thread through the level gives the same verdict
      auto n = static_cast<Int>(h.period());
      for (Int start = hf.index - n + 1; start <= hf.index; ++start)
        CHECK(is_tilting_at_level(hf.helix, hf.levels, 0, start));
    }
  CHECK_THROWS_AS(build_height_function(seed("quadric"), 4), Error);
}

TEST_CASE("tilting verdict is independent of the thread") {
  std::mt19937_64 rng(8);
  for (const auto& h : web_helices()) {
    auto n = h.period();
    for (int k = 0; k < 3; ++k) {
      std::vector<int> v(n);
      std::uniform_int_distribution<int> step(0, 1);
      for (std::size_t i = 1; i < n; ++i) v[i] = v[i - 1] + step(rng);
      if (v.back() > helix_step) continue;
      Levelling phi{v};
      for (int m = -1; m <= 3; ++m) {
        auto idx = level_indices(phi, m);
        if (idx.empty() || idx.back() - idx.front() >= static_cast<Int>(n)) continue;
        bool first = is_tilting_at_level(h, phi, m, idx.back() - static_cast<Int>(n) + 1);
        for (Int start = idx.back() - static_cast<Int>(n) + 2; start <= idx.front(); ++start)
          CHECK(is_tilting_at_level(h, phi, m, start) == first);
      }
    }
  }
}

TEST_CASE("relatedness in neighbouring threads") {
  for (const auto& h : web_helices()) {
    auto n = h.period();
    auto t0 = h.thread_at(0), t1 = h.thread_at(1);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      auto a = p_relatedness(t0, 0, i);
      auto b = p_relatedness(t1, i - 1, n - 1);
      CHECK(a.zero == b.zero);
      if (!a.zero && !b.zero) CHECK(b.degree == helix_step - a.degree);
      for (std::size_t j = i; j + 1 < n; ++j) CHECK(p_relatedness(t0, i, j) == p_relatedness(t1, i - 1, j - 1));
    }
    auto a = p_relatedness(t0, 0, n - 1);
    auto b = p_relatedness(t1, n - 2, n - 1);
    CHECK(a.zero == b.zero);
    if (!a.zero && !b.zero) CHECK(b.degree == helix_step - a.degree);
  }
}

TEST_CASE("dual of the neighbouring thread") {
  for (const auto& h : web_helices()) {
    const auto& s = h.surface();
    auto n = h.period();
    for (Int start = 0; start < static_cast<Int>(n); ++start) {
      auto f = dual_by_index(s, h.window(start));
      std::vector<ExcObject> expected;
      for (std::size_t k = n - 1; k-- > 0;) expected.push_back(left_mutate(s, f[n - 1], f[k]));
      expected.push_back(shifted(f[n - 1], 1 - helix_step));
      CHECK(dual_collection(h.thread_at(start - 1)).objects() == expected);
    }
  }
}

TEST_CASE("two sigmas around an orthogonal level advance the levelling") {
  auto check_round = [](const Helix& h, const Levelling& phi, int m) {
    auto once = levelled_sigma(h, phi, m);
    auto twice = levelled_sigma(once.helix, once.levels, m - 1);
    auto t = reindex_offset(h, twice.helix);
    REQUIRE(t);
    for (Int j = -8; j <= 8; ++j) CHECK(twice.levels.at(j) == phi.at(j + *t) + 1);
  };
  auto q = seed("quadric");
  Levelling blocks{{0, 1, 1, 2}};
  for (int m = -2; m <= 4; ++m) check_round(q, blocks, m);
  check_round(seed("p2"), Levelling{{0, 1, 2}}, 1);
  check_round(seed("dp2"), Levelling{{0, 1, 1, 2, 3}}, 2);
  for (const auto& h : web_helices())
    for (std::size_t v = 0; v < h.period(); ++v) {
      auto hf = build_height_function(h, v);
      check_round(hf.helix, hf.levels, 0);
    }
}

TEST_CASE("left and right mutations of consecutive levels agree") {
  // L_{E_k}..L_{E_2}(E_3)[k-3] = R_{E_{k-1}}..R_{E_1}(E_0)[k-1] when level 3 is orthogonal
  auto check_levels = [](const Helix& h, const Levelling& phi) {
    const auto& s = h.surface();
    std::vector<std::vector<ExcObject>> level;
    for (int m = 0; m <= 3; ++m) level.push_back(pick(h, level_indices(phi, m)));
    for (int k = 1; k <= 3; ++k) {
      std::vector<ExcObject> lefts, through_left, through_right, rights;
      for (int m = k; m <= 2; ++m) through_left.insert(through_left.end(), level[m].begin(), level[m].end());
      for (int m = 1; m <= k - 1; ++m) through_right.insert(through_right.end(), level[m].begin(), level[m].end());
      for (const auto& x : level[3]) lefts.push_back(shifted(mutate_through(s, through_left, x, Side::left), k - 3));
      for (const auto& x : level[0])
        rights.push_back(shifted(mutate_through(s, through_right, x, Side::right), k - 1));
      CHECK(sorted(lefts) == sorted(rights));
    }
  };
  check_levels(seed("quadric"), Levelling{{0, 1, 1, 2}});
  check_levels(seed("p2"), Levelling{{0, 1, 2}});
  for (const auto& h : web_helices())
    for (std::size_t v = 0; v < h.period(); ++v) {
      auto hf = build_height_function(h, v);
      Levelling shifted_levels{hf.levels.values};
      for (auto& x : shifted_levels.values) x += 3;
      check_levels(hf.helix, shifted_levels);
    }
}

TEST_CASE("reordering and split levellings") {
  std::mt19937_64 rng(12);
  int checked = 0;
  for (const auto& name : seed_names()) {
    auto base = seed(name).thread();
    CHECK(reorder_collection(base) == base);
    for (int k = 0; k < 300; ++k) {
      auto c = hx::test::random_mutation(base, rng, 1 + k % 4);
      if (!is_strong(c)) {
        CHECK_THROWS_AS(reorder_collection(c), Error);
        continue;
      }
      auto r = reorder_collection(c);
      CHECK(is_numerically_full(r));
      for (std::size_t p = 0; p < r.size(); ++p) {
        auto values = split_levelling(r, p);
        CHECK(values[p] == 0);
        CHECK(std::count(values.begin(), values.end(), 0) == 1);
        CHECK(is_tilting_at_level(r, values, 0));
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("levelled sigma and its inverse") {
  auto q = seed("quadric");
  Levelling phi{{0, 1, 1, 2}};
  auto l = levelled_sigma(q, phi, 1);
  auto back = levelled_sigma_inverse(l.helix, l.levels, 1);
  auto t = reindex_offset(q, back.helix);
  REQUIRE(t);
  for (Int j = -5; j <= 5; ++j) CHECK(back.levels.at(j) == phi.at(j + *t));
  CHECK_THROWS_AS(levelled_sigma(q, Levelling{{0, 1}}, 0), Error);
}

TEST_CASE("tilts of the quadric seed") {
  auto h = seed("quadric");
  const auto& q = h.surface();
  auto at_b = tilt(h, 2);
  auto expected_b = Helix(collection(q, {{0, 0}, {1, 0}, {1, 1}, {2, 1}}));
  CHECK(reindex_offset(expected_b, at_b.helix));
  auto at_a = tilt(h, 1);
  auto expected_a = Helix(collection(q, {{0, 0}, {0, 1}, {1, 1}, {1, 2}}));
  CHECK(reindex_offset(expected_a, at_a.helix));
  for (std::size_t v = 0; v < 4; ++v) {
    auto l = tilt(h, v, Direction::left), r = tilt(h, v, Direction::right);
    CHECK(reindex_offset(l.helix, r.helix));
    CHECK(is_geometric(l.helix));
    auto sorted_map = l.vertex_map;
    std::sort(sorted_map.begin(), sorted_map.end());
    CHECK(sorted_map == std::vector<std::size_t>{0, 1, 2, 3});
  }
  CHECK_THROWS_AS(tilt(h, 4), Error);
  CHECK_THROWS_AS(tilt(sigma_helix(h, 2), 0), Error);
}
