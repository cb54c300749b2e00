#include "hx/excol.hpp"

#include <sstream>

namespace hx {

ExcObject make_object(const Surface& s, ChernClass cls, int shift) {
  check_class(s, cls);
  if (!is_sheaf_normalized(s, cls))
    fail(ErrorKind::domain, "not_normalized",
         "class " + describe(s, cls) + " is not sheaf-normalized (need rank > 0, or rank 0 with c1.(-K) = 1)");
  if (euler_pairing(s, cls, cls) != 1)
    fail(ErrorKind::domain, "not_exceptional", "class " + describe(s, cls) + " has chi(v,v) != 1");
  return ExcObject{std::move(cls), shift};
}

ExcObject shifted(ExcObject e, int by) {
  e.shift += by;
  return e;
}

ChernClass signed_class(const ExcObject& e) { return (e.shift % 2 == 0) ? e.cls : -e.cls; }

Int chi(const Surface& s, const ExcObject& a, const ExcObject& b) {
  Int x = euler_pairing(s, a.cls, b.cls);
  return ((a.shift + b.shift) % 2 == 0) ? x : -x;
}

std::string describe(const Surface& s, const ExcObject& e) {
  auto text = describe(s, e.cls);
  if (e.shift != 0) text += "[" + std::to_string(e.shift) + "]";
  return text;
}

std::string to_string(const HomProfile& h) {
  if (h.zero) return "zero";
  return "concentrated(" + std::to_string(h.degree) + ", " + std::to_string(h.dim) + ")";
}

HomProfile hom_profile(const Surface& s, const ExcObject& a, const ExcObject& b) {
  Int forward = euler_pairing(s, a.cls, b.cls);
  Int backward = euler_pairing(s, b.cls, a.cls);
  if (forward != 0 && backward != 0)
    fail(ErrorKind::domain, "not_exceptional_pair",
         describe(s, a) + " and " + describe(s, b) + " are not an exceptional pair in either order");
  auto order = slope_compare(s, a.cls, b.cls);
  if (order == SlopeOrder::equal)
    fail(ErrorKind::domain, "same_object", "Hom profile of " + describe(s, a) + " with a shift of itself");
  if (order == SlopeOrder::incomparable) {
    if (forward != 0)
      fail(ErrorKind::invariant, "profile_inconsistent",
           "incomparable sheaves " + describe(s, a) + ", " + describe(s, b) + " with nonzero chi");
    return HomProfile::none();
  }
  if (forward == 0) return HomProfile::none();
  int delta = order == SlopeOrder::less ? 0 : 1;
  // Hom^k(A,B) sits in degree delta for the underlying sheaves
  if ((delta == 0) != (forward > 0))
    fail(ErrorKind::invariant, "profile_inconsistent",
         "sign of chi(" + describe(s, a.cls) + ", " + describe(s, b.cls) + ") = " + std::to_string(forward) +
             " contradicts slope order");
  return HomProfile::concentrated(a.shift - b.shift + delta, forward > 0 ? forward : -forward);
}

ExcObject left_mutate(const Surface& s, const ExcObject& e, const ExcObject& x) {
  if (euler_pairing(s, x.cls, e.cls) != 0)
    fail(ErrorKind::mutation, "mutation_undefined",
         "left mutation of " + describe(s, x) + " through " + describe(s, e) + ": chi(X,E) != 0");
  Int k = euler_pairing(s, e.cls, x.cls);
  if (k == 0) return x;
  auto n = sheaf_normalize(s, x.cls - k * e.cls);
  return ExcObject{std::move(n.cls), x.shift + n.parity};
}

ExcObject right_mutate(const Surface& s, const ExcObject& f, const ExcObject& y) {
  if (euler_pairing(s, f.cls, y.cls) != 0)
    fail(ErrorKind::mutation, "mutation_undefined",
         "right mutation of " + describe(s, y) + " through " + describe(s, f) + ": chi(F,Y) != 0");
  Int k = euler_pairing(s, y.cls, f.cls);
  if (k == 0) return y;
  auto n = sheaf_normalize(s, y.cls - k * f.cls);
  return ExcObject{std::move(n.cls), y.shift - n.parity};
}

ExcObject mutate_through(const Surface& s, std::span<const ExcObject> sub, const ExcObject& x, Side side) {
  ExcObject r = x;
  if (side == Side::left) {
    for (auto it = sub.rbegin(); it != sub.rend(); ++it) r = left_mutate(s, *it, r);
  } else {
    for (const auto& f : sub) r = right_mutate(s, f, r);
  }
  return r;
}

std::optional<std::string> collection_defect(const Surface& s, std::span<const ExcObject> objects) {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    if (o.cls.c1.size() != s.picard_rank()) return "object " + std::to_string(i) + " has wrong c1 length";
    if (!is_integral(s, o.cls)) return "object " + std::to_string(i) + " violates integrality";
    if (!is_sheaf_normalized(s, o.cls)) return "object " + std::to_string(i) + " is not sheaf-normalized";
    if (euler_pairing(s, o.cls, o.cls) != 1)
      return "object " + std::to_string(i) + " (" + describe(s, o) + ") is not exceptional";
  }
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = i + 1; j < objects.size(); ++j)
      if (euler_pairing(s, objects[j].cls, objects[i].cls) != 0)
        return "chi(E" + std::to_string(j) + ", E" + std::to_string(i) + ") != 0 for " + describe(s, objects[j]) +
               ", " + describe(s, objects[i]);
  return std::nullopt;
}

Collection::Collection(Surface surface, std::vector<ExcObject> objects)
    : surface_(std::move(surface)), objects_(std::move(objects)) {
  if (auto defect = collection_defect(surface_, objects_))
    fail(ErrorKind::structure, "not_exceptional", "not an exceptional collection: " + *defect);
}

BlockStructure blocks_from_sizes(std::span<const std::size_t> sizes) {
  BlockStructure b;
  std::size_t next = 0;
  for (auto n : sizes) {
    std::vector<std::size_t> block;
    for (std::size_t k = 0; k < n; ++k) block.push_back(next++);
    b.blocks.push_back(std::move(block));
  }
  return b;
}

Collection sigma(const Collection& c, std::size_t pos) {
  if (pos == 0 || pos >= c.size())
    fail(ErrorKind::input, "bad_index", "sigma position " + std::to_string(pos) + " outside 1.." +
                                           std::to_string(c.size() - 1));
  auto objs = c.objects();
  const auto& s = c.surface();
  auto moved = shifted(left_mutate(s, objs[pos - 1], objs[pos]), -1);
  objs[pos] = objs[pos - 1];
  objs[pos - 1] = std::move(moved);
  return Collection(s, std::move(objs));
}

Collection sigma_inverse(const Collection& c, std::size_t pos) {
  if (pos == 0 || pos >= c.size())
    fail(ErrorKind::input, "bad_index", "sigma position " + std::to_string(pos) + " outside 1.." +
                                           std::to_string(c.size() - 1));
  auto objs = c.objects();
  const auto& s = c.surface();
  auto moved = shifted(right_mutate(s, objs[pos], objs[pos - 1]), 1);
  objs[pos - 1] = objs[pos];
  objs[pos] = std::move(moved);
  return Collection(s, std::move(objs));
}

namespace {

void require_blocks(const Collection& c, const BlockStructure& b, std::size_t pos) {
  if (!is_block(c, b)) fail(ErrorKind::structure, "bad_blocks", "invalid block structure");
  if (pos == 0 || pos >= b.blocks.size())
    fail(ErrorKind::input, "bad_index", "tau position " + std::to_string(pos) + " outside 1.." +
                                           std::to_string(b.blocks.size() - 1));
}

std::vector<ExcObject> pick(const Collection& c, const std::vector<std::size_t>& idx) {
  std::vector<ExcObject> r;
  for (auto i : idx) r.push_back(c[i]);
  return r;
}

BlockedCollection reassemble(const Collection& c, const BlockStructure& b, std::size_t pos,
                             std::vector<ExcObject> first, std::vector<ExcObject> second) {
  std::vector<ExcObject> objs;
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k < b.blocks.size(); ++k) {
    if (k == pos - 1) {
      objs.insert(objs.end(), first.begin(), first.end());
      sizes.push_back(first.size());
    } else if (k == pos) {
      objs.insert(objs.end(), second.begin(), second.end());
      sizes.push_back(second.size());
    } else {
      for (auto i : b.blocks[k]) objs.push_back(c[i]);
      sizes.push_back(b.blocks[k].size());
    }
  }
  Collection out(c.surface(), std::move(objs));
  auto blocks = blocks_from_sizes(sizes);
  if (!is_block(out, blocks)) fail(ErrorKind::invariant, "bad_blocks", "tau destroyed the block structure");
  return {std::move(out), std::move(blocks)};
}

}  // namespace

BlockedCollection tau(const Collection& c, const BlockStructure& blocks, std::size_t pos) {
  require_blocks(c, blocks, pos);
  auto before = pick(c, blocks.blocks[pos - 1]);
  auto moving = pick(c, blocks.blocks[pos]);
  std::vector<ExcObject> moved;
  for (const auto& x : moving) moved.push_back(shifted(mutate_through(c.surface(), before, x, Side::left), -1));
  return reassemble(c, blocks, pos, std::move(moved), std::move(before));
}

BlockedCollection tau_inverse(const Collection& c, const BlockStructure& blocks, std::size_t pos) {
  require_blocks(c, blocks, pos);
  auto moving = pick(c, blocks.blocks[pos - 1]);
  auto after = pick(c, blocks.blocks[pos]);
  std::vector<ExcObject> moved;
  for (const auto& x : moving) moved.push_back(shifted(mutate_through(c.surface(), after, x, Side::right), 1));
  return reassemble(c, blocks, pos, std::move(after), std::move(moved));
}

std::vector<ExcObject> dual_by_index(const Surface& s, std::span<const ExcObject> objects) {
  std::vector<ExcObject> f;
  f.reserve(objects.size());
  for (std::size_t j = 0; j < objects.size(); ++j)
    f.push_back(mutate_through(s, objects.first(j), objects[j], Side::left));
  return f;
}

Collection dual_collection(const Collection& c) {
  auto f = dual_by_index(c.surface(), c.objects());
  return Collection(c.surface(), std::vector<ExcObject>(f.rbegin(), f.rend()));
}

bool is_strong(const Collection& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (!hom_profile(c.surface(), c[i], c[j]).concentrated_in(0)) return false;
  return true;
}

bool is_pure(const Collection& c) {
  for (const auto& o : c.objects())
    if (o.shift != 0) return false;
  return true;
}

IntMatrix class_matrix(const Collection& c) {
  IntMatrix m;
  for (const auto& o : c.objects()) {
    auto v = signed_class(o);
    std::vector<Int> row{v.rank};
    row.insert(row.end(), v.c1.begin(), v.c1.end());
    row.push_back(euler_characteristic(c.surface(), v));
    m.push_back(std::move(row));
  }
  return m;
}

Int determinant(IntMatrix m) {
  // fraction-free Bareiss elimination
  auto n = m.size();
  if (n == 0) return 1;
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorKind::input, "dimension_mismatch", "determinant of a non-square matrix");
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = t / prev;
      }
    prev = a[k][k];
  }
  __int128 d = a[n - 1][n - 1] * sign;
  if (d > INT64_MAX || d < INT64_MIN) fail(ErrorKind::overflow, "overflow", "determinant exceeds 64 bits");
  return static_cast<Int>(d);
}

bool is_numerically_full(const Collection& c) {
  if (c.size() != c.surface().k_rank()) return false;
  auto d = determinant(class_matrix(c));
  return d == 1 || d == -1;
}

bool is_block(const Collection& c, const BlockStructure& b) {
  std::size_t next = 0;
  for (const auto& block : b.blocks) {
    if (block.empty()) return false;
    for (auto i : block)
      if (i != next++) return false;
  }
  if (next != c.size()) return false;
  const auto& s = c.surface();
  for (const auto& block : b.blocks)
    for (std::size_t x = 0; x < block.size(); ++x)
      for (std::size_t y = x + 1; y < block.size(); ++y)
        if (euler_pairing(s, c[block[x]].cls, c[block[y]].cls) != 0 ||
            euler_pairing(s, c[block[y]].cls, c[block[x]].cls) != 0)
          return false;
  return true;
}

}  // namespace hx
