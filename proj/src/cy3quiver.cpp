#include "hx/cy3quiver.hpp"

#include <sstream>

namespace hx {

using checked::add;
using checked::mul;
using checked::sub;

bool is_skew(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) return false;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != -m[j][i]) return false;
  }
  return true;
}

bool has_loops_or_two_cycles(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i][i] != 0) return true;
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i][j] > 0 && a[j][i] > 0) return true;
  }
  return false;
}

Quiver thread_quiver(const Collection& c) {
  if (!is_strong(c)) fail(ErrorKind::unsupported, "not_strong", "thread quiver needs a strong collection");
  const auto& s = c.surface();
  auto f = dual_by_index(s, c.objects());
  auto n = c.size();
  Quiver q;
  q.arrows.assign(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    q.labels.push_back(describe(s, c[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      auto prof = hom_profile(s, f[j], f[i]);
      if (!prof.zero && prof.degree == 1) q.arrows[i][j] = prof.dim;
    }
  }
  return q;
}

BMatrix skew_euler_matrix(const Collection& thread) {
  const auto& s = thread.surface();
  auto f = dual_by_index(s, thread.objects());
  auto n = thread.size();
  BMatrix r{IntMatrix(n, std::vector<Int>(n, 0))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) r.b[i][j] = sub(chi(s, f[i], f[j]), chi(s, f[j], f[i]));
  return r;
}

BMatrix rolled_b_matrix(const Helix& h, Int start) {
  if (auto defect = geometric_defect(h))
    fail(ErrorKind::unsupported, "not_geometric", "rolled-up quiver needs a geometric helix: " + *defect);
  return skew_euler_matrix(h.thread_at(start));
}

std::vector<std::string> vertex_labels(const Helix& h) {
  std::vector<std::string> labels;
  for (const auto& o : h.thread().objects()) labels.push_back(describe(h.surface(), o));
  return labels;
}

Quiver rolled_quiver(const BMatrix& b, std::vector<std::string> labels) {
  if (!is_skew(b.b)) fail(ErrorKind::input, "not_skew", "b-matrix is not skew-symmetric");
  auto n = b.size();
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (labels.size() != n) fail(ErrorKind::input, "dimension_mismatch", "label count differs from matrix size");
  Quiver q{std::move(labels), IntMatrix(n, std::vector<Int>(n, 0))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q.arrows[i][j] = b.b[i][j] > 0 ? b.b[i][j] : 0;
  if (has_loops_or_two_cycles(q.arrows)) fail(ErrorKind::invariant, "two_cycle", "quiver has a loop or 2-cycle");
  return q;
}

BMatrix fz_mutate(const BMatrix& b, std::size_t k) {
  auto n = b.size();
  if (k >= n) fail(ErrorKind::input, "bad_vertex", "mutation vertex outside the matrix");
  BMatrix r = b;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      if (j == k || l == k) {
        r.b[j][l] = -b.b[j][l];
        continue;
      }
      Int kj = b.b[k][j], kl = b.b[k][l];
      if ((kj > 0 && kl < 0) || (kj < 0 && kl > 0)) r.b[j][l] = add(b.b[j][l], mul(kj < 0 ? -kj : kj, kl));
    }
  return r;
}

IntMatrix tilted_simple_classes(const BMatrix& b, std::size_t i, Direction direction) {
  auto n = b.size();
  if (i >= n) fail(ErrorKind::input, "bad_vertex", "tilt vertex outside the matrix");
  IntMatrix t(n, std::vector<Int>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    t[j][j] = 1;
    if (j == i) continue;
    // ext1(S_i, S_j) is the number of arrows j -> i
    Int ext = direction == Direction::left ? b.b[j][i] : b.b[i][j];
    if (ext > 0) t[j][i] = ext;
  }
  t[i][i] = -1;
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  auto n = a.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix r(n, std::vector<Int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < m; ++j) r[i][j] = add(r[i][j], mul(a[i][k], b[k][j]));
  return r;
}

IntMatrix conjugate(const IntMatrix& t, const IntMatrix& b) {
  IntMatrix tt(t.empty() ? 0 : t[0].size(), std::vector<Int>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j) tt[j][i] = t[i][j];
  return multiply(multiply(t, b), tt);
}

CrossCheck cross_check_tilt(const Helix& h, const BMatrix& before, std::size_t vertex, Direction direction) {
  auto result = tilt_unchecked(h, vertex, direction);
  auto after = skew_euler_matrix(result.helix.thread());
  auto n = h.period();
  CrossCheck report{false, vertex, before, fz_mutate(before, vertex), BMatrix{IntMatrix(n, std::vector<Int>(n))},
                    result.vertex_map, result.helix};
  const auto& psi = result.vertex_map;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) report.actual.b[j][k] = after.b[psi[j]][psi[k]];
  report.match = report.actual == report.expected;
  if (conjugate(tilted_simple_classes(before, vertex, direction), before.b) != report.expected.b)
    fail(ErrorKind::invariant, "transform_mismatch", "simple-class transform disagrees with quiver mutation");
  return report;
}

CrossCheck cross_check_tilt(const Helix& h, std::size_t vertex, Direction direction) {
  if (vertex >= h.period()) fail(ErrorKind::input, "bad_vertex", "vertex outside the helix period");
  return cross_check_tilt(h, rolled_b_matrix(h), vertex, direction);
}

std::string to_dot(const Quiver& q) {
  std::ostringstream out;
  out << "digraph {\n";
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::string label = q.labels.size() == q.size() ? q.labels[i] : std::to_string(i);
    std::string escaped;
    for (char ch : label) {
      if (ch == '"' || ch == '\\') escaped += '\\';
      escaped += ch;
    }
    out << "  " << i << " [label=\"" << i << ": " << escaped << "\"];\n";
  }
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      if (q.arrows[i][j] > 0) out << "  " << i << " -> " << j << " [label=" << q.arrows[i][j] << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace hx
