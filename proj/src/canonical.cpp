#include "hx/canonical.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace hx {

namespace {

using Colouring = std::vector<std::size_t>;

std::size_t class_count(const Colouring& c) {
  auto sorted = c;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

// Colour refinement: a vertex's new colour ranks its old colour together with
// the multisets of (neighbour colour, multiplicity) over out- and in-arrows.
Colouring refine(const IntMatrix& a, Colouring colour) {
  auto n = a.size();
  using Signature = std::tuple<std::size_t, std::vector<std::pair<std::size_t, Int>>,
                               std::vector<std::pair<std::size_t, Int>>>;
  for (;;) {
    std::vector<Signature> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto& [own, out, in] = sig[v];
      own = colour[v];
      for (std::size_t w = 0; w < n; ++w) {
        if (a[v][w] != 0) out.emplace_back(colour[w], a[v][w]);
        if (a[w][v] != 0) in.emplace_back(colour[w], a[w][v]);
      }
      std::sort(out.begin(), out.end());
      std::sort(in.begin(), in.end());
    }
    auto distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    Colouring next(n);
    for (std::size_t v = 0; v < n; ++v)
      next[v] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (class_count(next) == class_count(colour)) return next;
    colour = std::move(next);
  }
}

std::string serialize(const IntMatrix& a, const Colouring& discrete) {
  auto n = a.size();
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[discrete[v]] = v;
  std::string key = std::to_string(n) + ":";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i + j > 0) key += ',';
      key += std::to_string(a[order[i]][order[j]]);
    }
  return key;
}

void search(const IntMatrix& a, const Colouring& colour, std::string& best) {
  auto n = a.size();
  auto refined = refine(a, colour);
  if (class_count(refined) == n) {
    auto key = serialize(a, refined);
    if (best.empty() || key < best) best = std::move(key);
    return;
  }
  // first (lowest-colour) non-singleton cell
  std::map<std::size_t, std::vector<std::size_t>> cells;
  for (std::size_t v = 0; v < n; ++v) cells[refined[v]].push_back(v);
  const std::vector<std::size_t>* cell = nullptr;
  for (const auto& [c, members] : cells)
    if (members.size() > 1) {
      cell = &members;
      break;
    }
  for (auto v : *cell) {
    Colouring split(n);
    for (std::size_t w = 0; w < n; ++w) split[w] = 2 * refined[w] + (refined[w] == refined[v] && w != v ? 1 : 0);
    search(a, split, best);
  }
}

}  // namespace

std::string canonical_quiver_key(const IntMatrix& arrows) {
  if (arrows.empty()) return "0:";
  std::string best;
  search(arrows, Colouring(arrows.size(), 0), best);
  return best;
}

std::string canonical_quiver_key(const Quiver& q) { return canonical_quiver_key(q.arrows); }

}  // namespace hx
