#pragma once

// Helices of type (n, 3) on del Pezzo surfaces: periodic sequences E_i with
// E_{i-n} = E_i (x) omega, levellings, height functions and vertex tilts.

#include <optional>
#include <vector>

#include "hx/excol.hpp"

namespace hx {

inline constexpr int helix_step = 3;  // d: levels advance by 3 per period

class Helix {
 public:
  // The thread sits at indices 0..n-1 and must be numerically full.
  explicit Helix(Collection thread);
  // Builds the helix in which objects[k] sits at index start + k.
  static Helix from_window(const Surface& s, std::vector<ExcObject> objects, Int start);

  const Surface& surface() const noexcept { return thread_.surface(); }
  const Collection& thread() const noexcept { return thread_; }
  std::size_t period() const noexcept { return thread_.size(); }

  ExcObject at(Int i) const;
  std::vector<ExcObject> window(Int start) const;
  Collection thread_at(Int start) const;

  bool operator==(const Helix& o) const { return thread_ == o.thread_; }

 private:
  Collection thread_;
};

inline ExcObject object_at(const Helix& h, Int i) { return h.at(i); }

// rho(H) reindexes so that the thread starts one step later.
Helix rho(const Helix& h);
// E'_{i-1} = L_{E_{i-1}}(E_i)[-1], E'_i = E_{i-1}
Helix sigma_helix(const Helix& h, Int i);
Helix sigma_helix_inverse(const Helix& h, Int i);

// Offset t with b.at(j) == a.at(j + t) for all j, if any.
std::optional<Int> reindex_offset(const Helix& a, const Helix& b);
// p with b == a (x) omega^p (same shift), if any.
std::optional<Int> twist_offset(const Surface& s, const ExcObject& a, const ExcObject& b);

bool is_strong_helix(const Helix& h);
bool is_geometric(const Helix& h);
// Why is_geometric failed, or nullopt.
std::optional<std::string> geometric_defect(const Helix& h);

struct Levelling {
  std::vector<int> values;  // one period; phi(i + n) = phi(i) + 3

  int at(Int i) const;
  bool operator==(const Levelling&) const = default;
};

bool is_monotone(const Levelling& phi);
// Indices (in Z) sitting at level m, ascending.
std::vector<Int> level_indices(const Levelling& phi, int m);
// Converts values given on the window starting at `start` to a period levelling.
Levelling levelling_from_window(const std::vector<int>& window_values, Int start);

HomProfile p_relatedness(const Collection& c, std::size_t i, std::size_t j);

bool is_tilting_at_level(const Collection& c, const std::vector<int>& values, int m);
bool is_tilting_at_level(const Helix& h, const Levelling& phi, int m);
// Uses the thread starting at `start`, which must contain level m.
bool is_tilting_at_level(const Helix& h, const Levelling& phi, int m, Int start);

Collection reorder_collection(const Collection& c);
// Height function for the object at `pos`, read off from the shifts of the
// dual objects and their slopes relative to the dual of that object.
// Needs the order produced by reorder_collection.
std::vector<int> split_levelling(const Collection& c, std::size_t pos);

struct HeightFunction {
  Helix helix;  // possibly reordered by swapping orthogonal neighbours
  Levelling levels;
  Int index;  // index of the distinguished object in `helix`, in 0..n-1
};

HeightFunction build_height_function(const Helix& h, std::size_t index);
std::vector<std::vector<int>> enumerate_height_functions(const Collection& c, std::size_t index, int bound);

struct LevelledHelix {
  Helix helix;
  Levelling levels;
};

// Levels (m-1, m) = (P, Q) become (L_P(Q)[-1], P).
LevelledHelix levelled_sigma(const Helix& h, const Levelling& phi, int m);
// Levels (m-1, m) = (P, Q) become (Q, R_Q(P)[1]).
LevelledHelix levelled_sigma_inverse(const Helix& h, const Levelling& phi, int m);

enum class Direction { left, right };

struct TiltResult {
  Helix helix;
  // vertex_map[j] is the vertex of the new helix carrying object j (or its replacement)
  std::vector<std::size_t> vertex_map;
  HeightFunction height;
};

TiltResult tilt(const Helix& h, std::size_t vertex, Direction direction = Direction::left);
// tilt without the input geometricity check, for callers that already know it
TiltResult tilt_unchecked(const Helix& h, std::size_t vertex, Direction direction);

}  // namespace hx
