#pragma once

// Exceptional objects (a sheaf class plus a shift), Hom-complex degree
// profiles, mutations, dual collections and the braid operations.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hx/klattice.hpp"

namespace hx {

struct ExcObject {
  ChernClass cls;  // sheaf-normalized
  int shift = 0;

  bool operator==(const ExcObject&) const = default;
};

// Validates normalization and chi(cls, cls) = 1.
ExcObject make_object(const Surface& s, ChernClass cls, int shift = 0);
ExcObject shifted(ExcObject e, int by);
// [X] in K(Z); odd shifts negate
ChernClass signed_class(const ExcObject& e);
// shift-adjusted Euler pairing
Int chi(const Surface& s, const ExcObject& a, const ExcObject& b);
std::string describe(const Surface& s, const ExcObject& e);

struct HomProfile {
  bool zero = true;
  int degree = 0;
  Int dim = 0;

  static HomProfile none() { return {}; }
  static HomProfile concentrated(int degree, Int dim) { return {false, degree, dim}; }
  // p-related: nothing outside degree p
  bool concentrated_in(int p) const noexcept { return zero || degree == p; }
  bool operator==(const HomProfile&) const = default;
};

std::string to_string(const HomProfile& h);

// Hom complex of a pair that is exceptional in one of the two orders.
HomProfile hom_profile(const Surface& s, const ExcObject& a, const ExcObject& b);

ExcObject left_mutate(const Surface& s, const ExcObject& e, const ExcObject& x);
ExcObject right_mutate(const Surface& s, const ExcObject& f, const ExcObject& y);

enum class Side { left, right };

// left: L_{E1}...L_{Ek}(X), right: R_{Ek}...R_{E1}(X)
ExcObject mutate_through(const Surface& s, std::span<const ExcObject> sub, const ExcObject& x, Side side);

class Collection {
 public:
  Collection(Surface surface, std::vector<ExcObject> objects);

  const Surface& surface() const noexcept { return surface_; }
  const std::vector<ExcObject>& objects() const noexcept { return objects_; }
  std::size_t size() const noexcept { return objects_.size(); }
  const ExcObject& operator[](std::size_t i) const { return objects_.at(i); }

  bool operator==(const Collection& o) const { return surface_ == o.surface_ && objects_ == o.objects_; }

 private:
  Surface surface_;
  std::vector<ExcObject> objects_;
};

// Consecutive blocks, given as index lists.
struct BlockStructure {
  std::vector<std::vector<std::size_t>> blocks;
  bool operator==(const BlockStructure&) const = default;
};

BlockStructure blocks_from_sizes(std::span<const std::size_t> sizes);

// The object at pos moves left past pos-1: (.., L_{E[pos-1]}(E[pos])[-1], E[pos-1], ..).
Collection sigma(const Collection& c, std::size_t pos);
Collection sigma_inverse(const Collection& c, std::size_t pos);

struct BlockedCollection {
  Collection collection;
  BlockStructure blocks;
};

// Block pos is mutated objectwise through block pos-1, then the two swap.
BlockedCollection tau(const Collection& c, const BlockStructure& blocks, std::size_t pos);
BlockedCollection tau_inverse(const Collection& c, const BlockStructure& blocks, std::size_t pos);

// F_j = L_{E_0}...L_{E_{j-1}}(E_j), listed in the order of E.
std::vector<ExcObject> dual_by_index(const Surface& s, std::span<const ExcObject> objects);
// (F_n, ..., F_1), which is again an exceptional collection.
Collection dual_collection(const Collection& c);

bool is_strong(const Collection& c);
bool is_pure(const Collection& c);
bool is_numerically_full(const Collection& c);
bool is_block(const Collection& c, const BlockStructure& blocks);

// Row j holds (rank, c1, chi(O, -)) of the signed class of object j.
IntMatrix class_matrix(const Collection& c);
Int determinant(IntMatrix m);

// Checks the exceptional-collection condition without constructing.
std::optional<std::string> collection_defect(const Surface& s, std::span<const ExcObject> objects);

}  // namespace hx
