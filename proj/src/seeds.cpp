#include "hx/seeds.hpp"

#include <algorithm>

namespace hx {

namespace {

struct SeedRecipe {
  Surface surface;
  std::vector<Divisor> divisors;
  std::vector<std::size_t> block_sizes;
};

SeedRecipe recipe_for(const std::string& name) {
  if (name == "p2") return {Surface::blowup(0), {{0}, {1}, {2}}, {1, 1, 1}};
  if (name == "quadric") return {Surface::quadric(), {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {1, 2, 1}};
  if (name == "dp1") return {Surface::blowup(1), {{0, 0}, {1, -1}, {1, 0}, {2, -1}}, {1, 1, 1, 1}};
  if (name == "dp2")
    return {Surface::blowup(2), {{0, 0, 0}, {1, -1, 0}, {1, 0, -1}, {1, 0, 0}, {2, -1, -1}}, {1, 2, 1, 1}};
  fail(ErrorKind::input, "unknown_seed", "unknown seed '" + name + "'");
}

}  // namespace

const std::vector<std::string>& seed_names() {
  static const std::vector<std::string> names{"p2", "quadric", "dp1", "dp2"};
  return names;
}

Helix seed(const std::string& name) {
  auto recipe = recipe_for(name);
  std::vector<ExcObject> objects;
  for (auto& d : recipe.divisors) objects.push_back(make_object(recipe.surface, line_bundle(recipe.surface, d)));
  return Helix(Collection(recipe.surface, std::move(objects)));
}

BlockStructure seed_blocks(const std::string& name) {
  auto recipe = recipe_for(name);
  return blocks_from_sizes(recipe.block_sizes);
}

}  // namespace hx
