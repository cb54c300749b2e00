#pragma once

// Breadth-first exploration of the tilt web, deduplicated by quiver shape.

#include <string>
#include <vector>

#include "hx/cy3quiver.hpp"

namespace hx {

struct WebNode {
  std::string key;  // canonical quiver key
  Helix helix;      // first helix discovered with this quiver
  BMatrix b;
  int depth = 0;
};

struct WebEdge {
  std::size_t from = 0;
  std::size_t vertex = 0;
  std::size_t to = 0;
  bool match = false;  // tilt agreed with quiver mutation
};

struct WebGraph {
  std::vector<WebNode> nodes;
  std::vector<WebEdge> edges;
  int depth = 0;

  std::size_t find(const std::string& key) const;  // nodes.size() if absent
};

WebGraph web_bfs(const Helix& seed, int depth, Direction direction = Direction::left);

}  // namespace hx
