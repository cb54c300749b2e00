#include "hx/web.hpp"

#include <unordered_map>

#include "hx/canonical.hpp"

namespace hx {

std::size_t WebGraph::find(const std::string& key) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].key == key) return i;
  return nodes.size();
}

namespace {

std::string helix_text(const Helix& h) {
  std::string text = "(";
  for (std::size_t i = 0; i < h.period(); ++i) {
    if (i > 0) text += ", ";
    text += describe(h.surface(), h.thread()[i]);
  }
  return text + ")";
}

}  // namespace

WebGraph web_bfs(const Helix& seed, int depth, Direction direction) {
  if (depth < 0) fail(ErrorKind::input, "bad_depth", "web depth must be non-negative");
  WebGraph web;
  web.depth = depth;
  auto b0 = rolled_b_matrix(seed);
  auto key0 = canonical_quiver_key(rolled_quiver(b0));
  web.nodes.push_back(WebNode{key0, seed, b0, 0});
  std::unordered_map<std::string, std::size_t> index{{key0, 0}};

  for (std::size_t at = 0; at < web.nodes.size(); ++at) {
    if (web.nodes[at].depth >= depth) continue;
    auto helix = web.nodes[at].helix;
    auto b = web.nodes[at].b;
    for (std::size_t v = 0; v < helix.period(); ++v) {
      CrossCheck report = [&] {
        try {
          return cross_check_tilt(helix, b, v, direction);
        } catch (const Error& e) {
          fail(e.kind(), e.reason(), std::string(e.what()) + " (tilting " + helix_text(helix) + " at vertex " +
                                         std::to_string(v) + ")");
        }
      }();
      if (!report.match)
        fail(ErrorKind::invariant, "cross_check_mismatch",
             "tilt of " + helix_text(helix) + " at vertex " + std::to_string(v) + " disagrees with quiver mutation");
      auto after = skew_euler_matrix(report.tilted.thread());
      auto key = canonical_quiver_key(rolled_quiver(after));
      auto [it, fresh] = index.try_emplace(key, web.nodes.size());
      if (fresh) web.nodes.push_back(WebNode{key, report.tilted, after, web.nodes[at].depth + 1});
      web.edges.push_back(WebEdge{at, v, it->second, report.match});
    }
  }
  return web;
}

}  // namespace hx
