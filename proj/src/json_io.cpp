#include "hx/json_io.hpp"

namespace hx {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::input, "malformed_json", what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

Int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string("'") + what + "' must be an integer");
  return j.get<Int>();
}

std::vector<Int> integers(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string("'") + what + "' must be an integer array");
  std::vector<Int> r;
  for (const auto& x : j) r.push_back(integer(x, what));
  return r;
}

IntMatrix matrix(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string("'") + what + "' must be an array of rows");
  IntMatrix m;
  for (const auto& row : j) m.push_back(integers(row, what));
  for (const auto& row : m)
    if (row.size() != m.size()) bad(std::string("'") + what + "' must be square");
  return m;
}

std::vector<std::string> labels_of(const Collection& c) {
  std::vector<std::string> r;
  for (const auto& o : c.objects()) r.push_back(describe(c.surface(), o));
  return r;
}

}  // namespace

Json to_json(const Surface& s) {
  if (s.kind() == Surface::Kind::quadric) return Json{{"kind", "quadric"}};
  return Json{{"kind", "blowup"}, {"points", s.points()}};
}

Json to_json(const ChernClass& v) { return Json{{"rank", v.rank}, {"c1", v.c1}, {"ch2_x2", v.ch2_x2}}; }

Json to_json(const ExcObject& e) {
  auto j = to_json(e.cls);
  j["shift"] = e.shift;
  return j;
}

Json to_json(const Collection& c) {
  Json objects = Json::array();
  for (const auto& o : c.objects()) objects.push_back(to_json(o));
  return Json{{"surface", to_json(c.surface())}, {"objects", std::move(objects)}};
}

Json to_json(const Helix& h) {
  auto j = to_json(h.thread());
  j["period"] = h.period();
  j["d"] = helix_step;
  return j;
}

Json to_json(const BlockStructure& b) { return Json{{"blocks", b.blocks}}; }

Json to_json(const Levelling& phi) { return Json(phi.values); }

Json to_json(const BMatrix& b) { return Json{{"n", b.size()}, {"b", b.b}}; }

Json to_json(const Quiver& q) { return Json{{"vertices", q.labels}, {"arrows", q.arrows}}; }

Json to_json(const HeightFunction& hf) {
  return Json{{"helix", to_json(hf.helix)}, {"levels", to_json(hf.levels)}, {"index", hf.index}};
}

Json to_json(const CrossCheck& report) {
  return Json{{"status", report.match ? "match" : "mismatch"},
              {"vertex", report.vertex},
              {"before", to_json(report.before)},
              {"expected", to_json(report.expected)},
              {"actual", to_json(report.actual)},
              {"vertex_map", report.vertex_map}};
}

Json to_json(const WebGraph& web) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < web.nodes.size(); ++i) {
    const auto& node = web.nodes[i];
    nodes.push_back(Json{{"id", i},
                         {"key", node.key},
                         {"depth", node.depth},
                         {"helix", to_json(node.helix)},
                         {"b_matrix", to_json(node.b)},
                         {"quiver", to_json(rolled_quiver(node.b, labels_of(node.helix.thread())))}});
  }
  Json edges = Json::array();
  for (const auto& e : web.edges)
    edges.push_back(Json{{"from", e.from}, {"vertex", e.vertex}, {"to", e.to}, {"match", e.match}});
  return Json{{"depth", web.depth}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Surface surface_from_json(const Json& j) {
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) bad("'kind' must be a string");
  auto name = kind.get<std::string>();
  if (name == "quadric") return Surface::quadric();
  if (name == "blowup") {
    auto m = integer(field(j, "points"), "points");
    if (m < 0 || m > 8) fail(ErrorKind::input, "bad_surface", "blowup needs 0..8 points");
    return Surface::blowup(static_cast<int>(m));
  }
  fail(ErrorKind::input, "bad_surface", "unknown surface kind '" + name + "'");
}

ChernClass class_from_json(const Json& j, const Surface& s) {
  ChernClass v{integer(field(j, "rank"), "rank"), integers(field(j, "c1"), "c1"), integer(field(j, "ch2_x2"), "ch2_x2")};
  if (v.c1.size() != s.picard_rank())
    fail(ErrorKind::input, "dimension_mismatch",
         "c1 has " + std::to_string(v.c1.size()) + " entries, surface needs " + std::to_string(s.picard_rank()));
  return v;
}

ExcObject object_from_json(const Json& j, const Surface& s) {
  auto cls = class_from_json(j, s);
  Int shift = j.contains("shift") ? integer(j["shift"], "shift") : 0;
  if (shift < -1000000 || shift > 1000000) bad("'shift' out of range");
  check_class(s, cls);
  if (!is_sheaf_normalized(s, cls))
    fail(ErrorKind::domain, "not_normalized", "class " + describe(s, cls) + " is not sheaf-normalized");
  return ExcObject{std::move(cls), static_cast<int>(shift)};
}

Collection collection_from_json(const Json& j) {
  auto s = surface_from_json(field(j, "surface"));
  const auto& objects = field(j, "objects");
  if (!objects.is_array() || objects.empty()) bad("'objects' must be a non-empty array");
  std::vector<ExcObject> objs;
  for (const auto& o : objects) objs.push_back(object_from_json(o, s));
  return Collection(s, std::move(objs));
}

Helix helix_from_json(const Json& j) {
  auto c = collection_from_json(j);
  if (j.contains("d") && integer(j["d"], "d") != helix_step)
    fail(ErrorKind::unsupported, "bad_type", "only helices of type (n, 3) are supported");
  if (j.contains("period") && integer(j["period"], "period") != static_cast<Int>(c.size()))
    fail(ErrorKind::input, "bad_period", "'period' differs from the thread length");
  return Helix(std::move(c));
}

BlockStructure blocks_from_json(const Json& j) {
  const auto& blocks = field(j, "blocks");
  if (!blocks.is_array()) bad("'blocks' must be an array");
  BlockStructure b;
  for (const auto& block : blocks) {
    std::vector<std::size_t> idx;
    for (auto i : integers(block, "blocks")) {
      if (i < 0) bad("block indices must be non-negative");
      idx.push_back(static_cast<std::size_t>(i));
    }
    b.blocks.push_back(std::move(idx));
  }
  return b;
}

BMatrix bmatrix_from_json(const Json& j) {
  BMatrix b{matrix(field(j, "b"), "b")};
  if (j.contains("n") && integer(j["n"], "n") != static_cast<Int>(b.size())) bad("'n' differs from the matrix size");
  if (!is_skew(b.b)) fail(ErrorKind::input, "not_skew", "b-matrix is not skew-symmetric");
  return b;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

std::string web_to_dot(const WebGraph& web) {
  std::string out = "digraph web {\n";
  for (std::size_t i = 0; i < web.nodes.size(); ++i) {
    const auto& node = web.nodes[i];
    std::string label;
    for (std::size_t k = 0; k < node.helix.period(); ++k) {
      if (k > 0) label += ", ";
      label += describe(node.helix.surface(), node.helix.thread()[k]);
    }
    out += "  " + std::to_string(i) + " [label=\"" + std::to_string(i) + " (depth " + std::to_string(node.depth) +
           "): " + label + "\"];\n";
  }
  for (const auto& e : web.edges)
    out += "  " + std::to_string(e.from) + " -> " + std::to_string(e.to) + " [label=" + std::to_string(e.vertex) +
           "];\n";
  out += "}\n";
  return out;
}

}  // namespace hx
