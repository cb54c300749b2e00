#include "hx/service.hpp"

#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hx/seeds.hpp"

namespace hx {

namespace {

Direction direction_from(const Json& j) {
  if (!j.contains("direction")) return Direction::left;
  const auto& d = j["direction"];
  if (d == "left") return Direction::left;
  if (d == "right") return Direction::right;
  fail(ErrorKind::input, "malformed_json", "'direction' must be \"left\" or \"right\"");
}

const char* to_string(Direction d) { return d == Direction::left ? "left" : "right"; }

std::size_t vertex_from(const Json& j, std::size_t period) {
  if (!j.is_object() || !j.contains("vertex") || !j["vertex"].is_number_integer())
    fail(ErrorKind::input, "malformed_json", "'vertex' must be an integer");
  auto v = j["vertex"].get<Int>();
  if (v < 0 || v >= static_cast<Int>(period))
    fail(ErrorKind::input, "bad_vertex", "vertex " + std::to_string(v) + " outside 0.." + std::to_string(period - 1));
  return static_cast<std::size_t>(v);
}

}  // namespace

SessionStore::SessionStore(ServiceOptions options) : options_(std::move(options)), rng_(std::random_device{}()) {
  if (options_.snapshot_dir) {
    std::filesystem::create_directories(*options_.snapshot_dir);
    load_snapshots();
  }
}

std::string SessionStore::fresh_id() {
  std::lock_guard lock(rng_mutex_);
  std::ostringstream out;
  out << std::hex;
  for (int k = 0; k < 2; ++k) {
    auto x = rng_();
    for (int b = 60; b >= 0; b -= 4) out << ((x >> b) & 0xf);
  }
  return out.str();
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  return it->second;
}

Json SessionStore::describe_state(const Session& s) {
  Json objects = Json::array();
  auto labels = vertex_labels(s.helix);
  for (std::size_t i = 0; i < s.helix.period(); ++i) {
    const auto& o = s.helix.thread()[i];
    auto j = to_json(o);
    j["label"] = labels[i];
    objects.push_back(std::move(j));
  }
  Json history = Json::array();
  for (const auto& m : s.history) history.push_back(Json{{"vertex", m.vertex}, {"direction", to_string(m.direction)}});
  return Json{{"id", s.id},
              {"helix", to_json(s.helix)},
              {"objects", std::move(objects)},
              {"quiver", to_json(rolled_quiver(s.b, std::move(labels)))},
              {"b_matrix", to_json(s.b)},
              {"history", std::move(history)}};
}

Json SessionStore::create(const Json& request) {
  if (!request.is_object()) fail(ErrorKind::input, "malformed_json", "request body must be a JSON object");
  Helix helix = [&] {
    if (request.contains("seed")) {
      if (!request["seed"].is_string()) fail(ErrorKind::input, "malformed_json", "'seed' must be a string");
      return seed(request["seed"].get<std::string>());
    }
    return helix_from_json(request);
  }();
  auto b = rolled_b_matrix(helix);
  auto session = std::make_shared<Session>("", std::move(helix), std::move(b));
  {
    std::unique_lock lock(mutex_);
    do session->id = fresh_id();
    while (sessions_.contains(session->id));
    sessions_.emplace(session->id, session);
  }
  snapshot(*session);
  return describe_state(*session);
}

Json SessionStore::state(const std::string& id) const {
  auto s = find(id);
  if (!s) fail(ErrorKind::input, "unknown_session", "no session '" + id + "'");
  std::shared_lock lock(s->mutex);
  return describe_state(*s);
}

Json SessionStore::tilt(const std::string& id, const Json& request) {
  auto s = find(id);
  if (!s) fail(ErrorKind::input, "unknown_session", "no session '" + id + "'");
  std::unique_lock lock(s->mutex);
  auto vertex = vertex_from(request, s->helix.period());
  auto direction = direction_from(request);
  auto report = cross_check_tilt(s->helix, s->b, vertex, direction);
  s->history.push_back(Move{s->helix, s->b, vertex, direction});
  s->helix = report.tilted;
  s->b = skew_euler_matrix(s->helix.thread());
  snapshot(*s);
  auto out = describe_state(*s);
  out["cross_check"] = to_json(report);
  return out;
}

Json SessionStore::undo(const std::string& id) {
  auto s = find(id);
  if (!s) fail(ErrorKind::input, "unknown_session", "no session '" + id + "'");
  std::unique_lock lock(s->mutex);
  if (s->history.empty()) fail(ErrorKind::structure, "nothing_to_undo", "session history is empty");
  s->helix = std::move(s->history.back().helix);
  s->b = std::move(s->history.back().b);
  s->history.pop_back();
  snapshot(*s);
  return describe_state(*s);
}

Json SessionStore::height(const std::string& id, std::size_t vertex, std::optional<int> bound) const {
  auto s = find(id);
  if (!s) fail(ErrorKind::input, "unknown_session", "no session '" + id + "'");
  std::shared_lock lock(s->mutex);
  if (vertex >= s->helix.period())
    fail(ErrorKind::input, "bad_vertex",
         "vertex " + std::to_string(vertex) + " outside 0.." + std::to_string(s->helix.period() - 1));
  Json out{{"vertex", vertex}, {"height_function", to_json(build_height_function(s->helix, vertex))}};
  if (bound) {
    if (*bound > 12) fail(ErrorKind::input, "bad_bound", "bound must be at most 12");
    out["bound"] = *bound;
    out["height_functions"] = enumerate_height_functions(s->helix.thread(), vertex, *bound);
  }
  return out;
}

Json SessionStore::web(const std::string& id, int depth) const {
  auto s = find(id);
  if (!s) fail(ErrorKind::input, "unknown_session", "no session '" + id + "'");
  if (depth < 0 || depth > options_.max_web_depth)
    fail(ErrorKind::input, "bad_depth", "depth must lie in 0.." + std::to_string(options_.max_web_depth));
  Helix helix = [&] {
    std::shared_lock lock(s->mutex);
    return s->helix;
  }();
  return to_json(web_bfs(helix, depth));
}

void SessionStore::snapshot(const Session& s) const {
  if (!options_.snapshot_dir) return;
  Json history = Json::array();
  for (const auto& m : s.history)
    history.push_back(Json{{"helix", to_json(m.helix)}, {"vertex", m.vertex}, {"direction", to_string(m.direction)}});
  Json doc{{"id", s.id}, {"helix", to_json(s.helix)}, {"history", std::move(history)}};
  auto path = *options_.snapshot_dir / (s.id + ".json");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

void SessionStore::load_snapshots() {
  for (const auto& entry : std::filesystem::directory_iterator(*options_.snapshot_dir)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    std::stringstream text;
    text << in.rdbuf();
    try {
      auto doc = parse_json(text.str());
      auto helix = helix_from_json(doc.at("helix"));
      auto b = skew_euler_matrix(helix.thread());
      auto session = std::make_shared<Session>(doc.at("id").get<std::string>(), std::move(helix), std::move(b));
      for (const auto& m : doc.at("history")) {
        auto h = helix_from_json(m.at("helix"));
        auto b = skew_euler_matrix(h.thread());
        session->history.push_back(Move{std::move(h), std::move(b), m.at("vertex").get<std::size_t>(),
                                        m.at("direction") == "right" ? Direction::right : Direction::left});
      }
      sessions_.emplace(session->id, std::move(session));
    } catch (const std::exception&) {
      // unreadable snapshots are skipped; the file stays for inspection
    }
  }
}

namespace {

int status_for(const Error& e) {
  if (e.reason() == "unknown_session") return 404;
  if (e.reason() == "malformed_json") return 400;
  if (e.kind() == ErrorKind::invariant) return 500;
  return 422;
}

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    reply(res, 200, body());
  } catch (const Error& e) {
    reply(res, status_for(e), Json{{"error", e.what()}, {"reason", e.reason()}});
  } catch (const Json::exception& e) {
    reply(res, 400, Json{{"error", e.what()}, {"reason", "malformed_json"}});
  } catch (const std::exception& e) {
    reply(res, 500, Json{{"error", e.what()}, {"reason", "internal"}});
  }
}

Json body_of(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  return parse_json(req.body);
}

std::optional<int> int_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  auto text = req.get_param_value(name);
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::input, "malformed_json", std::string("query parameter '") + name + "' must be an integer");
}

}  // namespace

HelixServer::HelixServer(ServiceOptions options)
    : store_(options), server_(std::make_unique<httplib::Server>()) {
  if (options.static_dir) server_->set_mount_point("/", options.static_dir->string());
  install_routes();
}

HelixServer::~HelixServer() { stop(); }

void HelixServer::install_routes() {
  auto& svr = *server_;
  svr.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  svr.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  svr.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, Json{{"status", "ok"}}); });
  svr.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store_.create(body_of(req)); });
  });
  svr.Get(R"(/sessions/([0-9a-zA-Z]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store_.state(req.matches[1]); });
  });
  svr.Post(R"(/sessions/([0-9a-zA-Z]+)/tilt)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store_.tilt(req.matches[1], body_of(req)); });
  });
  svr.Post(R"(/sessions/([0-9a-zA-Z]+)/undo)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store_.undo(req.matches[1]); });
  });
  svr.Get(R"(/sessions/([0-9a-zA-Z]+)/height)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto vertex = int_param(req, "vertex");
      if (!vertex) fail(ErrorKind::input, "malformed_json", "query parameter 'vertex' is required");
      if (*vertex < 0) fail(ErrorKind::input, "bad_vertex", "vertex must be non-negative");
      return store_.height(req.matches[1], static_cast<std::size_t>(*vertex), int_param(req, "bound"));
    });
  });
  svr.Get(R"(/sessions/([0-9a-zA-Z]+)/web)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store_.web(req.matches[1], int_param(req, "depth").value_or(1)); });
  });
}

int HelixServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HelixServer::listen_after_bind() { return server_->listen_after_bind(); }

void HelixServer::stop() {
  if (server_) server_->stop();
}

bool HelixServer::is_running() const { return server_->is_running(); }

int serve(const ServiceOptions& options, const std::string& host, int port) {
  HelixServer server(options);
  int bound = server.bind(host, port);
  if (bound < 0) fail(ErrorKind::input, "bind_failed", "cannot bind " + host + ":" + std::to_string(port));
  std::fprintf(stderr, "serving on http://%s:%d\n", host.c_str(), bound);
  return server.listen_after_bind() ? 0 : 1;
}

int resolve_port(std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HELIX_PORT")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      fail(ErrorKind::input, "bad_port", std::string("HELIX_PORT is not a number: ") + env);
    }
  }
  return 8080;
}

}  // namespace hx
