#pragma once

// Session-based HTTP/JSON API over helices: create, inspect, tilt, undo,
// height functions and tilt webs.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>

#include "hx/json_io.hpp"

namespace httplib {
class Server;
}

namespace hx {

struct ServiceOptions {
  std::optional<std::filesystem::path> snapshot_dir;
  std::optional<std::filesystem::path> static_dir;
  int max_web_depth = 5;
};

// HTTP-independent session logic. Thread-safe; each session is guarded by
// its own reader/writer lock.
class SessionStore {
 public:
  explicit SessionStore(ServiceOptions options = {});

  Json create(const Json& request);  // {"seed": name} or a helix document
  Json state(const std::string& id) const;
  Json tilt(const std::string& id, const Json& request);
  Json undo(const std::string& id);
  Json height(const std::string& id, std::size_t vertex, std::optional<int> bound) const;
  Json web(const std::string& id, int depth) const;

  std::size_t size() const;

 private:
  struct Move {
    Helix helix;  // state before the move
    BMatrix b;
    std::size_t vertex;
    Direction direction;
  };
  struct Session {
    Session(std::string id_, Helix helix_, BMatrix b_)
        : id(std::move(id_)), helix(std::move(helix_)), b(std::move(b_)) {}

    mutable std::shared_mutex mutex;
    std::string id;
    Helix helix;
    BMatrix b;
    std::vector<Move> history;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  static Json describe_state(const Session& s);
  void snapshot(const Session& s) const;
  void load_snapshots();
  std::string fresh_id();

  ServiceOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

// An httplib server with the API routes, CORS headers and optional static files.
class HelixServer {
 public:
  explicit HelixServer(ServiceOptions options = {});
  ~HelixServer();
  HelixServer(const HelixServer&) = delete;
  HelixServer& operator=(const HelixServer&) = delete;

  // Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  bool listen_after_bind();
  void stop();
  bool is_running() const;
  SessionStore& store() noexcept { return store_; }

 private:
  void install_routes();

  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
};

// Blocking: binds host:port and serves until stopped.
int serve(const ServiceOptions& options, const std::string& host, int port);
// --port wins, then HELIX_PORT, then 8080.
int resolve_port(std::optional<int> flag);

}  // namespace hx
