#include "hx/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hx/json_io.hpp"
#include "hx/seeds.hpp"
#include "hx/service.hpp"

namespace hx {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_input = 2;

struct Source {
  std::string file;
  std::string seed_name;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("file", src.file, "helix or collection JSON file ('-' for stdin)");
  cmd->add_option("--seed", src.seed_name, "builtin seed: p2, quadric, dp1, dp2");
}

Json read_document(const Source& src) {
  if (!src.file.empty() && !src.seed_name.empty())
    fail(ErrorKind::input, "bad_arguments", "give either a file or --seed, not both");
  if (!src.seed_name.empty()) return to_json(seed(src.seed_name));
  if (src.file.empty()) fail(ErrorKind::input, "bad_arguments", "no input: give a file or --seed");
  std::stringstream text;
  if (src.file == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(src.file);
    if (!in) fail(ErrorKind::input, "unreadable_file", "cannot read '" + src.file + "'");
    text << in.rdbuf();
  }
  return parse_json(text.str());
}

Direction parse_direction(const std::string& d) { return d == "right" ? Direction::right : Direction::left; }

int validate(const Source& src, std::ostream& out) {
  auto c = collection_from_json(read_document(src));
  out << "exceptional: yes\n";
  if (!is_numerically_full(c)) {
    out << "not full: class determinant is " << determinant(class_matrix(c)) << "\n";
    return exit_invalid;
  }
  out << "full: yes\n";
  Helix h(c);
  for (std::size_t start = 0; start < h.period(); ++start)
    if (!is_strong(h.thread_at(static_cast<Int>(start)))) {
      out << "not strong: the thread starting at " << start << " has a Hom-complex outside degree 0\n";
      return exit_invalid;
    }
  if (auto defect = geometric_defect(h)) {
    out << "not geometric: " << *defect << "\n";
    return exit_invalid;
  }
  out << "strong: yes\ngeometric: yes\n";
  return exit_ok;
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Helices on del Pezzo surfaces: quivers, tilts and tilt webs", "helixtool"};
  app.require_subcommand(1);

  Source src;
  std::string format = "json";
  std::size_t vertex = 0;
  std::string direction = "left";
  std::optional<int> bound;
  int depth = 1;
  std::optional<int> port;
  std::string host = "127.0.0.1";
  std::string snapshot_dir, static_dir;

  auto* validate_cmd = app.add_subcommand("validate", "check exceptionality, fullness, strength and geometricity");
  add_source(validate_cmd, src);

  auto* quiver_cmd = app.add_subcommand("quiver", "quiver of the rolled-up helix algebra");
  add_source(quiver_cmd, src);
  quiver_cmd->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));

  auto* dual_cmd = app.add_subcommand("dual", "dual collection of the thread");
  add_source(dual_cmd, src);

  auto* tilt_cmd = app.add_subcommand("tilt", "tilt the helix at a vertex; prints the new helix");
  add_source(tilt_cmd, src);
  tilt_cmd->add_option("--vertex", vertex)->required();
  tilt_cmd->add_option("--direction", direction)->check(CLI::IsMember({"left", "right"}));

  auto* height_cmd = app.add_subcommand("height", "height function at a vertex; --bound enumerates all");
  add_source(height_cmd, src);
  height_cmd->add_option("--vertex", vertex)->required();
  height_cmd->add_option("--bound", bound);

  auto* web_cmd = app.add_subcommand("web", "breadth-first tilt web");
  add_source(web_cmd, src);
  web_cmd->add_option("--depth", depth)->required()->check(CLI::Range(0, 8));
  web_cmd->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP API");
  serve_cmd->add_option("--port", port, "port (default: $HELIX_PORT or 8080)");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--snapshot-dir", snapshot_dir, "persist sessions as JSON files here");
  serve_cmd->add_option("--static-dir", static_dir, "serve the web client from here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  try {
    if (validate_cmd->parsed()) return validate(src, out);
    if (serve_cmd->parsed()) {
      ServiceOptions options;
      if (!snapshot_dir.empty()) options.snapshot_dir = snapshot_dir;
      if (!static_dir.empty()) options.static_dir = static_dir;
      return serve(options, host, resolve_port(port));
    }
    auto doc = read_document(src);
    if (dual_cmd->parsed()) {
      out << to_json(dual_collection(collection_from_json(doc))).dump(2) << "\n";
      return exit_ok;
    }
    auto helix = helix_from_json(doc);
    if (quiver_cmd->parsed()) {
      auto q = rolled_quiver(rolled_b_matrix(helix), vertex_labels(helix));
      out << (format == "dot" ? to_dot(q) : to_json(q).dump(2) + "\n");
    } else if (tilt_cmd->parsed()) {
      if (vertex >= helix.period())
        fail(ErrorKind::input, "bad_vertex", "vertex outside 0.." + std::to_string(helix.period() - 1));
      auto report = cross_check_tilt(helix, vertex, parse_direction(direction));
      if (!report.match) {
        err << "cross-check mismatch: " << to_json(report).dump() << "\n";
        return exit_invalid;
      }
      out << to_json(report.tilted).dump(2) << "\n";
    } else if (height_cmd->parsed()) {
      if (bound) {
        out << Json(enumerate_height_functions(helix.thread(), vertex, *bound)).dump() << "\n";
      } else {
        out << to_json(build_height_function(helix, vertex)).dump(2) << "\n";
      }
    } else if (web_cmd->parsed()) {
      auto web = web_bfs(helix, depth);
      out << (format == "dot" ? web_to_dot(web) : to_json(web).dump(2) + "\n");
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error [" << e.reason() << "]: " << e.what() << "\n";
    return e.kind() == ErrorKind::input ? exit_input : exit_invalid;
  }
}

}  // namespace hx
