// Command-line front end: simulate, verify, scan, render, construct, serve.

#include "tilebill/render.hpp"
#include "tilebill/server.hpp"
#include "tilebill/session.hpp"
#include "tilebill/verify.hpp"

#include <CLI11.hpp>

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef TILEBILL_WEB_DIR
#define TILEBILL_WEB_DIR ""
#endif

using namespace tilebill;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInvalidSpec = 2;
constexpr int kExitInfeasible = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidSpec("malformed " + what + " JSON: " + e.what());
  }
}

/// Preset name, inline JSON, or a path (optionally prefixed by @).
TilingSpec tiling_arg(const std::string& arg) {
  if (auto p = tiling_preset(arg)) return *p;
  if (!arg.empty() && arg.front() == '{') return tiling_spec_from_json(parse_json(arg, "tiling"));
  const std::string path = !arg.empty() && arg.front() == '@' ? arg.substr(1) : arg;
  if (std::filesystem::exists(path)) return tiling_spec_from_json(parse_json(read_text(path), "tiling"));
  throw InvalidSpec("unknown tiling: " + arg);
}

Json json_arg(const std::string& arg, const std::string& what) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return parse_json(arg, what);
  const std::string path = !arg.empty() && arg.front() == '@' ? arg.substr(1) : arg;
  return parse_json(read_text(path), what);
}

/// "i,j,slot" where slot is an index or a slot name.
Json edge_arg(const std::string& arg) {
  std::vector<std::string> parts;
  std::stringstream ss(arg);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("--edge expects i,j,slot");
  Json e = {{"i", std::stoll(parts[0])}, {"j", std::stoll(parts[1])}};
  const bool numeric = !parts[2].empty() && parts[2].find_first_not_of("0123456789") == std::string::npos;
  if (numeric)
    e["slot"] = std::stoi(parts[2]);
  else
    e["slot"] = parts[2];
  return e;
}

constexpr const char* kShortcutKeys[] = {"n", "x1", "alpha", "beta", "gamma", "theta", "l", "i", "j", "angle_offset", "dir"};
constexpr std::size_t kShortcuts = std::size(kShortcutKeys);

struct ConstructArgs {
  std::string name;
  std::vector<std::string> params;  // key=value
  std::vector<double> angles;
  std::array<std::optional<double>, kShortcuts> shortcuts;  // --n 3 and friends
};

ConstructionResult run_construct(const ConstructArgs& a) {
  ConstructionParams p;
  p.angles = a.angles;
  for (std::size_t k = 0; k < kShortcuts; ++k)
    if (a.shortcuts[k]) p.values[kShortcutKeys[k]] = *a.shortcuts[k];
  for (const auto& kv : a.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects key=value");
    try {
      p.values[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw UsageError("--param value must be a number: " + kv);
    }
  }
  try {
    return construct(a.name, p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct SimulateArgs {
  std::string tiling;
  std::string edge;
  double t = 0.5;
  std::optional<double> dir;
  std::vector<double> point;
  std::string start;
  ConstructArgs construct;
  std::int64_t max_steps = kDefaultSessionSteps;
  double eps_match = kDefaultMatchEps;
  bool summary = false;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  Json result = {{"v", 1}};
  TilingSpec spec;
  TrajectoryState start;
  std::shared_ptr<const Tiling> tiling;
  std::optional<ConstructionResult> con;
  if (!a.construct.name.empty()) {
    con = run_construct(a.construct);
    spec = con->spec;
    tiling = make_tiling(spec);
    start = con->start;
    result["construction"] = to_json(*con);
  } else {
    if (a.tiling.empty()) throw UsageError("simulate needs --tiling or --construct");
    spec = tiling_arg(a.tiling);
    tiling = make_tiling(spec);
    Json s;
    if (!a.start.empty()) {
      s = json_arg(a.start, "start");
    } else {
      if (!a.dir) throw UsageError("simulate needs --dir (or --start)");
      if (!a.edge.empty())
        s = {{"edge", edge_arg(a.edge)}, {"t", a.t}, {"dir", *a.dir}};
      else if (a.point.size() == 2)
        s = {{"point", a.point}, {"dir", *a.dir}};
      else
        throw UsageError("simulate needs --edge, --point or --start");
    }
    start = start_from_json(s, *tiling);
  }
  if (a.max_steps < 2) throw UsageError("--max-steps must be at least 2");
  const Trajectory tr = trace(*tiling, start, a.max_steps);
  const Classification c = classify_trajectory(*tiling, tr, a.eps_match);
  result["tiling"] = to_json(spec);
  result["start"] = to_json(start);
  result["max_steps"] = a.max_steps;
  result["classification"] = to_json(c);
  if (con) result["matches_expected"] = matches(con->expected, c);
  if (!a.summary) result["trajectory"] = to_json(tr);
  write_text(a.out, result.dump() + "\n");
  return 0;
}

struct VerifyArgs {
  std::vector<std::string> ids;
  std::uint64_t seed = 1;
  int samples = 0;
  std::int64_t max_steps = 0;
  std::string out;
  std::string format = "text";
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> ids = a.ids;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = theorem_ids();
  for (const auto& id : ids)
    if (std::find(theorem_ids().begin(), theorem_ids().end(), id) == theorem_ids().end())
      throw UsageError("unknown theorem id " + id);
  if (!a.out.empty()) std::filesystem::create_directories(a.out);
  bool all = true;
  for (const auto& id : ids) {
    const VerificationReport r = verify_theorem(id, {a.seed, a.samples, a.max_steps});
    all = all && r.pass;
    const std::string json = to_json(r).dump(1) + "\n";
    const std::string text = to_text(r);
    if (!a.out.empty()) {
      write_text((std::filesystem::path(a.out) / (id + ".json")).string(), json);
      write_text((std::filesystem::path(a.out) / (id + ".txt")).string(), text);
      std::cout << id << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    } else {
      std::cout << (a.format == "json" ? json : text);
    }
  }
  return all ? 0 : kExitFail;
}

struct ScanArgs {
  std::string tiling;
  ScanConfig config;
  std::string out;
  std::string csv;
  bool keep_orbits = true;
};

int cmd_scan(const ScanArgs& a) {
  const ScanResult r = scan(tiling_arg(a.tiling), a.config);
  Json j = to_json(r);
  if (!a.keep_orbits) j.erase("orbits");
  write_text(a.out, j.dump(1) + "\n");
  if (!a.csv.empty()) write_text(a.csv, to_csv(r));
  return 0;
}

struct RenderArgs {
  std::string input;
  std::string tiling;
  ConstructArgs construct;
  std::int64_t max_steps = 0;
  std::vector<double> viewport;
  std::string style;
  std::string out;
};

int cmd_render(const RenderArgs& a) {
  std::optional<TilingSpec> spec;
  std::vector<Trajectory> trs;
  if (!a.construct.name.empty()) {
    const ConstructionResult c = run_construct(a.construct);
    spec = c.spec;
    // One period (and its closing crossing) when the expectation fixes it.
    std::int64_t steps = a.max_steps;
    if (steps == 0) steps = c.expected.period > 0 ? c.expected.period + 1 : 200;
    trs.push_back(trace(*make_tiling(c.spec), c.start, steps));
  } else if (!a.input.empty()) {
    const Json j = parse_json(read_text(a.input), "trajectory");
    if (j.contains("tiling")) spec = tiling_spec_from_json(j.at("tiling"));
    if (j.contains("trajectory"))
      trs.push_back(trajectory_from_json(j.at("trajectory")));
    else if (j.contains("trajectories"))
      for (const Json& t : j.at("trajectories")) trs.push_back(trajectory_from_json(t));
    else if (j.contains("records"))
      trs.push_back(trajectory_from_json(j));
    else
      throw UsageError("input holds no trajectory");
  }
  if (!a.tiling.empty()) spec = tiling_arg(a.tiling);
  if (!spec) throw UsageError("render needs --construct, an input with a tiling, or --tiling");
  std::optional<Viewport> vp;
  if (!a.viewport.empty()) {
    if (a.viewport.size() != 4) throw UsageError("--viewport expects xmin,ymin,xmax,ymax");
    vp = Viewport{a.viewport[0], a.viewport[1], a.viewport[2], a.viewport[3]};
  }
  RenderStyle style;
  if (!a.style.empty()) {
    try {
      style = render_style_from_json(json_arg(a.style, "style"));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  try {
    write_text(a.out, render_svg(*spec, trs, vp, style));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return 0;
}

int cmd_construct(const ConstructArgs& a, bool list, const std::string& out) {
  if (list) {
    for (const auto& n : construction_names()) std::cout << n << "\n";
    return 0;
  }
  if (a.name.empty()) throw UsageError("construct needs a name (or --list)");
  write_text(out, to_json(run_construct(a)).dump(1) + "\n");
  return 0;
}

void add_construct_options(CLI::App* cmd, ConstructArgs& c, bool positional) {
  if (positional)
    cmd->add_option("name", c.name, "Construction name");
  else
    cmd->add_option("--construct", c.name, "Start from a named construction");
  cmd->add_option("--param", c.params, "Construction parameter key=value (repeatable)");
  // simulate already uses --dir for the start direction.
  for (std::size_t k = 0; k < kShortcuts; ++k)
    if (positional || std::string(kShortcutKeys[k]) != "dir")
      cmd->add_option(std::string("--") + kShortcutKeys[k], c.shortcuts[k], "Construction parameter")->group("Construction parameters");
  cmd->add_option("--angles", c.angles, "Angles for line constructions")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tiling billiards: simulate, classify and verify refracted trajectories"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Trace one trajectory and classify it");
  simulate->add_option("--tiling", sim.tiling, "Preset name, TilingSpec JSON, or @file");
  simulate->add_option("--edge", sim.edge, "Start edge i,j,slot");
  simulate->add_option("--t", sim.t, "Position along the start edge in (0, 1)");
  simulate->add_option("--dir", sim.dir, "Direction of travel in radians");
  simulate->add_option("--point", sim.point, "Start point x,y on an edge")->delimiter(',')->expected(2);
  simulate->add_option("--start", sim.start, "Start JSON or @file");
  add_construct_options(simulate, sim.construct, false);
  simulate->add_option("--max-steps", sim.max_steps, "Number of crossings to record");
  simulate->add_option("--eps-match", sim.eps_match, "State matching tolerance");
  simulate->add_flag("--summary", sim.summary, "Omit the crossing records");
  simulate->add_option("--out", sim.out, "Output file (default stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run theorem suites; exit 0 iff all pass");
  verify->add_option("ids", ver.ids, "Theorem ids or 'all'");
  verify->add_option("--seed", ver.seed, "RNG seed");
  verify->add_option("--samples", ver.samples, "Override the suite's sample count");
  verify->add_option("--max-steps", ver.max_steps, "Override the suite's step budget");
  verify->add_option("--out", ver.out, "Directory for <id>.json and <id>.txt reports");
  verify->add_option("--format", ver.format, "Stdout format without --out")->check(CLI::IsMember({"text", "json"}));
  bool list_ids = false;
  verify->add_flag("--list", list_ids, "List theorem ids");

  ScanArgs sc;
  auto* scan_cmd = app.add_subcommand("scan", "Classify a grid of starts and list the orbit bands");
  scan_cmd->add_option("--tiling", sc.tiling, "Periodic tiling")->required();
  scan_cmd->add_option("--t-samples", sc.config.t_samples, "Positions per edge slot");
  scan_cmd->add_option("--dir-samples", sc.config.dir_samples, "Directions per position");
  scan_cmd->add_option("--max-steps", sc.config.max_steps, "Crossings traced per start");
  scan_cmd->add_option("--eps-match", sc.config.eps_match, "State matching tolerance");
  scan_cmd->add_option("--out", sc.out, "JSON output (default stdout)");
  scan_cmd->add_option("--csv", sc.csv, "Also write the orbit bands as CSV");

  RenderArgs ren;
  auto* render = app.add_subcommand("render", "Draw a tiling and trajectories as SVG");
  render->add_option("--input", ren.input, "simulate output or trajectory JSON ('-' for stdin)");
  render->add_option("--tiling", ren.tiling, "Tiling override");
  add_construct_options(render, ren.construct, false);
  render->add_option("--max-steps", ren.max_steps, "Crossings traced for --construct");
  render->add_option("--viewport", ren.viewport, "xmin,ymin,xmax,ymax")->delimiter(',');
  render->add_option("--style", ren.style, "Style JSON or @file");
  render->add_option("--out", ren.out, "SVG output (default stdout)");

  ConstructArgs con;
  bool list_constructions = false;
  std::string con_out;
  auto* construct_cmd = app.add_subcommand("construct", "Print a named construction");
  add_construct_options(construct_cmd, con, true);
  construct_cmd->add_flag("--list", list_constructions, "List construction names");
  construct_cmd->add_option("--out", con_out, "Output file (default stdout)");

  ServeOptions srv;
  srv.static_dir = TILEBILL_WEB_DIR;
  auto* serve_cmd = app.add_subcommand("serve", "Run the session endpoint for the explorer");
  serve_cmd->add_option("--port", srv.port, "TCP port");
  serve_cmd->add_option("--host", srv.host, "Bind address");
  serve_cmd->add_option("--static", srv.static_dir, "Directory of explorer assets");
  serve_cmd->add_option("--cache", srv.cache_capacity, "Compiled tiling cache size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (verify->parsed()) {
      if (list_ids) {
        for (const auto& id : theorem_ids()) std::cout << id << "\n";
        return 0;
      }
      return cmd_verify(ver);
    }
    if (scan_cmd->parsed()) return cmd_scan(sc);
    if (render->parsed()) return cmd_render(ren);
    if (construct_cmd->parsed()) return cmd_construct(con, list_constructions, con_out);
    if (serve_cmd->parsed()) {
      if (!serve(srv)) {
        std::cerr << "cannot listen on " << srv.host << ":" << srv.port << "\n";
        return kExitFail;
      }
      return 0;
    }
  } catch (const InfeasibleConstruction& e) {
    std::cerr << "infeasible construction: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InvalidSpec& e) {
    std::cerr << "invalid spec: " << e.what() << "\n";
    return kExitInvalidSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitFail;
}
