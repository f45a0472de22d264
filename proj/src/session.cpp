#include "tilebill/session.hpp"

#include "tilebill/render.hpp"
#include "tilebill/verify.hpp"

#include <cmath>

namespace tilebill {

namespace {

struct BadRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json ok_response() { return {{"v", kProtocolVersion}, {"ok", true}}; }

std::int64_t max_steps_of(const Json& req) {
  if (!req.contains("max_steps")) return kDefaultSessionSteps;
  const Json& m = req.at("max_steps");
  if (!m.is_number_integer()) throw BadRequest("max_steps must be an integer");
  const auto n = m.get<std::int64_t>();
  if (n < 2 || n > kMaxSessionSteps)
    throw BadRequest("max_steps must be in [2, " + std::to_string(kMaxSessionSteps) + "]");
  return n;
}

double eps_of(const Json& req) {
  if (!req.contains("eps_match")) return kDefaultMatchEps;
  if (!req.at("eps_match").is_number()) throw BadRequest("eps_match must be a number");
  const double e = req.at("eps_match").get<double>();
  if (!(e > 0.0)) throw BadRequest("eps_match must be positive");
  return e;
}

const Json& field(const Json& req, const char* key) {
  if (!req.contains(key)) throw BadRequest(std::string("missing field ") + key);
  return req.at(key);
}

ConstructionParams params_from_json(const Json& j) {
  ConstructionParams p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw BadRequest("params must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "angles") {
      if (!value.is_array()) throw BadRequest("angles must be an array");
      for (const Json& a : value) {
        if (!a.is_number()) throw BadRequest("angles must be numbers");
        p.angles.push_back(a.get<double>());
      }
    } else if (value.is_number()) {
      p.values[key] = value.get<double>();
    } else {
      throw BadRequest("parameter " + key + " must be a number");
    }
  }
  return p;
}

Json traced(const Tiling& tiling, const TrajectoryState& start, std::int64_t max_steps, double eps) {
  const Trajectory tr = trace(tiling, start, max_steps);
  Json r = ok_response();
  r["trajectory"] = to_json(tr);
  r["classification"] = to_json(classify_trajectory(tiling, tr, eps));
  return r;
}

Json op_trace(const Json& req, SpecCache& cache) {
  const TilingSpec spec = tiling_spec_from_arg(field(req, "tiling"));
  const auto tiling = cache.get(spec);
  const TrajectoryState start = start_from_json(field(req, "start"), *tiling);
  Json r = traced(*tiling, start, max_steps_of(req), eps_of(req));
  r["tiling"] = to_json(spec);
  return r;
}

Json op_construct(const Json& req, SpecCache& cache) {
  const Json& name = field(req, "name");
  if (!name.is_string()) throw BadRequest("name must be a string");
  const ConstructionResult c = construct(name.get<std::string>(), params_from_json(req.value("params", Json())));
  const auto tiling = cache.get(c.spec);
  Json r = traced(*tiling, c.start, max_steps_of(req), eps_of(req));
  r["construction"] = to_json(c);
  r["tiling"] = to_json(c.spec);
  r["matches_expected"] = matches(c.expected, classification_from_json(r["classification"]));
  return r;
}

Json op_classify(const Json& req, SpecCache& cache) {
  const TilingSpec spec = tiling_spec_from_arg(field(req, "tiling"));
  const auto tiling = cache.get(spec);
  if (req.contains("trajectory")) {
    const Trajectory tr = trajectory_from_json(req.at("trajectory"));
    Json r = ok_response();
    r["classification"] = to_json(classify_trajectory(*tiling, tr, eps_of(req)));
    return r;
  }
  Json r = traced(*tiling, start_from_json(field(req, "start"), *tiling), max_steps_of(req), eps_of(req));
  r.erase("trajectory");
  return r;
}

Json op_render(const Json& req, SpecCache& cache) {
  const TilingSpec spec = tiling_spec_from_arg(field(req, "tiling"));
  const auto tiling = cache.get(spec);
  std::vector<Trajectory> trs;
  if (req.contains("trajectories")) {
    if (!req.at("trajectories").is_array()) throw BadRequest("trajectories must be an array");
    for (const Json& t : req.at("trajectories")) trs.push_back(trajectory_from_json(t));
  }
  std::optional<Viewport> vp;
  if (req.contains("viewport")) {
    const Json& v = req.at("viewport");
    if (!v.is_array() || v.size() != 4) throw BadRequest("viewport must be [xmin, ymin, xmax, ymax]");
    for (const Json& x : v)
      if (!x.is_number()) throw BadRequest("viewport entries must be numbers");
    vp = Viewport{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
  }
  const RenderStyle style = req.contains("style") ? render_style_from_json(req.at("style")) : RenderStyle{};
  Json r = ok_response();
  r["svg"] = render_svg(*tiling, trs, vp, style);
  return r;
}

Json op_list() {
  Json r = ok_response();
  r["constructions"] = construction_names();
  r["presets"] = tiling_preset_names();
  r["theorems"] = theorem_ids();
  Json variants = Json::array();
  for (auto v : {TilingVariant::line_arrangement, TilingVariant::concurrent_lines, TilingVariant::triangle,
                 TilingVariant::isosceles_triangle, TilingVariant::right_triangle, TilingVariant::square,
                 TilingVariant::regular_hexagon, TilingVariant::equilateral_triangle,
                 TilingVariant::kaleidoscope_30_60_90, TilingVariant::trihexagonal})
    variants.push_back(to_string(v));
  r["variants"] = variants;
  return r;
}

}  // namespace

std::optional<TilingSpec> tiling_preset(const std::string& name) {
  constexpr double deg = kPi / 180.0;
  if (name == "two_lines_88deg")
    return TilingSpec::line_arrangement({{0.0, Point2::Zero()}, {88.0 * deg, Point2::Zero()}});
  if (name == "two_lines_perpendicular")
    return TilingSpec::line_arrangement({{0.0, Point2::Zero()}, {kPi / 2.0, Point2::Zero()}});
  if (name == "square") return TilingSpec::square();
  if (name == "regular_hexagon") return TilingSpec::regular_hexagon();
  if (name == "equilateral_triangle") return TilingSpec::equilateral();
  if (name == "kaleidoscope_30_60_90") return TilingSpec::kaleidoscope();
  if (name == "trihexagonal") return TilingSpec::trihexagonal();
  return std::nullopt;
}

std::vector<std::string> tiling_preset_names() {
  return {"two_lines_88deg", "two_lines_perpendicular", "square", "regular_hexagon", "equilateral_triangle",
          "kaleidoscope_30_60_90", "trihexagonal"};
}

TilingSpec tiling_spec_from_arg(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (auto p = tiling_preset(s)) return *p;
    Json parsed;
    try {
      parsed = Json::parse(s);
    } catch (const Json::parse_error&) {
      throw InvalidSpec("unknown tiling preset or malformed JSON: " + s);
    }
    return tiling_spec_from_json(parsed);
  }
  return tiling_spec_from_json(j);
}

std::shared_ptr<const Tiling> SpecCache::get(const TilingSpec& spec) {
  const std::string key = to_json(spec).dump();
  {
    std::lock_guard lock(mu_);
    if (auto it = index_.find(key); it != index_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      ++hits_;
      return it->second->second;
    }
  }
  // Compile outside the lock; a concurrent miss on the same key just builds twice.
  auto tiling = make_tiling(spec);
  std::lock_guard lock(mu_);
  if (auto it = index_.find(key); it != index_.end()) return it->second->second;
  order_.emplace_front(key, tiling);
  index_[key] = order_.begin();
  while (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
  return tiling;
}

std::size_t SpecCache::size() const {
  std::lock_guard lock(mu_);
  return order_.size();
}

std::size_t SpecCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

Json error_response(const std::string& code, const std::string& message) {
  return {{"v", kProtocolVersion}, {"ok", false}, {"error", {{"code", code}, {"message", message}}}};
}

Json handle_request(const Json& req, SpecCache& cache) {
  try {
    if (!req.is_object()) return error_response("bad_request", "request must be a JSON object");
    if (!req.contains("v") || !req.at("v").is_number_integer())
      return error_response("bad_request", "missing protocol version v");
    if (req.at("v").get<int>() != kProtocolVersion)
      return error_response("unsupported_version", "only protocol version 1 is supported");
    if (!req.contains("op") || !req.at("op").is_string()) return error_response("bad_request", "missing op");
    const auto op = req.at("op").get<std::string>();
    if (op == "trace") return op_trace(req, cache);
    if (op == "construct") return op_construct(req, cache);
    if (op == "classify") return op_classify(req, cache);
    if (op == "render") return op_render(req, cache);
    if (op == "list") return op_list();
    return error_response("bad_request", "unknown op " + op);
  } catch (const InfeasibleConstruction& e) {
    return error_response("infeasible", e.what());
  } catch (const InvalidSpec& e) {
    return error_response("invalid_spec", e.what());
  } catch (const TilingError& e) {
    // Starts on a corner or off every edge.
    return error_response("bad_request", e.what());
  } catch (const Json::exception& e) {
    return error_response("bad_request", e.what());
  } catch (const std::exception& e) {
    return error_response("bad_request", e.what());
  }
}

std::string handle_request_text(const std::string& body, SpecCache& cache) {
  Json req;
  try {
    req = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return error_response("bad_request", std::string("malformed JSON: ") + e.what())
        .dump(-1, ' ', false, Json::error_handler_t::replace);
  }
  return handle_request(req, cache).dump(-1, ' ', false, Json::error_handler_t::replace);
}

}  // namespace tilebill
