#include "tilebill/io.hpp"

#include <algorithm>

namespace tilebill {

namespace {

double number(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidSpec(std::string("missing field ") + key);
  const Json& v = j.at(key);
  if (!v.is_number()) throw InvalidSpec(std::string("field ") + key + " must be a number");
  return v.get<double>();
}

Point2 point(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidSpec("point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json point_json(const Point2& p) { return Json::array({p.x(), p.y()}); }

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidSpec(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace

Json to_json(const TilingSpec& spec) {
  Json j;
  j["variant"] = to_string(spec.variant);
  switch (spec.variant) {
    case TilingVariant::line_arrangement: {
      Json lines = Json::array();
      for (const auto& l : spec.lines) lines.push_back({{"angle", l.angle}, {"point", point_json(l.point)}});
      j["lines"] = lines;
      break;
    }
    case TilingVariant::concurrent_lines:
      j["angles"] = spec.angles;
      break;
    case TilingVariant::triangle:
      j["alpha"] = spec.alpha;
      j["beta"] = spec.beta;
      break;
    case TilingVariant::isosceles_triangle:
    case TilingVariant::right_triangle:
      j["alpha"] = spec.alpha;
      break;
    default:
      break;
  }
  return j;
}

TilingSpec tiling_spec_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidSpec("tiling spec must be a JSON object");
  if (!j.contains("variant") || !j.at("variant").is_string()) throw InvalidSpec("missing field variant");
  const auto name = j.at("variant").get<std::string>();
  const auto variant = parse_variant(name);
  if (!variant) throw InvalidSpec("unknown variant " + name);
  TilingSpec s;
  s.variant = *variant;
  switch (*variant) {
    case TilingVariant::line_arrangement: {
      if (!j.contains("lines") || !j.at("lines").is_array()) throw InvalidSpec("missing field lines");
      for (const Json& l : j.at("lines")) {
        if (!l.is_object() || !l.contains("point")) throw InvalidSpec("line needs angle and point");
        s.lines.push_back({number(l, "angle"), point(l.at("point"))});
      }
      break;
    }
    case TilingVariant::concurrent_lines: {
      if (!j.contains("angles") || !j.at("angles").is_array()) throw InvalidSpec("missing field angles");
      for (const Json& a : j.at("angles")) {
        if (!a.is_number()) throw InvalidSpec("angles must be numbers");
        s.angles.push_back(a.get<double>());
      }
      break;
    }
    case TilingVariant::triangle:
      s.alpha = number(j, "alpha");
      s.beta = number(j, "beta");
      break;
    case TilingVariant::isosceles_triangle:
    case TilingVariant::right_triangle:
      s.alpha = number(j, "alpha");
      break;
    default:
      break;
  }
  return s;
}

Json to_json(const EdgeRef& e) { return {{"i", e.i}, {"j", e.j}, {"slot", e.slot}}; }
Json to_json(const TileRef& t) { return {{"i", t.i}, {"j", t.j}, {"slot", t.slot}}; }

Json to_json(const TrajectoryState& s) {
  return {{"edge", to_json(s.edge)}, {"t", s.t},           {"dir", s.dir},
          {"x", s.point.x()},       {"y", s.point.y()}, {"tile", to_json(s.tile)}};
}

Json to_json(const Trajectory& tr) {
  Json records = Json::array();
  for (const auto& r : tr.records) records.push_back(to_json(r.state));
  return {{"records", std::move(records)}, {"termination", to_string(tr.termination)}};
}

Json to_json(const SpiralWitness& w) {
  return {{"delta", w.delta}, {"cycles", w.cycles}, {"alternating", w.alternating}};
}

Json to_json(const Classification& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["period"] = c.period;
  if (c.kind == ClassKind::drift_periodic) j["drift"] = point_json(c.drift);
  if (c.spiral) j["spiral"] = to_json(*c.spiral);
  j["witness"] = {{"first_index", c.first_index},
                  {"repeat_index", c.repeat_index},
                  {"residual", c.residual},
                  {"eps_match", c.eps_match}};
  j["steps"] = c.steps;
  return j;
}

Json to_json(const Expected& e) {
  Json j;
  j["kind"] = to_string(e.kind);
  j["period"] = e.period;
  if (e.drift) j["drift"] = point_json(*e.drift);
  return j;
}

Json to_json(const ConstructionResult& r) {
  return {{"tiling", to_json(r.spec)},
          {"start", to_json(r.start)},
          {"expected", to_json(r.expected)},
          {"notes", r.notes}};
}

EdgeRef edge_from_json(const Json& j, const Tiling& tiling) {
  Json i, jj, slot;
  if (j.is_array() && j.size() == 3) {
    i = j[0], jj = j[1], slot = j[2];
  } else if (j.is_object() && j.contains("i") && j.contains("j")) {
    i = j.at("i"), jj = j.at("j"), slot = j.value("slot", Json(0));
  } else {
    throw InvalidSpec("edge must be [i, j, slot] or {\"i\", \"j\", \"slot\"}");
  }
  EdgeRef e{integer(i, "edge i"), integer(jj, "edge j"), 0};
  if (slot.is_string()) {
    const auto names = tiling.edge_slot_names();
    const auto it = std::find(names.begin(), names.end(), slot.get<std::string>());
    if (it == names.end()) throw InvalidSpec("unknown edge slot " + slot.get<std::string>());
    e.slot = static_cast<int>(it - names.begin());
  } else {
    e.slot = static_cast<int>(integer(slot, "edge slot"));
  }
  return e;
}

TileRef tile_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("i") || !j.contains("j")) throw InvalidSpec("tile must be {\"i\", \"j\", \"slot\"}");
  return {integer(j.at("i"), "tile i"), integer(j.at("j"), "tile j"),
          static_cast<int>(integer(j.value("slot", Json(0)), "tile slot"))};
}

TrajectoryState start_from_json(const Json& j, const Tiling& tiling) {
  if (!j.is_object()) throw InvalidSpec("start must be a JSON object");
  const double dir = number(j, "dir");
  if (j.contains("point")) return tiling.state_from_point(point(j.at("point")), dir).state;
  if (!j.contains("edge")) throw InvalidSpec("start needs edge or point");
  return tiling.canonicalize_state(edge_from_json(j.at("edge"), tiling), number(j, "t"), dir).state;
}

Trajectory trajectory_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("records") || !j.at("records").is_array())
    throw InvalidSpec("trajectory needs records");
  Trajectory tr;
  std::int64_t k = 0;
  for (const Json& r : j.at("records")) {
    TrajectoryState s;
    if (!r.contains("edge") || !r.at("edge").is_object()) throw InvalidSpec("record needs edge");
    const Json& e = r.at("edge");
    s.edge = {integer(e.at("i"), "edge i"), integer(e.at("j"), "edge j"),
              static_cast<int>(integer(e.value("slot", Json(0)), "edge slot"))};
    s.t = number(r, "t");
    s.dir = number(r, "dir");
    s.point = {number(r, "x"), number(r, "y")};
    if (r.contains("tile")) s.tile = tile_from_json(r.at("tile"));
    tr.records.push_back({s, s.point, k++});
  }
  if (tr.records.empty()) throw InvalidSpec("trajectory has no records");
  const auto term = parse_termination(j.value("termination", std::string("max_steps")));
  if (!term) throw InvalidSpec("unknown termination");
  tr.termination = *term;
  return tr;
}

Classification classification_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidSpec("classification needs kind");
  Classification c;
  const auto kind = parse_class_kind(j.at("kind").get<std::string>());
  if (!kind) throw InvalidSpec("unknown classification kind");
  c.kind = *kind;
  c.period = j.value("period", std::int64_t{0});
  if (j.contains("drift")) c.drift = point(j.at("drift"));
  if (j.contains("spiral")) {
    const Json& w = j.at("spiral");
    c.spiral = SpiralWitness{number(w, "delta"), w.value("cycles", 0), w.value("alternating", false)};
  }
  if (j.contains("witness")) {
    const Json& w = j.at("witness");
    c.first_index = w.value("first_index", std::int64_t{0});
    c.repeat_index = w.value("repeat_index", std::int64_t{0});
    c.residual = w.value("residual", 0.0);
    c.eps_match = w.value("eps_match", kDefaultMatchEps);
  }
  c.steps = j.value("steps", std::int64_t{0});
  return c;
}

}  // namespace tilebill
