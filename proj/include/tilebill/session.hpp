#pragma once
// Session protocol v1: one JSON request in, one JSON response out.
//
//   {"v":1,"op":"trace","tiling":{...},"start":{...},"max_steps":N}
//   {"v":1,"op":"construct","name":"...","params":{...},"max_steps":N}
//   {"v":1,"op":"classify","tiling":{...},"trajectory":{...}}   (or a start)
//   {"v":1,"op":"render","tiling":{...},"trajectories":[...],"viewport":[x0,y0,x1,y1]}
//   {"v":1,"op":"list"}
//
// Successful responses carry "ok":true; failures carry "ok":false and
// "error":{"code","message"} with code one of bad_request, invalid_spec,
// infeasible, unsupported_version.

#include "tilebill/io.hpp"

#include <list>
#include <mutex>
#include <string>
#include <unordered_map>

namespace tilebill {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::int64_t kDefaultSessionSteps = 10000;
inline constexpr std::int64_t kMaxSessionSteps = 1000000;

/// Named tilings accepted wherever a tiling is expected: two_lines_88deg,
/// two_lines_perpendicular and the parameter-free variants.
std::optional<TilingSpec> tiling_preset(const std::string& name);
std::vector<std::string> tiling_preset_names();
/// A preset name, a JSON object, or a string holding a JSON object.
TilingSpec tiling_spec_from_arg(const Json& j);

/// Least-recently-used cache of compiled tilings keyed by their spec JSON.
class SpecCache {
 public:
  explicit SpecCache(std::size_t capacity = 64) : capacity_(capacity) {}
  std::shared_ptr<const Tiling> get(const TilingSpec& spec);
  std::size_t size() const;
  std::size_t hits() const;

 private:
  using Entry = std::pair<std::string, std::shared_ptr<const Tiling>>;
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::list<Entry> order_;
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
  std::size_t hits_ = 0;
};

/// Never throws; every failure becomes an error response.
Json handle_request(const Json& request, SpecCache& cache);
std::string handle_request_text(const std::string& body, SpecCache& cache);

Json error_response(const std::string& code, const std::string& message);

}  // namespace tilebill
