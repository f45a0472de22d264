#include "tilebill/render.hpp"
#include "tilebill/session.hpp"
#include "tilebill/verify.hpp"

#include <gtest/gtest.h>

#include <thread>

using namespace tilebill;

namespace {

Json request(const char* text) { return Json::parse(text); }

std::string error_code(const Json& r) { return r.at("error").at("code").get<std::string>(); }

}  // namespace

TEST(Session, List) {
  SpecCache cache;
  const Json r = handle_request(request(R"({"v":1,"op":"list"})"), cache);
  ASSERT_TRUE(r["ok"].get<bool>());
  EXPECT_EQ(r["constructions"].size(), construction_names().size());
  EXPECT_EQ(r["theorems"].size(), theorem_ids().size());
  EXPECT_NE(std::find(r["presets"].begin(), r["presets"].end(), "two_lines_88deg"), r["presets"].end());
}

TEST(Session, TraceSquareExample) {
  SpecCache cache;
  const Json r = handle_request(
      request(R"({"v":1,"op":"trace","tiling":{"variant":"square"},"start":{"edge":[0,0,"bottom"],"t":0.5,"dir":1.5707963},"max_steps":100})"),
      cache);
  ASSERT_TRUE(r["ok"].get<bool>()) << r.dump();
  EXPECT_EQ(r["v"], 1);
  EXPECT_EQ(r["classification"]["kind"], "drift_periodic");
  EXPECT_EQ(r["classification"]["period"], 2);
  EXPECT_EQ(r["trajectory"]["records"].size(), 100u);
}

TEST(Session, TracePresetByName) {
  SpecCache cache;
  const Json r = handle_request(
      request(R"({"v":1,"op":"trace","tiling":"two_lines_88deg","start":{"point":[3,0],"dir":1.7}})"), cache);
  ASSERT_TRUE(r["ok"].get<bool>()) << r.dump();
  EXPECT_EQ(r["classification"]["kind"], "escaped");
  EXPECT_NEAR(r["classification"]["spiral"]["delta"].get<double>() * 180 / kPi, -8.0, 1e-9);
}

TEST(Session, ConstructMatchesExpectation) {
  SpecCache cache;
  const Json r = handle_request(request(R"({"v":1,"op":"construct","name":"trihex_period24"})"), cache);
  ASSERT_TRUE(r["ok"].get<bool>());
  EXPECT_TRUE(r["matches_expected"].get<bool>());
  EXPECT_EQ(r["classification"]["period"], 24);
  const Json d = handle_request(request(R"({"v":1,"op":"construct","name":"trihex_drift_6n","params":{"n":2}})"), cache);
  EXPECT_TRUE(d["matches_expected"].get<bool>()) << d.dump();
}

TEST(Session, ClassifyTrajectoryOrStart) {
  SpecCache cache;
  const Json traced = handle_request(request(R"({"v":1,"op":"construct","name":"trihex_period6","max_steps":40})"), cache);
  Json req{{"v", 1}, {"op", "classify"}, {"tiling", "trihexagonal"}, {"trajectory", traced["trajectory"]}};
  const Json r = handle_request(req, cache);
  ASSERT_TRUE(r["ok"].get<bool>()) << r.dump();
  EXPECT_EQ(r["classification"]["period"], 6);
  const Json s = handle_request(
      request(R"({"v":1,"op":"classify","tiling":{"variant":"equilateral_triangle"},"start":{"edge":[0,0,0],"t":0.3,"dir":1.0}})"),
      cache);
  EXPECT_EQ(s["classification"]["kind"], "periodic");
  EXPECT_FALSE(s.contains("trajectory"));
}

TEST(Session, RenderMatchesInProcess) {
  SpecCache cache;
  const Json traced = handle_request(request(R"({"v":1,"op":"construct","name":"trihex_period24","max_steps":25})"), cache);
  Json req{{"v", 1}, {"op", "render"}, {"tiling", "trihexagonal"}, {"trajectories", Json::array({traced["trajectory"]})}};
  const Json r = handle_request(req, cache);
  ASSERT_TRUE(r["ok"].get<bool>()) << r.dump();
  const auto c = trihex_period24();
  auto t = make_tiling(c.spec);
  EXPECT_EQ(r["svg"].get<std::string>(), render_svg(*t, {trace(*t, c.start, 25)}));
}

TEST(Session, Errors) {
  SpecCache cache;
  EXPECT_EQ(error_code(handle_request(request("[1,2]"), cache)), "bad_request");
  EXPECT_EQ(error_code(handle_request(request(R"({"op":"list"})"), cache)), "bad_request");
  EXPECT_EQ(error_code(handle_request(request(R"({"v":2,"op":"list"})"), cache)), "unsupported_version");
  EXPECT_EQ(error_code(handle_request(request(R"({"v":1,"op":"dance"})"), cache)), "bad_request");
  EXPECT_EQ(error_code(handle_request(request(R"({"v":1,"op":"trace","tiling":"penrose","start":{"point":[0,0],"dir":1}})"), cache)),
            "invalid_spec");
  EXPECT_EQ(error_code(handle_request(request(R"({"v":1,"op":"trace","tiling":"square"})"), cache)), "bad_request");
  EXPECT_EQ(error_code(handle_request(
                request(R"({"v":1,"op":"trace","tiling":"square","start":{"edge":[0,0,0],"t":0.5,"dir":1},"max_steps":1})"), cache)),
            "bad_request");
  EXPECT_EQ(error_code(handle_request(
                request(R"({"v":1,"op":"construct","name":"triangle_period10","params":{"alpha":1.0471975511965976,"beta":1.0471975511965976}})"),
                cache)),
            "infeasible");
  EXPECT_EQ(error_code(handle_request(
                request(R"({"v":1,"op":"render","tiling":"square","viewport":[0,0,0,0]})"), cache)),
            "bad_request");
  // Aimed at a corner of the square cell.
  const Json corner = handle_request(
      request(R"({"v":1,"op":"trace","tiling":"square","start":{"edge":[0,0,0],"t":0.5,"dir":1.1071487177940904}})"), cache);
  EXPECT_EQ(corner["classification"]["kind"], "corner_hit");
}

TEST(Session, MalformedText) {
  SpecCache cache;
  const Json r = Json::parse(handle_request_text("{not json", cache));
  EXPECT_FALSE(r["ok"].get<bool>());
  EXPECT_EQ(error_code(r), "bad_request");
  EXPECT_TRUE(Json::parse(handle_request_text(R"({"v":1,"op":"list"})", cache))["ok"].get<bool>());
}

TEST(SpecCache, EvictsLeastRecentlyUsed) {
  SpecCache cache(2);
  const auto a = cache.get(TilingSpec::square());
  cache.get(TilingSpec::equilateral());
  EXPECT_EQ(cache.get(TilingSpec::square()), a);
  EXPECT_EQ(cache.hits(), 1u);
  cache.get(TilingSpec::trihexagonal());  // evicts equilateral
  EXPECT_EQ(cache.size(), 2u);
  EXPECT_EQ(cache.get(TilingSpec::square()), a);
  EXPECT_EQ(cache.hits(), 2u);
  cache.get(TilingSpec::equilateral());
  EXPECT_EQ(cache.hits(), 2u);
}

TEST(SpecCache, ConcurrentRequests) {
  SpecCache cache(4);
  std::vector<std::thread> threads;
  std::vector<std::string> out(8);
  for (int k = 0; k < 8; ++k)
    threads.emplace_back([&, k] {
      out[k] = handle_request_text(
          R"({"v":1,"op":"trace","tiling":"equilateral_triangle","start":{"edge":[0,0,0],"t":0.4,"dir":1.2},"max_steps":500})",
          cache);
    });
  for (auto& t : threads) t.join();
  for (int k = 1; k < 8; ++k) EXPECT_EQ(out[k], out[0]);
  EXPECT_EQ(cache.size(), 1u);
}
