#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <regex>

#include "scert/fixtures.hpp"
#include "scert/problem.hpp"
#include "scert/render.hpp"
#include "scert/report.hpp"

using namespace scert;

namespace {

const std::string kDir = SCERT_FIXTURE_DIR;

std::string parse_error_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    return e.what();
  }
  return "";
}

std::string one_member(const std::string& smoothness) {
  return R"({"dimension": 1, "classes": 2, "members": [{"logits": [0.9, 0.7], "smoothness": )" + smoothness + "}]}";
}

}  // namespace

TEST_CASE("every fixture survives a serialize and parse round trip") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kDir)) {
    if (entry.path().filename() == "manifest.json" || entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const auto a = load_problem(entry.path().string());
    const auto b = parse_problem(serialize_problem(a));
    CHECK(same_problem(a, b));
    CHECK(serialize_problem(b) == serialize_problem(a));
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("parse errors carry their location") {
  CHECK(parse_error_of("{\n  \"dimension\": 1,,\n}").find("line 2, column") != std::string::npos);
  CHECK(parse_error_of(one_member(R"({"mode": "u", "bodies": [{"type": "points", "points": [[1]]}], "extra": 1})")) ==
        "/members/0/smoothness: unknown key \"extra\"");
  CHECK(parse_error_of(one_member(R"({"mode": "q", "bodies": []})")).rfind("/members/0/smoothness/mode", 0) == 0);
  CHECK(parse_error_of(one_member(R"({"mode": "u", "bodies": [{"type": "lp_ball", "p": 0.5, "eps": 1}]})"))
            .rfind("/members/0/smoothness/bodies/0", 0) == 0);
  CHECK(parse_error_of(one_member(R"({"mode": "cw", "bodies": [{"type": "points", "points": [[1]]}]})"))
            .rfind("/members/0/smoothness/bodies", 0) == 0);
  CHECK(parse_error_of(R"({"dimension": 1, "classes": 1, "members": []})").rfind("/classes", 0) == 0);
  CHECK_FALSE(parse_error_of(one_member(R"({"mode": "cd", "bodies": [{"pair": [3, 1], "body": {"type": "points",
      "points": [[1]]}}]})")).empty());
}

TEST_CASE("load_problem reports unreadable files") {
  try {
    load_problem(kDir + "/does-not-exist.json");
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
  }
}

TEST_CASE("certificate descriptions") {
  const auto ex = load_problem(kDir + "/example-3-11.json");
  CHECK(format_interval(certify(ex, {"cw", {}, {}})) == "[-0.25, 0.1666667]");
  const auto cd = load_problem(kDir + "/example-3-11-cd.json");
  CHECK(format_interval(certify(cd, {"cd", {}, {}})) == "(-inf, 1]");
  try {
    certify(cd, {"cw", {}, {}});
    FAIL("expected a mode mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::mode_mismatch);
  }
  const auto c2 = load_problem(kDir + "/appendix-c2.json");
  CHECK(format_interval(certify(c2, {"u", {}, {}})) == "[-2, 2]");
  CHECK(format_interval(certify(c2, {"cw", {}, {}})) == "(-inf, 2]");
  const auto fig1 = load_problem(kDir + "/fig1.json");
  CHECK(describe_certificate(certify(fig1, {"lipschitz-u", parse_norm("inf"), {}})).find("0.3333333") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_norm("3"), Error);
}

TEST_CASE("number formatting") {
  CHECK(format_number(1.0 / 3.0) == "0.3333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_vector({1, 0.5}) == "[1, 0.5]");
  const auto h = normalized_halfspace({{-std::sqrt(3.0) / 2, 1.5}, std::sqrt(3.0)});
  CHECK(h.b == 1.0);
  CHECK(h.a[0] == doctest::Approx(-0.5));
}

TEST_CASE("bound reports") {
  BoundParams p;
  p.rbar = 0.2;
  p.k = 4;
  CHECK(bound_report("gap-gain", p).find("0.4666667") != std::string::npos);
  p.sigma = 1.0;
  CHECK(bound_report("smoothing", p).find("0.7978846") != std::string::npos);
  CHECK_THROWS_AS(bound_report("nonsense", p), Error);
  const auto c4 = load_problem(kDir + "/appendix-c4.json");
  p.problem = &c4;
  CHECK_NOTHROW(bound_report("radius", p));
}

TEST_CASE("three-sector drawing keeps the two binding halfplanes") {
  const auto c3 = load_problem(kDir + "/appendix-c3.json");
  const auto svg = render_svg(c3, *c3.window);
  const auto start = svg.find("<g id=\"layer-s-cw\"");
  REQUIRE(start != std::string::npos);
  const auto layer = svg.substr(start, svg.find("</g>", start) - start);
  const std::regex half("halfspace (\\S+) (\\S+) (\\S+)");
  std::vector<std::array<double, 3>> found;
  for (std::sregex_iterator it(layer.begin(), layer.end(), half), end; it != end; ++it) {
    found.push_back({std::stod((*it)[1]), std::stod((*it)[2]), std::stod((*it)[3])});
  }
  REQUIRE(found.size() == 2);
  CHECK(found[0][0] == doctest::Approx(-0.5));
  CHECK(found[0][1] == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(found[0][2] == doctest::Approx(1.0));
  CHECK(found[1][0] == doctest::Approx(-0.5));
  CHECK(found[1][1] == doctest::Approx(0.0).epsilon(1e-12));
  // The region is unbounded to the right, so part of its outline is the window edge.
  CHECK(layer.find("class=\"clipped\"") != std::string::npos);
}

TEST_CASE("window polygons") {
  const auto c3 = load_problem(kDir + "/appendix-c3.json");
  const RenderWindow w{-1, 1, -1, 1};
  const auto layers = render_layers(c3);
  CHECK(layers.size() >= 2);
  for (const auto& l : layers) {
    for (const auto& v : window_polygon(l.cert, w)) {
      CHECK(v[0] >= -1 - 1e-9);
      CHECK(v[0] <= 1 + 1e-9);
      CHECK(l.cert.contains(v, 1e-7));
    }
  }
  const auto fig5c = load_problem(kDir + "/fig5c.json");
  for (const auto& l : render_layers(fig5c)) {
    if (l.id == "layer-s-u") CHECK(window_polygon(l.cert, w).empty());
  }
  CHECK_THROWS_AS(render_svg(load_problem(kDir + "/example-3-11.json"), w), Error);
}

TEST_CASE("golden fixtures") {
  const auto outcomes = run_fixtures(kDir);
  CHECK(outcomes.size() >= 20);
  CHECK(fixture_failures(outcomes) == 0);
  for (const auto& o : outcomes) {
    CAPTURE(o.fixture + " " + o.check + " " + o.detail);
    CHECK(o.passed);
  }
}
