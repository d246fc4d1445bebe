#include "scert/problem.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace scert {

namespace {

using nlohmann::json;

std::string where(const std::string& path) { return path.empty() ? "/" : path; }

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::parse_error, where(path) + ": " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad(path, "expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) bad(path, "unknown key \"" + item.key() + "\"");
  }
}

const json& need(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, std::string("missing key \"") + key + "\"");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) bad(path, "expected a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 1) bad(path, "expected a positive integer");
  return v.get<std::size_t>();
}

Vector as_vector(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array of numbers");
  Vector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "/" + std::to_string(i)));
  return out;
}

Matrix as_matrix(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array of rows");
  Matrix out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_vector(v[i], path + "/" + std::to_string(i)));
  return out;
}

// Re-raises library validation errors at the location that caused them.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) throw;
    bad(path, e.what());
  }
}

ConvexBody parse_body(const json& v, const std::string& path, std::size_t dim) {
  if (!v.is_object()) bad(path, "expected a body object");
  const std::string type = [&] {
    const json& t = need(v, "type", path);
    if (!t.is_string()) bad(path + "/type", "expected a string");
    return t.get<std::string>();
  }();
  ConvexBody body = [&]() -> ConvexBody {
    if (type == "points") {
      check_keys(v, path, {"type", "points"});
      const json& pts = need(v, "points", path);
      if (!pts.is_array()) bad(path + "/points", "expected an array of points");
      std::vector<Vector> list;
      for (std::size_t i = 0; i < pts.size(); ++i) list.push_back(as_vector(pts[i], path + "/points/" + std::to_string(i)));
      return located(path, [&] { return ConvexBody::points(std::move(list)); });
    }
    if (type == "lp_ball") {
      check_keys(v, path, {"type", "p", "eps", "center"});
      const json& pj = need(v, "p", path);
      double p = 0;
      if (pj.is_string()) {
        if (pj.get<std::string>() != "inf") bad(path + "/p", "expected a number >= 1 or \"inf\"");
        p = std::numeric_limits<double>::infinity();
      } else {
        p = as_number(pj, path + "/p");
      }
      const double eps = as_number(need(v, "eps", path), path + "/eps");
      Vector center = v.contains("center") ? as_vector(v["center"], path + "/center") : Vector(dim, 0.0);
      return located(path, [&] { return ConvexBody::lp_ball(p, eps, std::move(center)); });
    }
    if (type == "ellipsoid") {
      check_keys(v, path, {"type", "sigma", "eps"});
      Matrix sigma = as_matrix(need(v, "sigma", path), path + "/sigma");
      const double eps = as_number(need(v, "eps", path), path + "/eps");
      return located(path, [&] { return ConvexBody::ellipsoid(std::move(sigma), eps); });
    }
    if (type == "combination") {
      check_keys(v, path, {"type", "terms"});
      const json& terms = need(v, "terms", path);
      if (!terms.is_array()) bad(path + "/terms", "expected an array of terms");
      std::vector<CombinationTerm> list;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = path + "/terms/" + std::to_string(i);
        check_keys(terms[i], tp, {"coefficient", "negated", "body"});
        const double coef = as_number(need(terms[i], "coefficient", tp), tp + "/coefficient");
        bool neg = false;
        if (terms[i].contains("negated")) {
          if (!terms[i]["negated"].is_boolean()) bad(tp + "/negated", "expected a boolean");
          neg = terms[i]["negated"].get<bool>();
        }
        list.push_back(CombinationTerm{coef, neg, parse_body(need(terms[i], "body", tp), tp + "/body", dim)});
      }
      return located(path, [&] { return ConvexBody::combination(std::move(list)); });
    }
    bad(path + "/type", "unknown body type \"" + type + "\"");
  }();
  if (body.dim() != dim) {
    bad(path, "body dimension " + std::to_string(body.dim()) + " does not match dimension " + std::to_string(dim));
  }
  return body;
}

std::size_t class_index(const json& v, const std::string& path, std::size_t k) {
  if (!v.is_number_integer()) bad(path, "expected a class index");
  const long long i = v.get<long long>();
  if (i < 1 || static_cast<std::size_t>(i) > k) bad(path, "class index out of range 1.." + std::to_string(k));
  return static_cast<std::size_t>(i - 1);
}

Smoothness parse_smoothness(const json& v, const std::string& path, std::size_t dim, std::size_t k) {
  check_keys(v, path, {"mode", "bodies"});
  const json& mj = need(v, "mode", path);
  if (!mj.is_string()) bad(path + "/mode", "expected \"u\", \"cw\" or \"cd\"");
  const std::string mode = mj.get<std::string>();
  const json& bodies = need(v, "bodies", path);
  const std::string bp = path + "/bodies";
  if (!bodies.is_array()) bad(bp, "expected an array");
  if (mode == "u") {
    if (bodies.size() != 1) bad(bp, "uniform mode takes exactly one body");
    return Smoothness::uniform(parse_body(bodies[0], bp + "/0", dim));
  }
  if (mode == "cw") {
    if (bodies.size() != k) bad(bp, "class-wise mode takes one body per class (" + std::to_string(k) + ")");
    std::vector<ConvexBody> list;
    for (std::size_t i = 0; i < bodies.size(); ++i) list.push_back(parse_body(bodies[i], bp + "/" + std::to_string(i), dim));
    return Smoothness::class_wise(std::move(list));
  }
  if (mode == "cd") {
    if (bodies.empty()) bad(bp, "class-difference mode takes at least one pair");
    std::map<std::pair<std::size_t, std::size_t>, ConvexBody> pairs;
    for (std::size_t n = 0; n < bodies.size(); ++n) {
      const std::string ep = bp + "/" + std::to_string(n);
      check_keys(bodies[n], ep, {"pair", "body"});
      const json& pr = need(bodies[n], "pair", ep);
      if (!pr.is_array() || pr.size() != 2) bad(ep + "/pair", "expected [i, j]");
      const std::size_t i = class_index(pr[0], ep + "/pair/0", k);
      const std::size_t j = class_index(pr[1], ep + "/pair/1", k);
      if (i == j) bad(ep + "/pair", "a pair needs two distinct classes");
      if (!pairs.emplace(std::make_pair(i, j), parse_body(need(bodies[n], "body", ep), ep + "/body", dim)).second) {
        bad(ep + "/pair", "duplicate pair");
      }
    }
    return Smoothness::class_diff(std::move(pairs));
  }
  bad(path + "/mode", "unknown mode \"" + mode + "\" (expected u, cw or cd)");
}

// ---------------------------------------------------------------- serialization

json number_json(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

json body_json(const ConvexBody& b) {
  json j;
  switch (b.kind()) {
    case BodyKind::points:
      j["type"] = "points";
      j["points"] = b.point_list();
      break;
    case BodyKind::lp_ball:
      j["type"] = "lp_ball";
      j["p"] = number_json(b.p());
      j["eps"] = b.radius();
      j["center"] = b.center();
      break;
    case BodyKind::ellipsoid:
      j["type"] = "ellipsoid";
      j["sigma"] = b.sigma();
      j["eps"] = b.radius();
      break;
    case BodyKind::combination: {
      j["type"] = "combination";
      json terms = json::array();
      for (const auto& t : b.terms()) {
        terms.push_back(json{{"coefficient", t.coefficient}, {"negated", t.negated}, {"body", body_json(t.body)}});
      }
      j["terms"] = terms;
      break;
    }
  }
  return j;
}

json smoothness_json(const Smoothness& s) {
  json j;
  json bodies = json::array();
  switch (s.mode) {
    case SmoothnessMode::uniform:
      j["mode"] = "u";
      bodies.push_back(body_json(s.bodies.front()));
      break;
    case SmoothnessMode::class_wise:
      j["mode"] = "cw";
      for (const auto& b : s.bodies) bodies.push_back(body_json(b));
      break;
    case SmoothnessMode::class_diff:
      j["mode"] = "cd";
      for (const auto& [key, body] : s.pairs) {
        bodies.push_back(json{{"pair", {key.first + 1, key.second + 1}}, {"body", body_json(body)}});
      }
      break;
  }
  j["bodies"] = bodies;
  return j;
}

}  // namespace

EnsembleSpec ProblemFile::ensemble() const {
  if (members.size() < 2) fail(ErrorCode::invalid_argument, "the problem has a single member, not an ensemble");
  if (weights) return EnsembleSpec(members, *weights);
  return EnsembleSpec::uniform(members);
}

ProblemFile parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    fail(ErrorCode::parse_error, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
  check_keys(doc, "", {"description", "dimension", "classes", "members", "weights", "window"});
  ProblemFile pf;
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) bad("/description", "expected a string");
    pf.description = doc["description"].get<std::string>();
  }
  pf.dimension = as_count(need(doc, "dimension", ""), "/dimension");
  pf.classes = as_count(need(doc, "classes", ""), "/classes");
  if (pf.classes < 2) bad("/classes", "at least two classes are required");
  const json& members = need(doc, "members", "");
  if (!members.is_array() || members.empty()) bad("/members", "expected a nonempty array");
  for (std::size_t n = 0; n < members.size(); ++n) {
    const std::string mp = "/members/" + std::to_string(n);
    check_keys(members[n], mp, {"logits", "smoothness"});
    Vector logits = as_vector(need(members[n], "logits", mp), mp + "/logits");
    if (logits.size() != pf.classes) {
      bad(mp + "/logits", "expected " + std::to_string(pf.classes) + " logits, got " + std::to_string(logits.size()));
    }
    if (members[n].contains("smoothness")) {
      Smoothness s = parse_smoothness(members[n]["smoothness"], mp + "/smoothness", pf.dimension, pf.classes);
      pf.members.push_back(located(mp, [&] { return ClassifierAtPoint(std::move(logits), std::move(s)); }));
    } else {
      pf.members.push_back(located(mp, [&] { return ClassifierAtPoint::logits_only(std::move(logits)); }));
    }
  }
  if (doc.contains("weights")) {
    pf.weights = as_vector(doc["weights"], "/weights");
    if (pf.weights->size() != pf.members.size()) bad("/weights", "expected one weight per member");
  }
  if (doc.contains("window")) {
    const json& w = doc["window"];
    check_keys(w, "/window", {"xmin", "xmax", "ymin", "ymax"});
    RenderWindow rw;
    rw.xmin = as_number(need(w, "xmin", "/window"), "/window/xmin");
    rw.xmax = as_number(need(w, "xmax", "/window"), "/window/xmax");
    rw.ymin = as_number(need(w, "ymin", "/window"), "/window/ymin");
    rw.ymax = as_number(need(w, "ymax", "/window"), "/window/ymax");
    if (!(rw.xmin < rw.xmax && rw.ymin < rw.ymax)) bad("/window", "window must have positive extent");
    pf.window = rw;
  }
  if (pf.is_ensemble()) located("/members", [&] { return pf.ensemble(); });
  return pf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ProblemFile load_problem(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_problem(text);
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

std::string serialize_problem(const ProblemFile& pf) {
  json doc;
  if (!pf.description.empty()) doc["description"] = pf.description;
  doc["dimension"] = pf.dimension;
  doc["classes"] = pf.classes;
  json members = json::array();
  for (const auto& m : pf.members) {
    json mj;
    mj["logits"] = m.logits();
    if (m.has_smoothness()) mj["smoothness"] = smoothness_json(m.smoothness());
    members.push_back(mj);
  }
  doc["members"] = members;
  if (pf.weights) doc["weights"] = *pf.weights;
  if (pf.window) {
    doc["window"] = json{{"xmin", pf.window->xmin}, {"xmax", pf.window->xmax}, {"ymin", pf.window->ymin}, {"ymax", pf.window->ymax}};
  }
  return doc.dump(2) + "\n";
}

bool same_body(const ConvexBody& a, const ConvexBody& b) {
  if (a.kind() != b.kind() || a.dim() != b.dim()) return false;
  switch (a.kind()) {
    case BodyKind::points:
      return a.point_list() == b.point_list();
    case BodyKind::lp_ball:
      return a.p() == b.p() && a.radius() == b.radius() && a.center() == b.center();
    case BodyKind::ellipsoid:
      return a.radius() == b.radius() && a.sigma() == b.sigma();
    case BodyKind::combination: {
      if (a.terms().size() != b.terms().size()) return false;
      for (std::size_t i = 0; i < a.terms().size(); ++i) {
        const auto& x = a.terms()[i];
        const auto& y = b.terms()[i];
        if (x.coefficient != y.coefficient || x.negated != y.negated || !same_body(x.body, y.body)) return false;
      }
      return true;
    }
  }
  return false;
}

bool same_problem(const ProblemFile& a, const ProblemFile& b) {
  if (a.description != b.description || a.dimension != b.dimension || a.classes != b.classes) return false;
  if (a.weights != b.weights || a.window.has_value() != b.window.has_value()) return false;
  if (a.window && (a.window->xmin != b.window->xmin || a.window->xmax != b.window->xmax ||
                   a.window->ymin != b.window->ymin || a.window->ymax != b.window->ymax)) {
    return false;
  }
  if (a.members.size() != b.members.size()) return false;
  for (std::size_t n = 0; n < a.members.size(); ++n) {
    const auto& x = a.members[n];
    const auto& y = b.members[n];
    if (x.logits() != y.logits() || x.has_smoothness() != y.has_smoothness()) return false;
    if (!x.has_smoothness()) continue;
    const auto& sx = x.smoothness();
    const auto& sy = y.smoothness();
    if (sx.mode != sy.mode || sx.bodies.size() != sy.bodies.size() || sx.pairs.size() != sy.pairs.size()) return false;
    for (std::size_t i = 0; i < sx.bodies.size(); ++i) {
      if (!same_body(sx.bodies[i], sy.bodies[i])) return false;
    }
    for (const auto& [key, body] : sx.pairs) {
      auto it = sy.pairs.find(key);
      if (it == sy.pairs.end() || !same_body(body, it->second)) return false;
    }
  }
  return true;
}

}  // namespace scert
