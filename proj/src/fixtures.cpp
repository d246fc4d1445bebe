#include "scert/fixtures.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "scert/report.hpp"

namespace scert {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

double value_of(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    fail(ErrorCode::parse_error, "manifest: bad number \"" + s + "\"");
  }
  return v.get<double>();
}

bool close(double got, double want) {
  if (std::isinf(want)) return got == want;
  return std::abs(got - want) <= kFixtureTol;
}

std::string show(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CertifyRequest request_of(const json& c) {
  CertifyRequest req;
  req.mode = c.value("mode", std::string("u"));
  if (c.contains("norm")) req.norm_p = parse_norm(c["norm"].get<std::string>());
  if (c.contains("member")) req.member = c["member"].get<std::size_t>() - 1;
  return req;
}

ProblemFile with_weights(const ProblemFile& pf, const json& c) {
  ProblemFile out = pf;
  if (c.contains("weights")) out.weights = c["weights"].get<Vector>();
  return out;
}

struct Verdict {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

Verdict check_interval(const ProblemFile& pf, const json& c) {
  const Certificate cert = certify(pf, request_of(c));
  const double lo = -cert.radial_extent({-1.0});
  const double hi = cert.radial_extent({1.0});
  Verdict v;
  v.detail = format_interval(cert);
  v.expect(cert.kind() != CertKind::trivial || (value_of(c["lower"]) == 0 && value_of(c["upper"]) == 0),
           "unexpected trivial certificate");
  v.expect(close(lo, value_of(c["lower"])), "lower " + show(lo) + " != " + show(value_of(c["lower"])));
  v.expect(close(hi, value_of(c["upper"])), "upper " + show(hi) + " != " + show(value_of(c["upper"])));
  return v;
}

Verdict check_radius(const ProblemFile& pf, const json& c) {
  const Certificate cert = certify(with_weights(pf, c), request_of(c));
  Verdict v;
  const auto r = cert.radius();
  v.expect(r.has_value(), "certificate has no ball form");
  if (r) {
    v.detail = "radius " + show(*r);
    v.expect(close(*r, value_of(c["expected"])), "expected " + show(value_of(c["expected"])));
  }
  return v;
}

Verdict check_halfspaces(const ProblemFile& pf, const json& c) {
  const Certificate cert = certify(pf, request_of(c));
  Verdict v;
  v.expect(cert.hrep().has_value(), "certificate has no H-representation");
  if (!cert.hrep()) return v;
  const auto& got = cert.hrep()->halfspaces();
  const json& want = c["expected"];
  v.detail = std::to_string(got.size()) + " halfspaces";
  v.expect(got.size() == want.size(), "expected " + std::to_string(want.size()) + " halfspaces");
  std::vector<bool> used(got.size(), false);
  for (const auto& w : want) {
    const Halfspace target = normalized_halfspace(Halfspace{w["a"].get<Vector>(), value_of(w["b"])});
    bool found = false;
    for (std::size_t i = 0; i < got.size() && !found; ++i) {
      if (used[i]) continue;
      const Halfspace h = normalized_halfspace(got[i]);
      bool same = close(h.b, target.b) && h.a.size() == target.a.size();
      for (std::size_t k = 0; same && k < h.a.size(); ++k) same = close(h.a[k], target.a[k]);
      if (same) used[i] = found = true;
    }
    v.expect(found, "missing halfspace " + format_vector(target.a) + " . delta <= " + show(target.b));
  }
  return v;
}

Verdict check_strict_superset(const ProblemFile& pf, const json& c) {
  const Certificate inner = certify(pf, request_of(c["inner"]));
  const Certificate outer = certify(pf, request_of(c["outer"]));
  const Vector w = c["witness"].get<Vector>();
  const Containment sub = certificate_subset(inner, outer);
  Verdict v;
  v.detail = "inner-in-outer violation " + show(sub.violation);
  v.expect(sub.holds, "inner certificate is not contained in the outer one");
  v.expect(!sub.sampled, "containment was only sampled");
  v.expect(outer.contains(w, 0.0), "witness outside the outer certificate");
  v.expect(!inner.contains(w, 0.0), "witness inside the inner certificate");
  return v;
}

Verdict check_radius_between(const ProblemFile& pf, const json& c) {
  const EnsembleSpec spec = pf.ensemble();
  const CertMode mode = natural_mode(spec.smoothness_mode());
  Verdict v;
  v.expect(spec.size() == 2, "needs two members");
  if (!v.ok) return v;
  const auto r1 = s_certificate(spec.members()[0], mode).radius();
  const auto r2 = s_certificate(spec.members()[1], mode).radius();
  v.expect(r1 && r2, "member certificates have no ball form");
  if (!v.ok) return v;
  const double lo = std::min(*r1, *r2), hi = std::max(*r1, *r2);
  const int samples = c.value("samples", 99);
  int inside = 0;
  for (int j = 1; j <= samples; ++j) {
    const double a = static_cast<double>(j) / (samples + 1);
    const auto rg = s_certificate(ensemble_classifier(EnsembleSpec(spec.members(), {a, 1.0 - a})), mode).radius();
    if (rg && *rg > lo + kFixtureTol && *rg < hi - kFixtureTol) ++inside;
  }
  v.detail = "R1 " + show(*r1) + ", R2 " + show(*r2) + ", strictly between for " + std::to_string(inside) + "/" +
             std::to_string(samples) + " interior weights";
  v.expect(inside == samples, "ensemble radius left the open interval");
  return v;
}

Verdict check_gap_regime(const ProblemFile& pf, const json& c) {
  const RegimeReport r = classify_regimes(with_weights(pf, c).ensemble());
  Verdict v;
  v.detail = regime_name(r.gap_regime);
  v.expect(regime_name(r.gap_regime) == c["expected"].get<std::string>(), "expected " + c["expected"].get<std::string>());
  return v;
}

Verdict check_cert_regime(const ProblemFile& pf, const json& c) {
  const RegimeReport r = classify_regimes(with_weights(pf, c).ensemble());
  Verdict v;
  v.expect(r.cert_regime.has_value(), "no certificate regime");
  if (!r.cert_regime) return v;
  v.detail = regime_name(*r.cert_regime);
  v.expect(regime_name(*r.cert_regime) == c["expected"].get<std::string>(), "expected " + c["expected"].get<std::string>());
  return v;
}

Verdict check_trivial(const ProblemFile& pf, const json& c) {
  const ProblemFile w = with_weights(pf, c);
  const ClassifierAtPoint g = ensemble_classifier(w.ensemble());
  const Certificate cert = certify(w, request_of(c));
  Verdict v;
  v.detail = "r^g " + show(g.gap_info().margin());
  v.expect(std::abs(g.gap_info().margin()) <= kFixtureTol, "ensemble gap is not zero");
  v.expect(cert.kind() == CertKind::trivial, "certificate is not trivial");
  return v;
}

Verdict check_damning(const ProblemFile& pf, const json& c) {
  const DamningResult d = damning_alpha(pf.members.at(0).logits(), pf.members.at(1).logits());
  Verdict v;
  v.detail = "alpha " + show(d.alpha) + ", r^g " + show(d.r_g);
  if (c.contains("alpha")) v.expect(close(d.alpha, value_of(c["alpha"])), "expected alpha " + show(value_of(c["alpha"])));
  v.expect(std::abs(d.r_g) <= kFixtureTol, "ensemble gap is not zero");
  if (pf.members.front().has_smoothness()) {
    const EnsembleSpec spec(pf.members, {d.alpha, 1.0 - d.alpha});
    const Certificate cert = s_certificate(ensemble_classifier(spec), natural_mode(spec.smoothness_mode()));
    v.expect(cert.kind() == CertKind::trivial, "certificate at the damning weights is not trivial");
  }
  return v;
}

// Ensemble membership against the members' own support functions on a grid over the window.
Verdict check_grid(const ProblemFile& pf, const json& c) {
  const ProblemFile w = with_weights(pf, c);
  const EnsembleSpec spec = w.ensemble();
  const CertMode mode = natural_mode(spec.smoothness_mode());
  const ClassifierAtPoint g = ensemble_classifier(spec);
  const Certificate cert = s_certificate(g, mode);
  const RenderWindow win = pf.window.value_or(RenderWindow{});
  const int n = c.value("grid", 201);
  const std::size_t top = g.gap_info().top;
  std::size_t checked = 0, mismatches = 0, inside = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Vector d{win.xmin + (win.xmax - win.xmin) * a / (n - 1), win.ymin + (win.ymax - win.ymin) * b / (n - 1)};
      double margin = -kInf;
      for (std::size_t i = 0; i < g.classes(); ++i) {
        if (i == top) continue;
        double rho = 0.0;
        for (std::size_t k = 0; k < spec.size(); ++k) {
          rho += spec.weights()[k] * support(class_diff_body(spec.members()[k], i, top), d);
        }
        margin = std::max(margin, rho - g.gap_info().gaps[i]);
      }
      if (std::abs(margin) < 1e-7) continue;
      ++checked;
      if (margin < 0) ++inside;
      if (cert.contains(d, 0.0) != (margin < 0)) ++mismatches;
    }
  }
  Verdict v;
  v.detail = std::to_string(checked) + " grid points, " + std::to_string(inside) + " inside, " +
             std::to_string(mismatches) + " mismatches";
  v.expect(mismatches == 0, "grid membership disagrees with the support oracle");
  v.expect(inside > 0, "no grid point inside the certificate");
  return v;
}

Verdict run_check(const ProblemFile& pf, const json& c) {
  const std::string kind = c.at("kind").get<std::string>();
  if (kind == "interval") return check_interval(pf, c);
  if (kind == "radius") return check_radius(pf, c);
  if (kind == "halfspaces") return check_halfspaces(pf, c);
  if (kind == "strict_superset") return check_strict_superset(pf, c);
  if (kind == "radius_between") return check_radius_between(pf, c);
  if (kind == "gap_regime") return check_gap_regime(pf, c);
  if (kind == "cert_regime") return check_cert_regime(pf, c);
  if (kind == "trivial") return check_trivial(pf, c);
  if (kind == "damning") return check_damning(pf, c);
  if (kind == "grid_membership") return check_grid(pf, c);
  fail(ErrorCode::parse_error, "manifest: unknown check kind \"" + kind + "\"");
}

}  // namespace

std::vector<FixtureOutcome> run_fixtures(const std::string& dir) {
  json manifest;
  try {
    manifest = json::parse(read_text_file(dir + "/manifest.json"));
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, dir + "/manifest.json: " + e.what());
  }
  std::vector<FixtureOutcome> out;
  for (const auto& fx : manifest.at("fixtures")) {
    const std::string name = fx.at("name").get<std::string>();
    std::optional<ProblemFile> pf;
    try {
      pf = load_problem(dir + "/" + fx.at("file").get<std::string>());
    } catch (const Error& e) {
      out.push_back(FixtureOutcome{name, "load", false, e.what()});
      continue;
    }
    for (const auto& c : fx.at("checks")) {
      FixtureOutcome o{name, c.value("label", c.at("kind").get<std::string>()), false, ""};
      try {
        const Verdict v = run_check(*pf, c);
        o.passed = v.ok;
        o.detail = v.detail;
      } catch (const std::exception& e) {
        o.detail = std::string("error: ") + e.what();
      }
      out.push_back(std::move(o));
    }
  }
  return out;
}

std::string fixture_table(const std::vector<FixtureOutcome>& outcomes) {
  std::size_t w1 = 7, w2 = 5;
  for (const auto& o : outcomes) {
    w1 = std::max(w1, o.fixture.size());
    w2 = std::max(w2, o.check.size());
  }
  std::ostringstream os;
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  os << "result  " << pad("fixture", w1) << "  " << pad("check", w2) << "  detail\n";
  for (const auto& o : outcomes) {
    os << (o.passed ? "PASS    " : "FAIL    ") << pad(o.fixture, w1) << "  " << pad(o.check, w2) << "  " << o.detail
       << "\n";
  }
  const std::size_t bad = fixture_failures(outcomes);
  os << outcomes.size() - bad << "/" << outcomes.size() << " checks passed\n";
  return os.str();
}

std::size_t fixture_failures(const std::vector<FixtureOutcome>& outcomes) {
  std::size_t n = 0;
  for (const auto& o : outcomes) n += o.passed ? 0 : 1;
  return n;
}

}  // namespace scert
