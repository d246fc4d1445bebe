#include "scert/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "scert/lp.hpp"

namespace scert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

std::string gap_lines(const ClassifierAtPoint& clf) {
  std::ostringstream os;
  const GapInfo& g = clf.gap_info();
  os << "logits: " << format_vector(clf.logits()) << "\n";
  os << "c_A: " << one_based(g.top) << ", c_B: " << one_based(g.runner_up) << "\n";
  os << "gaps:";
  const char* sep = " ";
  for (std::size_t i = 0; i < g.gaps.size(); ++i) {
    if (i == g.top) continue;
    os << sep << "r_" << one_based(i) << " = " << format_number(g.gaps[i]);
    sep = ", ";
  }
  os << "\n";
  return os.str();
}

bool region_unbounded(const HalfspaceRegion& region) {
  for (std::size_t k = 0; k < region.dim(); ++k) {
    for (double s : {1.0, -1.0}) {
      Vector e(region.dim(), 0.0);
      e[k] = s;
      if (lp_maximize(e, region).status == LpStatus::unbounded) return true;
    }
  }
  return false;
}

std::string family_name(CertFamily f) { return f == CertFamily::lipschitz ? "lipschitz" : "s-lipschitz"; }

}  // namespace

double parse_norm(const std::string& text) {
  if (text == "inf") return kInf;
  if (text == "1") return 1.0;
  if (text == "2") return 2.0;
  fail(ErrorCode::invalid_argument, "norm must be 1, 2 or inf (got \"" + text + "\")");
}

ClassifierAtPoint target_classifier(const ProblemFile& problem, std::optional<std::size_t> member) {
  if (member) {
    if (*member >= problem.members.size()) {
      fail(ErrorCode::invalid_argument, "member " + one_based(*member) + " does not exist (the file has " +
                                            std::to_string(problem.members.size()) + ")");
    }
    return problem.members[*member];
  }
  if (!problem.is_ensemble()) return problem.members.front();
  return ensemble_classifier(problem.ensemble());
}

Certificate certify(const ProblemFile& problem, const CertifyRequest& req) {
  const ClassifierAtPoint clf = target_classifier(problem, req.member);
  const std::string& m = req.mode;
  if (m == "u") return s_certificate(clf, CertMode::uniform);
  if (m == "cw") return s_certificate(clf, CertMode::class_wise);
  if (m == "cd") return s_certificate(clf, CertMode::class_diff);
  if (m == "lipschitz-u") return lipschitz_certificate(clf, CertMode::uniform, req.norm_p);
  if (m == "lipschitz-cw") return lipschitz_certificate(clf, CertMode::class_wise, req.norm_p);
  fail(ErrorCode::invalid_argument, "unknown mode \"" + m + "\" (expected u, cw, cd, lipschitz-u or lipschitz-cw)");
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

std::string format_vector(const Vector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_number(v[i]);
  }
  return out + "]";
}

Halfspace normalized_halfspace(const Halfspace& h) {
  if (h.b > kZeroGap) return Halfspace{scaled(h.a, 1.0 / h.b), 1.0};
  const double n = norm_p(h.a, 2.0);
  if (n <= 0.0) return h;
  return Halfspace{scaled(h.a, 1.0 / n), h.b / n};
}

std::string format_interval(const Certificate& cert) {
  if (cert.dim() != 1) fail(ErrorCode::dimension_mismatch, "intervals describe 1-D certificates only");
  const double hi = cert.radial_extent({1.0});
  const double lo = -cert.radial_extent({-1.0});
  std::string out = std::isinf(lo) ? "(-inf" : "[" + format_number(lo);
  out += ", ";
  out += std::isinf(hi) ? "inf)" : format_number(hi) + "]";
  return out;
}

std::string describe_certificate(const Certificate& cert) {
  std::ostringstream os;
  os << "family: " << family_name(cert.family()) << ", mode: " << mode_name(cert.mode()) << "\n";
  if (cert.whole_space()) {
    os << "certificate: whole space\n";
    return os.str();
  }
  if (cert.kind() == CertKind::trivial) {
    os << "certificate: {0} (trivial" << (cert.trivial_by_sampling() ? ", sampled" : "") << ")\n";
    return os.str();
  }
  if (cert.dim() == 1) {
    os << "certificate: " << format_interval(cert) << "\n";
    return os.str();
  }
  if (const auto& b = cert.ball()) {
    os << "radius (" << b->shape.name() << "): " << format_number(b->radius) << "\n";
  }
  if (const auto& h = cert.hrep()) {
    os << "certificate: intersection of " << h->halfspaces().size() << " halfspaces"
       << (region_unbounded(*h) ? " (unbounded)" : "") << "\n";
    for (const auto& raw : h->halfspaces()) {
      const Halfspace n = normalized_halfspace(raw);
      os << "  " << format_vector(n.a) << " . delta <= " << format_number(n.b) << "\n";
    }
  } else if (!cert.ball()) {
    os << "certificate: intersection of " << cert.constraints().size() << " polar constraints\n";
    for (const auto& pc : cert.constraints()) {
      os << "  support(" << pc.body.describe() << ", delta) <= " << format_number(pc.radius) << "\n";
    }
  }
  return os.str();
}

std::string certify_report(const ProblemFile& problem, const CertifyRequest& req) {
  const ClassifierAtPoint clf = target_classifier(problem, req.member);
  const Certificate cert = certify(problem, req);
  std::ostringstream os;
  if (req.member) {
    os << "classifier: member " << one_based(*req.member) << "\n";
  } else {
    os << "classifier: " << (problem.is_ensemble() ? "ensemble" : "single member") << "\n";
  }
  os << gap_lines(clf);
  os << describe_certificate(cert);
  return os.str();
}

std::string ensemble_report(const ProblemFile& problem) {
  const EnsembleSpec spec = problem.ensemble();
  const ClassifierAtPoint g = ensemble_classifier(spec);
  std::ostringstream os;
  os << "members: " << spec.size() << ", classes: " << spec.classes() << "\n";
  os << "weights: " << format_vector(spec.weights()) << "\n";
  os << "top classes: " << (spec.same_top() ? "shared" : "differ")
     << ", runner-up classes: " << (spec.same_runner_up() ? "shared" : "differ") << "\n";
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const auto& m = spec.members()[k];
    os << "member " << one_based(k) << ": c_A " << one_based(m.gap_info().top) << ", c_B "
       << one_based(m.gap_info().runner_up) << ", gap " << format_number(m.gap_info().margin()) << "\n";
  }
  os << "ensemble:\n" << gap_lines(g);
  if (spec.has_smoothness()) {
    const CertMode mode = natural_mode(spec.smoothness_mode());
    for (std::size_t k = 0; k < spec.size(); ++k) {
      os << "member " << one_based(k) << " certificate:\n" << describe_certificate(s_certificate(spec.members()[k], mode));
    }
    os << "ensemble certificate:\n" << describe_certificate(s_certificate(g, mode));
  }
  if (spec.size() <= 4) {
    std::vector<Vector> logits;
    for (const auto& m : spec.members()) logits.push_back(m.logits());
    const WeightSearch ws = optimize_weights(logits);
    os << "gap-optimal weights: " << format_vector(ws.alpha) << ", r^g = " << format_number(ws.r_g) << "\n";
  }
  return os.str();
}

std::string regime_report(const ProblemFile& problem) {
  const EnsembleSpec spec = problem.ensemble();
  const RegimeReport r = classify_regimes(spec);
  std::ostringstream os;
  os << "gap regime: " << regime_name(r.gap_regime) << "\n";
  os << "r^g: " << format_number(r.r_g) << ", r_bar: " << format_number(r.r_bar) << ", r_under: "
     << format_number(r.r_under) << "\n";
  os << "top classes: " << (r.same_top ? "shared" : "differ") << ", runner-up classes: "
     << (r.same_runner_up ? "shared" : "differ") << "\n";
  if (r.zero_gap) os << "ensemble gap is zero\n";
  if (!r.cert_regime) {
    os << "certificate regime: n/a (no smoothness data)\n";
    return os.str();
  }
  os << "certificate regime: " << regime_name(*r.cert_regime) << "\n";
  if (r.ball_fast_path) {
    os << "decided by radius comparison:";
    for (std::size_t k = 0; k < r.member_radii.size(); ++k) {
      os << " R^" << one_based(k) << " = " << format_number(r.member_radii[k]);
    }
    os << ", R^g = " << format_number(r.ensemble_radius) << "\n";
  }
  for (std::size_t f = 0; f < r.evidence.size(); ++f) {
    const PairEvidence& e = r.evidence[f];
    os << "fold " << f + 1;
    if (f < r.fold_regimes.size()) os << " (" << regime_name(r.fold_regimes[f]) << ")";
    os << (e.sampled ? " [sampled]" : "") << ": Q1 in Qg " << format_number(e.q1_in_g) << ", Q2 in Qg "
       << format_number(e.q2_in_g) << ", Qg in Q1 u Q2 " << format_number(e.g_in_union) << ", Q1 n Q2 in Qg "
       << format_number(e.inter_in_g) << ", Qg in Q1 " << format_number(e.g_in_q1) << ", Qg in Q2 "
       << format_number(e.g_in_q2) << "\n";
  }
  return os.str();
}

std::string bound_report(const std::string& subkind, const BoundParams& p) {
  std::ostringstream os;
  auto need_problem = [&]() -> const ProblemFile& {
    if (!p.problem) fail(ErrorCode::invalid_argument, "bound " + subkind + " needs a problem file");
    return *p.problem;
  };
  if (subkind == "gap-gain") {
    os << "gap-gain bound (r_bar " << format_number(p.rbar) << ", K " << p.k << "): "
       << format_number(gap_gain_bound(p.rbar, p.k)) << "\n";
  } else if (subkind == "gap-witness") {
    const EnsembleSpec w = gap_bound_witness(p.rbar, p.k);
    for (std::size_t k = 0; k < w.size(); ++k) {
      os << "member " << one_based(k) << ": " << format_vector(w.members()[k].logits()) << "\n";
    }
    os << "weights: " << format_vector(w.weights()) << "\n";
    os << "r^g: " << format_number(gaps(ensemble_logits(w)).margin()) << ", bound: "
       << format_number(gap_gain_bound(p.rbar, p.k)) << "\n";
  } else if (subkind == "radius") {
    const RadiusBoundReport r = radius_improvement_bound(need_problem().ensemble());
    os << "M1: " << format_number(r.m1) << ", M2: " << format_number(r.m2) << ", Delta: " << format_number(r.delta)
       << "\n";
    os << "r1_cB: " << format_number(r.r1) << ", r2_cB: " << format_number(r.r2) << "\n";
    os << "bound (min M variant): " << format_number(r.statement) << "\n";
    os << "bound (max M variant): " << format_number(r.proof) << "\n";
  } else if (subkind == "conditions") {
    const ImprovementCheck c = improvement_conditions(need_problem().ensemble());
    os << "condition 1: " << format_number(c.lhs1) << " > " << format_number(c.rhs1) << "\n";
    os << "condition 2: " << format_number(c.lhs2) << " > " << format_number(c.rhs2) << "\n";
    os << "conditions hold: " << (c.holds ? "yes" : "no") << "\n";
  } else if (subkind == "damning") {
    const ProblemFile& pf = need_problem();
    if (pf.members.size() != 2) fail(ErrorCode::invalid_argument, "damning weights need exactly two members");
    const DamningResult d = damning_alpha(pf.members[0].logits(), pf.members[1].logits());
    if (d.all_alpha_trivial) {
      os << "every weight gives a zero ensemble gap\n";
    } else {
      os << "alpha: " << format_number(d.alpha) << " (weights " << format_vector({d.alpha, 1.0 - d.alpha}) << ")\n";
      os << "r^g: " << format_number(d.r_g) << (d.used_bisection ? " (bisection)" : "") << "\n";
    }
  } else if (subkind == "smoothing") {
    os << "Lipschitz constant (sigma " << format_number(p.sigma) << "): "
       << format_number(smoothing_sigma_to_lipschitz(p.sigma)) << "\n";
  } else {
    fail(ErrorCode::invalid_argument,
         "unknown bound \"" + subkind + "\" (expected gap-gain, gap-witness, radius, conditions, damning or smoothing)");
  }
  return os.str();
}

}  // namespace scert
