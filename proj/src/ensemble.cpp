#include "scert/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace scert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ConvexBody weighted_sum(const std::vector<ConvexBody>& bodies, const Vector& alpha) {
  ConvexBody acc = scale(alpha[0], bodies[0]);
  for (std::size_t j = 1; j < bodies.size(); ++j) acc = minkowski_sum(acc, scale(alpha[j], bodies[j]));
  return acc;
}

std::size_t argmax_lowest(const Vector& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

Vector mix(const Vector& f1, const Vector& f2, double alpha) {
  Vector g(f1.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = alpha * f1[i] + (1.0 - alpha) * f2[i];
  return g;
}

// Values of (p0 + p1 a)(q0 + q1 a) - (s0 + s1 a)(t0 + t1 a) as a quadratic c0 + c1 a + c2 a^2.
struct Quadratic {
  double c0 = 0, c1 = 0, c2 = 0;
  double at(double a) const { return c0 + a * (c1 + a * c2); }
};

void roots_in_unit(const Quadratic& q, std::vector<double>& out) {
  const double scale = std::max({std::abs(q.c0), std::abs(q.c1), std::abs(q.c2), 1e-300});
  const double a = q.c2 / scale, b = q.c1 / scale, c = q.c0 / scale;
  if (std::abs(a) < 1e-14) {
    if (std::abs(b) > 1e-14) out.push_back(-c / b);
    return;
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return;
  const double sq = std::sqrt(disc);
  out.push_back((-b - sq) / (2 * a));
  out.push_back((-b + sq) / (2 * a));
}

bool lex_less(const Vector& a, const Vector& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

void consider(const std::vector<Vector>& logits, const Vector& alpha, WeightSearch& best, bool& have) {
  const double r = ensemble_gap(logits, alpha);
  if (!have || r > best.r_g || (r == best.r_g && lex_less(alpha, best.alpha))) {
    best.alpha = alpha;
    best.r_g = r;
    have = true;
  }
}

}  // namespace

// ---------------------------------------------------------------- spec

EnsembleSpec::EnsembleSpec(std::vector<ClassifierAtPoint> members, Vector weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
  if (members_.size() < 2) fail(ErrorCode::invalid_argument, "an ensemble needs at least two members");
  if (weights_.size() != members_.size()) {
    fail(ErrorCode::invalid_argument, "expected " + std::to_string(members_.size()) + " weights, got " +
                                          std::to_string(weights_.size()));
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) fail(ErrorCode::invalid_argument, "weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) fail(ErrorCode::invalid_argument, "weights must have a positive sum");
  for (double& w : weights_) w /= total;

  const auto& first = members_.front();
  for (const auto& m : members_) {
    if (m.classes() != first.classes()) fail(ErrorCode::dimension_mismatch, "members disagree on the number of classes");
    if (m.has_smoothness() != first.has_smoothness()) {
      fail(ErrorCode::mode_mismatch, "either all members or none carry smoothness data");
    }
    if (m.has_smoothness()) {
      if (m.smoothness().mode != first.smoothness().mode) fail(ErrorCode::mode_mismatch, "members use different smoothness modes");
      require_dim(m.dim(), first.dim(), "ensemble member");
    }
  }
}

EnsembleSpec EnsembleSpec::uniform(std::vector<ClassifierAtPoint> members) {
  Vector w(members.size(), 1.0);
  return EnsembleSpec(std::move(members), std::move(w));
}

bool EnsembleSpec::same_top() const {
  for (const auto& m : members_) {
    if (m.gap_info().top != members_.front().gap_info().top) return false;
  }
  return true;
}

bool EnsembleSpec::same_runner_up() const {
  for (const auto& m : members_) {
    if (m.gap_info().runner_up != members_.front().gap_info().runner_up) return false;
  }
  return true;
}

SmoothnessMode EnsembleSpec::smoothness_mode() const { return members_.front().smoothness().mode; }

Vector ensemble_logits(const EnsembleSpec& spec) {
  Vector g(spec.classes(), 0.0);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const auto& f = spec.members()[j].logits();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += spec.weights()[j] * f[i];
  }
  return g;
}

ClassifierAtPoint ensemble_classifier(const EnsembleSpec& spec) {
  Vector g = ensemble_logits(spec);
  if (!spec.has_smoothness()) return ClassifierAtPoint::logits_only(std::move(g));
  const auto& ms = spec.members();
  const Vector& a = spec.weights();
  switch (spec.smoothness_mode()) {
    case SmoothnessMode::uniform: {
      std::vector<ConvexBody> bodies;
      for (const auto& m : ms) bodies.push_back(m.smoothness().bodies.front());
      return ClassifierAtPoint(std::move(g), Smoothness::uniform(weighted_sum(bodies, a)));
    }
    case SmoothnessMode::class_wise: {
      std::vector<ConvexBody> per_class;
      for (std::size_t i = 0; i < spec.classes(); ++i) {
        std::vector<ConvexBody> bodies;
        for (const auto& m : ms) bodies.push_back(m.smoothness().bodies[i]);
        per_class.push_back(weighted_sum(bodies, a));
      }
      return ClassifierAtPoint(std::move(g), Smoothness::class_wise(std::move(per_class)));
    }
    case SmoothnessMode::class_diff: {
      std::set<std::pair<std::size_t, std::size_t>> keys;
      for (const auto& m : ms) {
        for (const auto& [key, body] : m.smoothness().pairs) keys.insert(key);
      }
      std::map<std::pair<std::size_t, std::size_t>, ConvexBody> pairs;
      for (const auto& key : keys) {
        std::vector<ConvexBody> bodies;
        for (const auto& m : ms) bodies.push_back(class_diff_body(m, key.first, key.second));
        pairs.emplace(key, weighted_sum(bodies, a));
      }
      return ClassifierAtPoint(std::move(g), Smoothness::class_diff(std::move(pairs)));
    }
  }
  fail(ErrorCode::internal, "unknown smoothness mode");
}

CertMode natural_mode(SmoothnessMode mode) {
  switch (mode) {
    case SmoothnessMode::uniform:
      return CertMode::uniform;
    case SmoothnessMode::class_wise:
      return CertMode::class_wise;
    case SmoothnessMode::class_diff:
      return CertMode::class_diff;
  }
  return CertMode::uniform;
}

// ---------------------------------------------------------------- regimes

std::string regime_name(GapRegime r) {
  switch (r) {
    case GapRegime::gain:
      return "gain";
    case GapRegime::inconclusive:
      return "inconclusive";
    case GapRegime::loss:
      return "loss";
  }
  return "?";
}

std::string regime_name(CertRegime r) {
  switch (r) {
    case CertRegime::improvement:
      return "improvement";
    case CertRegime::sandwich:
      return "sandwich";
    case CertRegime::reduction:
      return "reduction";
    case CertRegime::indeterminate:
      return "indeterminate";
  }
  return "?";
}

GapRegime classify_gap(double r_g, double r_bar, double r_under) {
  if (r_g > r_bar + kExactTol) return GapRegime::gain;
  if (r_g < r_under - kExactTol) return GapRegime::loss;
  return GapRegime::inconclusive;
}

CertRegime classify_pair(const Certificate& q1, const Certificate& q2, const Certificate& qg, PairEvidence* evidence) {
  PairEvidence ev;
  const auto c1 = certificate_subset(q1, qg);
  const auto c2 = certificate_subset(q2, qg);
  const auto cu = certificate_union_cover(qg, q1, q2, kStrictMargin);
  const auto ci = certificate_intersection_inside(q1, q2, qg, kStrictMargin);
  const auto g1 = certificate_subset(qg, q1);
  const auto g2 = certificate_subset(qg, q2);
  ev.q1_in_g = c1.violation;
  ev.q2_in_g = c2.violation;
  ev.g_in_union = cu.violation;
  ev.inter_in_g = ci.violation;
  ev.g_in_q1 = g1.violation;
  ev.g_in_q2 = g2.violation;
  ev.sampled = c1.sampled || c2.sampled || cu.sampled || ci.sampled || g1.sampled || g2.sampled;
  if (evidence) *evidence = ev;

  if (ev.q1_in_g <= kExactTol && ev.q2_in_g <= kExactTol && ev.g_in_union > kStrictMargin) return CertRegime::improvement;
  if (ev.g_in_q1 <= kExactTol && ev.g_in_q2 <= kExactTol && ev.inter_in_g > kStrictMargin) return CertRegime::reduction;
  if (ev.inter_in_g <= kStrictMargin && ev.g_in_union <= kStrictMargin) return CertRegime::sandwich;
  return CertRegime::indeterminate;
}

RegimeReport classify_regimes(const EnsembleSpec& spec, const RegimeOptions& options) {
  RegimeReport rep;
  rep.r_g = gaps(ensemble_logits(spec)).margin();
  rep.r_bar = -kInf;
  rep.r_under = kInf;
  for (const auto& m : spec.members()) {
    rep.r_bar = std::max(rep.r_bar, m.gap_info().margin());
    rep.r_under = std::min(rep.r_under, m.gap_info().margin());
  }
  rep.gap_regime = classify_gap(rep.r_g, rep.r_bar, rep.r_under);
  rep.zero_gap = rep.r_g <= kZeroGap;
  rep.same_top = spec.same_top();
  rep.same_runner_up = spec.same_runner_up();
  if (!spec.has_smoothness()) return rep;

  const CertMode mode = natural_mode(spec.smoothness_mode());
  std::vector<Certificate> certs;
  for (const auto& m : spec.members()) certs.push_back(s_certificate(m, mode));
  const Certificate qg = s_certificate(ensemble_classifier(spec), mode);

  if (options.allow_fast_path) {
    // Nested balls of one shape: the regimes reduce to radius comparisons for any N.
    std::optional<BallShape> shape;
    bool ok = true;
    std::vector<const Certificate*> all;
    for (const auto& x : certs) all.push_back(&x);
    all.push_back(&qg);
    for (const Certificate* c : all) {
      if (!c->radius()) {
        ok = false;
        break;
      }
      if (c->ball() && !c->whole_space() && c->kind() != CertKind::trivial) {
        if (shape && !shape->same_as(c->ball()->shape)) {
          ok = false;
          break;
        }
        shape = c->ball()->shape;
      }
    }
    if (ok) {
      rep.ball_fast_path = true;
      for (const auto& c : certs) rep.member_radii.push_back(*c.radius());
      rep.ensemble_radius = *qg.radius();
      const double rmax = *std::max_element(rep.member_radii.begin(), rep.member_radii.end());
      const double rmin = *std::min_element(rep.member_radii.begin(), rep.member_radii.end());
      PairEvidence ev;
      ev.fast_path = true;
      ev.g_in_union = rep.ensemble_radius - rmax;
      ev.inter_in_g = rmin - rep.ensemble_radius;
      ev.q1_in_g = rep.member_radii[0] - rep.ensemble_radius;
      ev.q2_in_g = rep.member_radii[1] - rep.ensemble_radius;
      ev.g_in_q1 = -ev.q1_in_g;
      ev.g_in_q2 = -ev.q2_in_g;
      rep.evidence.push_back(ev);
      if (std::isinf(rep.ensemble_radius) && std::isinf(rmax)) {
        rep.cert_regime = CertRegime::sandwich;
      } else if (rep.ensemble_radius - rmax > kStrictMargin) {
        rep.cert_regime = CertRegime::improvement;
      } else if (rmin - rep.ensemble_radius > kStrictMargin) {
        rep.cert_regime = CertRegime::reduction;
      } else {
        rep.cert_regime = CertRegime::sandwich;
      }
      rep.fold_regimes.push_back(*rep.cert_regime);
      return rep;
    }
  }

  // Fold members left to right: (f1, f2), (g12, f3), ...
  const auto& ms = spec.members();
  const Vector& w = spec.weights();
  Certificate left = certs[0];
  for (std::size_t j = 1; j < ms.size(); ++j) {
    const Certificate* combined = &qg;
    std::optional<Certificate> partial;
    if (j + 1 < ms.size()) {
      std::vector<ClassifierAtPoint> prefix(ms.begin(), ms.begin() + static_cast<std::ptrdiff_t>(j + 1));
      Vector pw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j + 1));
      double s = 0.0;
      for (double x : pw) s += x;
      if (s <= 0.0) std::fill(pw.begin(), pw.end(), 1.0);
      partial = s_certificate(ensemble_classifier(EnsembleSpec(prefix, pw)), mode);
      combined = &*partial;
    }
    PairEvidence ev;
    rep.fold_regimes.push_back(classify_pair(left, certs[j], *combined, &ev));
    rep.evidence.push_back(ev);
    left = *combined;
  }
  const bool agree = std::all_of(rep.fold_regimes.begin(), rep.fold_regimes.end(),
                                 [&](CertRegime r) { return r == rep.fold_regimes.front(); });
  rep.cert_regime = agree ? rep.fold_regimes.front() : CertRegime::indeterminate;
  return rep;
}

// ---------------------------------------------------------------- gap bound

double gap_gain_bound(double r_bar, std::size_t k) {
  if (!(r_bar >= -1e-12 && r_bar <= 1.0 + 1e-12)) fail(ErrorCode::invalid_argument, "r_bar must lie in [0, 1]");
  if (k < 2) fail(ErrorCode::invalid_argument, "K must be at least 2");
  const double head = 1.0 - r_bar;
  return r_bar + head / 2.0 - head / (2.0 * static_cast<double>(k - 1));
}

EnsembleSpec gap_bound_witness(double r_bar, std::size_t k) {
  gap_gain_bound(r_bar, k);
  std::vector<ClassifierAtPoint> members;
  if (k == 2) {
    Vector f{(1.0 - r_bar) / 2.0, (1.0 + r_bar) / 2.0};
    members.push_back(ClassifierAtPoint::logits_only(f));
    members.push_back(ClassifierAtPoint::logits_only(f));
    return EnsembleSpec::uniform(std::move(members));
  }
  for (std::size_t j = 0; j + 1 < k; ++j) {
    Vector f(k, 0.0);
    f[k - 1] = r_bar + (1.0 - r_bar) / 2.0;
    f[j] = (1.0 - r_bar) / 2.0;
    members.push_back(ClassifierAtPoint::logits_only(std::move(f)));
  }
  return EnsembleSpec::uniform(std::move(members));
}

// ---------------------------------------------------------------- damning weights

DamningResult damning_alpha(const Vector& f1, const Vector& f2) {
  require_dim(f2.size(), f1.size(), "damning_alpha");
  const auto g1 = gaps(f1);
  const auto g2 = gaps(f2);
  const std::size_t a1 = g1.top;
  const std::size_t a2 = g2.top;
  if (a1 == a2) fail(ErrorCode::precondition, "members share the top class; no weights collapse the certificate");
  DamningResult out;
  const double den = f1[a1] - f1[a2] + f2[a2] - f2[a1];
  if (den <= 1e-12) {
    out.all_alpha_trivial = true;
    return out;
  }
  out.alpha = (f2[a2] - f2[a1]) / den;
  Vector g = mix(f1, f2, out.alpha);
  double others = -kInf;
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (c != a1 && c != a2) others = std::max(others, g[c]);
  }
  if (others <= std::max(g[a1], g[a2]) + 1e-12) {
    out.r_g = gaps(g).margin();
    return out;
  }

  // A third class dominates at the closed-form crossing: locate a switch of the argmax instead.
  out.used_bisection = true;
  double lo = 0.0, hi = 1.0;
  const std::size_t start = argmax_lowest(mix(f1, f2, lo));
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (argmax_lowest(mix(f1, f2, mid)) == start) lo = mid;
    else hi = mid;
  }
  const std::size_t c_lo = argmax_lowest(mix(f1, f2, lo));
  const std::size_t c_hi = argmax_lowest(mix(f1, f2, hi));
  // Exact crossing of the two lines g_{c_lo}(a) = g_{c_hi}(a).
  const double slope = (f1[c_lo] - f2[c_lo]) - (f1[c_hi] - f2[c_hi]);
  double a = 0.5 * (lo + hi);
  if (std::abs(slope) > 1e-300) {
    const double exact = (f2[c_hi] - f2[c_lo]) / slope;
    if (exact >= lo - 1e-12 && exact <= hi + 1e-12) a = std::clamp(exact, 0.0, 1.0);
  }
  out.alpha = a;
  out.r_g = gaps(mix(f1, f2, a)).margin();
  return out;
}

// ---------------------------------------------------------------- radius bounds

CommonShapeData common_shape_data(const EnsembleSpec& spec) {
  if (spec.size() != 2) fail(ErrorCode::precondition, "the radius analysis needs exactly two members");
  if (!spec.has_smoothness()) fail(ErrorCode::precondition, "the radius analysis needs smoothness data");
  if (!spec.same_top()) fail(ErrorCode::precondition, "members must share the top class");
  CommonShapeData d;
  d.top = spec.members()[0].gap_info().top;
  std::optional<BallShape> shape;
  for (const auto& m : spec.members()) {
    Vector eps(m.classes(), 0.0);
    for (std::size_t i = 0; i < m.classes(); ++i) {
      if (i == d.top) continue;
      auto b = as_centered_ball(class_diff_body(m, i, d.top));
      if (!b) fail(ErrorCode::precondition, "per-pair bodies must be origin-centered balls");
      if (b->radius > 0.0) {
        if (shape && !shape->same_as(b->shape)) fail(ErrorCode::precondition, "per-pair balls must share one shape");
        shape = b->shape;
      }
      eps[i] = b->radius;
    }
    d.eps.push_back(std::move(eps));
    d.gaps.push_back(m.gap_info().gaps);
    d.runner_up.push_back(m.gap_info().runner_up);
  }
  if (!shape) fail(ErrorCode::precondition, "all per-pair balls are degenerate");
  d.shape = *shape;
  return d;
}

double ensemble_radius(const CommonShapeData& data, double alpha) {
  double r = kInf;
  for (std::size_t i = 0; i < data.gaps[0].size(); ++i) {
    if (i == data.top) continue;
    const double num = alpha * data.gaps[0][i] + (1.0 - alpha) * data.gaps[1][i];
    const double den = alpha * data.eps[0][i] + (1.0 - alpha) * data.eps[1][i];
    if (den > 0.0) r = std::min(r, num / den);
  }
  return r;
}

double member_radius(const CommonShapeData& data, std::size_t k) { return ensemble_radius(data, k == 0 ? 1.0 : 0.0); }

RadiusBoundReport radius_improvement_bound(const EnsembleSpec& spec) {
  const auto d = common_shape_data(spec);
  RadiusBoundReport rep;
  double m[2];
  for (std::size_t k = 0; k < 2; ++k) {
    m[k] = kInf;
    for (std::size_t i = 0; i < d.eps[k].size(); ++i) {
      if (i != d.top) m[k] = std::min(m[k], d.eps[k][i]);
    }
    if (!(m[k] > 0.0)) fail(ErrorCode::precondition, "the smallest per-pair radius must be positive");
  }
  rep.m1 = m[0];
  rep.m2 = m[1];
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < d.eps[k].size(); ++i) {
      if (i != d.top) rep.delta = std::max(rep.delta, d.eps[k][i] - m[k]);
    }
  }
  rep.r1 = d.gaps[0][d.runner_up[0]];
  rep.r2 = d.gaps[1][d.runner_up[1]];
  const double rmin = std::min(rep.r1, rep.r2);
  const double lo = std::min(m[0], m[1]);
  const double hi = std::max(m[0], m[1]);
  rep.statement = 1.0 / lo - rmin / (lo + rep.delta);
  rep.proof = 1.0 / hi - rmin / (hi + rep.delta);
  return rep;
}

ImprovementCheck improvement_conditions(const EnsembleSpec& spec) {
  const auto d = common_shape_data(spec);
  const std::size_t b1 = d.runner_up[0];
  const std::size_t b2 = d.runner_up[1];
  if (b1 == b2) fail(ErrorCode::precondition, "members share the runner-up class");
  const auto& f1 = spec.members()[0].logits();
  const auto& f2 = spec.members()[1].logits();
  const std::size_t k = f1.size();
  const std::vector<const Vector*> fs{&f1, &f2};

  // Low confidences: every other class is below both runner-up confidences of both members.
  for (std::size_t c = 0; c < k; ++c) {
    if (c == d.top || c == b1 || c == b2) continue;
    for (const Vector* fi : fs) {
      for (const Vector* fj : fs) {
        for (std::size_t b : {b1, b2}) {
          if (!((*fi)[c] < (*fj)[b])) {
            fail(ErrorCode::precondition, "class " + std::to_string(c + 1) + " is not below the runner-up confidences");
          }
        }
      }
    }
  }
  // Each member's radius is set by its own runner-up class.
  for (std::size_t m = 0; m < 2; ++m) {
    const std::size_t own = d.runner_up[m];
    const double rown = d.gaps[m][own] / d.eps[m][own];
    for (std::size_t i = 0; i < k; ++i) {
      if (i == d.top || d.eps[m][i] == 0.0) continue;
      if (d.gaps[m][i] / d.eps[m][i] < rown - 1e-12) {
        fail(ErrorCode::precondition, "member " + std::to_string(m + 1) + "'s radius is not set by its runner-up class");
      }
    }
  }
  // No third class ever limits the ensemble radius (checked exactly on the pieces between sign changes).
  auto linear = [&](std::size_t i, bool eps) {
    const double v1 = eps ? d.eps[0][i] : d.gaps[0][i];
    const double v2 = eps ? d.eps[1][i] : d.gaps[1][i];
    return std::pair<double, double>{v2, v1 - v2};  // value at alpha: v2 + alpha (v1 - v2)
  };
  auto cross_quadratic = [&](std::size_t c, std::size_t b) {
    // sign of T_c - T_b = r_c eps_b - r_b eps_c
    const auto rc = linear(c, false), ec = linear(c, true), rb = linear(b, false), eb = linear(b, true);
    Quadratic q;
    q.c0 = rc.first * eb.first - rb.first * ec.first;
    q.c1 = rc.first * eb.second + rc.second * eb.first - rb.first * ec.second - rb.second * ec.first;
    q.c2 = rc.second * eb.second - rb.second * ec.second;
    return q;
  };
  for (std::size_t c = 0; c < k; ++c) {
    if (c == d.top || c == b1 || c == b2) continue;
    const Quadratic qa = cross_quadratic(c, b1);
    const Quadratic qb = cross_quadratic(c, b2);
    std::vector<double> cuts{0.0, 1.0};
    roots_in_unit(qa, cuts);
    roots_in_unit(qb, cuts);
    std::vector<double> pts;
    for (double x : cuts) {
      if (x >= 0.0 && x <= 1.0) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> probes = pts;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) probes.push_back(0.5 * (pts[i] + pts[i + 1]));
    for (double a : probes) {
      if (qa.at(a) < -1e-12 && qb.at(a) < -1e-12) {
        fail(ErrorCode::precondition, "class " + std::to_string(c + 1) + " limits the ensemble radius");
      }
    }
  }

  ImprovementCheck out;
  out.lhs1 = f1[d.top] - f1[b2];
  out.rhs1 = d.gaps[1][b2] * d.eps[0][b2] / d.eps[1][b2];
  out.lhs2 = f2[d.top] - f2[b1];
  out.rhs2 = d.gaps[0][b1] * d.eps[1][b1] / d.eps[0][b1];
  out.holds = out.lhs1 > out.rhs1 + kExactTol && out.lhs2 > out.rhs2 + kExactTol;
  return out;
}

// ---------------------------------------------------------------- weight search

double ensemble_gap(const std::vector<Vector>& logits, const Vector& alpha) {
  const std::size_t k = logits.front().size();
  double first = -kInf, second = -kInf;
  for (std::size_t i = 0; i < k; ++i) {
    double g = 0.0;
    for (std::size_t j = 0; j < logits.size(); ++j) g += alpha[j] * logits[j][i];
    if (g > first) {
      second = first;
      first = g;
    } else if (g > second) {
      second = g;
    }
  }
  return first - second;
}

std::size_t default_resolution(std::size_t members) {
  switch (members) {
    case 2:
      return 1000;
    case 3:
      return 200;
    case 4:
      return 60;
    default:
      fail(ErrorCode::invalid_argument, "weight search supports 2 to 4 members");
  }
}

WeightSearch optimize_weights(const std::vector<Vector>& logits, std::size_t resolution) {
  const std::size_t n = logits.size();
  const std::size_t steps = resolution ? resolution : default_resolution(n);
  if (n < 2 || n > 4) fail(ErrorCode::invalid_argument, "weight search supports 2 to 4 members");
  for (const auto& f : logits) require_dim(f.size(), logits.front().size(), "weight search member");
  const double h = 1.0 / static_cast<double>(steps);
  WeightSearch best;
  bool have = false;
  Vector a(n);
  if (n == 2) {
    for (std::size_t i = 0; i <= steps; ++i) {
      a = {i * h, 1.0 - i * h};
      consider(logits, a, best, have);
    }
  } else if (n == 3) {
    for (std::size_t i = 0; i <= steps; ++i) {
      for (std::size_t j = 0; i + j <= steps; ++j) {
        a = {i * h, j * h, static_cast<double>(steps - i - j) * h};
        consider(logits, a, best, have);
      }
    }
  } else {
    for (std::size_t i = 0; i <= steps; ++i) {
      for (std::size_t j = 0; i + j <= steps; ++j) {
        for (std::size_t l = 0; i + j + l <= steps; ++l) {
          a = {i * h, j * h, l * h, static_cast<double>(steps - i - j - l) * h};
          consider(logits, a, best, have);
        }
      }
    }
  }

  // One refinement pass at a ten times finer step around the incumbent.
  const Vector centre = best.alpha;
  const double fine = h / 10.0;
  const int span = 10;
  auto try_free = [&](const Vector& free) {
    double rest = 1.0;
    Vector cand(n);
    for (std::size_t t = 0; t + 1 < n; ++t) {
      if (free[t] < -1e-15 || free[t] > 1.0 + 1e-15) return;
      cand[t] = std::clamp(free[t], 0.0, 1.0);
      rest -= cand[t];
    }
    if (rest < -1e-12) return;
    cand[n - 1] = std::max(rest, 0.0);
    consider(logits, cand, best, have);
  };
  Vector free(n - 1);
  if (n == 2) {
    for (int t0 = -span; t0 <= span; ++t0) {
      free[0] = centre[0] + t0 * fine;
      try_free(free);
    }
  } else if (n == 3) {
    for (int t0 = -span; t0 <= span; ++t0) {
      for (int t1 = -span; t1 <= span; ++t1) {
        free = {centre[0] + t0 * fine, centre[1] + t1 * fine};
        try_free(free);
      }
    }
  } else {
    for (int t0 = -span; t0 <= span; ++t0) {
      for (int t1 = -span; t1 <= span; ++t1) {
        for (int t2 = -span; t2 <= span; ++t2) {
          free = {centre[0] + t0 * fine, centre[1] + t1 * fine, centre[2] + t2 * fine};
          try_free(free);
        }
      }
    }
  }
  return best;
}

WeightSearch optimize_weights(const EnsembleSpec& spec, std::size_t resolution) {
  std::vector<Vector> logits;
  for (const auto& m : spec.members()) logits.push_back(m.logits());
  return optimize_weights(logits, resolution);
}

}  // namespace scert
