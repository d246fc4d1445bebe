#include "scert/certificates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "scert/lp.hpp"

namespace scert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool vacuous(const ConvexBody& body) {
  if (auto b = as_centered_ball(body)) return b->radius == 0.0;
  if (body.kind() == BodyKind::points) {
    for (const auto& p : body.point_list()) {
      if (norm_p(p, kInf) != 0.0) return false;
    }
    return true;
  }
  return false;
}

double diff_extents(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  return a - b;
}

HalfspaceRegion origin_only(std::size_t dim) { return *ball_hrep(BallShape::lp(kInf), 0.0, dim); }

// Exact H-rep for a certificate, when one exists.
std::optional<HalfspaceRegion> exact_hrep(const Certificate& c) {
  if (c.whole_space()) return HalfspaceRegion(c.dim());
  if (c.kind() == CertKind::trivial) return origin_only(c.dim());
  return c.hrep();
}

// Ball form for comparisons; trivial certificates are balls of radius zero in any shape.
std::optional<DualBall> exact_ball(const Certificate& c) {
  if (c.whole_space()) return std::nullopt;
  return c.ball();
}

double polygon_gauge_excess(const HalfspaceRegion& inner, const DualBall& outer) {
  auto verts = polygon_vertices(inner);
  if (!verts) return kInf;
  double worst = -kInf;
  for (const auto& v : *verts) worst = std::max(worst, outer.shape.gauge(v) - outer.radius);
  return worst;
}

double hrep_ball_excess(const DualBall& inner, const HalfspaceRegion& outer) {
  double worst = -kInf;
  for (const auto& h : outer.halfspaces()) {
    const double n = norm_p(h.a, 2.0);
    if (n == 0.0) {
      worst = std::max(worst, -h.b);
      continue;
    }
    worst = std::max(worst, inner.radius * inner.shape.support(h.a) / n - h.b / n);
  }
  return worst;
}

Containment finish(double violation, bool sampled, double margin) {
  return Containment{violation <= margin, sampled, violation};
}

}  // namespace

// ---------------------------------------------------------------- data model

Smoothness Smoothness::uniform(ConvexBody s) {
  Smoothness out;
  out.mode = SmoothnessMode::uniform;
  out.bodies.push_back(std::move(s));
  return out;
}

Smoothness Smoothness::class_wise(std::vector<ConvexBody> s) {
  Smoothness out;
  out.mode = SmoothnessMode::class_wise;
  out.bodies = std::move(s);
  return out;
}

Smoothness Smoothness::class_diff(std::map<std::pair<std::size_t, std::size_t>, ConvexBody> s) {
  Smoothness out;
  out.mode = SmoothnessMode::class_diff;
  out.pairs = std::move(s);
  return out;
}

GapInfo gaps(const Vector& logits) {
  if (logits.size() < 2) fail(ErrorCode::invalid_argument, "at least two classes are required");
  require_finite(logits, "logits");
  GapInfo g;
  for (std::size_t i = 1; i < logits.size(); ++i) {
    if (logits[i] > logits[g.top]) g.top = i;
  }
  g.runner_up = g.top == 0 ? 1 : 0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (i != g.top && logits[i] > logits[g.runner_up]) g.runner_up = i;
  }
  g.gaps.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) g.gaps[i] = logits[g.top] - logits[i];
  return g;
}

ClassifierAtPoint::ClassifierAtPoint(Vector logits) : logits_(std::move(logits)), gaps_(gaps(logits_)) {}

ClassifierAtPoint ClassifierAtPoint::logits_only(Vector logits) { return ClassifierAtPoint(std::move(logits)); }

ClassifierAtPoint::ClassifierAtPoint(Vector logits, Smoothness smoothness) : ClassifierAtPoint(std::move(logits)) {
  const std::size_t k = logits_.size();
  std::vector<const ConvexBody*> all;
  switch (smoothness.mode) {
    case SmoothnessMode::uniform:
      if (smoothness.bodies.size() != 1) fail(ErrorCode::invalid_argument, "uniform smoothness needs exactly one body");
      break;
    case SmoothnessMode::class_wise:
      if (smoothness.bodies.size() != k) {
        fail(ErrorCode::invalid_argument, "class-wise smoothness needs one body per class (" + std::to_string(k) + ")");
      }
      break;
    case SmoothnessMode::class_diff:
      if (smoothness.pairs.empty()) fail(ErrorCode::invalid_argument, "class-difference smoothness needs at least one pair");
      for (const auto& [key, body] : smoothness.pairs) {
        if (key.first >= k || key.second >= k || key.first == key.second) {
          fail(ErrorCode::invalid_argument, "class-difference pair indices must be distinct classes");
        }
        all.push_back(&body);
      }
      break;
  }
  for (const auto& b : smoothness.bodies) all.push_back(&b);
  dim_ = all.front()->dim();
  for (const auto* b : all) require_dim(b->dim(), dim_, "smoothness body");
  smoothness_ = std::move(smoothness);
}

const Smoothness& ClassifierAtPoint::smoothness() const {
  if (!smoothness_) fail(ErrorCode::mode_mismatch, "classifier has no smoothness data");
  return *smoothness_;
}

std::string mode_name(CertMode mode) {
  switch (mode) {
    case CertMode::uniform:
      return "u";
    case CertMode::class_wise:
      return "cw";
    case CertMode::class_diff:
      return "cd";
  }
  return "?";
}

// ---------------------------------------------------------------- Certificate

Certificate Certificate::from_constraints(std::size_t dim, CertMode mode, CertFamily family,
                                          std::vector<PolarConstraint> constraints) {
  Certificate c;
  c.dim_ = dim;
  c.mode_ = mode;
  c.family_ = family;
  c.governing_gap_ = kInf;
  for (const auto& pc : constraints) {
    require_dim(pc.body.dim(), dim, "certificate constraint");
    if (!std::isfinite(pc.radius) || pc.radius < 0.0) fail(ErrorCode::invalid_argument, "polar radius must be finite and >= 0");
    c.governing_gap_ = std::min(c.governing_gap_, pc.radius);
  }
  std::vector<PolarConstraint> active;
  for (const auto& pc : constraints) {
    if (!vacuous(pc.body)) active.push_back(pc);
  }
  c.constraints_ = std::move(constraints);
  c.whole_space_ = active.empty();
  if (c.whole_space_) {
    c.kind_ = CertKind::region;
    c.hrep_ = HalfspaceRegion(dim);
    return c;
  }

  // Ball form: every generator is an origin-centered ball of one shape.
  std::optional<BallShape> shape;
  double radius = kInf;
  for (const auto& pc : active) {
    auto b = as_centered_ball(pc.body);
    if (!b || (shape && !shape->same_as(b->shape))) {
      shape.reset();
      radius = -1.0;
      break;
    }
    shape = b->shape;
    radius = std::min(radius, pc.radius / b->radius);
  }
  if (shape && radius >= 0.0) c.ball_ = DualBall{shape->dual(), radius};

  // H-rep when all generators have finite point descriptions.
  HalfspaceRegion h(dim);
  bool have_h = true;
  for (const auto& pc : active) {
    auto pts = expand_points(pc.body);
    if (!pts) {
      have_h = false;
      break;
    }
    h = h.intersected(polar_hrep(hull_prune(*pts), pc.radius));
  }
  if (have_h) {
    c.hrep_ = std::move(h);
  } else if (c.ball_) {
    if (auto bh = ball_hrep(c.ball_->shape, c.ball_->radius, dim)) c.hrep_ = std::move(*bh);
  }

  c.kind_ = c.ball_ ? CertKind::dual_ball : CertKind::region;
  if (c.governing_gap_ > kZeroGap) return c;

  // Zero gap: the certificate is the cone {delta : support <= 0} of the zero-gap generators.
  std::vector<const PolarConstraint*> zero;
  for (const auto& pc : active) {
    if (pc.radius <= kZeroGap) zero.push_back(&pc);
  }
  bool point_cone = false;
  for (const auto* pc : zero) {
    if (auto b = as_centered_ball(pc->body); b && b->radius > 0.0) point_cone = true;
  }
  if (!point_cone) {
    HalfspaceRegion cone(dim);
    std::vector<Vector> gens;
    bool have_cone = true;
    for (const auto* pc : zero) {
      auto pts = expand_points(pc->body);
      if (!pts) {
        have_cone = false;
        break;
      }
      const auto pruned = hull_prune(*pts);
      gens.insert(gens.end(), pruned.begin(), pruned.end());
      cone = cone.intersected(polar_hrep(pruned, 0.0));
    }
    if (have_cone) {
      // The cone is {0} exactly when the generators positively span the space.
      c.cone_ = cone;
      point_cone = positively_spans(gens, dim);
    } else {
      point_cone = true;
      for (const auto& u : sample_directions(dim)) {
        double best = -kInf;
        for (const auto* pc : zero) best = std::max(best, support(pc->body, u));
        if (best <= kZeroGap) {
          point_cone = false;
          break;
        }
      }
      c.trivial_sampled_ = point_cone;
    }
  }
  if (point_cone) {
    c.kind_ = CertKind::trivial;
    if (!c.cone_) c.cone_ = origin_only(dim);
  }
  return c;
}

bool Certificate::contains(const Vector& delta, double tol) const {
  require_dim(delta.size(), dim_, "certificate membership");
  if (whole_space_) return true;
  if (kind_ == CertKind::trivial) return norm_p(delta, kInf) <= tol;
  for (const auto& pc : constraints_) {
    if (support(pc.body, delta) > pc.radius + tol) return false;
  }
  return true;
}

double Certificate::radial_extent(const Vector& u) const {
  require_dim(u.size(), dim_, "radial extent");
  if (whole_space_) return kInf;
  if (kind_ == CertKind::trivial) return 0.0;
  double t = kInf;
  for (const auto& pc : constraints_) {
    const double rho = support(pc.body, u);
    if (rho > 0.0) t = std::min(t, pc.radius / rho);
  }
  return t;
}

std::optional<double> Certificate::radius() const {
  if (whole_space_) return kInf;
  if (kind_ == CertKind::trivial) return 0.0;
  if (ball_) return ball_->radius;
  return std::nullopt;
}

// ---------------------------------------------------------------- smoothness views

ConvexBody uniform_body(const ClassifierAtPoint& clf) {
  const auto& s = clf.smoothness();
  if (s.mode == SmoothnessMode::uniform) return s.bodies.front();
  if (s.mode == SmoothnessMode::class_diff) {
    fail(ErrorCode::mode_mismatch, "uniform mode cannot be derived from class-difference data");
  }
  // Union of the class-wise sets: every f_i is S-Lipschitz for any S containing S_i.
  std::vector<Vector> pts;
  bool finite = true;
  for (const auto& b : s.bodies) {
    auto e = expand_points(b);
    if (!e) {
      finite = false;
      break;
    }
    pts.insert(pts.end(), e->begin(), e->end());
  }
  if (finite) return ConvexBody::points(hull_prune(pts));
  std::optional<CenteredBall> acc;
  for (const auto& b : s.bodies) {
    auto cb = as_centered_ball(b);
    if (!cb || (acc && !acc->shape.same_as(cb->shape))) {
      fail(ErrorCode::mode_mismatch, "uniform mode needs class-wise bodies that are finite sets or balls of one shape");
    }
    if (!acc || cb->radius > acc->radius) acc = cb;
  }
  return ConvexBody::ball(acc->shape, acc->radius, clf.dim());
}

std::vector<ConvexBody> class_wise_bodies(const ClassifierAtPoint& clf) {
  const auto& s = clf.smoothness();
  if (s.mode == SmoothnessMode::class_wise) return s.bodies;
  if (s.mode == SmoothnessMode::uniform) return std::vector<ConvexBody>(clf.classes(), s.bodies.front());
  fail(ErrorCode::mode_mismatch, "class-wise mode cannot be derived from class-difference data");
}

ConvexBody class_diff_body(const ClassifierAtPoint& clf, std::size_t i, std::size_t j) {
  const auto& s = clf.smoothness();
  switch (s.mode) {
    case SmoothnessMode::uniform:
      return symmetric_difference_body(s.bodies.front());
    case SmoothnessMode::class_wise:
      return minkowski_sum(s.bodies.at(i), negate(s.bodies.at(j)));
    case SmoothnessMode::class_diff: {
      if (auto it = s.pairs.find({i, j}); it != s.pairs.end()) return it->second;
      // h_{i-j} = -h_{j-i}
      if (auto it = s.pairs.find({j, i}); it != s.pairs.end()) return negate(it->second);
      fail(ErrorCode::mode_mismatch, "class-difference body for pair (" + std::to_string(i + 1) + ", " +
                                         std::to_string(j + 1) + ") is missing");
    }
  }
  fail(ErrorCode::internal, "unknown smoothness mode");
}

// ---------------------------------------------------------------- Lipschitz constants

double sup_gauge(const ConvexBody& body, const BallShape& g) {
  if (auto b = as_centered_ball(body); b && b->shape.same_as(g)) return b->radius;
  if (auto pts = expand_points(body)) {
    double m = 0.0;
    for (const auto& p : *pts) m = std::max(m, g.gauge(p));
    return m;
  }
  const std::size_t d = body.dim();
  if (g.kind() == BallShape::Kind::lp && std::isinf(g.p())) {
    double m = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      Vector e(d, 0.0);
      for (double s : {1.0, -1.0}) {
        e[i] = s;
        m = std::max(m, support(body, e));
      }
    }
    return m;
  }
  if (g.kind() == BallShape::Kind::lp && g.p() == 1.0 && d < 20) {
    double m = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      Vector s(d);
      for (std::size_t i = 0; i < d; ++i) s[i] = ((mask >> i) & 1U) ? 1.0 : -1.0;
      m = std::max(m, support(body, s));
    }
    return m;
  }
  if (g.kind() == BallShape::Kind::lp && g.p() == 2.0) {
    if (body.kind() == BodyKind::ellipsoid) {
      Eigen::MatrixXd m(d, d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) m(i, j) = body.sigma()[i][j];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
      return body.radius() * std::sqrt(es.eigenvalues().maxCoeff());
    }
    if (body.kind() == BodyKind::lp_ball) {
      const double p = body.p();
      const double unit = p <= 2.0 ? 1.0 : std::pow(static_cast<double>(d), 0.5 - (std::isinf(p) ? 0.0 : 1.0 / p));
      return norm_p(body.center(), 2.0) + body.radius() * unit;
    }
  }
  if (body.kind() == BodyKind::combination) {
    // Triangle inequality: a valid, possibly loose, constant.
    double s = 0.0;
    for (const auto& t : body.terms()) s += t.coefficient * sup_gauge(t.body, g);
    return s;
  }
  fail(ErrorCode::unsupported, "no Lipschitz constant available for body " + body.describe());
}

double lipschitz_constant_from_gradients(const std::vector<Vector>& points, double q) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "lipschitz_constant_from_gradients: empty set");
  double m = 0.0;
  for (const auto& p : points) {
    require_finite(p, "gradient");
    m = std::max(m, norm_p(p, q));
  }
  return m;
}

Certificate lipschitz_certificate(const ClassifierAtPoint& clf, CertMode mode, std::optional<double> norm_p_opt) {
  if (mode == CertMode::class_diff) fail(ErrorCode::mode_mismatch, "Lipschitz certificates are uniform or class-wise");
  const auto& gi = clf.gap_info();
  const std::size_t d = clf.dim();
  std::vector<ConvexBody> bodies;
  if (mode == CertMode::uniform) {
    bodies.push_back(uniform_body(clf));
  } else {
    bodies = class_wise_bodies(clf);
  }

  // Shape of the gradient bound (dual of the certificate norm).
  std::optional<BallShape> gshape;
  if (norm_p_opt) {
    gshape = BallShape::lp(dual_exponent(*norm_p_opt));
  } else {
    for (const auto& b : bodies) {
      auto cb = as_centered_ball(b);
      if (!cb) fail(ErrorCode::mode_mismatch, "Lipschitz certificates need ball smoothness or an explicit --norm");
      if (gshape && !gshape->same_as(cb->shape)) fail(ErrorCode::mode_mismatch, "smoothness balls must share one shape");
      gshape = cb->shape;
    }
  }
  std::vector<double> lip;
  for (const auto& b : bodies) lip.push_back(sup_gauge(b, *gshape));

  std::vector<PolarConstraint> cons;
  if (mode == CertMode::uniform) {
    cons.push_back(PolarConstraint{ConvexBody::ball(*gshape, 2.0 * lip[0], d), gi.margin()});
  } else {
    for (std::size_t i = 0; i < clf.classes(); ++i) {
      if (i == gi.top) continue;
      cons.push_back(PolarConstraint{ConvexBody::ball(*gshape, lip[i] + lip[gi.top], d), gi.gaps[i]});
    }
  }
  return Certificate::from_constraints(d, mode, CertFamily::lipschitz, std::move(cons));
}

Certificate s_certificate(const ClassifierAtPoint& clf, CertMode mode) {
  const auto& gi = clf.gap_info();
  std::vector<PolarConstraint> cons;
  switch (mode) {
    case CertMode::uniform:
      cons.push_back(PolarConstraint{symmetric_difference_body(uniform_body(clf)), gi.margin()});
      break;
    case CertMode::class_wise: {
      const auto s = class_wise_bodies(clf);
      const ConvexBody neg_top = negate(s[gi.top]);
      for (std::size_t i = 0; i < clf.classes(); ++i) {
        if (i != gi.top) cons.push_back(PolarConstraint{minkowski_sum(s[i], neg_top), gi.gaps[i]});
      }
      break;
    }
    case CertMode::class_diff:
      for (std::size_t i = 0; i < clf.classes(); ++i) {
        if (i != gi.top) cons.push_back(PolarConstraint{class_diff_body(clf, i, gi.top), gi.gaps[i]});
      }
      break;
  }
  return Certificate::from_constraints(clf.dim(), mode, CertFamily::s_lipschitz, std::move(cons));
}

double smoothing_sigma_to_lipschitz(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorCode::invalid_argument, "sigma must be positive and finite");
  return std::sqrt(2.0 / (std::numbers::pi * sigma * sigma));
}

// ---------------------------------------------------------------- witness

double Witness::f_a(const Vector& y) const { return dot(sub(y, x), c_prime) + gap; }
double Witness::f_b(const Vector& y) const { return dot(sub(y, x), c); }

bool Witness::misclassifies(const Vector& delta) const {
  const Vector y = add(x, delta);
  return f_b(y) > f_a(y);
}

Witness adversarial_witness(const ConvexBody& s, double r, const Vector& x, const Vector& delta) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorCode::invalid_argument, "witness gap must be positive");
  require_dim(x.size(), s.dim(), "witness point");
  require_dim(delta.size(), s.dim(), "witness perturbation");
  Witness w;
  w.x = x;
  w.gap = r;
  w.c = support_point(s, delta);
  w.c_prime = support_point(s, negated(delta));
  const double reach = dot(sub(w.c, w.c_prime), delta);
  if (reach - r <= 1e-12 * std::max(1.0, r)) {
    fail(ErrorCode::no_witness, "perturbation lies inside the certificate; no witness exists");
  }
  return w;
}

// ---------------------------------------------------------------- containment

std::vector<Vector> sample_directions(std::size_t dim, std::size_t count) {
  std::vector<Vector> out;
  if (dim == 1) return {Vector{1.0}, Vector{-1.0}};
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
      out.push_back(Vector{std::cos(t), std::sin(t)});
    }
    return out;
  }
  std::mt19937_64 rng(0x5eedULL + dim);
  std::normal_distribution<double> nd;
  while (out.size() < count) {
    Vector v(dim);
    for (auto& x : v) x = nd(rng);
    const double n = norm_p(v, 2.0);
    if (n > 1e-12) out.push_back(scaled(v, 1.0 / n));
  }
  return out;
}

Containment certificate_subset(const Certificate& inner, const Certificate& outer, double margin) {
  require_dim(outer.dim(), inner.dim(), "certificate containment");
  if (inner.kind() == CertKind::trivial) return finish(0.0, false, margin);
  if (outer.whole_space()) return finish(-kInf, false, margin);
  if (inner.whole_space()) return finish(kInf, false, margin);
  const auto bi = exact_ball(inner);
  const auto bo = exact_ball(outer);
  if (bi && bo && bi->shape.same_as(bo->shape)) return finish(bi->radius - bo->radius, false, margin);
  const auto hi = exact_hrep(inner);
  const auto ho = exact_hrep(outer);
  if (ho && hi) return finish(subset_violation(*hi, *ho), false, margin);
  if (ho && bi) return finish(hrep_ball_excess(*bi, *ho), false, margin);
  if (bo && hi && inner.dim() == 2) return finish(polygon_gauge_excess(*hi, *bo), false, margin);
  double worst = -kInf;
  for (const auto& u : sample_directions(inner.dim())) {
    worst = std::max(worst, diff_extents(inner.radial_extent(u), outer.radial_extent(u)));
  }
  return finish(worst, true, margin);
}

Containment certificate_union_cover(const Certificate& a, const Certificate& q1, const Certificate& q2, double margin) {
  require_dim(q1.dim(), a.dim(), "union containment");
  require_dim(q2.dim(), a.dim(), "union containment");
  if (a.kind() == CertKind::trivial || q1.whole_space() || q2.whole_space()) return finish(-kInf, false, margin);
  if (a.whole_space()) return finish(kInf, false, margin);
  const auto ba = exact_ball(a);
  const auto b1 = exact_ball(q1);
  const auto b2 = exact_ball(q2);
  if (ba && b1 && b2 && ba->shape.same_as(b1->shape) && ba->shape.same_as(b2->shape)) {
    return finish(ba->radius - std::max(b1->radius, b2->radius), false, margin);
  }
  const auto ha = exact_hrep(a);
  const auto h1 = exact_hrep(q1);
  const auto h2 = exact_hrep(q2);
  if (ha && h1 && h2 && a.dim() <= 3) {
    // a \ q1 ⊆ q2, decided piecewise; both orders must agree up to the carve margin.
    const double v = std::min(minus_subset_violation(*ha, *h1, *h2, margin), minus_subset_violation(*ha, *h2, *h1, margin));
    return finish(v, false, margin);
  }
  double worst = -kInf;
  for (const auto& u : sample_directions(a.dim())) {
    worst = std::max(worst, diff_extents(a.radial_extent(u), std::max(q1.radial_extent(u), q2.radial_extent(u))));
  }
  return finish(worst, true, margin);
}

Containment certificate_intersection_inside(const Certificate& q1, const Certificate& q2, const Certificate& a,
                                            double margin) {
  require_dim(q1.dim(), a.dim(), "intersection containment");
  require_dim(q2.dim(), a.dim(), "intersection containment");
  if (a.whole_space() || q1.kind() == CertKind::trivial || q2.kind() == CertKind::trivial) {
    return finish(-kInf, false, margin);
  }
  const auto ba = exact_ball(a);
  const auto b1 = exact_ball(q1);
  const auto b2 = exact_ball(q2);
  if (ba && b1 && b2 && ba->shape.same_as(b1->shape) && ba->shape.same_as(b2->shape)) {
    return finish(std::min(b1->radius, b2->radius) - ba->radius, false, margin);
  }
  const auto ha = exact_hrep(a);
  const auto h1 = exact_hrep(q1);
  const auto h2 = exact_hrep(q2);
  if (h1 && h2) {
    const HalfspaceRegion both = h1->intersected(*h2);
    if (ha) return finish(subset_violation(both, *ha), false, margin);
    if (ba && a.dim() == 2) return finish(polygon_gauge_excess(both, *ba), false, margin);
  }
  double worst = -kInf;
  for (const auto& u : sample_directions(a.dim())) {
    worst = std::max(worst, diff_extents(std::min(q1.radial_extent(u), q2.radial_extent(u)), a.radial_extent(u)));
  }
  return finish(worst, true, margin);
}

}  // namespace scert
