#include "scert/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace scert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd to_eigen(const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j];
  }
  return out;
}

Matrix from_eigen(const Eigen::MatrixXd& m) {
  Matrix out(m.rows(), Vector(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

double quad_form(const Matrix& m, const Vector& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) row += m[i][j] * x[j];
    s += x[i] * row;
  }
  return std::max(s, 0.0);
}

Vector mat_vec(const Matrix& m, const Vector& x) {
  Vector out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m[i][j] * x[j];
  }
  return out;
}

void validate_spd(const Matrix& sigma) {
  const std::size_t n = sigma.size();
  if (n == 0) fail(ErrorCode::invalid_argument, "ellipsoid: empty matrix");
  for (const auto& row : sigma) {
    require_dim(row.size(), n, "ellipsoid: matrix row");
    require_finite(row, "ellipsoid");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(sigma[i][j]), std::abs(sigma[j][i])});
      if (std::abs(sigma[i][j] - sigma[j][i]) > 1e-12 * scale) {
        fail(ErrorCode::invalid_argument, "ellipsoid: matrix is not symmetric");
      }
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(sigma));
  if (llt.info() != Eigen::Success) fail(ErrorCode::invalid_argument, "ellipsoid: matrix is not positive definite");
}

std::vector<Vector> pairwise_sums(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  std::vector<Vector> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(add(x, y));
  }
  return out;
}

double cross(const Vector& o, const Vector& a, const Vector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

// ---------------------------------------------------------------- BallShape

BallShape BallShape::lp(double p) {
  if (!(p >= 1.0)) fail(ErrorCode::invalid_argument, "l_p ball: p must lie in [1, inf]");
  BallShape s;
  s.kind_ = Kind::lp;
  s.p_ = p;
  return s;
}

BallShape BallShape::ellipsoid(Matrix sigma) {
  validate_spd(sigma);
  BallShape s;
  s.kind_ = Kind::ellipsoid;
  s.sigma_inv_ = from_eigen(to_eigen(sigma).inverse());
  s.sigma_ = std::move(sigma);
  return s;
}

double BallShape::gauge(const Vector& x) const {
  if (kind_ == Kind::lp) return norm_p(x, p_);
  require_dim(x.size(), sigma_.size(), "gauge");
  return std::sqrt(quad_form(sigma_inv_, x));
}

double BallShape::support(const Vector& v) const {
  if (kind_ == Kind::lp) return norm_p(v, dual_exponent(p_));
  require_dim(v.size(), sigma_.size(), "support");
  return std::sqrt(quad_form(sigma_, v));
}

BallShape BallShape::dual() const {
  BallShape s = *this;
  if (kind_ == Kind::lp) {
    s.p_ = dual_exponent(p_);
  } else {
    std::swap(s.sigma_, s.sigma_inv_);
  }
  return s;
}

bool BallShape::same_as(const BallShape& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::lp) return p_ == other.p_;
  return sigma_ == other.sigma_;
}

std::string BallShape::name() const {
  if (kind_ == Kind::ellipsoid) return "ellipsoid";
  if (std::isinf(p_)) return "linf";
  std::ostringstream os;
  os << "l" << p_;
  return os.str();
}

// ---------------------------------------------------------------- ConvexBody

struct ConvexBody::Rep {
  BodyKind kind = BodyKind::points;
  std::size_t dim = 0;
  std::vector<Vector> points;
  double radius = 0.0;
  Vector center;
  BallShape shape;
  std::vector<CombinationTerm> terms;
};

ConvexBody ConvexBody::points(std::vector<Vector> pts) {
  if (pts.empty()) fail(ErrorCode::invalid_argument, "point set must be nonempty");
  const std::size_t d = pts.front().size();
  if (d == 0) fail(ErrorCode::invalid_argument, "points must have dimension >= 1");
  for (const auto& p : pts) {
    require_dim(p.size(), d, "point set");
    require_finite(p, "point set");
  }
  auto rep = std::make_shared<Rep>();
  rep->kind = BodyKind::points;
  rep->dim = d;
  rep->points = std::move(pts);
  return ConvexBody(std::move(rep));
}

ConvexBody ConvexBody::lp_ball(double p, double radius, Vector center) {
  if (center.empty()) fail(ErrorCode::invalid_argument, "l_p ball: center must have dimension >= 1");
  require_finite(center, "l_p ball center");
  if (!std::isfinite(radius) || radius < 0.0) fail(ErrorCode::invalid_argument, "l_p ball: radius must be finite and >= 0");
  auto rep = std::make_shared<Rep>();
  rep->kind = BodyKind::lp_ball;
  rep->shape = BallShape::lp(p);
  rep->dim = center.size();
  rep->radius = radius;
  rep->center = std::move(center);
  return ConvexBody(std::move(rep));
}

ConvexBody ConvexBody::ellipsoid(Matrix sigma, double radius) {
  if (!std::isfinite(radius) || radius < 0.0) fail(ErrorCode::invalid_argument, "ellipsoid: radius must be finite and >= 0");
  auto rep = std::make_shared<Rep>();
  rep->kind = BodyKind::ellipsoid;
  rep->dim = sigma.size();
  rep->shape = BallShape::ellipsoid(std::move(sigma));
  rep->radius = radius;
  rep->center = Vector(rep->dim, 0.0);
  return ConvexBody(std::move(rep));
}

ConvexBody ConvexBody::combination(std::vector<CombinationTerm> terms) {
  if (terms.empty()) fail(ErrorCode::invalid_argument, "combination must have at least one term");
  const std::size_t d = terms.front().body.dim();
  for (const auto& t : terms) {
    require_dim(t.body.dim(), d, "combination term");
    if (!std::isfinite(t.coefficient) || t.coefficient < 0.0) {
      fail(ErrorCode::invalid_argument, "combination coefficients must be finite and >= 0");
    }
  }
  auto rep = std::make_shared<Rep>();
  rep->kind = BodyKind::combination;
  rep->dim = d;
  rep->terms = std::move(terms);
  return ConvexBody(std::move(rep));
}

ConvexBody ConvexBody::ball(const BallShape& shape, double radius, std::size_t dim) {
  if (shape.kind() == BallShape::Kind::ellipsoid) {
    require_dim(shape.sigma().size(), dim, "ball");
    return ellipsoid(shape.sigma(), radius);
  }
  return lp_ball(shape.p(), radius, Vector(dim, 0.0));
}

BodyKind ConvexBody::kind() const { return rep_->kind; }
std::size_t ConvexBody::dim() const { return rep_->dim; }

const std::vector<Vector>& ConvexBody::point_list() const {
  if (rep_->kind != BodyKind::points) fail(ErrorCode::invalid_argument, "body is not a point set");
  return rep_->points;
}

double ConvexBody::p() const {
  if (rep_->kind != BodyKind::lp_ball) fail(ErrorCode::invalid_argument, "body is not an l_p ball");
  return rep_->shape.p();
}

double ConvexBody::radius() const {
  if (rep_->kind != BodyKind::lp_ball && rep_->kind != BodyKind::ellipsoid) {
    fail(ErrorCode::invalid_argument, "body is not a ball");
  }
  return rep_->radius;
}

const Vector& ConvexBody::center() const {
  if (rep_->kind != BodyKind::lp_ball && rep_->kind != BodyKind::ellipsoid) {
    fail(ErrorCode::invalid_argument, "body is not a ball");
  }
  return rep_->center;
}

const Matrix& ConvexBody::sigma() const {
  if (rep_->kind != BodyKind::ellipsoid) fail(ErrorCode::invalid_argument, "body is not an ellipsoid");
  return rep_->shape.sigma();
}

const BallShape& ConvexBody::shape() const {
  if (rep_->kind != BodyKind::lp_ball && rep_->kind != BodyKind::ellipsoid) {
    fail(ErrorCode::invalid_argument, "body is not a ball");
  }
  return rep_->shape;
}

const std::vector<CombinationTerm>& ConvexBody::terms() const {
  if (rep_->kind != BodyKind::combination) fail(ErrorCode::invalid_argument, "body is not a combination");
  return rep_->terms;
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  switch (rep_->kind) {
    case BodyKind::points:
      os << "points[" << rep_->points.size() << "]";
      break;
    case BodyKind::lp_ball:
      os << rep_->shape.name() << " ball(eps=" << rep_->radius << ")";
      break;
    case BodyKind::ellipsoid:
      os << "ellipsoid(eps=" << rep_->radius << ")";
      break;
    case BodyKind::combination:
      os << "combination[";
      for (std::size_t i = 0; i < rep_->terms.size(); ++i) {
        const auto& t = rep_->terms[i];
        os << (i ? " + " : "") << t.coefficient << (t.negated ? "*-" : "*") << t.body.describe();
      }
      os << "]";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- HalfspaceRegion

HalfspaceRegion::HalfspaceRegion(std::size_t dim, std::vector<Halfspace> hs) : dim_(dim) {
  for (auto& h : hs) add(std::move(h));
}

void HalfspaceRegion::add(Halfspace h) {
  require_dim(h.a.size(), dim_, "halfspace");
  require_finite(h.a, "halfspace normal");
  if (!std::isfinite(h.b)) fail(ErrorCode::non_finite, "halfspace offset is not finite");
  hs_.push_back(std::move(h));
}

HalfspaceRegion HalfspaceRegion::intersected(const HalfspaceRegion& other) const {
  require_dim(other.dim_, dim_, "intersection");
  HalfspaceRegion out = *this;
  for (const auto& h : other.hs_) out.hs_.push_back(h);
  return out;
}

double HalfspaceRegion::violation(const Vector& delta) const {
  require_dim(delta.size(), dim_, "membership");
  double worst = -kInf;
  for (const auto& h : hs_) worst = std::max(worst, dot(h.a, delta) - h.b);
  return worst;
}

bool HalfspaceRegion::contains(const Vector& delta, double tol) const { return violation(delta) <= tol; }

// ---------------------------------------------------------------- support

namespace {

double support_unchecked(const ConvexBody& body, const Vector& delta) {
  switch (body.kind()) {
    case BodyKind::points: {
      double best = -kInf;
      for (const auto& p : body.point_list()) best = std::max(best, dot(p, delta));
      return best;
    }
    case BodyKind::lp_ball:
      return dot(body.center(), delta) + body.radius() * body.shape().support(delta);
    case BodyKind::ellipsoid:
      return body.radius() * body.shape().support(delta);
    case BodyKind::combination: {
      double s = 0.0;
      for (const auto& t : body.terms()) {
        if (t.coefficient == 0.0) continue;
        s += t.coefficient * support_unchecked(t.body, t.negated ? negated(delta) : delta);
      }
      return s;
    }
  }
  return 0.0;
}

Vector unit_ball_maximizer(const BallShape& shape, const Vector& delta) {
  const std::size_t d = delta.size();
  Vector u(d, 0.0);
  if (is_zero(delta)) return u;
  if (shape.kind() == BallShape::Kind::ellipsoid) {
    const double s = shape.support(delta);
    if (s == 0.0) return u;
    return scaled(mat_vec(shape.sigma(), delta), 1.0 / s);
  }
  const double p = shape.p();
  if (p == 1.0) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < d; ++i) {
      if (std::abs(delta[i]) > std::abs(delta[k])) k = i;
    }
    u[k] = delta[k] > 0 ? 1.0 : -1.0;
    return u;
  }
  if (std::isinf(p)) {
    for (std::size_t i = 0; i < d; ++i) u[i] = delta[i] > 0 ? 1.0 : (delta[i] < 0 ? -1.0 : 0.0);
    return u;
  }
  const double q = dual_exponent(p);
  const double nq = norm_p(delta, q);
  for (std::size_t i = 0; i < d; ++i) {
    const double a = std::abs(delta[i]) / nq;
    u[i] = std::copysign(std::pow(a, q - 1.0), delta[i]);
  }
  return u;
}

Vector support_point_unchecked(const ConvexBody& body, const Vector& delta) {
  switch (body.kind()) {
    case BodyKind::points: {
      const auto& pts = body.point_list();
      std::size_t best = 0;
      double val = dot(pts[0], delta);
      for (std::size_t i = 1; i < pts.size(); ++i) {
        const double v = dot(pts[i], delta);
        if (v > val) {
          val = v;
          best = i;
        }
      }
      return pts[best];
    }
    case BodyKind::lp_ball:
    case BodyKind::ellipsoid:
      return add(body.center(), scaled(unit_ball_maximizer(body.shape(), delta), body.radius()));
    case BodyKind::combination: {
      Vector acc(body.dim(), 0.0);
      for (const auto& t : body.terms()) {
        if (t.coefficient == 0.0) continue;
        Vector c = support_point_unchecked(t.body, t.negated ? negated(delta) : delta);
        if (t.negated) c = negated(c);
        acc = add(acc, scaled(c, t.coefficient));
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

double support(const ConvexBody& body, const Vector& delta) {
  require_dim(delta.size(), body.dim(), "support");
  require_finite(delta, "support direction");
  return support_unchecked(body, delta);
}

Vector support_point(const ConvexBody& body, const Vector& delta) {
  require_dim(delta.size(), body.dim(), "support_point");
  require_finite(delta, "support direction");
  return support_point_unchecked(body, delta);
}

// ---------------------------------------------------------------- algebra

ConvexBody negate(const ConvexBody& body) {
  switch (body.kind()) {
    case BodyKind::points: {
      std::vector<Vector> pts;
      for (const auto& p : body.point_list()) pts.push_back(negated(p));
      return ConvexBody::points(std::move(pts));
    }
    case BodyKind::lp_ball:
      return ConvexBody::lp_ball(body.p(), body.radius(), negated(body.center()));
    case BodyKind::ellipsoid:
      return body;
    case BodyKind::combination: {
      auto terms = body.terms();
      for (auto& t : terms) t.negated = !t.negated;
      return ConvexBody::combination(std::move(terms));
    }
  }
  return body;
}

ConvexBody scale(double alpha, const ConvexBody& body) {
  if (!std::isfinite(alpha) || alpha < 0.0) fail(ErrorCode::invalid_argument, "scale: alpha must be finite and >= 0");
  switch (body.kind()) {
    case BodyKind::points: {
      if (alpha == 0.0) return ConvexBody::points({Vector(body.dim(), 0.0)});
      std::vector<Vector> pts;
      for (const auto& p : body.point_list()) pts.push_back(scaled(p, alpha));
      return ConvexBody::points(std::move(pts));
    }
    case BodyKind::lp_ball:
      return ConvexBody::lp_ball(body.p(), alpha * body.radius(), scaled(body.center(), alpha));
    case BodyKind::ellipsoid:
      return ConvexBody::ellipsoid(body.sigma(), alpha * body.radius());
    case BodyKind::combination: {
      auto terms = body.terms();
      for (auto& t : terms) t.coefficient *= alpha;
      return ConvexBody::combination(std::move(terms));
    }
  }
  return body;
}

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
  require_dim(b.dim(), a.dim(), "minkowski_sum");
  if (a.kind() == BodyKind::points && b.kind() == BodyKind::points) {
    const auto pa = hull_prune(a.point_list());
    const auto pb = hull_prune(b.point_list());
    if (pa.size() * pb.size() <= kExpansionCap) return ConvexBody::points(hull_prune(pairwise_sums(pa, pb)));
  }
  if (a.kind() == BodyKind::lp_ball && b.kind() == BodyKind::lp_ball && a.p() == b.p()) {
    return ConvexBody::lp_ball(a.p(), a.radius() + b.radius(), add(a.center(), b.center()));
  }
  if (a.kind() == BodyKind::ellipsoid && b.kind() == BodyKind::ellipsoid && a.shape().same_as(b.shape())) {
    return ConvexBody::ellipsoid(a.sigma(), a.radius() + b.radius());
  }
  std::vector<CombinationTerm> terms;
  for (const ConvexBody* x : {&a, &b}) {
    if (x->kind() == BodyKind::combination) {
      for (const auto& t : x->terms()) terms.push_back(t);
    } else {
      terms.push_back(CombinationTerm{1.0, false, *x});
    }
  }
  return ConvexBody::combination(std::move(terms));
}

ConvexBody symmetric_difference_body(const ConvexBody& s) { return minkowski_sum(s, negate(s)); }

std::vector<Vector> hull_prune(const std::vector<Vector>& points) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "hull_prune: empty input");
  const std::size_t d = points.front().size();
  for (const auto& p : points) require_dim(p.size(), d, "hull_prune");
  if (d == 1) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Vector& x, const Vector& y) { return x[0] < y[0]; });
    if ((*lo)[0] == (*hi)[0]) return {*lo};
    return {*lo, *hi};
  }
  std::vector<Vector> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (d != 2 || pts.size() <= 2) return pts;

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<Vector> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::optional<std::vector<Vector>> expand_points(const ConvexBody& body, std::size_t cap) {
  const std::size_t d = body.dim();
  switch (body.kind()) {
    case BodyKind::points:
      return body.point_list();
    case BodyKind::lp_ball: {
      const Vector& c = body.center();
      const double eps = body.radius();
      if (eps == 0.0) return std::vector<Vector>{c};
      std::vector<Vector> out;
      if (d == 1) {
        out = {Vector{c[0] - eps}, Vector{c[0] + eps}};
      } else if (body.p() == 1.0) {
        for (std::size_t i = 0; i < d; ++i) {
          for (double s : {-1.0, 1.0}) {
            Vector v = c;
            v[i] += s * eps;
            out.push_back(std::move(v));
          }
        }
      } else if (std::isinf(body.p()) && d < 20 && (std::size_t{1} << d) <= cap) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
          Vector v = c;
          for (std::size_t i = 0; i < d; ++i) v[i] += ((mask >> i) & 1U) ? eps : -eps;
          out.push_back(std::move(v));
        }
      } else {
        return std::nullopt;
      }
      return out;
    }
    case BodyKind::ellipsoid: {
      if (body.radius() == 0.0) return std::vector<Vector>{Vector(d, 0.0)};
      if (d == 1) {
        const double h = body.radius() * std::sqrt(body.sigma()[0][0]);
        return std::vector<Vector>{Vector{-h}, Vector{h}};
      }
      return std::nullopt;
    }
    case BodyKind::combination: {
      std::vector<Vector> acc{Vector(d, 0.0)};
      for (const auto& t : body.terms()) {
        auto pts = expand_points(t.body, cap);
        if (!pts) return std::nullopt;
        const double s = t.negated ? -t.coefficient : t.coefficient;
        for (auto& p : *pts) p = scaled(p, s);
        auto a = hull_prune(acc);
        auto b = hull_prune(*pts);
        if (a.size() * b.size() > cap) return std::nullopt;
        acc = hull_prune(pairwise_sums(a, b));
      }
      return acc;
    }
  }
  return std::nullopt;
}

std::optional<CenteredBall> as_centered_ball(const ConvexBody& body) {
  switch (body.kind()) {
    case BodyKind::lp_ball:
      if (!is_zero(body.center())) return std::nullopt;
      return CenteredBall{body.shape(), body.radius()};
    case BodyKind::ellipsoid:
      return CenteredBall{body.shape(), body.radius()};
    case BodyKind::points:
      return std::nullopt;
    case BodyKind::combination: {
      std::optional<CenteredBall> acc;
      for (const auto& t : body.terms()) {
        auto b = as_centered_ball(t.body);
        if (!b) return std::nullopt;
        if (!acc) {
          acc = CenteredBall{b->shape, t.coefficient * b->radius};
        } else {
          if (!acc->shape.same_as(b->shape)) return std::nullopt;
          acc->radius += t.coefficient * b->radius;
        }
      }
      return acc;
    }
  }
  return std::nullopt;
}

HalfspaceRegion polar_hrep(const std::vector<Vector>& points, double r) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "polar_hrep: empty point set");
  if (!std::isfinite(r) || r < 0.0) fail(ErrorCode::invalid_argument, "polar_hrep: radius must be finite and >= 0");
  HalfspaceRegion region(points.front().size());
  for (const auto& s : points) {
    // A zero generator gives 0 <= r, which always holds.
    if (is_zero(s)) continue;
    region.add(Halfspace{s, r});
  }
  return region;
}

HalfspaceRegion polar_hrep(const ConvexBody& body, double r) {
  auto pts = expand_points(body);
  if (!pts) fail(ErrorCode::unsupported, "polar_hrep: body " + body.describe() + " has no finite point description");
  return polar_hrep(hull_prune(*pts), r);
}

PolarBall polar_dual_ball(const ConvexBody& body, double r) {
  if (!std::isfinite(r) || r < 0.0) fail(ErrorCode::invalid_argument, "polar_dual_ball: radius must be finite and >= 0");
  auto ball = as_centered_ball(body);
  if (!ball) fail(ErrorCode::unsupported, "polar_dual_ball: body is not an origin-centered ball");
  PolarBall out;
  out.shape = ball->shape.dual();
  if (ball->radius == 0.0) {
    out.whole_space = true;
    out.radius = kInf;
  } else {
    out.radius = r / ball->radius;
  }
  return out;
}

std::optional<HalfspaceRegion> ball_hrep(const BallShape& shape, double radius, std::size_t dim) {
  if (dim == 1) {
    const double h = radius / shape.gauge(Vector{1.0});
    return HalfspaceRegion(1, {Halfspace{{1.0}, h}, Halfspace{{-1.0}, h}});
  }
  if (shape.kind() != BallShape::Kind::lp) return std::nullopt;
  HalfspaceRegion region(dim);
  if (std::isinf(shape.p())) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (double s : {1.0, -1.0}) {
        Vector a(dim, 0.0);
        a[i] = s;
        region.add(Halfspace{std::move(a), radius});
      }
    }
    return region;
  }
  if (shape.p() == 1.0 && dim < 14) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
      Vector a(dim);
      for (std::size_t i = 0; i < dim; ++i) a[i] = ((mask >> i) & 1U) ? 1.0 : -1.0;
      region.add(Halfspace{std::move(a), radius});
    }
    return region;
  }
  return std::nullopt;
}

}  // namespace scert
