#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scert/common.hpp"

namespace scert {

// Expansion of formal Minkowski combinations into explicit points stops here.
inline constexpr std::size_t kExpansionCap = 10000;

// Unit ball of a norm: the l_p ball, or the ellipsoid {x : x' sigma^-1 x <= 1}.
class BallShape {
 public:
  enum class Kind { lp, ellipsoid };

  static BallShape lp(double p);
  static BallShape ellipsoid(Matrix sigma);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  const Matrix& sigma() const { return sigma_; }
  const Matrix& sigma_inverse() const { return sigma_inv_; }

  // Gauge of the unit ball (the norm itself).
  double gauge(const Vector& x) const;
  // Support function of the unit ball (the dual norm).
  double support(const Vector& v) const;
  BallShape dual() const;
  bool same_as(const BallShape& other) const;
  std::string name() const;

 private:
  Kind kind_ = Kind::lp;
  double p_ = 2.0;
  Matrix sigma_;
  Matrix sigma_inv_;
};

enum class BodyKind { points, lp_ball, ellipsoid, combination };

struct CombinationTerm;

// A bounded gradient set described by its support function. Immutable; copies share state.
class ConvexBody {
 public:
  static ConvexBody points(std::vector<Vector> pts);
  static ConvexBody lp_ball(double p, double radius, Vector center);
  // {c : c' sigma^-1 c <= radius^2}; support is radius * sqrt(d' sigma d).
  static ConvexBody ellipsoid(Matrix sigma, double radius);
  static ConvexBody combination(std::vector<CombinationTerm> terms);
  // radius * unit ball of `shape`, centered at the origin.
  static ConvexBody ball(const BallShape& shape, double radius, std::size_t dim);

  BodyKind kind() const;
  std::size_t dim() const;

  const std::vector<Vector>& point_list() const;
  double p() const;
  double radius() const;
  const Vector& center() const;
  const Matrix& sigma() const;
  const BallShape& shape() const;
  const std::vector<CombinationTerm>& terms() const;

  std::string describe() const;

 private:
  struct Rep;
  explicit ConvexBody(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct CombinationTerm {
  double coefficient = 1.0;
  bool negated = false;
  ConvexBody body;
};

struct Halfspace {
  Vector a;
  double b = 0.0;
};

// Intersection of halfspaces {delta : a . delta <= b}; possibly unbounded.
class HalfspaceRegion {
 public:
  HalfspaceRegion() = default;
  explicit HalfspaceRegion(std::size_t dim, std::vector<Halfspace> hs = {});

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return hs_; }
  bool empty_list() const { return hs_.empty(); }

  void add(Halfspace h);
  HalfspaceRegion intersected(const HalfspaceRegion& other) const;
  // Largest a . delta - b over the list (negative inside, -inf for the whole space).
  double violation(const Vector& delta) const;
  bool contains(const Vector& delta, double tol = kExactTol) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Halfspace> hs_;
};

double support(const ConvexBody& body, const Vector& delta);
// A point of the body attaining the support value in direction delta.
Vector support_point(const ConvexBody& body, const Vector& delta);

ConvexBody negate(const ConvexBody& body);
ConvexBody scale(double alpha, const ConvexBody& body);
ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b);
// S (+) -S, the generator of uniform certificates.
ConvexBody symmetric_difference_body(const ConvexBody& s);

// Extreme points (d = 2, counterclockwise), interval endpoints (d = 1), or deduplication (d >= 3).
std::vector<Vector> hull_prune(const std::vector<Vector>& points);

// Explicit generating points, when the body has a finite description within the cap.
std::optional<std::vector<Vector>> expand_points(const ConvexBody& body, std::size_t cap = kExpansionCap);

struct CenteredBall {
  BallShape shape;
  double radius = 0.0;
};
// The body as radius * (unit ball of a shape) when it is an origin-centered ball.
std::optional<CenteredBall> as_centered_ball(const ConvexBody& body);

// {delta : s . delta <= r for s in points}.
HalfspaceRegion polar_hrep(const std::vector<Vector>& points, double r);
HalfspaceRegion polar_hrep(const ConvexBody& body, double r);

struct PolarBall {
  bool whole_space = false;
  BallShape shape;
  double radius = 0.0;  // +inf when whole_space
};
// (eps B)^r = (r / eps) B_dual for an origin-centered ball body.
PolarBall polar_dual_ball(const ConvexBody& body, double r);

// Exact H-rep of radius * unit ball for polyhedral shapes (l1, l_inf).
std::optional<HalfspaceRegion> ball_hrep(const BallShape& shape, double radius, std::size_t dim);

}  // namespace scert
