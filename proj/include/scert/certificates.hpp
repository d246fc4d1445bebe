#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scert/geometry.hpp"

namespace scert {

enum class SmoothnessMode { uniform, class_wise, class_diff };

// Gradient-set data of a classifier at a point. Class indices are 0-based.
struct Smoothness {
  SmoothnessMode mode = SmoothnessMode::uniform;
  std::vector<ConvexBody> bodies;                                  // uniform: 1, class-wise: K
  std::map<std::pair<std::size_t, std::size_t>, ConvexBody> pairs;  // class-difference: (i, j) -> S_{i-j}

  static Smoothness uniform(ConvexBody s);
  static Smoothness class_wise(std::vector<ConvexBody> s);
  static Smoothness class_diff(std::map<std::pair<std::size_t, std::size_t>, ConvexBody> s);
};

struct GapInfo {
  std::size_t top = 0;        // c_A
  std::size_t runner_up = 0;  // c_B
  Vector gaps;                // r_i = f_{c_A} - f_i
  double margin() const { return gaps[runner_up]; }
};

// Ties are broken toward the lowest class index.
GapInfo gaps(const Vector& logits);

class ClassifierAtPoint {
 public:
  ClassifierAtPoint(Vector logits, Smoothness smoothness);
  // Logits without gradient data; enough for gap statistics.
  static ClassifierAtPoint logits_only(Vector logits);

  std::size_t classes() const { return logits_.size(); }
  std::size_t dim() const { return dim_; }
  const Vector& logits() const { return logits_; }
  bool has_smoothness() const { return smoothness_.has_value(); }
  const Smoothness& smoothness() const;
  const GapInfo& gap_info() const { return gaps_; }

 private:
  explicit ClassifierAtPoint(Vector logits);
  Vector logits_;
  std::optional<Smoothness> smoothness_;
  std::size_t dim_ = 0;
  GapInfo gaps_;
};

enum class CertMode { uniform, class_wise, class_diff };
enum class CertFamily { lipschitz, s_lipschitz };
enum class CertKind { dual_ball, region, trivial };

std::string mode_name(CertMode mode);

// {delta : support(body, delta) <= radius}
struct PolarConstraint {
  ConvexBody body;
  double radius = 0.0;
};

struct DualBall {
  BallShape shape;  // unit ball of the certificate norm
  double radius = 0.0;
};

class Certificate {
 public:
  // Intersection of polar constraints; derives the ball form, H-rep and triviality where possible.
  static Certificate from_constraints(std::size_t dim, CertMode mode, CertFamily family,
                                      std::vector<PolarConstraint> constraints);

  CertKind kind() const { return kind_; }
  CertMode mode() const { return mode_; }
  CertFamily family() const { return family_; }
  std::size_t dim() const { return dim_; }
  bool whole_space() const { return whole_space_; }
  double governing_gap() const { return governing_gap_; }
  const std::vector<PolarConstraint>& constraints() const { return constraints_; }
  const std::optional<DualBall>& ball() const { return ball_; }
  const std::optional<HalfspaceRegion>& hrep() const { return hrep_; }
  // For trivial certificates: the cone {delta : support <= 0} that collapses to {0}.
  const std::optional<HalfspaceRegion>& cone() const { return cone_; }
  bool trivial_by_sampling() const { return trivial_sampled_; }

  bool contains(const Vector& delta, double tol = kExactTol) const;
  // sup {t >= 0 : t u in Q}; +inf along unbounded directions.
  double radial_extent(const Vector& u) const;
  // Certified radius in the norm of the ball form, when there is one.
  std::optional<double> radius() const;

 private:
  CertKind kind_ = CertKind::region;
  CertMode mode_ = CertMode::uniform;
  CertFamily family_ = CertFamily::s_lipschitz;
  std::size_t dim_ = 0;
  bool whole_space_ = false;
  bool trivial_sampled_ = false;
  double governing_gap_ = 0.0;
  std::vector<PolarConstraint> constraints_;
  std::optional<DualBall> ball_;
  std::optional<HalfspaceRegion> hrep_;
  std::optional<HalfspaceRegion> cone_;
};

// Gradient bodies of a classifier expressed in a target mode (finer modes are derived from coarser ones,
// and class-wise data yields a uniform body as the union of the class sets).
ConvexBody uniform_body(const ClassifierAtPoint& clf);
std::vector<ConvexBody> class_wise_bodies(const ClassifierAtPoint& clf);
// S_{i - j} for the requested ordered pair.
ConvexBody class_diff_body(const ClassifierAtPoint& clf, std::size_t i, std::size_t j);

// sup over the body of the given gauge (the Lipschitz constant for the dual norm).
double sup_gauge(const ConvexBody& body, const BallShape& gauge_shape);
double lipschitz_constant_from_gradients(const std::vector<Vector>& points, double q);

// Lipschitz certificate. With `norm_p` the constant is taken for that l_p norm; without it the smoothness
// bodies must be origin-centered balls of one shape and the certificate uses the dual shape.
Certificate lipschitz_certificate(const ClassifierAtPoint& clf, CertMode mode, std::optional<double> norm_p = {});
Certificate s_certificate(const ClassifierAtPoint& clf, CertMode mode);

double smoothing_sigma_to_lipschitz(double sigma);

struct Witness {
  Vector x;
  Vector c;        // maximizer of c . delta over S
  Vector c_prime;  // minimizer of c . delta over S
  double gap = 0.0;
  // f_A(y) = (y - x) . c' + gap, f_B(y) = (y - x) . c
  double f_a(const Vector& y) const;
  double f_b(const Vector& y) const;
  bool misclassifies(const Vector& delta) const;
};

Witness adversarial_witness(const ConvexBody& s, double r, const Vector& x, const Vector& delta);

// Containment between certificates. `violation` is the largest excursion found (<= 0 means contained);
// `sampled` marks results obtained from radial sampling rather than exact LP or radius comparisons.
struct Containment {
  bool holds = false;
  bool sampled = false;
  double violation = 0.0;
};

inline constexpr std::size_t kSampleDirections = 10000;

Containment certificate_subset(const Certificate& inner, const Certificate& outer, double margin = kExactTol);
// a ⊆ q1 ∪ q2
Containment certificate_union_cover(const Certificate& a, const Certificate& q1, const Certificate& q2,
                                    double margin = kExactTol);
// q1 ∩ q2 ⊆ a
Containment certificate_intersection_inside(const Certificate& q1, const Certificate& q2, const Certificate& a,
                                            double margin = kExactTol);

// Deterministic unit directions used by the sampled fallback.
std::vector<Vector> sample_directions(std::size_t dim, std::size_t count = kSampleDirections);

}  // namespace scert
