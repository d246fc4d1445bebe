#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scert/certificates.hpp"

namespace scert {

class EnsembleSpec {
 public:
  // Weights must be nonnegative with a positive sum; they are normalized here.
  EnsembleSpec(std::vector<ClassifierAtPoint> members, Vector weights);
  static EnsembleSpec uniform(std::vector<ClassifierAtPoint> members);

  std::size_t size() const { return members_.size(); }
  std::size_t classes() const { return members_.front().classes(); }
  const std::vector<ClassifierAtPoint>& members() const { return members_; }
  const Vector& weights() const { return weights_; }

  bool same_top() const;
  bool different_top() const { return !same_top(); }
  bool same_runner_up() const;
  bool has_smoothness() const { return members_.front().has_smoothness(); }
  SmoothnessMode smoothness_mode() const;

 private:
  std::vector<ClassifierAtPoint> members_;
  Vector weights_;
};

Vector ensemble_logits(const EnsembleSpec& spec);
// Logits of g and its gradient data composed as the weighted Minkowski sum of the members' bodies.
ClassifierAtPoint ensemble_classifier(const EnsembleSpec& spec);

CertMode natural_mode(SmoothnessMode mode);

enum class GapRegime { gain, inconclusive, loss };
enum class CertRegime { improvement, sandwich, reduction, indeterminate };

std::string regime_name(GapRegime r);
std::string regime_name(CertRegime r);

struct PairEvidence {
  bool fast_path = false;
  bool sampled = false;
  double q1_in_g = 0.0;     // violation of Q1 ⊆ Qg
  double q2_in_g = 0.0;     // violation of Q2 ⊆ Qg
  double g_in_union = 0.0;  // violation of Qg ⊆ Q1 ∪ Q2
  double inter_in_g = 0.0;  // violation of Q1 ∩ Q2 ⊆ Qg
  double g_in_q1 = 0.0;     // violation of Qg ⊆ Q1
  double g_in_q2 = 0.0;     // violation of Qg ⊆ Q2
};

struct RegimeReport {
  GapRegime gap_regime = GapRegime::inconclusive;
  std::optional<CertRegime> cert_regime;  // absent without gradient data
  bool zero_gap = false;
  double r_g = 0.0;
  double r_bar = 0.0;
  double r_under = 0.0;
  bool same_top = false;
  bool same_runner_up = false;
  bool ball_fast_path = false;
  std::vector<double> member_radii;  // filled on the ball fast path
  double ensemble_radius = 0.0;
  std::vector<PairEvidence> evidence;  // one entry per pairwise fold
  std::vector<CertRegime> fold_regimes;
};

struct RegimeOptions {
  bool allow_fast_path = true;
};

GapRegime classify_gap(double r_g, double r_bar, double r_under);
// Regime of Qg against the members' certificates Q1 and Q2.
CertRegime classify_pair(const Certificate& q1, const Certificate& q2, const Certificate& qg, PairEvidence* evidence);
RegimeReport classify_regimes(const EnsembleSpec& spec, const RegimeOptions& options = {});

double gap_gain_bound(double r_bar, std::size_t k);
EnsembleSpec gap_bound_witness(double r_bar, std::size_t k);

struct DamningResult {
  bool all_alpha_trivial = false;
  double alpha = 0.0;  // weight of the first member
  double r_g = 0.0;
  bool used_bisection = false;
};

DamningResult damning_alpha(const Vector& f1, const Vector& f2);

// Per-pair ball radii eps_{k, i - c_A} of a two-member common-shape ensemble with a shared top class.
struct CommonShapeData {
  BallShape shape;
  std::size_t top = 0;
  std::vector<Vector> eps;   // eps[k][i], unused at i = top
  std::vector<Vector> gaps;  // gaps[k][i]
  std::vector<std::size_t> runner_up;
};

CommonShapeData common_shape_data(const EnsembleSpec& spec);
// R^g when the first member has weight alpha (members share the top class, so gaps combine linearly).
double ensemble_radius(const CommonShapeData& data, double alpha);
double member_radius(const CommonShapeData& data, std::size_t k);

struct RadiusBoundReport {
  double m1 = 0.0;
  double m2 = 0.0;
  double delta = 0.0;
  double r1 = 0.0;  // r^1_{c_B^1}
  double r2 = 0.0;
  double statement = 0.0;  // 1/min M - min r / (min M + Delta)
  double proof = 0.0;      // 1/max M - min r / (max M + Delta)
};

RadiusBoundReport radius_improvement_bound(const EnsembleSpec& spec);

struct ImprovementCheck {
  bool holds = false;
  double lhs1 = 0.0, rhs1 = 0.0;  // f1_cA - f1_cB2 > r2_cB2 * eps1_cB2 / eps2_cB2
  double lhs2 = 0.0, rhs2 = 0.0;  // f2_cA - f2_cB1 > r1_cB1 * eps2_cB1 / eps1_cB1
};

// Throws ErrorCode::precondition when the instance is outside the sufficient-condition hypotheses.
ImprovementCheck improvement_conditions(const EnsembleSpec& spec);

struct WeightSearch {
  Vector alpha;
  double r_g = 0.0;
};

double ensemble_gap(const std::vector<Vector>& logits, const Vector& alpha);
// Grid search over the simplex (0 = default resolution per N) followed by one 10x finer pass.
WeightSearch optimize_weights(const std::vector<Vector>& logits, std::size_t resolution = 0);
WeightSearch optimize_weights(const EnsembleSpec& spec, std::size_t resolution = 0);
std::size_t default_resolution(std::size_t members);

}  // namespace scert
