#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "scert/ensemble.hpp"

namespace scert {

// Counter-based stream: each (seed, N, draw) triple owns an independent splitmix64 sequence.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t n, std::uint64_t index);
  std::uint64_t next_u64();
  // Uniform on (0, 1).
  double uniform();
  double exponential();

 private:
  std::uint64_t state_;
};

Vector draw_classifier(std::size_t k, Stream& stream);

enum class WeightPolicy { uniform, optimized };

struct ExperimentConfig {
  std::size_t classes = 4;
  std::vector<std::size_t> ensemble_sizes{2, 3, 4};
  std::size_t draws = 1000;
  std::uint64_t seed = 7;
  WeightPolicy policy = WeightPolicy::optimized;
  std::size_t resolution = 0;  // 0: per-N default grid
  std::size_t threads = 0;     // 0: hardware concurrency
};

struct DrawRecord {
  std::size_t n = 0;
  std::size_t draw = 0;
  std::vector<Vector> logits;
  double r_bar = 0.0;
  double r_under = 0.0;
  double rg_uniform = 0.0;
  double rg_opt = 0.0;  // NaN under the uniform policy
  Vector alpha_opt;
  GapRegime gap_regime = GapRegime::inconclusive;
  bool zero_gap = false;
  bool same_ca = false;
  double bound = 0.0;
  double slack = 0.0;  // bound - best observed ensemble gap
};

std::vector<DrawRecord> run_experiment(const ExperimentConfig& config);

struct Summary {
  std::size_t records = 0;
  double frac_gain = 0.0;
  double frac_inconclusive = 0.0;
  double frac_loss = 0.0;
  double frac_zero_gap = 0.0;
  double frac_opt_above = 0.0;  // r^g(optimized) > r_bar
  double mean_r_bar = 0.0;
  double mean_r_under = 0.0;
  double mean_rg_uniform = 0.0;
  double mean_rg_opt = 0.0;
  std::size_t bound_violations = 0;
  std::size_t same_ca_losses = 0;
};

Summary summarize(const std::vector<DrawRecord>& records);

std::string records_to_csv(const std::vector<DrawRecord>& records);
std::string summary_to_text(const Summary& s);

}  // namespace scert
