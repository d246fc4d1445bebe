#include "scert/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

namespace scert {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DrawRecord run_draw(const ExperimentConfig& cfg, std::size_t n, std::size_t draw) {
  Stream stream(cfg.seed, n, draw);
  DrawRecord rec;
  rec.n = n;
  rec.draw = draw;
  for (std::size_t j = 0; j < n; ++j) rec.logits.push_back(draw_classifier(cfg.classes, stream));

  rec.r_bar = -std::numeric_limits<double>::infinity();
  rec.r_under = std::numeric_limits<double>::infinity();
  rec.same_ca = true;
  const std::size_t top0 = gaps(rec.logits[0]).top;
  for (const auto& f : rec.logits) {
    const auto g = gaps(f);
    rec.r_bar = std::max(rec.r_bar, g.margin());
    rec.r_under = std::min(rec.r_under, g.margin());
    if (g.top != top0) rec.same_ca = false;
  }
  const Vector uniform(n, 1.0 / static_cast<double>(n));
  rec.rg_uniform = ensemble_gap(rec.logits, uniform);
  rec.gap_regime = classify_gap(rec.rg_uniform, rec.r_bar, rec.r_under);
  rec.zero_gap = rec.rg_uniform <= kZeroGap;
  rec.bound = gap_gain_bound(std::clamp(rec.r_bar, 0.0, 1.0), cfg.classes);
  double best = rec.rg_uniform;
  if (cfg.policy == WeightPolicy::optimized) {
    const auto ws = optimize_weights(rec.logits, cfg.resolution);
    rec.rg_opt = ws.r_g;
    rec.alpha_opt = ws.alpha;
    best = std::max(best, ws.r_g);
  } else {
    rec.rg_opt = std::numeric_limits<double>::quiet_NaN();
  }
  rec.slack = rec.bound - best;
  return rec;
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t n, std::uint64_t index)
    : state_(mix64(mix64(mix64(seed) + n * kGolden) + index * kGolden)) {}

std::uint64_t Stream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Stream::uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double Stream::exponential() { return -std::log(uniform()); }

Vector draw_classifier(std::size_t k, Stream& stream) {
  if (k < 2) fail(ErrorCode::invalid_argument, "at least two classes are required");
  Vector f(k);
  double total = 0.0;
  for (auto& x : f) {
    x = stream.exponential();
    total += x;
  }
  for (auto& x : f) x /= total;
  return f;
}

std::vector<DrawRecord> run_experiment(const ExperimentConfig& config) {
  if (config.draws < 1) fail(ErrorCode::invalid_argument, "draws must be at least 1");
  if (config.classes < 2) fail(ErrorCode::invalid_argument, "K must be at least 2");
  if (config.ensemble_sizes.empty()) fail(ErrorCode::invalid_argument, "at least one ensemble size is required");
  std::vector<std::size_t> sizes = config.ensemble_sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  for (std::size_t n : sizes) {
    if (n < 2) fail(ErrorCode::invalid_argument, "ensemble sizes must be at least 2");
    if (config.policy == WeightPolicy::optimized && n > 4) {
      fail(ErrorCode::invalid_argument, "optimized weights support ensembles of 2 to 4 members");
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t n : sizes) {
    for (std::size_t d = 0; d < config.draws; ++d) tasks.emplace_back(n, d);
  }
  std::vector<DrawRecord> records(tasks.size());
  std::size_t workers = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, tasks.size());

  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t t = w; t < tasks.size(); t += workers) {
        records[t] = run_draw(config, tasks[t].first, tasks[t].second);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

Summary summarize(const std::vector<DrawRecord>& records) {
  if (records.empty()) fail(ErrorCode::invalid_argument, "no records to summarize");
  Summary s;
  s.records = records.size();
  std::size_t opt_count = 0;
  for (const auto& r : records) {
    switch (r.gap_regime) {
      case GapRegime::gain:
        s.frac_gain += 1;
        break;
      case GapRegime::inconclusive:
        s.frac_inconclusive += 1;
        break;
      case GapRegime::loss:
        s.frac_loss += 1;
        break;
    }
    if (r.zero_gap) s.frac_zero_gap += 1;
    s.mean_r_bar += r.r_bar;
    s.mean_r_under += r.r_under;
    s.mean_rg_uniform += r.rg_uniform;
    if (!std::isnan(r.rg_opt)) {
      ++opt_count;
      s.mean_rg_opt += r.rg_opt;
      if (r.rg_opt > r.r_bar + kExactTol) s.frac_opt_above += 1;
    }
    if (r.slack < -1e-12) ++s.bound_violations;
    if (r.same_ca && r.gap_regime == GapRegime::loss) ++s.same_ca_losses;
  }
  const double n = static_cast<double>(records.size());
  s.frac_gain /= n;
  s.frac_inconclusive /= n;
  s.frac_loss /= n;
  s.frac_zero_gap /= n;
  s.mean_r_bar /= n;
  s.mean_r_under /= n;
  s.mean_rg_uniform /= n;
  if (opt_count) {
    s.frac_opt_above /= static_cast<double>(opt_count);
    s.mean_rg_opt /= static_cast<double>(opt_count);
  } else {
    s.frac_opt_above = s.mean_rg_opt = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

std::string records_to_csv(const std::vector<DrawRecord>& records) {
  std::ostringstream os;
  os << "n,draw,r_bar,r_under,rg_uniform,rg_opt,gap_regime,same_ca,bound,slack\n";
  for (const auto& r : records) {
    os << r.n << ',' << r.draw << ',' << num(r.r_bar) << ',' << num(r.r_under) << ',' << num(r.rg_uniform) << ','
       << num(r.rg_opt) << ',' << regime_name(r.gap_regime) << ',' << (r.same_ca ? 1 : 0) << ',' << num(r.bound) << ','
       << num(r.slack) << '\n';
  }
  return os.str();
}

std::string summary_to_text(const Summary& s) {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "records: %zu\n"
                "gap regime (uniform weights): gain %.4f, inconclusive %.4f, loss %.4f\n"
                "zero ensemble gap: %.4f\n"
                "optimized weights above best member: %.4f\n"
                "means: r_bar %.6f, r_under %.6f, rg_uniform %.6f, rg_opt %.6f\n"
                "bound violations: %zu\n"
                "same-top losses: %zu\n",
                s.records, s.frac_gain, s.frac_inconclusive, s.frac_loss, s.frac_zero_gap, s.frac_opt_above,
                s.mean_r_bar, s.mean_r_under, s.mean_rg_uniform, s.mean_rg_opt, s.bound_violations, s.same_ca_losses);
  return buf;
}

}  // namespace scert
