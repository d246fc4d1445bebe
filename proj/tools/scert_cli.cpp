#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scert/scert.h"

#ifndef SCERT_FIXTURE_DIR
#define SCERT_FIXTURE_DIR "fixtures"
#endif

namespace {

// Exit codes follow the library status codes: 2 parse error, 3 mode mismatch, 1 anything else.
int exit_code(scert_status s) {
  switch (s) {
    case SCERT_OK:
      return 0;
    case SCERT_E_PARSE:
      return 2;
    case SCERT_E_MODE_MISMATCH:
      return 3;
    default:
      return 1;
  }
}

struct Failure {
  scert_status status;
};

void check(scert_status s) {
  if (s != SCERT_OK) throw Failure{s};
}

struct Owned {
  char* p = nullptr;
  ~Owned() { scert_string_free(p); }
};

struct Problem {
  scert_problem* p = nullptr;
  ~Problem() { scert_problem_free(p); }
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || errno) {
      std::cerr << "error: " << what << ": cannot read \"" << item << "\" as a number\n";
      throw Failure{SCERT_E_INVALID_ARGUMENT};
    }
    out.push_back(v);
  }
  return out;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << text)) {
    std::cerr << "error: cannot write " << out << "\n";
    throw Failure{SCERT_E_IO};
  }
}

void load(Problem& pr, const std::string& file, const std::string& weights) {
  check(scert_problem_load(file.c_str(), &pr.p));
  if (!weights.empty()) {
    const auto w = parse_list(weights, "--weights");
    check(scert_problem_set_weights(pr.p, w.data(), w.size()));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-Lipschitz robustness certificates for classifiers and weighted ensembles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(scert_version()));

  std::string file, mode = "u", norm, weights, out, window, subkind, n_list = "2,3,4", policy = "optimized";
  std::string fixture_dir = SCERT_FIXTURE_DIR;
  std::size_t member = 0, k = 4, draws = 1000, resolution = 0, threads = 0;
  std::uint64_t seed = 7;
  double rbar = 0.0, sigma = 0.0;

  auto* certify = app.add_subcommand("certify", "Certificate of one member or of the ensemble");
  certify->add_option("file", file, "Problem file (JSON)")->required();
  certify->add_option("--mode", mode, "u, cw, cd, lipschitz-u or lipschitz-cw")->capture_default_str();
  certify->add_option("--norm", norm, "Norm for Lipschitz certificates: 1, 2 or inf");
  certify->add_option("--member", member, "1-based member index (default: ensemble or only member)");
  certify->add_option("--weights", weights, "Comma-separated ensemble weights");

  auto* ensemble = app.add_subcommand("ensemble", "Ensemble logits, gaps and certificates");
  ensemble->add_option("file", file, "Problem file (JSON)")->required();
  ensemble->add_option("--weights", weights, "Comma-separated ensemble weights");

  auto* regime = app.add_subcommand("regime", "Gap and certificate regimes of an ensemble");
  regime->add_option("file", file, "Problem file (JSON)")->required();
  regime->add_option("--weights", weights, "Comma-separated ensemble weights");

  auto* bound = app.add_subcommand("bound", "Closed-form bounds");
  bound->add_option("subkind", subkind, "gap-gain, gap-witness, radius, conditions, damning or smoothing")->required();
  bound->add_option("file", file, "Problem file for radius, conditions and damning");
  bound->add_option("--rbar", rbar, "Best member gap");
  bound->add_option("--k", k, "Number of classes")->capture_default_str();
  bound->add_option("--sigma", sigma, "Gaussian smoothing scale");
  bound->add_option("--weights", weights, "Comma-separated ensemble weights");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo regime statistics on random simplex ensembles");
  simulate->add_option("--k", k, "Number of classes")->capture_default_str();
  simulate->add_option("--n", n_list, "Comma-separated ensemble sizes")->capture_default_str();
  simulate->add_option("--draws", draws, "Draws per ensemble size")->capture_default_str();
  simulate->add_option("--seed", seed, "Seed (SCERT_SEED overrides)")->capture_default_str();
  simulate->add_option("--weights", policy, "uniform or optimized")->capture_default_str();
  simulate->add_option("--resolution", resolution, "Optimizer grid resolution (0: default)");
  simulate->add_option("--threads", threads, "Worker threads (0: all cores)");
  simulate->add_option("--out", out, "CSV output path (default: stdout)");

  auto* render = app.add_subcommand("render", "SVG drawing of a 2-D problem's certificates");
  render->add_option("file", file, "Problem file (JSON)")->required();
  render->add_option("--out", out, "SVG output path (default: stdout)");
  render->add_option("--window", window, "xmin,xmax,ymin,ymax");
  render->add_option("--weights", weights, "Comma-separated ensemble weights");

  auto* examples = app.add_subcommand("examples", "Run the bundled golden fixtures");
  examples->add_option("--dir", fixture_dir, "Fixture directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    Owned text;
    if (certify->parsed()) {
      Problem pr;
      load(pr, file, weights);
      check(scert_certify_report(pr.p, mode.c_str(), norm.empty() ? nullptr : norm.c_str(), member, &text.p));
      emit(text.p, "");
    } else if (ensemble->parsed()) {
      Problem pr;
      load(pr, file, weights);
      check(scert_ensemble_report(pr.p, &text.p));
      emit(text.p, "");
    } else if (regime->parsed()) {
      Problem pr;
      load(pr, file, weights);
      check(scert_regime_report(pr.p, &text.p));
      emit(text.p, "");
    } else if (bound->parsed()) {
      Problem pr;
      if (!file.empty()) load(pr, file, weights);
      check(scert_bound_report(subkind.c_str(), pr.p, rbar, k, sigma, &text.p));
      emit(text.p, "");
    } else if (simulate->parsed()) {
      if (const char* env = std::getenv("SCERT_SEED")) {
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (!*env || *end != '\0' || errno) {
          std::cerr << "error: SCERT_SEED must be an unsigned integer\n";
          return exit_code(SCERT_E_INVALID_ARGUMENT);
        }
        seed = v;
      }
      if (policy != "uniform" && policy != "optimized") {
        std::cerr << "error: --weights must be uniform or optimized\n";
        return exit_code(SCERT_E_INVALID_ARGUMENT);
      }
      std::vector<std::size_t> sizes;
      for (double v : parse_list(n_list, "--n")) {
        if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
          std::cerr << "error: --n takes positive integers\n";
          return exit_code(SCERT_E_INVALID_ARGUMENT);
        }
        sizes.push_back(static_cast<std::size_t>(v));
      }
      scert_sim_config cfg;
      scert_sim_config_default(&cfg);
      cfg.classes = k;
      cfg.sizes = sizes.data();
      cfg.size_count = sizes.size();
      cfg.draws = draws;
      cfg.seed = seed;
      cfg.optimized = policy == "optimized";
      cfg.resolution = resolution;
      cfg.threads = threads;
      Owned summary;
      check(scert_simulate(&cfg, &text.p, &summary.p));
      emit(text.p, out);
      std::cerr << summary.p;
    } else if (render->parsed()) {
      Problem pr;
      load(pr, file, weights);
      std::vector<double> w;
      if (!window.empty()) {
        w = parse_list(window, "--window");
        if (w.size() != 4) {
          std::cerr << "error: --window takes xmin,xmax,ymin,ymax\n";
          return exit_code(SCERT_E_INVALID_ARGUMENT);
        }
      }
      check(scert_render_svg(pr.p, w.empty() ? nullptr : w.data(), &text.p));
      emit(text.p, out);
    } else if (examples->parsed()) {
      std::size_t failures = 0;
      check(scert_run_examples(fixture_dir.c_str(), &text.p, &failures));
      emit(text.p, "");
      return failures == 0 ? 0 : 1;
    }
  } catch (const Failure& f) {
    if (*scert_last_error()) std::cerr << "error: " << scert_last_error() << "\n";
    return exit_code(f.status);
  }
  return 0;
}
