#include "scert/scert.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "scert/fixtures.hpp"
#include "scert/render.hpp"
#include "scert/report.hpp"
#include "scert/simulate.hpp"

struct scert_problem {
  scert::ProblemFile file;
};

struct scert_certificate {
  scert::Certificate cert;
};

namespace {

thread_local std::string g_last_error;

scert_status record(scert_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <class F>
scert_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return SCERT_OK;
  } catch (const scert::Error& e) {
    return record(static_cast<scert_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(SCERT_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(SCERT_E_INTERNAL, e.what());
  } catch (...) {
    return record(SCERT_E_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (!p) scert::fail(scert::ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

scert::CertifyRequest make_request(const char* mode, const char* norm, size_t member) {
  require(mode, "mode");
  scert::CertifyRequest req;
  req.mode = mode;
  if (norm) req.norm_p = scert::parse_norm(norm);
  if (member > 0) req.member = member - 1;
  return req;
}

}  // namespace

extern "C" {

const char* scert_last_error(void) { return g_last_error.c_str(); }

const char* scert_version(void) { return "1.0.0"; }

void scert_string_free(char* s) { std::free(s); }

scert_status scert_problem_load(const char* path, scert_problem** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new scert_problem{scert::load_problem(path)};
  });
}

scert_status scert_problem_parse(const char* json_text, scert_problem** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new scert_problem{scert::parse_problem(json_text)};
  });
}

void scert_problem_free(scert_problem* problem) { delete problem; }

scert_status scert_problem_info(const scert_problem* problem, size_t* dimension, size_t* classes, size_t* members) {
  return guarded([&] {
    require(problem, "problem");
    if (dimension) *dimension = problem->file.dimension;
    if (classes) *classes = problem->file.classes;
    if (members) *members = problem->file.members.size();
  });
}

scert_status scert_problem_serialize(const scert_problem* problem, char** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = dup_string(scert::serialize_problem(problem->file));
  });
}

scert_status scert_problem_set_weights(scert_problem* problem, const double* weights, size_t count) {
  return guarded([&] {
    require(problem, "problem");
    require(weights, "weights");
    if (count != problem->file.members.size()) {
      scert::fail(scert::ErrorCode::invalid_argument, "expected " + std::to_string(problem->file.members.size()) +
                                                          " weights, got " + std::to_string(count));
    }
    scert::ProblemFile next = problem->file;
    next.weights = scert::Vector(weights, weights + count);
    if (next.is_ensemble()) next.ensemble();  // validates
    problem->file = std::move(next);
  });
}

scert_status scert_certify(const scert_problem* problem, const char* mode, const char* norm, size_t member,
                           scert_certificate** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = new scert_certificate{scert::certify(problem->file, make_request(mode, norm, member))};
  });
}

void scert_certificate_free(scert_certificate* cert) { delete cert; }

scert_status scert_certificate_kind(const scert_certificate* cert, scert_cert_kind* kind) {
  return guarded([&] {
    require(cert, "cert");
    require(kind, "kind");
    *kind = static_cast<scert_cert_kind>(cert->cert.kind());
  });
}

scert_status scert_certificate_radius(const scert_certificate* cert, double* radius, int* has_radius) {
  return guarded([&] {
    require(cert, "cert");
    require(radius, "radius");
    require(has_radius, "has_radius");
    const auto r = cert->cert.radius();
    *has_radius = r.has_value() ? 1 : 0;
    *radius = r.value_or(0.0);
  });
}

scert_status scert_certificate_contains(const scert_certificate* cert, const double* delta, size_t dim, int* inside) {
  return guarded([&] {
    require(cert, "cert");
    require(delta, "delta");
    require(inside, "inside");
    *inside = cert->cert.contains(scert::Vector(delta, delta + dim)) ? 1 : 0;
  });
}

scert_status scert_certificate_extent(const scert_certificate* cert, const double* direction, size_t dim,
                                      double* extent) {
  return guarded([&] {
    require(cert, "cert");
    require(direction, "direction");
    require(extent, "extent");
    *extent = cert->cert.radial_extent(scert::Vector(direction, direction + dim));
  });
}

scert_status scert_certificate_describe(const scert_certificate* cert, char** out) {
  return guarded([&] {
    require(cert, "cert");
    require(out, "out");
    *out = dup_string(scert::describe_certificate(cert->cert));
  });
}

scert_status scert_certify_report(const scert_problem* problem, const char* mode, const char* norm, size_t member,
                                  char** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = dup_string(scert::certify_report(problem->file, make_request(mode, norm, member)));
  });
}

scert_status scert_ensemble_report(const scert_problem* problem, char** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = dup_string(scert::ensemble_report(problem->file));
  });
}

scert_status scert_regime_report(const scert_problem* problem, char** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = dup_string(scert::regime_report(problem->file));
  });
}

scert_status scert_bound_report(const char* subkind, const scert_problem* problem, double rbar, size_t k,
                                double sigma, char** out) {
  return guarded([&] {
    require(subkind, "subkind");
    require(out, "out");
    scert::BoundParams params;
    params.rbar = rbar;
    params.k = k;
    params.sigma = sigma;
    params.problem = problem ? &problem->file : nullptr;
    *out = dup_string(scert::bound_report(subkind, params));
  });
}

void scert_sim_config_default(scert_sim_config* config) {
  static const size_t kSizes[] = {2, 3, 4};
  if (!config) return;
  const scert::ExperimentConfig d;
  config->classes = d.classes;
  config->sizes = kSizes;
  config->size_count = 3;
  config->draws = d.draws;
  config->seed = d.seed;
  config->optimized = d.policy == scert::WeightPolicy::optimized ? 1 : 0;
  config->resolution = d.resolution;
  config->threads = d.threads;
}

scert_status scert_simulate(const scert_sim_config* config, char** csv, char** summary) {
  return guarded([&] {
    require(config, "config");
    if (config->size_count > 0) require(config->sizes, "config->sizes");
    scert::ExperimentConfig cfg;
    cfg.classes = config->classes;
    cfg.ensemble_sizes.assign(config->sizes, config->sizes + config->size_count);
    cfg.draws = config->draws;
    cfg.seed = config->seed;
    cfg.policy = config->optimized ? scert::WeightPolicy::optimized : scert::WeightPolicy::uniform;
    cfg.resolution = config->resolution;
    cfg.threads = config->threads;
    const auto records = scert::run_experiment(cfg);
    char* c = csv ? dup_string(scert::records_to_csv(records)) : nullptr;
    try {
      if (summary) *summary = dup_string(scert::summary_to_text(scert::summarize(records)));
    } catch (...) {
      std::free(c);
      throw;
    }
    if (csv) *csv = c;
  });
}

scert_status scert_render_svg(const scert_problem* problem, const double* window, char** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    scert::RenderWindow w = problem->file.window.value_or(scert::RenderWindow{});
    if (window) {
      w = scert::RenderWindow{window[0], window[1], window[2], window[3]};
      if (!(w.xmin < w.xmax && w.ymin < w.ymax)) {
        scert::fail(scert::ErrorCode::invalid_argument, "window must have positive extent");
      }
    }
    *out = dup_string(scert::render_svg(problem->file, w));
  });
}

scert_status scert_run_examples(const char* fixture_dir, char** table, size_t* failures) {
  return guarded([&] {
    require(fixture_dir, "fixture_dir");
    const auto outcomes = scert::run_fixtures(fixture_dir);
    if (failures) *failures = scert::fixture_failures(outcomes);
    if (table) *table = dup_string(scert::fixture_table(outcomes));
  });
}

}  // extern "C"
