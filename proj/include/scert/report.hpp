#pragma once

#include <optional>
#include <string>

#include "scert/problem.hpp"

namespace scert {

// Which certificate to compute: mode in {u, cw, cd, lipschitz-u, lipschitz-cw}; norm in {1, 2, inf}.
struct CertifyRequest {
  std::string mode = "u";
  std::optional<double> norm_p;
  std::optional<std::size_t> member;  // 0-based; absent: the ensemble, or the only member
};

double parse_norm(const std::string& text);
// The classifier a request refers to: a member, or the composed ensemble.
ClassifierAtPoint target_classifier(const ProblemFile& problem, std::optional<std::size_t> member);
Certificate certify(const ProblemFile& problem, const CertifyRequest& request);

// "%.7g", with "inf" / "-inf" for infinities.
std::string format_number(double v);
std::string format_vector(const Vector& v);
// Halfspace rescaled so that b = 1 when b > 0, else to a unit normal.
Halfspace normalized_halfspace(const Halfspace& h);
// 1-D certificates as intervals, e.g. "[-0.25, 0.1666667]" or "(-inf, 2]".
std::string format_interval(const Certificate& cert);
std::string describe_certificate(const Certificate& cert);

std::string certify_report(const ProblemFile& problem, const CertifyRequest& request);
std::string ensemble_report(const ProblemFile& problem);
std::string regime_report(const ProblemFile& problem);

struct BoundParams {
  double rbar = 0.0;
  std::size_t k = 0;
  double sigma = 0.0;
  const ProblemFile* problem = nullptr;
};

// Subkinds: gap-gain, gap-witness, radius, conditions, damning, smoothing.
std::string bound_report(const std::string& subkind, const BoundParams& params);

}  // namespace scert
