#include "scert/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scert {

double dot(const Vector& a, const Vector& b) {
  require_dim(b.size(), a.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector add(const Vector& a, const Vector& b) {
  require_dim(b.size(), a.size(), "add");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector sub(const Vector& a, const Vector& b) {
  require_dim(b.size(), a.size(), "sub");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scaled(const Vector& a, double s) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

Vector negated(const Vector& a) { return scaled(a, -1.0); }

double norm_p(const Vector& a, double p) {
  if (p == 1.0) {
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s;
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
  }
  // Rescale by the largest entry so pow() stays in range.
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double dual_exponent(double p) {
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

void require_finite(const Vector& a, const char* what) {
  for (double v : a) {
    if (!std::isfinite(v)) fail(ErrorCode::non_finite, std::string(what) + ": non-finite coordinate");
  }
}

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    fail(ErrorCode::dimension_mismatch, std::string(what) + ": dimension " + std::to_string(got) +
                                            " does not match " + std::to_string(want));
  }
}

}  // namespace scert
