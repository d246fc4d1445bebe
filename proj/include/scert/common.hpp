#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scert {

using Vector = std::vector<double>;
using Matrix = std::vector<Vector>;  // row-major, square where used

// Absolute tolerance for exact-geometry comparisons.
inline constexpr double kExactTol = 1e-9;
// Margin used when a strict inclusion has to be decided numerically.
inline constexpr double kStrictMargin = 1e-6;
// Gaps at or below this are treated as zero when deciding triviality.
inline constexpr double kZeroGap = 1e-12;

enum class ErrorCode {
  invalid_argument = 1,
  parse_error = 2,
  mode_mismatch = 3,
  dimension_mismatch = 4,
  non_finite = 5,
  unsupported = 6,
  no_witness = 7,
  io_error = 8,
  precondition = 9,
  internal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

double dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scaled(const Vector& a, double s);
Vector negated(const Vector& a);
// p in [1, inf]; p = inf is passed as std::numeric_limits<double>::infinity().
double norm_p(const Vector& a, double p);
// Hoelder conjugate: 1 <-> inf, otherwise p / (p - 1).
double dual_exponent(double p);
void require_finite(const Vector& a, const char* what);
void require_dim(std::size_t got, std::size_t want, const char* what);

}  // namespace scert
