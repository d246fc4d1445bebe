#include "scert/lp.hpp"

#include <cmath>
#include <limits>

namespace scert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;
constexpr std::size_t kMaxPivots = 200000;

struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // variables, rhs is stored at index cols
  std::vector<Vector> t;  // t[0] is the objective row
  std::vector<std::size_t> basis;  // basic variable of constraint row i (1-based rows)

  double& at(std::size_t r, std::size_t c) { return t[r][c]; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    t[r][c] = 1.0;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == r) continue;
      const double f = t[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
      t[i][c] = 0.0;
    }
    basis[r - 1] = c;
  }

  // Maximizes the objective encoded in row 0 (coefficients -c_j). Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (allowed[j] && t[0][j] < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return true;
      std::size_t leave = 0;
      double best = kInf;
      for (std::size_t i = 1; i <= rows; ++i) {
        const double a = t[i][enter];
        if (a <= kPivotTol) continue;
        const double ratio = t[i][cols] / a;
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && leave != 0 && basis[i - 1] < basis[leave - 1])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == 0) return false;
      pivot(leave, enter);
    }
    fail(ErrorCode::internal, "simplex did not terminate");
  }
};

}  // namespace

LpResult lp_maximize(const Vector& objective, const HalfspaceRegion& region) {
  const std::size_t d = region.dim();
  require_dim(objective.size(), d, "lp_maximize");
  require_finite(objective, "lp objective");

  // Normalized rows; zero rows are either vacuous or make the region empty.
  std::vector<Vector> a;
  Vector b;
  for (const auto& h : region.halfspaces()) {
    const double n = norm_p(h.a, 2.0);
    if (n == 0.0) {
      if (h.b < -kExactTol) return LpResult{LpStatus::infeasible, 0.0, {}};
      continue;
    }
    a.push_back(scaled(h.a, 1.0 / n));
    b.push_back(h.b / n);
  }
  const std::size_t m = a.size();
  if (m == 0) {
    if (norm_p(objective, kInf) == 0.0) return LpResult{LpStatus::optimal, 0.0, Vector(d, 0.0)};
    return LpResult{LpStatus::unbounded, kInf, {}};
  }

  // Columns: x+ (d), x- (d), slacks (m), artificials (one per negative rhs row).
  std::vector<std::size_t> art_row;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) art_row.push_back(i);
  }
  const std::size_t n_art = art_row.size();
  Tableau tab;
  tab.rows = m;
  tab.cols = 2 * d + m + n_art;
  tab.t.assign(m + 1, Vector(tab.cols + 1, 0.0));
  tab.basis.assign(m, 0);
  const std::size_t slack0 = 2 * d;
  const std::size_t art0 = 2 * d + m;
  std::size_t next_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = tab.t[i + 1];
    const double sgn = b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      row[k] = sgn * a[i][k];
      row[d + k] = -sgn * a[i][k];
    }
    row[slack0 + i] = sgn;
    row[tab.cols] = sgn * b[i];
    if (b[i] < 0) {
      row[art0 + next_art] = 1.0;
      tab.basis[i] = art0 + next_art;
      ++next_art;
    } else {
      tab.basis[i] = slack0 + i;
    }
  }

  std::vector<bool> allowed(tab.cols, true);
  if (n_art > 0) {
    // Phase 1: maximize -(sum of artificials).
    for (std::size_t j = art0; j < tab.cols; ++j) tab.t[0][j] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] >= art0) {
        for (std::size_t j = 0; j <= tab.cols; ++j) tab.t[0][j] -= tab.t[i + 1][j];
      }
    }
    tab.optimize(allowed);
    if (tab.t[0][tab.cols] < -kExactTol) return LpResult{LpStatus::infeasible, 0.0, {}};
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] < art0) continue;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(tab.t[i + 1][j]) > 1e-9) {
          tab.pivot(i + 1, j);
          break;
        }
      }
    }
    for (std::size_t j = art0; j < tab.cols; ++j) allowed[j] = false;
  }

  // Phase 2.
  std::fill(tab.t[0].begin(), tab.t[0].end(), 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    tab.t[0][k] = -objective[k];
    tab.t[0][d + k] = objective[k];
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double f = tab.t[0][tab.basis[i]];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j <= tab.cols; ++j) tab.t[0][j] -= f * tab.t[i + 1][j];
  }
  if (!tab.optimize(allowed)) return LpResult{LpStatus::unbounded, kInf, {}};

  Vector x(d, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t v = tab.basis[i];
    if (v < d) x[v] += tab.t[i + 1][tab.cols];
    else if (v < 2 * d) x[v - d] -= tab.t[i + 1][tab.cols];
  }
  return LpResult{LpStatus::optimal, dot(objective, x), x};
}

double subset_violation(const HalfspaceRegion& a, const HalfspaceRegion& b) {
  require_dim(b.dim(), a.dim(), "region_subset");
  double worst = -kInf;
  for (const auto& h : b.halfspaces()) {
    const double n = norm_p(h.a, 2.0);
    if (n == 0.0) {
      worst = std::max(worst, -h.b);
      continue;
    }
    const auto res = lp_maximize(scaled(h.a, 1.0 / n), a);
    if (res.status == LpStatus::infeasible) return -kInf;
    if (res.status == LpStatus::unbounded) return kInf;
    worst = std::max(worst, res.value - h.b / n);
  }
  return worst;
}

bool region_subset(const HalfspaceRegion& a, const HalfspaceRegion& b) {
  return subset_violation(a, b) <= kExactTol;
}

double minus_subset_violation(const HalfspaceRegion& a, const HalfspaceRegion& carve, const HalfspaceRegion& b,
                              double margin) {
  require_dim(carve.dim(), a.dim(), "region_minus_subset");
  double worst = -kInf;
  for (const auto& h : carve.halfspaces()) {
    const double n = norm_p(h.a, 2.0);
    if (n == 0.0) continue;  // vacuous or empty halfspace: a \ {0 <= b} handled by the other pieces
    HalfspaceRegion piece = a;
    piece.add(Halfspace{scaled(h.a, -1.0 / n), -h.b / n - margin});
    worst = std::max(worst, subset_violation(piece, b));
  }
  return worst;
}

bool region_minus_subset(const HalfspaceRegion& a, const HalfspaceRegion& carve, const HalfspaceRegion& b) {
  return minus_subset_violation(a, carve, b) <= kExactTol;
}

std::vector<Vector> clip_polygon(const std::vector<Vector>& polygon, const Halfspace& h) {
  std::vector<Vector> out;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& p = polygon[i];
    const Vector& q = polygon[(i + 1) % n];
    const double fp = dot(h.a, p) - h.b;
    const double fq = dot(h.a, q) - h.b;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const double t = fp / (fp - fq);
      out.push_back(Vector{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

std::optional<std::vector<Vector>> polygon_vertices(const HalfspaceRegion& region) {
  require_dim(region.dim(), 2, "polygon_vertices");
  double ext[4];
  const Vector dirs[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k < 4; ++k) {
    const auto res = lp_maximize(dirs[k], region);
    if (res.status != LpStatus::optimal) return std::nullopt;
    ext[k] = res.value;
  }
  const double pad = 1.0 + 0.1 * (ext[0] + ext[2] + ext[1] + ext[3]);
  std::vector<Vector> poly = {{-ext[2] - pad, -ext[3] - pad},
                              {ext[0] + pad, -ext[3] - pad},
                              {ext[0] + pad, ext[1] + pad},
                              {-ext[2] - pad, ext[1] + pad}};
  for (const auto& h : region.halfspaces()) {
    poly = clip_polygon(poly, h);
    if (poly.empty()) return std::nullopt;
  }
  return poly;
}

bool in_conic_hull(const std::vector<Vector>& generators, const Vector& target) {
  const std::size_t d = target.size();
  std::vector<Vector> gens;
  for (const auto& g : generators) {
    require_dim(g.size(), d, "conic hull generator");
    const double n = norm_p(g, 2.0);
    if (n > 0.0) gens.push_back(scaled(g, 1.0 / n));
  }
  const double tn = norm_p(target, 2.0);
  if (tn == 0.0) return true;
  const std::size_t m = gens.size();
  // Columns: m generators, d artificials, rhs. Rows are sign-flipped so the rhs is nonnegative.
  const std::size_t cols = m + d + 1;
  std::vector<Vector> t(d, Vector(cols, 0.0));
  std::vector<std::size_t> basis(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double s = target[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < m; ++j) t[i][j] = s * gens[j][i];
    t[i][m + i] = 1.0;
    t[i][cols - 1] = s * target[i] / tn;
    basis[i] = m + i;
  }
  for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
    // Reduced cost of a generator column is minus its artificial-row sum; Bland picks the first negative.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < m + d && enter == cols; ++j) {
      double r = j < m ? 0.0 : 1.0;
      for (std::size_t i = 0; i < d; ++i) {
        if (basis[i] >= m) r -= t[i][j];
      }
      if (r < -kCostTol) enter = j;
    }
    if (enter == cols) break;
    std::size_t leave = d;
    double best = kInf;
    for (std::size_t i = 0; i < d; ++i) {
      if (t[i][enter] <= kPivotTol) continue;
      const double ratio = t[i][cols - 1] / t[i][enter];
      if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == d) break;
    const double piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  double infeasibility = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (basis[i] >= m) infeasibility += t[i][cols - 1];
  }
  return infeasibility <= kExactTol;
}

bool positively_spans(const std::vector<Vector>& generators, std::size_t dim) {
  for (std::size_t k = 0; k < dim; ++k) {
    for (double s : {1.0, -1.0}) {
      Vector e(dim, 0.0);
      e[k] = s;
      if (!in_conic_hull(generators, e)) return false;
    }
  }
  return true;
}

}  // namespace scert
