#pragma once

#include <optional>
#include <vector>

#include "scert/geometry.hpp"

namespace scert {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  Vector argmax;
};

// max objective . delta over the region (delta free), by a two-phase dense simplex with Bland's rule.
LpResult lp_maximize(const Vector& objective, const HalfspaceRegion& region);

// Largest amount by which a point of `a` leaves `b`, measured on unit-normal halfspaces of `b`.
// +inf when some maximum is unbounded, -inf when `a` is empty or `b` is the whole space.
double subset_violation(const HalfspaceRegion& a, const HalfspaceRegion& b);
bool region_subset(const HalfspaceRegion& a, const HalfspaceRegion& b);

// Violation of (a \ carve) subset-of b. Each piece a ∩ {v . delta >= c + margin} is tested separately,
// `margin` being measured along the unit normal of the carve halfspace.
double minus_subset_violation(const HalfspaceRegion& a, const HalfspaceRegion& carve, const HalfspaceRegion& b,
                              double margin = kExactTol);
bool region_minus_subset(const HalfspaceRegion& a, const HalfspaceRegion& carve, const HalfspaceRegion& b);

// Sutherland-Hodgman clip of a convex polygon against one halfspace (d = 2).
std::vector<Vector> clip_polygon(const std::vector<Vector>& polygon, const Halfspace& h);
// Vertices of a bounded 2-D region in counterclockwise order; nullopt when unbounded or empty.
std::optional<std::vector<Vector>> polygon_vertices(const HalfspaceRegion& region);

// Whether target = sum_j y_j g_j for some y >= 0, by a phase-one simplex over d equality rows.
bool in_conic_hull(const std::vector<Vector>& generators, const Vector& target);
// Whether the generators' conic hull is the whole space, i.e. {delta : g . delta <= 0 for all g} = {0}.
bool positively_spans(const std::vector<Vector>& generators, std::size_t dim);

}  // namespace scert
