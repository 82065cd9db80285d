#pragma once

#include "subtraj/core.hpp"
#include "subtraj/curve.hpp"

namespace subtraj {

/// Solve a*y^2 + b*y + c <= 0 over the reals, closed-set convention: a near
/// tangency (discriminant slightly negative) counts as a single point.
/// Handles degenerate a == 0. Returns false when the solution set is empty.
bool solve_quadratic_leq(double a, double b, double c, double& lo, double& hi);

/// Free-space region of one cell, {(x,y) in [0,1]^2 : ||d0 + x*u - y*v|| <= r},
/// reduced to six scalars so evaluation is independent of the ambient dimension.
struct quad_cell {
  double qa = 0.0;            // ||u||^2
  double qb0 = 0.0, qb1 = 0.0;  // B(y) = qb0 + qb1*y
  double qc0 = 0.0, qc1 = 0.0, qc2 = 0.0;  // C(y) = qc0 + qc1*y + qc2*y^2

  static quad_cell make(const point& p0, const point& p1, const point& q0, const point& q1,
                        double radius);

  /// x-interval of the region at height y, clipped to [0,1]; false if empty.
  bool slice_x(double y, double& lo, double& hi) const;
  /// y-interval at abscissa x, clipped to [0,1]; false if empty.
  bool slice_y(double x, double& lo, double& hi) const;
  bool inside(double x, double y, double tol = 0.0) const {
    return qa * x * x + (qb0 + qb1 * y) * x + (qc0 + qc1 * y + qc2 * y * y) <= tol;
  }
};

/// Free-space interval on a vertical line through a fixed point of one curve
/// against an edge of the other: ||(w - e0) - y*(e1 - e0)|| <= r.
bool vertex_edge_interval(const point& w, const point& e0, const point& e1, double radius,
                          double& lo, double& hi);

/// Alt-Godau decision: d_F(P, Q) <= delta (continuous Frechet distance).
bool decide_frechet(const polygonal_curve& P, const polygonal_curve& Q, double delta);

}  // namespace subtraj
