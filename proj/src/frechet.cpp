#include "subtraj/frechet.hpp"

#include <algorithm>
#include <cmath>

namespace subtraj {

bool solve_quadratic_leq(double a, double b, double c, double& lo, double& hi) {
  if (std::abs(a) < 1e-300) {
    if (std::abs(b) < 1e-300) {
      if (c <= 0) {
        lo = -kInf;
        hi = kInf;
        return true;
      }
      return false;
    }
    if (b > 0) {
      lo = -kInf;
      hi = -c / b;
    } else {
      lo = -c / b;
      hi = kInf;
    }
    return true;
  }
  // a > 0 for all our uses.
  double disc = b * b - 4.0 * a * c;
  double scale = b * b + std::abs(4.0 * a * c);
  if (disc < 0) {
    if (disc > -1e-12 * std::max(scale, 1e-30)) {
      lo = hi = -b / (2.0 * a);
      return true;
    }
    return false;
  }
  double sq = std::sqrt(disc);
  // Numerically stable root pair.
  double q = -0.5 * (b + (b >= 0 ? sq : -sq));
  double r1 = q / a;
  double r2 = (q != 0.0) ? c / q : -b / (2.0 * a);
  lo = std::min(r1, r2);
  hi = std::max(r1, r2);
  return true;
}

quad_cell quad_cell::make(const point& p0, const point& p1, const point& q0, const point& q1,
                          double radius) {
  point u = sub(p1, p0);
  point v = sub(q1, q0);
  point d0 = sub(p0, q0);
  quad_cell c;
  c.qa = norm2(u);
  c.qb0 = 2.0 * dot(d0, u);
  c.qb1 = -2.0 * dot(u, v);
  c.qc0 = norm2(d0) - radius * radius;
  c.qc1 = -2.0 * dot(d0, v);
  c.qc2 = norm2(v);
  return c;
}

bool quad_cell::slice_x(double y, double& lo, double& hi) const {
  double b = qb0 + qb1 * y;
  double c = qc0 + y * (qc1 + y * qc2);
  if (!solve_quadratic_leq(qa, b, c, lo, hi)) return false;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  return lo <= hi;
}

bool quad_cell::slice_y(double x, double& lo, double& hi) const {
  double b = qc1 + qb1 * x;
  double c = qc0 + x * (qb0 + x * qa);
  if (!solve_quadratic_leq(qc2, b, c, lo, hi)) return false;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  return lo <= hi;
}

bool vertex_edge_interval(const point& w, const point& e0, const point& e1, double radius,
                          double& lo, double& hi) {
  point v = sub(e1, e0);
  point d = sub(w, e0);
  // ||d - y v||^2 <= r^2
  double a = norm2(v);
  double b = -2.0 * dot(d, v);
  double c = norm2(d) - radius * radius;
  if (!solve_quadratic_leq(a, b, c, lo, hi)) return false;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  return lo <= hi;
}

namespace {

struct span1 {
  double lo = kInf, hi = -kInf;
  bool empty() const { return lo > hi; }
};

constexpr double kEndTol = 1e-12;

}  // namespace

bool decide_frechet(const polygonal_curve& P, const polygonal_curve& Q, double delta) {
  if (dist(P.vertex(0), Q.vertex(0)) > delta + kEndTol) return false;
  if (dist(P.vertex(P.num_vertices() - 1), Q.vertex(Q.num_vertices() - 1)) > delta + kEndTol)
    return false;

  const int n = static_cast<int>(P.num_edges());
  const int m = static_cast<int>(Q.num_edges());

  // Local-coordinate boundary intervals per cell. BR[i]: reachable part of the
  // bottom boundary of cell (i, j) in the current row j; LR: left boundary.
  std::vector<span1> BR(n), BRnext(n);
  std::vector<span1> LR(n + 1);

  // Row 0 bottom boundaries: the contiguous free run along y = 0 from x = 0.
  bool chain = true;
  for (int i = 0; i < n; ++i) {
    double lo, hi;
    bool free = vertex_edge_interval(Q.vertex(0), P.vertex(i), P.vertex(i + 1), delta, lo, hi);
    span1 s{};
    if (chain && free && lo <= kEndTol) s = {0.0, hi};
    BR[i] = s;
    chain = !s.empty() && s.hi >= 1.0 - kEndTol;
  }

  span1 left_col{0.0, 0.0};  // reachable part of x = 0 entering row j from below
  for (int j = 0; j < m; ++j) {
    // Left boundary of cell (0, j).
    {
      double lo, hi;
      span1 s{};
      if (!left_col.empty() &&
          vertex_edge_interval(P.vertex(0), Q.vertex(j), Q.vertex(j + 1), delta, lo, hi) &&
          lo <= kEndTol)
        s = {0.0, hi};
      LR[0] = s;
      left_col = (!s.empty() && s.hi >= 1.0 - kEndTol) ? span1{0.0, 0.0} : span1{};
    }
    for (int i = 0; i < n; ++i) {
      double rlo, rhi, tlo, thi;
      bool rfree = vertex_edge_interval(P.vertex(i + 1), Q.vertex(j), Q.vertex(j + 1), delta,
                                        rlo, rhi);
      bool tfree = vertex_edge_interval(Q.vertex(j + 1), P.vertex(i), P.vertex(i + 1), delta,
                                        tlo, thi);
      span1 right{}, top{};
      if (rfree) {
        if (!BR[i].empty())
          right = {rlo, rhi};
        else if (!LR[i].empty()) {
          double lo2 = std::max(rlo, LR[i].lo);
          if (lo2 <= rhi) right = {lo2, rhi};
        }
      }
      if (tfree) {
        if (!LR[i].empty())
          top = {tlo, thi};
        else if (!BR[i].empty()) {
          double lo2 = std::max(tlo, BR[i].lo);
          if (lo2 <= thi) top = {lo2, thi};
        }
      }
      LR[i + 1] = right;
      BRnext[i] = top;
    }
    BR.swap(BRnext);
  }
  // After the last row, BR holds the top edge of the diagram.
  return !BR[n - 1].empty() && BR[n - 1].hi >= 1.0 - kEndTol;
}

}  // namespace subtraj
