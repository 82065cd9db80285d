#include "subtraj/freespace.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace subtraj {

// ---------------------------------------------------------------------------
// ball_polytope

namespace {

std::array<double, 3> normalize3(std::array<double, 3> v) {
  double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Solve <wa,v>=<wb,v>=<wc,v>=1 for v (3x3 linear system, Cramer).
bool plane3_vertex(const std::array<double, 3>& a, const std::array<double, 3>& b,
                   const std::array<double, 3>& c, std::array<double, 3>& out) {
  double det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
               a[2] * (b[0] * c[1] - b[1] * c[0]);
  if (std::abs(det) < 1e-14) return false;
  auto minor = [&](int col) {
    std::array<std::array<double, 3>, 3> m = {a, b, c};
    for (int r = 0; r < 3; ++r) m[r][col] = 1.0;
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  out = {minor(0) / det, minor(1) / det, minor(2) / det};
  return true;
}

}  // namespace

ball_polytope ball_polytope::build(double eps) {
  if (!(eps > 0.0) || eps > 0.2 + 1e-12)
    throw subtraj_error("ball polytope approximation parameter must lie in (0, 1/5]");
  // Directions: cube-sphere net with surface pitch proportional to eps. The
  // polytope is the intersection of the tangent halfspaces at the directions;
  // this keeps the unit ball inside by construction and stays within
  // B_{1/cos(pitch)} which is far below the 1+4*eps budget.
  const int k = std::max(2, static_cast<int>(std::ceil(2.0 / eps)));
  ball_polytope D;
  std::vector<std::vector<std::array<double, 3>>> face_grid;
  auto face_point = [&](int face, double s, double t) -> std::array<double, 3> {
    switch (face) {
      case 0: return {1.0, s, t};
      case 1: return {-1.0, s, t};
      case 2: return {s, 1.0, t};
      case 3: return {s, -1.0, t};
      case 4: return {s, t, 1.0};
      default: return {s, t, -1.0};
    }
  };
  for (int face = 0; face < 6; ++face) {
    std::vector<std::array<double, 3>> grid((k + 1) * (k + 1));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) {
        double s = -1.0 + 2.0 * i / k;
        double t = -1.0 + 2.0 * j / k;
        grid[i * (k + 1) + j] = normalize3(face_point(face, s, t));
      }
    for (const auto& w : grid) D.facets.push_back({w, 1.0});
    face_grid.push_back(std::move(grid));
  }
  // Vertices from the dual triangles of each grid quad.
  for (int face = 0; face < 6; ++face) {
    const auto& g = face_grid[face];
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const auto& a = g[i * (k + 1) + j];
        const auto& b = g[(i + 1) * (k + 1) + j];
        const auto& c = g[i * (k + 1) + j + 1];
        const auto& d = g[(i + 1) * (k + 1) + j + 1];
        std::array<double, 3> v;
        if (plane3_vertex(a, b, c, v)) D.vertices.push_back(v);
        if (plane3_vertex(d, b, c, v)) D.vertices.push_back(v);
      }
  }
  double max_vertex = 1.0;
  for (const auto& v : D.vertices) max_vertex = std::max(max_vertex, std::sqrt(dot3(v, v)));
  D.alpha = max_vertex;
  if (D.alpha > 1.0 + 4.0 * eps)
    throw subtraj_error("ball polytope construction exceeded its containment budget");
  return D;
}

frame3 frame3::make(const point& d0, const point& u, const point& v) {
  frame3 f;
  const std::size_t d = u.size();
  auto push = [&](point w) {
    for (int i = 0; i < f.dim; ++i) {
      double c = dot(w, f.basis[i]);
      for (std::size_t j = 0; j < d; ++j) w[j] -= c * f.basis[i][j];
    }
    double n = norm(w);
    if (n > 1e-12) {
      f.basis[f.dim] = scale(w, 1.0 / n);
      f.dim++;
    }
  };
  push(u);
  if (f.dim < 3) push(v);
  if (f.dim < 3) push(d0);
  for (int i = f.dim; i < 3; ++i) f.basis[i] = point(d, 0.0);
  return f;
}

std::array<double, 3> frame3::coords(const point& w) const {
  std::array<double, 3> c = {0.0, 0.0, 0.0};
  for (int i = 0; i < dim; ++i) c[i] = dot(w, basis[i]);
  return c;
}

// ---------------------------------------------------------------------------
// poly_cell

bool poly_cell::slice(double y, double& lo, double& hi) const {
  lo = left_at(y);
  if (lo == kInf) return false;
  hi = right_at(y);
  return true;
}

namespace {

double chain_eval(const std::vector<chain_vertex>& ch, double y) {
  if (ch.empty() || y < ch.front().y || y > ch.back().y) return kInf;
  auto it = std::upper_bound(ch.begin(), ch.end(), y,
                             [](double v, const chain_vertex& c) { return v < c.y; });
  if (it == ch.begin()) return ch.front().x;
  if (it == ch.end()) return ch.back().x;
  const chain_vertex& p = *(it - 1);
  const chain_vertex& q = *it;
  if (q.y <= p.y) return p.x;
  double t = (y - p.y) / (q.y - p.y);
  return p.x + t * (q.x - p.x);
}

}  // namespace

double poly_cell::left_at(double y) const { return chain_eval(left, y); }
double poly_cell::right_at(double y) const { return chain_eval(right, y); }

// ---------------------------------------------------------------------------
// polygon clipping (local cell coordinates)

namespace {

struct pt2 {
  double x, y;
};

// Sutherland-Hodgman against a*x + b*y <= c.
void clip_halfplane(std::vector<pt2>& poly, double a, double b, double c) {
  if (poly.empty()) return;
  std::vector<pt2> out;
  out.reserve(poly.size() + 2);
  auto val = [&](const pt2& p) { return a * p.x + b * p.y - c; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const pt2& p = poly[i];
    const pt2& q = poly[(i + 1) % poly.size()];
    double vp = val(p), vq = val(q);
    if (vp <= 0) out.push_back(p);
    if ((vp < 0 && vq > 0) || (vp > 0 && vq < 0)) {
      double t = vp / (vp - vq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  poly = std::move(out);
}

}  // namespace

// ---------------------------------------------------------------------------
// exact cell features

namespace {

cell_features exact_features(const quad_cell& q, const tolerances& tol) {
  cell_features f;
  double w0lo, w0hi, w1lo, w1hi, flo, fhi, clo, chi;
  bool w0 = q.slice_y(0.0, w0lo, w0hi);
  bool w1 = q.slice_y(1.0, w1lo, w1hi);
  bool fl = q.slice_x(0.0, flo, fhi);
  bool ce = q.slice_x(1.0, clo, chi);

  // Bottom / top.
  const double gden = 4.0 * q.qa;
  double g2 = q.qc2 - q.qb1 * q.qb1 / gden;
  double g1 = q.qc1 - q.qb0 * q.qb1 / (2.0 * q.qa);
  double g0 = q.qc0 - q.qb0 * q.qb0 / gden;
  double glo = kInf, ghi = -kInf;
  bool has_g = std::abs(g2) > 1e-14 * std::max(1.0, q.qc2) &&
               solve_quadratic_leq(g2, g1, g0, glo, ghi);
  auto xstar = [&](double y) { return -(q.qb0 + q.qb1 * y) / (2.0 * q.qa); };

  if (fl) {
    f.ybot = 0.0;
    f.xbot_lo = flo;
    f.xbot_hi = fhi;
  } else {
    double best = kInf;
    if (w0) best = std::min(best, w0lo);
    if (w1) best = std::min(best, w1lo);
    if (has_g && glo >= 0.0 && glo <= 1.0) {
      double xs = xstar(glo);
      if (xs >= -tol.geom && xs <= 1.0 + tol.geom) best = std::min(best, glo);
    }
    if (best != kInf) {
      f.ybot = best;
      double lo, hi;
      if (q.slice_x(best, lo, hi)) {
        f.xbot_lo = lo;
        f.xbot_hi = hi;
      } else {
        f.xbot_lo = f.xbot_hi = std::clamp(xstar(best), 0.0, 1.0);
      }
    }
  }
  if (ce) {
    f.ytop = 1.0;
    f.xtop_lo = clo;
    f.xtop_hi = chi;
  } else {
    double best = -kInf;
    if (w0) best = std::max(best, w0hi);
    if (w1) best = std::max(best, w1hi);
    if (has_g && ghi >= 0.0 && ghi <= 1.0) {
      double xs = xstar(ghi);
      if (xs >= -tol.geom && xs <= 1.0 + tol.geom) best = std::max(best, ghi);
    }
    if (best != -kInf) {
      f.ytop = best;
      double lo, hi;
      if (q.slice_x(best, lo, hi)) {
        f.xtop_lo = lo;
        f.xtop_hi = hi;
      } else {
        f.xtop_lo = f.xtop_hi = std::clamp(xstar(best), 0.0, 1.0);
      }
    }
  }
  if (f.ybot == kInf || f.ytop == -kInf) {
    f.empty = true;
    return f;
  }
  f.empty = false;

  // Left / right.
  double qA = kInf, qB = 0, qC = 0;
  bool has_q = q.qc2 > 1e-300;
  if (has_q) {
    qA = q.qa - q.qb1 * q.qb1 / (4.0 * q.qc2);
    qB = q.qb0 - q.qb1 * q.qc1 / (2.0 * q.qc2);
    qC = q.qc0 - q.qc1 * q.qc1 / (4.0 * q.qc2);
  }
  double qlo = kInf, qhi = -kInf;
  bool has_qr = has_q && std::abs(qA) > 1e-14 * std::max(1.0, q.qa) &&
                solve_quadratic_leq(qA, qB, qC, qlo, qhi);
  auto ystar = [&](double x) { return -(q.qb1 * x + q.qc1) / (2.0 * q.qc2); };

  if (w0) {
    f.xmin = 0.0;
    f.ylft_lo = w0lo;
    f.ylft_hi = w0hi;
  } else {
    double best = kInf, ylo = kInf, yhi = -kInf;
    if (fl && flo < best) best = flo, ylo = yhi = 0.0;
    if (ce && clo < best) best = clo, ylo = yhi = 1.0;
    if (has_qr && qlo >= 0.0 && qlo <= 1.0) {
      double ys = ystar(qlo);
      if (ys >= -tol.geom && ys <= 1.0 + tol.geom && qlo < best) {
        best = qlo;
        ylo = yhi = std::clamp(ys, 0.0, 1.0);
      }
    }
    f.xmin = best;
    double slo, shi;
    if (q.slice_y(best, slo, shi)) {
      f.ylft_lo = slo;
      f.ylft_hi = shi;
    } else {
      f.ylft_lo = ylo;
      f.ylft_hi = yhi;
    }
  }
  if (w1) {
    f.xmax = 1.0;
    f.yrgt_lo = w1lo;
    f.yrgt_hi = w1hi;
  } else {
    double best = -kInf, ylo = kInf, yhi = -kInf;
    if (fl && fhi > best) best = fhi, ylo = yhi = 0.0;
    if (ce && chi > best) best = chi, ylo = yhi = 1.0;
    if (has_qr && qhi >= 0.0 && qhi <= 1.0) {
      double ys = ystar(qhi);
      if (ys >= -tol.geom && ys <= 1.0 + tol.geom && qhi > best) {
        best = qhi;
        ylo = yhi = std::clamp(ys, 0.0, 1.0);
      }
    }
    f.xmax = best;
    double slo, shi;
    if (q.slice_y(best, slo, shi)) {
      f.yrgt_lo = slo;
      f.yrgt_hi = shi;
    } else {
      f.yrgt_lo = ylo;
      f.yrgt_hi = yhi;
    }
  }
  return f;
}

cell_features polygon_features(const poly_cell& pc) {
  cell_features f;
  if (pc.empty()) return f;
  f.empty = false;
  f.ybot = pc.left.front().y;
  f.ytop = pc.left.back().y;
  f.xbot_lo = pc.left.front().x;
  f.xbot_hi = pc.right.front().x;
  f.xtop_lo = pc.left.back().x;
  f.xtop_hi = pc.right.back().x;
  f.xmin = kInf;
  f.xmax = -kInf;
  for (const auto& v : pc.left) {
    if (v.x < f.xmin - 1e-12) {
      f.xmin = v.x;
      f.ylft_lo = f.ylft_hi = v.y;
    } else if (v.x <= f.xmin + 1e-12) {
      f.xmin = std::min(f.xmin, v.x);
      f.ylft_lo = std::min(f.ylft_lo, v.y);
      f.ylft_hi = std::max(f.ylft_hi, v.y);
    }
  }
  for (const auto& v : pc.right) {
    if (v.x > f.xmax + 1e-12) {
      f.xmax = v.x;
      f.yrgt_lo = f.yrgt_hi = v.y;
    } else if (v.x >= f.xmax - 1e-12) {
      f.xmax = std::max(f.xmax, v.x);
      f.yrgt_lo = std::min(f.yrgt_lo, v.y);
      f.yrgt_hi = std::max(f.yrgt_hi, v.y);
    }
  }
  return f;
}

poly_cell chains_from_polygon(std::vector<pt2> poly) {
  poly_cell pc;
  if (poly.size() < 3) {
    if (poly.size() == 2 || poly.size() == 1) {
      // Degenerate sliver: keep it as a two-point chain.
      double ylo = poly[0].y, yhi = poly.back().y;
      double xlo = poly[0].x, xhi = poly.back().x;
      if (ylo > yhi) std::swap(ylo, yhi), std::swap(xlo, xhi);
      pc.left = {{ylo, std::min(xlo, xhi)}, {yhi, std::min(xlo, xhi)}};
      pc.right = {{ylo, std::max(xlo, xhi)}, {yhi, std::max(xlo, xhi)}};
    }
    return pc;
  }
  // Ensure CCW orientation.
  double area2 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const pt2& p = poly[i];
    const pt2& q = poly[(i + 1) % poly.size()];
    area2 += p.x * q.y - q.x * p.y;
  }
  if (area2 < 0) std::reverse(poly.begin(), poly.end());

  auto lex_lo = [](const pt2& a, const pt2& b) { return a.y < b.y || (a.y == b.y && a.x < b.x); };
  std::size_t ibl = 0, itr = 0;
  for (std::size_t i = 1; i < poly.size(); ++i) {
    if (lex_lo(poly[i], poly[ibl])) ibl = i;
    if (lex_lo(poly[itr], poly[i])) itr = i;
  }
  // CCW from bottom-left: right side up to top-right, then left side back.
  std::vector<pt2> rightside, leftside;
  for (std::size_t i = ibl;; i = (i + 1) % poly.size()) {
    rightside.push_back(poly[i]);
    if (i == itr) break;
  }
  for (std::size_t i = itr;; i = (i + 1) % poly.size()) {
    leftside.push_back(poly[i]);
    if (i == ibl) break;
  }
  std::reverse(leftside.begin(), leftside.end());
  auto to_chain = [](const std::vector<pt2>& side, bool leftmost) {
    std::vector<chain_vertex> ch;
    for (const auto& p : side) {
      if (!ch.empty() && p.y <= ch.back().y + 1e-15) {
        // collapse horizontal runs, keep extreme x
        if (leftmost)
          ch.back().x = std::min(ch.back().x, p.x);
        else
          ch.back().x = std::max(ch.back().x, p.x);
        if (p.y > ch.back().y) ch.back().y = p.y;
      } else {
        ch.push_back({p.y, p.x});
      }
    }
    return ch;
  };
  pc.right = to_chain(rightside, false);
  pc.left = to_chain(leftside, true);
  if (pc.left.empty() || pc.right.empty()) return poly_cell{};
  // Both chains must span [ybot, ytop].
  double ybot = std::min(pc.left.front().y, pc.right.front().y);
  double ytop = std::max(pc.left.back().y, pc.right.back().y);
  auto patch = [&](std::vector<chain_vertex>& ch) {
    if (ch.front().y > ybot) ch.insert(ch.begin(), {ybot, ch.front().x});
    if (ch.back().y < ytop) ch.push_back({ytop, ch.back().x});
  };
  patch(pc.left);
  patch(pc.right);
  return pc;
}

}  // namespace

// ---------------------------------------------------------------------------
// fs_strip

double fs_strip::left_at(int i, double y) const {
  double lo, hi;
  if (!slice(i, y, lo, hi)) return kInf;
  return lo;
}

double fs_strip::right_at(int i, double y) const {
  double lo, hi;
  if (!slice(i, y, lo, hi)) return kInf;
  return hi;
}

bool fs_strip::slice(int i, double y, double& lo_g, double& hi_g) const {
  double lo, hi;
  bool ok;
  if (backend_ == fs_backend::exact)
    ok = quads_[i].slice_x(y, lo, hi);
  else
    ok = polys_[i].slice(y, lo, hi);
  if (!ok) return false;
  lo_g = (i + lo) / num_cells_;
  hi_g = (i + hi) / num_cells_;
  return true;
}

double fs_strip::left_at_entry(int i, int h) const {
  if (!alive(i, h)) return kInf;
  const cell_features& f = features_[i];
  double y = std::clamp(entries_[h].y, f.ybot, f.ytop);
  double v = left_at(i, y);
  if (v == kInf) {
    // Numeric fringe at a feature height: fall back to the feature slice.
    if (y <= 0.5 * (f.ybot + f.ytop))
      v = cell_x_lo(i) + f.xbot_lo / num_cells_;
    else
      v = cell_x_lo(i) + f.xtop_lo / num_cells_;
  }
  return v;
}

double fs_strip::right_at_entry(int i, int h) const {
  if (!alive(i, h)) return kInf;
  const cell_features& f = features_[i];
  double y = std::clamp(entries_[h].y, f.ybot, f.ytop);
  double v = right_at(i, y);
  if (v == kInf) {
    if (y <= 0.5 * (f.ybot + f.ytop))
      v = cell_x_lo(i) + f.xbot_hi / num_cells_;
    else
      v = cell_x_lo(i) + f.xtop_hi / num_cells_;
  }
  return v;
}

double fs_strip::top_right_x(int i) const {
  return cell_x_lo(i) + features_[i].xtop_hi / num_cells_;
}

double fs_strip::bot_left_x(int i) const {
  return cell_x_lo(i) + features_[i].xbot_lo / num_cells_;
}

int fs_strip::find_entry_leq(double y) const {
  auto it = std::upper_bound(entries_.begin(), entries_.end(), y,
                             [](double v, const height_entry& e) { return v < e.y; });
  return static_cast<int>(it - entries_.begin()) - 1;
}

void fs_strip::finalize_entries(const tolerances& tol) {
  (void)tol;
  entries_.push_back({0.0, hkind::floor, -1, 0});
  entries_.push_back({1.0, hkind::ceiling, -1, 0});
  for (int c = 0; c < num_cells_; ++c) {
    const cell_features& f = features_[c];
    if (f.empty) continue;
    entries_.push_back({f.ybot, hkind::cell_bottom, c, 0});
    entries_.push_back({f.ytop, hkind::cell_top, c, 0});
    // Left feature of cell c: owned by wall c when the exact region touches it.
    bool left_is_wall = c >= 1 && wall_nonempty(c) && backend_ == fs_backend::exact;
    if (!left_is_wall) {
      entries_.push_back({f.ylft_lo, hkind::extremal, c, 0});
      if (f.ylft_hi > f.ylft_lo) entries_.push_back({f.ylft_hi, hkind::extremal, c, 1});
    }
    bool right_is_wall = c + 1 <= num_cells_ - 1 && wall_nonempty(c + 1) &&
                         backend_ == fs_backend::exact;
    if (!right_is_wall) {
      entries_.push_back({f.yrgt_lo, hkind::extremal, c, 2});
      if (f.yrgt_hi > f.yrgt_lo) entries_.push_back({f.yrgt_hi, hkind::extremal, c, 3});
    }
  }
  for (int w = 1; w <= num_cells_ - 1; ++w) {
    if (!wall_nonempty(w)) continue;
    entries_.push_back({wall_lo_[w], hkind::wall_lo, w, 0});
    entries_.push_back({wall_hi_[w], hkind::wall_hi, w, 0});
  }
  index_entries();
}

void fs_strip::index_entries() {
  std::sort(entries_.begin(), entries_.end(), [](const height_entry& a, const height_entry& b) {
    if (a.y != b.y) return a.y < b.y;
    if (hrank(a.kind) != hrank(b.kind)) return hrank(a.kind) < hrank(b.kind);
    if (a.cell != b.cell) return a.cell < b.cell;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.sub < b.sub;
  });
  bot_e_.assign(num_cells_, -1);
  top_e_.assign(num_cells_, -1);
  wlo_e_.assign(num_cells_ + 1, -1);
  whi_e_.assign(num_cells_ + 1, -1);
  for (int e = 0; e < static_cast<int>(entries_.size()); ++e) {
    const height_entry& he = entries_[e];
    switch (he.kind) {
      case hkind::cell_bottom: bot_e_[he.cell] = e; break;
      case hkind::cell_top: top_e_[he.cell] = e; break;
      case hkind::wall_lo: wlo_e_[he.cell] = e; break;
      case hkind::wall_hi: whi_e_[he.cell] = e; break;
      default: break;
    }
  }
}

fs_strip fs_strip::build_exact(const point& e0, const point& e1, const polygonal_curve& P,
                               double radius, const tolerances& tol) {
  fs_strip s;
  s.backend_ = fs_backend::exact;
  s.num_cells_ = static_cast<int>(P.num_edges());
  s.quads_.reserve(s.num_cells_);
  s.features_.reserve(s.num_cells_);
  for (int i = 0; i < s.num_cells_; ++i) {
    quad_cell q = quad_cell::make(P.vertex(i), P.vertex(i + 1), e0, e1, radius);
    s.quads_.push_back(q);
    s.features_.push_back(exact_features(q, tol));
  }
  s.wall_lo_.assign(s.num_cells_ + 1, kInf);
  s.wall_hi_.assign(s.num_cells_ + 1, -kInf);
  for (int w = 1; w <= s.num_cells_ - 1; ++w) {
    double lo, hi;
    if (vertex_edge_interval(P.vertex(w), e0, e1, radius, lo, hi)) {
      s.wall_lo_[w] = lo;
      s.wall_hi_[w] = hi;
    }
  }
  s.finalize_entries(tol);
  return s;
}

fs_strip fs_strip::build_polygon(const point& e0, const point& e1, const polygonal_curve& P,
                                 double radius, const ball_polytope& ball, const tolerances& tol,
                                 bool entries_at_polygon_vertices) {
  fs_strip s;
  s.backend_ = fs_backend::polygon;
  s.num_cells_ = static_cast<int>(P.num_edges());
  s.polys_.reserve(s.num_cells_);
  s.features_.reserve(s.num_cells_);
  point v = sub(e1, e0);
  std::vector<std::vector<double>> vertex_heights(s.num_cells_);
  for (int i = 0; i < s.num_cells_; ++i) {
    point u = sub(P.vertex(i + 1), P.vertex(i));
    point d0 = sub(P.vertex(i), e0);
    frame3 fr = frame3::make(d0, u, v);
    auto cu = fr.coords(u);
    auto cv = fr.coords(v);
    auto cd = fr.coords(d0);
    std::vector<pt2> poly = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (const auto& hs : ball.facets) {
      double a = dot3(hs.n, cu);
      double b = -dot3(hs.n, cv);
      double c = radius * hs.off - dot3(hs.n, cd);
      clip_halfplane(poly, a, b, c);
      if (poly.empty()) break;
    }
    poly_cell pc = chains_from_polygon(std::move(poly));
    if (entries_at_polygon_vertices && !pc.empty()) {
      auto& hs = vertex_heights[i];
      for (const auto& cvtx : pc.left) hs.push_back(cvtx.y);
      for (const auto& cvtx : pc.right) hs.push_back(cvtx.y);
    }
    s.features_.push_back(polygon_features(pc));
    s.polys_.push_back(std::move(pc));
  }
  // Shared wall intervals: intersection of both adjacent polygons' wall
  // slices, computed from the halfspace set at the shared vertex.
  s.wall_lo_.assign(s.num_cells_ + 1, kInf);
  s.wall_hi_.assign(s.num_cells_ + 1, -kInf);
  for (int w = 1; w <= s.num_cells_ - 1; ++w) {
    double lo = 0.0, hi = 1.0;
    for (int side = 0; side < 2; ++side) {
      int cell = w - 1 + side;
      point u = sub(P.vertex(cell + 1), P.vertex(cell));
      point d0 = sub(P.vertex(cell), e0);
      frame3 fr = frame3::make(d0, u, v);
      auto cv = fr.coords(v);
      point dw = sub(P.vertex(w), e0);
      auto cw = fr.coords(dw);
      for (const auto& hs : ball.facets) {
        // <n, dw - y v> <= r*off  =>  -<n,v> y <= r*off - <n,dw>
        double b = -dot3(hs.n, cv);
        double c = radius * hs.off - dot3(hs.n, cw);
        if (std::abs(b) < 1e-15) {
          if (c < 0) {
            lo = 1.0;
            hi = 0.0;
          }
        } else if (b > 0) {
          hi = std::min(hi, c / b);
        } else {
          lo = std::max(lo, c / b);
        }
        if (lo > hi) break;
      }
      if (lo > hi) break;
    }
    if (lo <= hi) {
      s.wall_lo_[w] = lo;
      s.wall_hi_[w] = hi;
    }
  }
  s.finalize_entries(tol);
  if (entries_at_polygon_vertices) {
    for (int i = 0; i < s.num_cells_; ++i) {
      const cell_features& f = s.features_[i];
      for (double y : vertex_heights[i]) {
        if (y > f.ybot + tol.dedup && y < f.ytop - tol.dedup)
          s.entries_.push_back({y, hkind::extremal, i, 4});
      }
    }
    s.index_entries();
  }
  return s;
}

// ---------------------------------------------------------------------------
// free_space_diagram

free_space_diagram::free_space_diagram(const polygonal_curve& S, const polygonal_curve& P,
                                       const freespace_options& opt)
    : S_(&S), P_(&P), opt_(opt) {
  cols_ = static_cast<int>(P.num_edges());
  if (opt.backend == fs_backend::polygon) ball_ = ball_polytope::build(opt.ball_eps);
  const int M = static_cast<int>(S.num_edges());
  rows_.reserve(M);
  rows_rev_.reserve(M);
  for (int j = 0; j < M; ++j) {
    const point& a = S.vertex(j);
    const point& b = S.vertex(j + 1);
    if (opt.backend == fs_backend::exact) {
      rows_.push_back(fs_strip::build_exact(a, b, P, opt.radius, opt.tol));
      rows_rev_.push_back(fs_strip::build_exact(b, a, P, opt.radius, opt.tol));
    } else {
      rows_.push_back(fs_strip::build_polygon(a, b, P, opt.radius, *ball_, opt.tol,
                                              opt.polygon_vertex_entries));
      rows_rev_.push_back(fs_strip::build_polygon(b, a, P, opt.radius, *ball_, opt.tol,
                                                  opt.polygon_vertex_entries));
    }
  }
  interfaces_.resize(M + 1);
  for (int vtx = 0; vtx <= M; ++vtx) {
    interfaces_[vtx].resize(cols_);
    for (int i = 0; i < cols_; ++i) {
      double lo, hi;
      bool ok = vertex_edge_interval(S.vertex(vtx), P.vertex(i), P.vertex(i + 1), opt.radius, lo,
                                     hi);
      if (ok) {
        interfaces_[vtx][i] = {(i + lo) / cols_, (i + hi) / cols_};
      } else {
        interfaces_[vtx][i] = {1.0, 0.0};  // empty marker
      }
    }
  }
}

}  // namespace subtraj
