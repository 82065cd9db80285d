#include "subtraj/reach.hpp"

#include <algorithm>
#include <cmath>

namespace subtraj {

namespace {

constexpr double kTouch = 1e-12;

struct contribution {
  double start;  // leftmost reachable x of this contribution
  std::vector<std::pair<double, double>> steps;  // (x_from, src)
};

void append_component(line_state& out, double lo, double hi,
                      std::vector<contribution>& contribs) {
  if (contribs.empty()) return;
  double start = kInf;
  for (const auto& c : contribs) start = std::min(start, c.start);
  line_state::component comp;
  comp.lo = start;
  comp.hi = hi;
  (void)lo;
  // Merge step functions: collect breakpoints, prefix-min by x.
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : contribs)
    for (const auto& s : c.steps) pts.push_back({std::max(s.first, c.start), s.second});
  std::sort(pts.begin(), pts.end());
  double run = kInf;
  for (const auto& p : pts) {
    if (p.second < run) {
      run = p.second;
      comp.minsrc.push_back({p.first, run});
    }
  }
  out.comps.push_back(std::move(comp));
  contribs.clear();
}

}  // namespace

line_state line_sources(const fs_strip& strip, double y) {
  line_state st;
  const int N = strip.cells();
  double cur_lo = kInf, cur_hi = -kInf;
  for (int i = 0; i < N; ++i) {
    double lo, hi;
    bool ok = strip.slice(i, y, lo, hi);
    bool connected = ok && cur_hi > -kInf && strip.wall_nonempty(i) &&
                     strip.wall_lo(i) <= y + kTouch && strip.wall_hi(i) >= y - kTouch &&
                     cur_hi >= strip.cell_x_lo(i) - kTouch && lo <= strip.cell_x_lo(i) + kTouch;
    if (ok && connected) {
      cur_hi = hi;
    } else {
      if (cur_hi > -kInf)
        st.comps.push_back({cur_lo, cur_hi, {{cur_lo, cur_lo}}});
      if (ok) {
        cur_lo = lo;
        cur_hi = hi;
      } else {
        cur_lo = kInf;
        cur_hi = -kInf;
      }
    }
  }
  if (cur_hi > -kInf) st.comps.push_back({cur_lo, cur_hi, {{cur_lo, cur_lo}}});
  return st;
}

line_state line_sources(const std::vector<interval>& line) {
  line_state st;
  const int N = static_cast<int>(line.size());
  double cur_lo = kInf, cur_hi = -kInf;
  for (int i = 0; i < N; ++i) {
    bool ok = line[i].lo <= line[i].hi;
    double boundary = static_cast<double>(i) / N;
    bool connected = ok && cur_hi > -kInf && cur_hi >= boundary - kTouch &&
                     line[i].lo <= boundary + kTouch;
    if (ok && connected) {
      cur_hi = line[i].hi;
    } else {
      if (cur_hi > -kInf) st.comps.push_back({cur_lo, cur_hi, {{cur_lo, cur_lo}}});
      if (ok) {
        cur_lo = line[i].lo;
        cur_hi = line[i].hi;
      } else {
        cur_lo = kInf;
        cur_hi = -kInf;
      }
    }
  }
  if (cur_hi > -kInf) st.comps.push_back({cur_lo, cur_hi, {{cur_lo, cur_lo}}});
  return st;
}

line_state propagate_strip(const fs_strip& strip, double y_from, double y_to,
                           const line_state& in) {
  const int N = strip.cells();
  line_state out;
  if (in.empty()) return out;

  // Lateral occupancy chain.
  bool lat_valid = false;
  double lat_h = 0.0, lat_src = kInf;
  // Direct occupancy of the previous cell (for feeding the next wall).
  bool prev_direct = false;
  double prev_direct_src = kInf;

  std::vector<contribution> contribs;
  bool comp_open = false;
  double comp_lo = 0.0, comp_hi = 0.0;

  std::size_t ci = 0;  // input component cursor
  for (int i = 0; i < N; ++i) {
    double blo = kInf, bhi = -kInf;  // bottom slice (global)
    bool has_bottom = strip.slice(i, y_from, blo, bhi);
    double tlo = kInf, thi = -kInf;
    bool has_top = strip.slice(i, y_to, tlo, thi);

    // Wall i: clip to [y_from, y_to].
    bool wall_window = false;
    double wlo = 0.0, whi = 0.0;
    if (i >= 1 && strip.wall_nonempty(i)) {
      wlo = std::max(strip.wall_lo(i), y_from);
      whi = std::min(strip.wall_hi(i), y_to);
      wall_window = wlo <= whi + kTouch;
    }

    // Update the lateral chain for cell i (crossing wall i from cell i-1).
    if (i >= 1) {
      bool new_lat = false;
      double nh = 0.0, ns = kInf;
      if (wall_window) {
        if (prev_direct) {
          new_lat = true;
          nh = std::max(wlo, y_from);
          ns = prev_direct_src;
        }
        if (lat_valid && lat_h <= whi + kTouch) {
          double h2 = std::max(wlo, lat_h);
          if (!new_lat || h2 < nh) nh = new_lat ? std::min(nh, h2) : h2;
          new_lat = true;
          ns = std::min(ns, lat_src);
        }
      }
      lat_valid = new_lat;
      lat_h = nh;
      lat_src = ns;
    } else {
      lat_valid = false;
    }

    // Direct occupancy pieces: input components clipped to the bottom slice.
    prev_direct = false;
    prev_direct_src = kInf;
    std::vector<contribution> direct_pieces;
    if (has_bottom) {
      while (ci < in.comps.size() && in.comps[ci].hi < blo - kTouch) ++ci;
      for (std::size_t k = ci; k < in.comps.size(); ++k) {
        const auto& c = in.comps[k];
        if (c.lo > bhi + kTouch) break;
        double plo = std::max(c.lo, blo), phi = std::min(c.hi, bhi);
        if (plo > phi + kTouch) continue;
        prev_direct = true;
        double piece_min = c.src_at(phi);
        prev_direct_src = std::min(prev_direct_src, piece_min);
        if (has_top) {
          contribution cb;
          cb.start = std::max(tlo, plo);
          if (cb.start <= thi + kTouch) {
            cb.steps.push_back({cb.start, c.src_at(std::min(cb.start, phi))});
            for (const auto& s : c.minsrc)
              if (s.first > cb.start && s.first <= phi) cb.steps.push_back(s);
            direct_pieces.push_back(std::move(cb));
          }
        }
      }
    }

    // Component bookkeeping on the output line.
    bool connected_to_prev = comp_open && has_top && i >= 1 && strip.wall_nonempty(i) &&
                             strip.wall_lo(i) <= y_to + kTouch &&
                             strip.wall_hi(i) >= y_to - kTouch &&
                             comp_hi >= strip.cell_x_lo(i) - kTouch &&
                             tlo <= strip.cell_x_lo(i) + kTouch;
    if (!connected_to_prev) {
      if (comp_open) append_component(out, comp_lo, comp_hi, contribs);
      comp_open = false;
    }
    if (has_top) {
      if (!comp_open) {
        comp_open = true;
        comp_lo = tlo;
        comp_hi = thi;
        contribs.clear();
      } else {
        comp_hi = thi;
      }
      for (auto& p : direct_pieces) contribs.push_back(std::move(p));
      if (lat_valid) contribs.push_back({tlo, {{tlo, lat_src}}});
    }
  }
  if (comp_open) append_component(out, comp_lo, comp_hi, contribs);
  return out;
}

namespace {

interval_set finalize_state(const line_state& st, double merge_tol) {
  interval_set cov;
  for (const auto& c : st.comps) {
    double src = c.src_at(c.hi);
    if (src <= c.hi + kTouch) cov.add(std::min(src, c.hi), c.hi);
  }
  cov.normalize(merge_tol);
  return cov;
}

}  // namespace

interval_set reach_cover_strip(const fs_strip& strip, double s, double t) {
  line_state st = line_sources(strip, s);
  st = propagate_strip(strip, s, t, st);
  return finalize_state(st, 1e-12);
}

interval_set reach_cover(const free_space_diagram& fsd, double s, double t) {
  const int M = fsd.rows();
  auto row_of = [&](double g) {
    int j = static_cast<int>(std::floor(g * M));
    return std::clamp(j, 0, M - 1);
  };
  int js = row_of(s), jt = row_of(t);
  double ys = s * M - js, yt = t * M - jt;
  ys = std::clamp(ys, 0.0, 1.0);
  yt = std::clamp(yt, 0.0, 1.0);
  line_state st = line_sources(fsd.row(js), ys);
  if (js == jt) {
    st = propagate_strip(fsd.row(js), ys, yt, st);
    return finalize_state(st, 1e-12);
  }
  st = propagate_strip(fsd.row(js), ys, 1.0, st);
  for (int j = js + 1; j < jt; ++j) st = propagate_strip(fsd.row(j), 0.0, 1.0, st);
  st = propagate_strip(fsd.row(jt), 0.0, yt, st);
  return finalize_state(st, 1e-12);
}

interval_set curve_coverage(const polygonal_curve& Q, const polygonal_curve& P, double radius,
                            const tolerances& tol) {
  freespace_options opt;
  opt.backend = fs_backend::exact;
  opt.radius = radius;
  opt.tol = tol;
  free_space_diagram fsd(Q, P, opt);
  return reach_cover(fsd, 0.0, 1.0);
}

bool verify_full_coverage(const std::vector<polygonal_curve>& centers, const polygonal_curve& P,
                          double radius, double gap_tol, interval_set* out_union) {
  interval_set u;
  for (const auto& c : centers) u = u.unite(curve_coverage(c, P, radius));
  u.normalize(gap_tol * 0.5);
  if (out_union) *out_union = u;
  interval_set gaps = u.complement(0.0, 1.0);
  for (const auto& g : gaps.parts())
    if (g.length() > gap_tol) return false;
  return true;
}

}  // namespace subtraj
