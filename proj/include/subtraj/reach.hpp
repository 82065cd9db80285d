#pragma once

#include "subtraj/freespace.hpp"

namespace subtraj {

/// Reachability state on a horizontal line of the parametric space: disjoint
/// components of reachable points, each with a non-increasing step function
/// "smallest start abscissa whose monotone path reaches x or further left".
struct line_state {
  struct component {
    double lo, hi;                       // reachable x-range (global)
    std::vector<std::pair<double, double>> minsrc;  // (x_from, src), src decreasing
    double src_at(double x) const {
      double v = kInf;
      for (const auto& s : minsrc) {
        if (s.first <= x + 1e-15) v = std::min(v, s.second);
      }
      return v;
    }
  };
  std::vector<component> comps;
  bool empty() const { return comps.empty(); }
};

/// All points of the free slice at height y become sources.
line_state line_sources(const fs_strip& strip, double y);
line_state line_sources(const std::vector<interval>& interface_line);

/// Propagate a line state through one strip from local height y_from to
/// y_to (0 <= y_from <= y_to <= 1). Wall crossings are restricted to
/// [y_from, y_to].
line_state propagate_strip(const fs_strip& strip, double y_from, double y_to,
                           const line_state& in);

/// Union of all [a, c] admitting a monotone path from (a, s) to (c, t) in the
/// single-strip free space; heights are local to the strip.
interval_set reach_cover_strip(const fs_strip& strip, double s, double t);

/// Same over the whole diagram; s and t are global parameters of S.
interval_set reach_cover(const free_space_diagram& fsd, double s, double t);

/// Cov_P(Q, radius): coverage of a whole center curve against P, computed from
/// a fresh exact free space of Q and P. Independent of the sweep machinery;
/// used by the verification pass.
interval_set curve_coverage(const polygonal_curve& Q, const polygonal_curve& P, double radius,
                            const tolerances& tol = {});

/// True iff the union of the centers' coverages at `radius` leaves no gap of
/// length > gap_tol in [0,1].
bool verify_full_coverage(const std::vector<polygonal_curve>& centers, const polygonal_curve& P,
                          double radius, double gap_tol, interval_set* out_union = nullptr);

}  // namespace subtraj
