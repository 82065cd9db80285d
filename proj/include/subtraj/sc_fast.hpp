#pragma once

#include "subtraj/sc.hpp"

namespace subtraj {

/// One x- and y-monotone piece of a cell's free-space boundary, exposing its
/// values at the strip's entry heights as an implicitly sorted list.
struct boundary_arc {
  const fs_strip* strip = nullptr;
  int cell = 0;
  bool left_chain = true;  // values from l (true) or r (false)
  int e_lo = 0, e_hi = -1;  // entry-index range, inclusive
  bool increasing = true;   // value order along increasing entry index

  long long size() const { return e_hi - e_lo + 1; }
  double value_at_entry(int h) const {
    return left_chain ? strip->left_at_entry(cell, h) : strip->right_at_entry(cell, h);
  }
  double item(long long j) const {  // j-th smallest
    int h = increasing ? e_lo + static_cast<int>(j) : e_hi - static_cast<int>(j);
    return value_at_entry(h);
  }
  long long rank_below(double v) const;  // # items with value < v
};

/// The four arcs of every non-empty cell of one strip.
std::vector<boundary_arc> strip_arcs(const fs_strip& strip);

/// Rank-selection over implicitly sorted lists: O(K)-ish split values such
/// that every bucket holds at most ~(total/K) elements. Boundaries include
/// the global minimum and maximum.
template <typename List>
std::vector<double> rank_select_coarsen(const std::vector<List>& lists, long long K);

/// alpha-coarse boundaries over the atomic arrangement of the instance,
/// computed from the implicit per-edge boundary arcs. Returns sorted values
/// including 0 and 1.
std::vector<double> alpha_coarse(const cover_engine& eng, double alpha);

struct uncovered_output {
  std::vector<double> midpoints;                 // uncovered atomic midpoints
  std::vector<std::vector<interval>> edge_pieces;  // per edge: clipped molecular pieces
};

/// Output-sensitive extraction of the atomic midpoints outside `covered` and
/// of the per-edge molecular pieces overlapping the uncovered region.
uncovered_output uncovered_extract(const cover_engine& eng, const interval_set& covered);

/// Subtrajectory covering in subcubic time: coarse first pass, output-
/// sensitive second pass, doubling the solution-size guess K on cap overruns.
cover_solution cover_a_fast(const polygonal_curve& P, double delta, int ell,
                            const tolerances& tol = {},
                            simplifier_kind simp = simplifier_kind::greedy);

}  // namespace subtraj
