#pragma once

#include "subtraj/freespace.hpp"
#include "subtraj/reach.hpp"

// Brute-force references used by the test suites. Deterministic given a seed
// and a resolution; never part of the solve path.

namespace subtraj::oracle {

struct grid_options {
  int rho = 256;       // subdivisions per cell
  int rho_max = 2048;  // automatic doubling limit for agreement checks
};

/// Monotone grid reachability over the free space of S x P at `radius`,
/// anchored at heights s <= t (global parameters of S). Returns the union of
/// [a, c] admitting a right/up staircase from (a, s) to (c, t).
interval_set grid_cov(const polygonal_curve& S, const polygonal_curve& P, double radius, double s,
                      double t, int rho);

/// Hausdorff distance between two unions of intervals (as subsets of [0,1]);
/// empty sets are at distance 0 from empty and 1 from anything else.
double interval_hausdorff(const interval_set& a, const interval_set& b);

/// Exact minimum set cover size over explicit coverage footprints (bitsets
/// over a deduplicated ground set). Throws if the instance is too large.
int brute_setcover(const std::vector<std::vector<int>>& sets, int ground_size);

/// Exact max over k-subsets of the Lebesgue measure of the union.
double brute_best_k_measure(const std::vector<interval_set>& cov, int k);

/// Discrete dynamic-program decision on densely sampled curves; used as a
/// sandwich oracle around the continuous decision procedure.
bool decide_frechet_sampled(const polygonal_curve& P, const polygonal_curve& Q, double delta,
                            int samples_per_edge);

}  // namespace subtraj::oracle
