#pragma once

#include "subtraj/sweep.hpp"

namespace subtraj {

struct weighted_point {
  double x;
  long long w;
};

/// Per-window total weight of the points inside the window's proxy coverage,
/// for every window of the sequence. Points must be sorted by x. Runs in
/// O((|Q| + n) log n + positions).
std::vector<long long> batch_point_query(const fs_strip& strip, const sweep_sequence& seq,
                                         const sweep_pass& pass,
                                         const std::vector<weighted_point>& Q);

}  // namespace subtraj
