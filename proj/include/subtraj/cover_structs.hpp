#pragma once

#include "subtraj/core.hpp"

namespace subtraj {

class fenwick {
 public:
  fenwick() = default;
  explicit fenwick(int n) : n_(n), t_(n + 1, 0) {}
  void add(int i, long long d) {
    for (++i; i <= n_; i += i & -i) t_[i] += d;
  }
  long long prefix(int i) const {  // sum of [0, i)
    long long s = 0;
    for (; i > 0; i -= i & -i) s += t_[i];
    return s;
  }
  long long range(int lo, int hi) const {  // [lo, hi)
    if (hi <= lo) return 0;
    return prefix(hi) - prefix(lo);
  }

 private:
  int n_ = 0;
  std::vector<long long> t_;
};

/// Union-find successor structure: next index >= i that is still live.
class skip_list {
 public:
  skip_list() = default;
  explicit skip_list(int n) : next_(n + 1) {
    for (int i = 0; i <= n; ++i) next_[i] = i;
  }
  int next(int i) {
    if (i >= static_cast<int>(next_.size())) return static_cast<int>(next_.size()) - 1;
    if (next_[i] == i) return i;
    return next_[i] = next(next_[i]);
  }
  void kill(int i) { next_[i] = i + 1; }

 private:
  std::vector<int> next_;
};

/// The discretized ground set: arrangement boundaries over [0,1], their
/// midpoints, and the alive/covered bookkeeping of the greedy loop.
class atomic_store {
 public:
  atomic_store() = default;
  /// boundaries: sorted, deduplicated, including 0 and 1.
  explicit atomic_store(std::vector<double> boundaries);
  struct from_midpoints_tag {};
  atomic_store(std::vector<double> midpoints, from_midpoints_tag);

  int size() const { return static_cast<int>(mid_.size()); }
  long long alive_total() const { return alive_total_; }
  const std::vector<double>& midpoints() const { return mid_; }
  double midpoint(int k) const { return mid_[k]; }
  bool alive(int k) const { return alive_[k]; }

  /// number of alive midpoints with value in [lo, hi]
  long long count_alive(double lo, double hi) const;

  /// kill all alive midpoints in [lo, hi]; reports them through `out`
  void cover_range(double lo, double hi, std::vector<int>* out);

  int first_index_geq(double x) const;  // over midpoints

  /// uncovered part of [0,1] as intervals of dead/alive runs
  interval_set alive_union() const;

 private:
  std::vector<double> mid_;
  std::vector<char> alive_;
  fenwick counts_;
  skip_list skip_;
  long long alive_total_ = 0;
};

/// Per-edge coarsening: the arrangement of one edge's boundary values with
/// the number of alive atomic midpoints inside each interval.
class molecular_store {
 public:
  molecular_store() = default;
  molecular_store(std::vector<double> boundaries, const atomic_store& atoms);

  int size() const { return static_cast<int>(weights_.size()); }
  double lo(int k) const { return bnd_[k]; }
  double hi(int k) const { return bnd_[k + 1]; }
  double mid(int k) const { return 0.5 * (bnd_[k] + bnd_[k + 1]); }
  long long weight(int k) const { return weights_[k]; }
  long long total_weight() const { return total_; }

  /// Apply coverage of [a, b]: fully contained intervals drop to zero, the two
  /// straddling ones are recounted against `atoms` (call after atoms.cover_range).
  /// Deltas (interval index, lost weight) are appended to `deltas`.
  void cover_range(double a, double b, const atomic_store& atoms,
                   std::vector<std::pair<int, long long>>* deltas);

  /// index of the molecular interval containing x
  int locate(double x) const;

 private:
  std::vector<double> bnd_;
  std::vector<long long> weights_;
  skip_list skip_;  // skips zero-weight intervals
  long long total_ = 0;
};

/// Sparse per-edge coarsening for the output-sensitive second pass: explicit
/// (lo, hi) pieces of molecular intervals, each weighted by the alive atomic
/// midpoints inside.
class sparse_molecular {
 public:
  sparse_molecular() = default;
  /// pieces must be sorted by lo and pairwise disjoint (touching allowed)
  sparse_molecular(std::vector<interval> pieces, const atomic_store& atoms);

  int size() const { return static_cast<int>(weights_.size()); }
  double lo(int k) const { return pieces_[k].lo; }
  double hi(int k) const { return pieces_[k].hi; }
  double mid(int k) const { return 0.5 * (pieces_[k].lo + pieces_[k].hi); }
  long long weight(int k) const { return weights_[k]; }
  void cover_range(double a, double b, const atomic_store& atoms,
                   std::vector<std::pair<int, long long>>* deltas);

 private:
  std::vector<interval> pieces_;
  std::vector<long long> weights_;
  skip_list skip_;
};

/// Disjoint intervals with subtree length sums (treap), for Lebesgue-measure
/// residual queries. Intervals are kept disjoint by the caller contract: add
/// only parts that do not overlap the current union.
class measure_solution {
 public:
  measure_solution() = default;
  ~measure_solution();
  measure_solution(const measure_solution&) = delete;
  measure_solution& operator=(const measure_solution&) = delete;

  void insert(double lo, double hi);     // must not overlap existing parts
  void erase(double lo);                 // erase the interval starting at lo
  double covered_length(double lo, double hi) const;
  double residual(double lo, double hi) const {
    return (hi - lo) - covered_length(lo, hi);
  }
  double total_covered() const;
  std::vector<interval> to_intervals() const;

  /// parts of [lo, hi] not covered yet (used to insert disjointly)
  std::vector<interval> uncovered_parts(double lo, double hi) const;

 private:
  struct node;
  node* root_ = nullptr;
};

}  // namespace subtraj
