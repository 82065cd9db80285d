#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace subtraj {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Numeric knobs shared across the geometry stack. All boundary-membership
/// comparisons use `geom`; `dedup` merges near-identical arrangement values.
struct tolerances {
  double geom = 1e-9;
  double dedup = 1e-9;
};

using point = std::vector<double>;

inline double dot(const point& a, const point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline point sub(const point& a, const point& b) {
  point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline point add(const point& a, const point& b) {
  point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline point scale(const point& a, double c) {
  point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

inline double norm2(const point& a) { return dot(a, a); }
inline double norm(const point& a) { return std::sqrt(norm2(a)); }
inline double dist(const point& a, const point& b) { return norm(sub(a, b)); }

inline point lerp(const point& a, const point& b, double t) {
  point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

struct subtraj_error : std::runtime_error {
  explicit subtraj_error(const std::string& what) : std::runtime_error(what) {}
};

/// Closed interval. Degenerate (lo == hi) intervals are allowed.
struct interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Sorted union of pairwise disjoint closed intervals over the real line.
/// Touching intervals are merged on normalization.
class interval_set {
 public:
  interval_set() = default;
  explicit interval_set(std::vector<interval> parts) : parts_(std::move(parts)) { normalize(); }

  static interval_set single(double lo, double hi) {
    return interval_set(std::vector<interval>{{lo, hi}});
  }

  void add(double lo, double hi) {
    if (hi < lo) return;
    parts_.push_back({lo, hi});
    dirty_ = true;
  }

  void normalize(double merge_tol = 0.0);

  const std::vector<interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  double measure() const {
    double s = 0.0;
    for (const auto& p : parts_) s += p.length();
    return s;
  }

  bool contains(double x, double tol = 0.0) const;

  /// True iff every point of *this lies within `tol` of some part of `other`.
  bool subset_of(const interval_set& other, double tol) const;

  interval_set unite(const interval_set& other) const;
  interval_set intersect(const interval_set& other) const;

  /// Complement within [lo, hi].
  interval_set complement(double lo, double hi) const;

 private:
  std::vector<interval> parts_;
  bool dirty_ = false;
};

}  // namespace subtraj
