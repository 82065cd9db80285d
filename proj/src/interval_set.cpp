#include "subtraj/core.hpp"

#include <algorithm>

namespace subtraj {

void interval_set::normalize(double merge_tol) {
  if (!dirty_ && merge_tol == 0.0 && std::is_sorted(parts_.begin(), parts_.end(),
                                                    [](const interval& a, const interval& b) {
                                                      return a.lo < b.lo;
                                                    }))
    ;
  std::sort(parts_.begin(), parts_.end(),
            [](const interval& a, const interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  std::vector<interval> out;
  for (const auto& p : parts_) {
    if (p.hi < p.lo) continue;
    if (!out.empty() && p.lo <= out.back().hi + merge_tol) {
      out.back().hi = std::max(out.back().hi, p.hi);
    } else {
      out.push_back(p);
    }
  }
  parts_ = std::move(out);
  dirty_ = false;
}

bool interval_set::contains(double x, double tol) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const interval& p) { return v < p.lo; });
  if (it != parts_.begin()) {
    --it;
    if (x <= it->hi + tol && x >= it->lo - tol) return true;
  }
  if (it + 1 != parts_.end() && x >= (it + 1)->lo - tol) return true;
  return false;
}

bool interval_set::subset_of(const interval_set& other, double tol) const {
  for (const auto& p : parts_) {
    // Every part must be covered by consecutive parts of `other` with gaps <= tol.
    double cursor = p.lo;
    bool progressed = true;
    while (cursor < p.hi - tol && progressed) {
      progressed = false;
      for (const auto& q : other.parts_) {
        if (q.lo - tol <= cursor && q.hi > cursor) {
          cursor = q.hi;
          progressed = true;
        }
      }
    }
    if (cursor < p.hi - tol) return false;
  }
  return true;
}

interval_set interval_set::unite(const interval_set& other) const {
  interval_set r;
  r.parts_ = parts_;
  r.parts_.insert(r.parts_.end(), other.parts_.begin(), other.parts_.end());
  r.dirty_ = true;
  r.normalize();
  return r;
}

interval_set interval_set::intersect(const interval_set& other) const {
  interval_set r;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const interval& a = parts_[i];
    const interval& b = other.parts_[j];
    double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo <= hi) r.parts_.push_back({lo, hi});
    if (a.hi < b.hi)
      ++i;
    else
      ++j;
  }
  return r;
}

interval_set interval_set::complement(double lo, double hi) const {
  interval_set r;
  double cursor = lo;
  for (const auto& p : parts_) {
    if (p.hi < lo) continue;
    if (p.lo > hi) break;
    if (p.lo > cursor) r.parts_.push_back({cursor, std::min(p.lo, hi)});
    cursor = std::max(cursor, p.hi);
  }
  if (cursor < hi) r.parts_.push_back({cursor, hi});
  return r;
}

}  // namespace subtraj
