#include "subtraj/cover_structs.hpp"

#include <algorithm>
#include <random>

namespace subtraj {

// ---------------------------------------------------------------------------
// atomic_store

namespace {

std::vector<double> boundary_midpoints(const std::vector<double>& boundaries) {
  std::vector<double> mids;
  mids.reserve(boundaries.size());
  for (std::size_t k = 0; k + 1 < boundaries.size(); ++k)
    mids.push_back(0.5 * (boundaries[k] + boundaries[k + 1]));
  return mids;
}

}  // namespace

atomic_store::atomic_store(std::vector<double> boundaries)
    : atomic_store(boundary_midpoints(boundaries), from_midpoints_tag{}) {}

atomic_store::atomic_store(std::vector<double> midpoints, from_midpoints_tag)
    : mid_(std::move(midpoints)) {
  alive_.assign(mid_.size(), 1);
  counts_ = fenwick(static_cast<int>(mid_.size()));
  for (int k = 0; k < static_cast<int>(mid_.size()); ++k) counts_.add(k, 1);
  skip_ = skip_list(static_cast<int>(mid_.size()));
  alive_total_ = static_cast<long long>(mid_.size());
}

int atomic_store::first_index_geq(double x) const {
  return static_cast<int>(std::lower_bound(mid_.begin(), mid_.end(), x) - mid_.begin());
}

long long atomic_store::count_alive(double lo, double hi) const {
  int a = first_index_geq(lo);
  int b = static_cast<int>(std::upper_bound(mid_.begin(), mid_.end(), hi) - mid_.begin());
  return counts_.range(a, b);
}

void atomic_store::cover_range(double lo, double hi, std::vector<int>* out) {
  int a = first_index_geq(lo);
  int b = static_cast<int>(std::upper_bound(mid_.begin(), mid_.end(), hi) - mid_.begin());
  for (int k = skip_.next(a); k < b; k = skip_.next(k + 1)) {
    if (!alive_[k]) continue;
    alive_[k] = 0;
    counts_.add(k, -1);
    skip_.kill(k);
    --alive_total_;
    if (out) out->push_back(k);
  }
}

interval_set atomic_store::alive_union() const {
  interval_set s;
  for (int k = 0; k < size(); ++k)
    if (alive_[k]) s.add(mid_[k], mid_[k]);
  s.normalize();
  return s;
}

// ---------------------------------------------------------------------------
// molecular_store

molecular_store::molecular_store(std::vector<double> boundaries, const atomic_store& atoms)
    : bnd_(std::move(boundaries)) {
  const int m = std::max<int>(0, static_cast<int>(bnd_.size()) - 1);
  weights_.assign(m, 0);
  for (int k = 0; k < m; ++k) {
    weights_[k] = atoms.count_alive(bnd_[k], bnd_[k + 1]);
    total_ += weights_[k];
  }
  skip_ = skip_list(m);
  for (int k = 0; k < m; ++k)
    if (weights_[k] == 0) skip_.kill(k);
}

int molecular_store::locate(double x) const {
  int k = static_cast<int>(std::upper_bound(bnd_.begin(), bnd_.end(), x) - bnd_.begin()) - 1;
  return std::clamp(k, 0, size() - 1);
}

void molecular_store::cover_range(double a, double b, const atomic_store& atoms,
                                  std::vector<std::pair<int, long long>>* deltas) {
  if (size() == 0 || b < bnd_.front() || a > bnd_.back()) return;
  int ka = locate(a), kb = locate(b);
  auto recount = [&](int k) {
    long long neww = atoms.count_alive(bnd_[k], bnd_[k + 1]);
    long long d = weights_[k] - neww;
    if (d != 0) {
      weights_[k] = neww;
      total_ -= d;
      if (neww == 0) skip_.kill(k);
      if (deltas) deltas->push_back({k, d});
    }
  };
  if (ka == kb) {
    recount(ka);
    return;
  }
  recount(ka);
  recount(kb);
  for (int k = skip_.next(ka + 1); k < kb; k = skip_.next(k + 1)) {
    if (weights_[k] == 0) continue;
    long long d = weights_[k];
    // interior intervals are fully covered by [a, b]
    weights_[k] = 0;
    total_ -= d;
    skip_.kill(k);
    if (deltas) deltas->push_back({k, d});
  }
}

// ---------------------------------------------------------------------------
// sparse_molecular

sparse_molecular::sparse_molecular(std::vector<interval> pieces, const atomic_store& atoms)
    : pieces_(std::move(pieces)) {
  const int m = static_cast<int>(pieces_.size());
  weights_.assign(m, 0);
  for (int k = 0; k < m; ++k) weights_[k] = atoms.count_alive(pieces_[k].lo, pieces_[k].hi);
  skip_ = skip_list(m);
  for (int k = 0; k < m; ++k)
    if (weights_[k] == 0) skip_.kill(k);
}

void sparse_molecular::cover_range(double a, double b, const atomic_store& atoms,
                                   std::vector<std::pair<int, long long>>* deltas) {
  if (pieces_.empty()) return;
  int ka = static_cast<int>(std::upper_bound(pieces_.begin(), pieces_.end(), a,
                                             [](double v, const interval& p) { return v < p.hi; }) -
                            pieces_.begin());
  if (ka >= size()) return;
  auto recount = [&](int k) {
    if (weights_[k] == 0) return;
    long long neww = atoms.count_alive(pieces_[k].lo, pieces_[k].hi);
    long long d = weights_[k] - neww;
    if (d != 0) {
      weights_[k] = neww;
      if (neww == 0) skip_.kill(k);
      if (deltas) deltas->push_back({k, d});
    }
  };
  for (int k = skip_.next(ka); k < size() && pieces_[k].lo <= b; k = skip_.next(k + 1)) {
    if (weights_[k] == 0) continue;
    recount(k);
  }
}

// ---------------------------------------------------------------------------
// measure_solution (treap keyed by interval start, subtree length sums)

struct measure_solution::node {
  double lo, hi;
  double len_sum;
  std::uint64_t prio;
  node* l = nullptr;
  node* r = nullptr;
};

namespace {

double len_of(measure_solution::node* n) { return n ? n->len_sum : 0.0; }

void pull(measure_solution::node* n) {
  n->len_sum = (n->hi - n->lo) + len_of(n->l) + len_of(n->r);
}

std::uint64_t rng_next() {
  static std::mt19937_64 rng(0x5eedu);
  return rng();
}

// split by start < key
void split(measure_solution::node* t, double key, measure_solution::node*& a,
           measure_solution::node*& b) {
  if (!t) {
    a = b = nullptr;
    return;
  }
  if (t->lo < key) {
    split(t->r, key, t->r, b);
    a = t;
    pull(a);
  } else {
    split(t->l, key, a, t->l);
    b = t;
    pull(b);
  }
}

measure_solution::node* merge(measure_solution::node* a, measure_solution::node* b) {
  if (!a) return b;
  if (!b) return a;
  if (a->prio > b->prio) {
    a->r = merge(a->r, b);
    pull(a);
    return a;
  }
  b->l = merge(a, b->l);
  pull(b);
  return b;
}

void free_tree(measure_solution::node* n) {
  if (!n) return;
  free_tree(n->l);
  free_tree(n->r);
  delete n;
}

double covered_below(measure_solution::node* t, double x) {
  // total length of (parts clipped to (-inf, x])
  double s = 0.0;
  while (t) {
    if (t->lo >= x) {
      t = t->l;
    } else {
      s += len_of(t->l) + std::min(t->hi, x) - t->lo;
      t = t->r;
    }
  }
  return s;
}

void collect(measure_solution::node* t, std::vector<interval>& out) {
  if (!t) return;
  collect(t->l, out);
  out.push_back({t->lo, t->hi});
  collect(t->r, out);
}

}  // namespace

measure_solution::~measure_solution() { free_tree(root_); }

void measure_solution::insert(double lo, double hi) {
  if (hi <= lo) return;
  node* n = new node{lo, hi, hi - lo, rng_next(), nullptr, nullptr};
  node *a, *b;
  split(root_, lo, a, b);
  root_ = merge(merge(a, n), b);
}

void measure_solution::erase(double lo) {
  node *a, *b, *c;
  split(root_, lo, a, b);
  split(b, std::nextafter(lo, kInf), b, c);
  free_tree(b);
  root_ = merge(a, c);
}

double measure_solution::covered_length(double lo, double hi) const {
  return covered_below(root_, hi) - covered_below(root_, lo);
}

double measure_solution::total_covered() const { return len_of(root_); }

std::vector<interval> measure_solution::to_intervals() const {
  std::vector<interval> out;
  collect(root_, out);
  return out;
}

std::vector<interval> measure_solution::uncovered_parts(double lo, double hi) const {
  std::vector<interval> all = to_intervals();
  interval_set s;
  for (const auto& p : all) s.add(p.lo, p.hi);
  s.normalize();
  interval_set c = s.complement(lo, hi);
  return c.parts();
}

}  // namespace subtraj
