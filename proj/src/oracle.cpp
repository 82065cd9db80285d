#include "subtraj/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace subtraj::oracle {

interval_set grid_cov(const polygonal_curve& S, const polygonal_curve& P, double radius, double s,
                      double t, int rho) {
  const int nx = static_cast<int>(P.num_edges()) * rho + 1;
  const double ylen = t - s;
  int ny = std::max(2, static_cast<int>(std::ceil(ylen * S.num_edges() * rho)) + 1);
  std::vector<double> xs(nx), ys(ny);
  for (int i = 0; i < nx; ++i) xs[i] = static_cast<double>(i) / (nx - 1);
  for (int j = 0; j < ny; ++j) ys[j] = s + ylen * j / (ny - 1);

  std::vector<point> px(nx), qy(ny);
  for (int i = 0; i < nx; ++i) px[i] = P.eval_global(xs[i]);
  for (int j = 0; j < ny; ++j) qy[j] = S.eval_global(ys[j]);

  const double r2 = radius * radius;
  std::vector<double> cur(nx, kInf), nxt(nx, kInf);
  // minsrc DP: bottom row sources are their own abscissae.
  for (int i = 0; i < nx; ++i) {
    bool free = norm2(sub(px[i], qy[0])) <= r2 + 1e-15;
    cur[i] = free ? xs[i] : kInf;
  }
  for (int i = 1; i < nx; ++i)
    if (cur[i] != kInf && cur[i - 1] != kInf) cur[i] = std::min(cur[i], cur[i - 1]);
  for (int j = 1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      bool free = norm2(sub(px[i], qy[j])) <= r2 + 1e-15;
      if (!free) {
        nxt[i] = kInf;
        continue;
      }
      double v = cur[i];  // up
      if (i > 0) {
        v = std::min(v, nxt[i - 1]);            // right
        v = std::min(v, cur[i - 1]);            // diagonal
      }
      nxt[i] = v;
    }
    cur.swap(nxt);
  }
  interval_set cov;
  for (int i = 0; i < nx; ++i)
    if (cur[i] != kInf) cov.add(cur[i], xs[i]);
  cov.normalize(1.5 / ((nx - 1)));
  return cov;
}

double interval_hausdorff(const interval_set& a, const interval_set& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 1.0;
  auto one_sided = [](const interval_set& from, const interval_set& to) {
    double worst = 0.0;
    for (const auto& p : from.parts()) {
      for (double x : {p.lo, p.hi, 0.5 * (p.lo + p.hi)}) {
        double best = kInf;
        for (const auto& q : to.parts()) {
          if (x < q.lo)
            best = std::min(best, q.lo - x);
          else if (x > q.hi)
            best = std::min(best, x - q.hi);
          else
            best = 0.0;
        }
        worst = std::max(worst, best);
      }
      // endpoints dominate interior points for interval unions, but sample a
      // few interior points of `from` to be safe with nested gaps in `to`
      for (int k = 1; k <= 8; ++k) {
        double x = p.lo + (p.hi - p.lo) * k / 9.0;
        double best = kInf;
        for (const auto& q : to.parts()) {
          if (x < q.lo)
            best = std::min(best, q.lo - x);
          else if (x > q.hi)
            best = std::min(best, x - q.hi);
          else
            best = 0.0;
        }
        worst = std::max(worst, best);
      }
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

namespace {

void setcover_search(const std::vector<std::uint64_t>& masks, std::uint64_t universe,
                     std::uint64_t covered, int chosen, int& best) {
  if (chosen >= best) return;
  if ((covered & universe) == universe) {
    best = chosen;
    return;
  }
  // pick the lowest uncovered element, branch on sets containing it
  std::uint64_t uncovered = universe & ~covered;
  int bit = std::countr_zero(uncovered);
  for (const auto& m : masks) {
    if (m & (1ULL << bit)) setcover_search(masks, universe, covered | m, chosen + 1, best);
  }
}

}  // namespace

int brute_setcover(const std::vector<std::vector<int>>& sets, int ground_size) {
  if (ground_size > 60) throw subtraj_error("brute_setcover: ground set too large");
  std::uint64_t universe = ground_size == 0 ? 0 : ((ground_size == 64) ? ~0ULL : ((1ULL << ground_size) - 1));
  std::vector<std::uint64_t> masks;
  masks.reserve(sets.size());
  for (const auto& s : sets) {
    std::uint64_t m = 0;
    for (int e : s) m |= (1ULL << e);
    masks.push_back(m);
  }
  // drop dominated footprints
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<std::uint64_t> maximal;
  for (const auto& m : masks) {
    bool dominated = false;
    for (const auto& o : masks)
      if (o != m && (m & o) == m) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(m);
  }
  if (maximal.size() > 24) throw subtraj_error("brute_setcover: too many distinct footprints");
  std::uint64_t all = 0;
  for (const auto& m : maximal) all |= m;
  if ((all & universe) != universe) return -1;  // uncoverable
  int best = static_cast<int>(maximal.size()) + 1;
  setcover_search(maximal, universe, 0, 0, best);
  return best;
}

double brute_best_k_measure(const std::vector<interval_set>& cov, int k) {
  const int n = static_cast<int>(cov.size());
  k = std::min(k, n);
  std::vector<int> idx(k);
  double best = 0.0;
  // enumerate k-subsets
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  if (k == 0) return 0.0;
  while (true) {
    interval_set u;
    for (int i : comb) u = u.unite(cov[i]);
    best = std::max(best, u.measure());
    int pos = k - 1;
    while (pos >= 0 && comb[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++comb[pos];
    for (int i = pos + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
  }
  return best;
}

bool decide_frechet_sampled(const polygonal_curve& P, const polygonal_curve& Q, double delta,
                            int samples_per_edge) {
  const int n = static_cast<int>(P.num_edges()) * samples_per_edge + 1;
  const int m = static_cast<int>(Q.num_edges()) * samples_per_edge + 1;
  std::vector<point> ps(n), qs(m);
  for (int i = 0; i < n; ++i) ps[i] = P.eval_global(static_cast<double>(i) / (n - 1));
  for (int j = 0; j < m; ++j) qs[j] = Q.eval_global(static_cast<double>(j) / (m - 1));
  const double d2 = delta * delta;
  std::vector<std::uint8_t> cur(n, 0), nxt(n, 0);
  cur[0] = norm2(sub(ps[0], qs[0])) <= d2;
  for (int i = 1; i < n; ++i) cur[i] = cur[i - 1] && norm2(sub(ps[i], qs[0])) <= d2;
  for (int j = 1; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      bool free = norm2(sub(ps[i], qs[j])) <= d2;
      bool reach = false;
      if (free) {
        reach = cur[i] || (i > 0 && (nxt[i - 1] || cur[i - 1]));
      }
      nxt[i] = reach;
    }
    cur.swap(nxt);
  }
  return cur[n - 1];
}

}  // namespace subtraj::oracle
