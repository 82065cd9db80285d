#include "subtraj/point_query.hpp"

#include <algorithm>
#include <cmath>

namespace subtraj {

namespace {

template <typename F>
int first_true(int lo, int hi, F pred) {
  int res = hi + 1;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (pred(mid)) {
      res = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  return res;
}

template <typename F>
int last_true(int lo, int hi, F pred) {
  int res = lo - 1;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (pred(mid)) {
      res = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return res;
}

pos_range isect(pos_range a, pos_range b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// a \ b: up to two pieces
void subtract(pos_range a, pos_range b, std::vector<pos_range>& out) {
  if (a.empty()) return;
  if (b.empty() || b.hi < a.lo || b.lo > a.hi) {
    out.push_back(a);
    return;
  }
  if (a.lo < b.lo) out.push_back({a.lo, b.lo - 1});
  if (b.hi < a.hi) out.push_back({b.hi + 1, a.hi});
}

}  // namespace

std::vector<long long> batch_point_query(const fs_strip& strip, const sweep_sequence& seq,
                                         const sweep_pass& pass,
                                         const std::vector<weighted_point>& Q) {
  const int P = static_cast<int>(seq.windows.size());
  const int N = strip.cells();
  std::vector<long long> result(P, 0);

  // D(i, j): prefix sums of per-cell weights.
  std::vector<long long> cellw(N + 1, 0);
  auto cell_of = [&](double x) {
    int c = static_cast<int>(std::floor(x * N));
    return std::clamp(c, 0, N - 1);
  };
  for (const auto& q : Q) cellw[cell_of(q.x) + 1] += q.w;
  for (int i = 0; i < N; ++i) cellw[i + 1] += cellw[i];
  auto D = [&](int i, int j) -> long long {  // inclusive cell range, empty ok
    if (j < i) return 0;
    return cellw[j + 1] - cellw[i];
  };

  auto spos = [&](int p) { return seq.windows[p].first; };
  auto tpos = [&](int p) { return seq.windows[p].second; };

  // Accumulator deltas bucketed by position.
  struct delta {
    int cell;
    std::int8_t kind;  // 0 = L, 1 = R, 2 = M
    long long w;
  };
  std::vector<std::vector<delta>> act(P), deact(P);

  auto add_piece = [&](pos_range r, int cell, int kind, long long w) {
    if (r.empty()) return;
    act[r.hi].push_back({cell, static_cast<std::int8_t>(kind), w});
    deact[r.lo].push_back({cell, static_cast<std::int8_t>(kind), w});
  };

  for (const auto& q : Q) {
    int c = cell_of(q.x);
    if (strip.cell_empty(c)) continue;
    const cell_features& f = strip.features(c);
    int be = strip.bot_entry(c), te = strip.top_entry(c);

    auto coord_ranges = [&](auto pos_of) {
      pos_range alive;
      alive.lo = first_true(0, P - 1, [&](int p) { return pos_of(p) >= be; });
      alive.hi = last_true(0, P - 1, [&](int p) { return pos_of(p) <= te; });
      return alive;
    };
    pos_range s_alive = coord_ranges(spos);
    pos_range t_alive = coord_ranges(tpos);

    // Contiguous sublevel/superlevel ranges on a monotone coordinate.
    auto level_range = [&](pos_range dom, auto val, bool sublevel, double pivot_y_lo) {
      pos_range r{1, 0};
      if (dom.empty()) return r;
      // pivot: first position whose height reaches the extremum band
      int piv = first_true(dom.lo, dom.hi, [&](int p) { return val(p).first >= pivot_y_lo; });
      piv = std::clamp(piv, dom.lo, dom.hi);
      auto pred = [&](int p) {
        double v = val(p).second;
        return sublevel ? v <= q.x : v >= q.x;
      };
      if (!pred(piv)) {
        // the extremum may sit just before the pivot position
        if (piv > dom.lo && pred(piv - 1))
          piv = piv - 1;
        else
          return r;
      }
      r.lo = first_true(dom.lo, piv, pred);
      r.hi = last_true(piv, dom.hi, pred);
      return r;
    };

    auto lval_s = [&](int p) {
      return std::pair<double, double>(strip.entry_y(spos(p)), strip.left_at_entry(c, spos(p)));
    };
    auto rval_s = [&](int p) {
      return std::pair<double, double>(strip.entry_y(spos(p)), strip.right_at_entry(c, spos(p)));
    };
    auto lval_t = [&](int p) {
      return std::pair<double, double>(strip.entry_y(tpos(p)), strip.left_at_entry(c, tpos(p)));
    };
    auto rval_t = [&](int p) {
      return std::pair<double, double>(strip.entry_y(tpos(p)), strip.right_at_entry(c, tpos(p)));
    };

    pos_range SL = level_range(s_alive, lval_s, true, f.ylft_lo);
    pos_range SR = level_range(s_alive, rval_s, false, f.yrgt_lo);
    pos_range TL = level_range(t_alive, lval_t, true, f.ylft_lo);
    pos_range TR = level_range(t_alive, rval_t, false, f.yrgt_lo);
    pos_range B = pass.bad_windows[c];

    std::vector<pos_range> pieces;
    // L accumulator: good windows with l <= q, bad windows with r(s) <= q.
    subtract(SL, B, pieces);
    for (const auto& r : pieces) add_piece(r, c, 0, q.w);
    pieces.clear();
    {
      std::vector<pos_range> nr;
      subtract(s_alive, SR, nr);
      for (const auto& r : nr) {
        pos_range rb = isect(r, B);
        add_piece(rb, c, 0, q.w);
      }
    }
    // R accumulator: good windows with r(t) >= q, bad windows with l(t) >= q.
    subtract(TR, B, pieces);
    for (const auto& r : pieces) add_piece(r, c, 1, q.w);
    pieces.clear();
    {
      std::vector<pos_range> nr;
      subtract(t_alive, TL, nr);
      for (const auto& r : nr) {
        pos_range rb = isect(r, B);
        add_piece(rb, c, 1, q.w);
      }
    }
    // M accumulator: good windows with l(s) <= q <= r(t).
    subtract(isect(SL, TR), B, pieces);
    for (const auto& r : pieces) add_piece(r, c, 2, q.w);
    pieces.clear();
  }

  // Element schedule.
  std::vector<std::vector<int>> el_add(P), el_rem(P);
  for (int e = 0; e < static_cast<int>(pass.elements.size()); ++e) {
    el_add[pass.elements[e].p_hi].push_back(e);
    el_rem[pass.elements[e].p_lo].push_back(e);
  }

  std::vector<long long> L(N, 0), R(N, 0), M(N, 0);
  std::vector<int> leftc(N, 0), rightc(N, 0), localc(N, 0);
  long long total = 0;

  auto elem_term = [&](const sweep_element& el) -> long long {
    if (el.local) return M[el.i];
    return L[el.i] + D(el.i + 1, el.j - 1) + R[el.j];
  };

  for (int p = P - 1; p >= 0; --p) {
    for (const auto& d : act[p]) {
      if (d.kind == 0) {
        L[d.cell] += d.w;
        if (leftc[d.cell]) total += d.w * leftc[d.cell];
      } else if (d.kind == 1) {
        R[d.cell] += d.w;
        if (rightc[d.cell]) total += d.w * rightc[d.cell];
      } else {
        M[d.cell] += d.w;
        if (localc[d.cell]) total += d.w * localc[d.cell];
      }
    }
    for (int e : el_add[p]) {
      const sweep_element& el = pass.elements[e];
      total += elem_term(el);
      if (el.local)
        localc[el.i]++;
      else {
        leftc[el.i]++;
        rightc[el.j]++;
      }
    }
    result[p] = total;
    for (int e : el_rem[p]) {
      const sweep_element& el = pass.elements[e];
      total -= elem_term(el);
      if (el.local)
        localc[el.i]--;
      else {
        leftc[el.i]--;
        rightc[el.j]--;
      }
    }
    for (const auto& d : deact[p]) {
      if (d.kind == 0) {
        L[d.cell] -= d.w;
        if (leftc[d.cell]) total -= d.w * leftc[d.cell];
      } else if (d.kind == 1) {
        R[d.cell] -= d.w;
        if (rightc[d.cell]) total -= d.w * rightc[d.cell];
      } else {
        M[d.cell] -= d.w;
        if (localc[d.cell]) total -= d.w * localc[d.cell];
      }
    }
  }
  return result;
}

}  // namespace subtraj
