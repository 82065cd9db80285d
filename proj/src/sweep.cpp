#include "subtraj/sweep.hpp"

#include <algorithm>
#include <cassert>

namespace subtraj {

// ---------------------------------------------------------------------------
// shoot_left_ds

shoot_left_ds::shoot_left_ds(std::vector<std::pair<int, int>> intervals) {
  n_ = static_cast<int>(intervals.size());
  tree_.assign(2 * std::max(n_, 1), {INT32_MIN, INT32_MAX});
  for (int i = 0; i < n_; ++i) tree_[n_ + i] = intervals[i];
  for (int v = n_ - 1; v >= 1; --v) {
    tree_[v] = {std::max(tree_[2 * v].first, tree_[2 * v + 1].first),
                std::min(tree_[2 * v].second, tree_[2 * v + 1].second)};
  }
}

int shoot_left_ds::query(int i, int x) const {
  // smallest k <= i with x in intersection of leaves k..i; i+1 if none.
  auto inside = [&](const std::pair<int, int>& iv) { return iv.first <= x && x <= iv.second; };
  if (!inside(tree_[n_ + i])) return i + 1;
  // Collect the canonical nodes covering [0, i] left to right, then scan them
  // right to left keeping the suffix intersection.
  std::vector<int> nodes;
  int lo = 0 + n_, hi = i + n_ + 1;
  std::vector<int> right_nodes;
  while (lo < hi) {
    if (lo & 1) nodes.push_back(lo++);
    if (hi & 1) right_nodes.push_back(--hi);
    lo >>= 1;
    hi >>= 1;
  }
  for (auto it = right_nodes.rbegin(); it != right_nodes.rend(); ++it) nodes.push_back(*it);
  // nodes now cover [0, i] in left-to-right order
  int best = i + 1;  // first index of the current all-inside suffix
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    int v = *it;
    if (inside(tree_[v])) {
      // whole node inside: extend the suffix over it
      int span = 1, node = v;
      while (node < n_) {
        node = 2 * node;
        span *= 2;
      }
      best = node - n_;
      continue;
    }
    // descend to find the rightmost leaf in v that is not inside
    int node = v;
    while (node < n_) {
      if (!inside(tree_[2 * node + 1]))
        node = 2 * node + 1;
      else
        node = 2 * node;
    }
    return node - n_ + 1;
  }
  return best;
}

// ---------------------------------------------------------------------------
// jump_right_ds / min_tree

jump_right_ds::jump_right_ds(const std::vector<int>& values) {
  const int n = static_cast<int>(values.size());
  answer_.assign(n, -1);
  std::vector<int> stack;
  for (int i = n - 1; i >= 0; --i) {
    while (!stack.empty() && values[stack.back()] >= values[i]) stack.pop_back();
    answer_[i] = stack.empty() ? -1 : stack.back();
    stack.push_back(i);
  }
}

min_tree::min_tree(std::vector<int> values) {
  n_ = static_cast<int>(values.size());
  tree_.assign(2 * std::max(n_, 1), INT32_MAX);
  for (int i = 0; i < n_; ++i) tree_[n_ + i] = values[i];
  for (int v = n_ - 1; v >= 1; --v) tree_[v] = std::min(tree_[2 * v], tree_[2 * v + 1]);
}

int min_tree::first_leq(int i, int threshold) const {
  if (i >= n_) return -1;
  int res = -1;
  int lo = i + n_, hi = n_ + n_;
  std::vector<int> nodes, right_nodes;
  while (lo < hi) {
    if (lo & 1) nodes.push_back(lo++);
    if (hi & 1) right_nodes.push_back(--hi);
    lo >>= 1;
    hi >>= 1;
  }
  for (auto it = right_nodes.rbegin(); it != right_nodes.rend(); ++it) nodes.push_back(*it);
  for (int v : nodes) {
    if (tree_[v] <= threshold) {
      while (v < n_) {
        if (tree_[2 * v] <= threshold)
          v = 2 * v;
        else
          v = 2 * v + 1;
      }
      res = v - n_;
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// bad indices

bool bad_index_test(const fs_strip& strip, int cell, int hs, int ht) {
  if (!strip.alive(cell, hs) || !strip.alive(cell, ht)) return false;
  double l = strip.left_at_entry(cell, hs);
  double r = strip.right_at_entry(cell, ht);
  double xt = strip.top_right_x(cell);
  double xb = strip.bot_left_x(cell);
  return xt < l && xt < r && l < xb && r < xb;
}

namespace {

// first position in [lo, hi] where pred is true, assuming F..FT..T; hi+1 if none
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

// last position in [lo, hi] where pred is true, assuming T..TF..F; lo-1 if none
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

}  // namespace

std::vector<pos_range> compute_bad_windows(const fs_strip& strip, const sweep_sequence& seq) {
  const int P = static_cast<int>(seq.windows.size());
  const int N = strip.cells();
  std::vector<pos_range> out(N);
  auto spos = [&](int p) { return seq.windows[p].first; };
  auto tpos = [&](int p) { return seq.windows[p].second; };
  for (int c = 0; c < N; ++c) {
    if (strip.cell_empty(c)) continue;
    double xt = strip.top_right_x(c);
    double xb = strip.bot_left_x(c);
    if (!(xt < xb)) continue;  // never bad
    // Alive position ranges on each coordinate.
    int be = strip.bot_entry(c), te = strip.top_entry(c);
    int s_lo = first_true(0, P - 1, [&](int p) { return spos(p) >= be; });
    int s_hi = last_true(0, P - 1, [&](int p) { return spos(p) <= te; });
    int t_lo = first_true(0, P - 1, [&](int p) { return tpos(p) >= be; });
    int t_hi = last_true(0, P - 1, [&](int p) { return tpos(p) <= te; });
    if (s_lo > s_hi || t_lo > t_hi) continue;
    auto lval = [&](int p) { return strip.left_at_entry(c, spos(p)); };
    auto rval = [&](int p) { return strip.right_at_entry(c, tpos(p)); };
    // s side: (xt < l) is T..F, (l < xb) is F..T within the alive range.
    int sB = last_true(s_lo, s_hi, [&](int p) { return xt < lval(p); });
    int sA = first_true(s_lo, s_hi, [&](int p) { return lval(p) < xb; });
    // t side: (r < xb) is F..T; (xt < r) is an interval around the widest slice.
    int tC = first_true(t_lo, t_hi, [&](int p) { return rval(p) < xb; });
    // pivot: positions whose t lies in the right-most feature band
    const cell_features& f = strip.features(c);
    int pivot = first_true(t_lo, t_hi, [&](int p) { return strip.entry_y(tpos(p)) >= f.yrgt_lo; });
    pos_range D;
    if (pivot <= t_hi && xt < rval(std::min(pivot, t_hi))) {
      D.lo = first_true(t_lo, pivot, [&](int p) { return xt < rval(p); });
      D.hi = last_true(pivot, t_hi, [&](int p) { return xt < rval(p); });
    } else {
      // fall back: scan boundaries via the two monotone halves anchored at pivot
      D.lo = 1;
      D.hi = 0;
    }
    pos_range w;
    w.lo = std::max({sA, tC, D.lo});
    w.hi = std::min({sB, D.hi});
    if (!w.empty()) out[c] = w;
  }
  return out;
}

// ---------------------------------------------------------------------------
// from-scratch window state

window_state compute_window_state(const fs_strip& strip, int hs, int ht,
                                  const std::vector<char>* bad_override) {
  const int N = strip.cells();
  window_state st;
  if (bad_override) {
    st.bad = *bad_override;
  } else {
    st.bad.assign(N, 0);
    for (int c = 0; c < N; ++c) st.bad[c] = bad_index_test(strip, c, hs, ht);
  }

  std::vector<std::pair<int, int>> upairs, gpairs;
  for (int c = 0; c < N; ++c) {
    if (!strip.alive(c, hs)) continue;
    int f = hs;
    int uend = c;
    int gend = -1;
    for (int k = c + 1; k < N; ++k) {
      if (!strip.wall_nonempty(k)) break;
      if (f > strip.wall_hi_entry(k)) break;
      int f2 = std::max(f, strip.wall_lo_entry(k));
      if (f2 > ht) break;
      f = f2;
      uend = k;
      if (strip.alive(k, ht)) gend = k;
    }
    upairs.push_back({c, uend});
    if (gend > c) gpairs.push_back({c, gend});
  }
  auto filter_max = [](const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::pair<int, int>> out;
    int run = -1;
    for (const auto& p : pairs) {
      if (p.second > run) {
        out.push_back(p);
        run = p.second;
      }
    }
    return out;
  };
  st.U = filter_max(upairs);
  st.G = filter_max(gpairs);

  for (const auto& p : st.U) {
    if (p.first != p.second) continue;
    int c = p.first;
    if (strip.alive(c, ht) && !st.bad[c]) st.L.push_back(c);
  }
  // merged spans
  for (std::size_t k = 0; k < st.G.size(); ++k) {
    int i = st.G[k].first, j = st.G[k].second;
    while (k + 1 < st.G.size()) {
      int c = st.G[k + 1].first, d = st.G[k + 1].second;
      bool link = c < j || (c == j && !st.bad[j]);
      if (!link) break;
      j = d;
      ++k;
    }
    st.Gt.push_back({i, j});
  }
  return st;
}

std::vector<interval> proxy_cov_raw(const fs_strip& strip, const window_state& st, int hs,
                                    int ht) {
  std::vector<interval> parts;
  for (int c : st.L)
    parts.push_back({strip.left_at_entry(c, hs), strip.right_at_entry(c, ht)});
  // good/bad of span endpoints per st.bad
  auto in_G = [&](int i, int j) {
    (void)i;
    (void)j;
    return true;
  };
  (void)in_G;
  for (const auto& sp : st.Gt) {
    int i = sp.first, j = sp.second;
    double lo = st.bad[i] ? strip.right_at_entry(i, hs) : strip.left_at_entry(i, hs);
    double hi = st.bad[j] ? strip.left_at_entry(j, ht) : strip.right_at_entry(j, ht);
    parts.push_back({lo, hi});
  }
  std::sort(parts.begin(), parts.end(),
            [](const interval& a, const interval& b) { return a.lo < b.lo; });
  return parts;
}

interval_set proxy_cov(const fs_strip& strip, const window_state& st, int hs, int ht) {
  interval_set cov;
  for (const auto& p : proxy_cov_raw(strip, st, hs, ht)) cov.add(p.lo, p.hi);
  cov.normalize();
  return cov;
}

interval_set proxy_cov_at(const fs_strip& strip, const sweep_sequence& seq, int pos) {
  auto [hs, ht] = seq.windows[pos];
  // Use the sequence's bad windows so the evaluation matches the maintained
  // pass at this position exactly.
  std::vector<pos_range> badw = compute_bad_windows(strip, seq);
  std::vector<char> bad(strip.cells(), 0);
  for (int c = 0; c < strip.cells(); ++c) bad[c] = badw[c].contains(pos);
  window_state st = compute_window_state(strip, hs, ht, &bad);
  return proxy_cov(strip, st, hs, ht);
}

// ---------------------------------------------------------------------------
// window_maintainer

window_maintainer::window_maintainer(const fs_strip& strip, const sweep_sequence& seq)
    : strip_(strip), seq_(seq) {
  const int N = strip.cells();
  std::vector<std::pair<int, int>> walls(N);
  walls[0] = {1, 0};  // wall 0 is the diagram boundary: never crossable
  for (int w = 1; w < N; ++w) {
    if (strip.wall_nonempty(w))
      walls[w] = {strip.wall_lo_entry(w), strip.wall_hi_entry(w)};
    else
      walls[w] = {1, 0};
  }
  shoot_ = shoot_left_ds(std::move(walls));
  std::vector<int> bots(N);
  for (int c = 0; c < N; ++c)
    bots[c] = strip.cell_empty(c) ? INT32_MAX : strip.bot_entry(c);
  jump_ = jump_right_ds(bots);
  mint_ = min_tree(bots);
  badw_ = compute_bad_windows(strip, seq);
  const int P = static_cast<int>(seq.windows.size());
  bad_enter_.resize(P);
  bad_leave_.resize(P);
  for (int c = 0; c < N; ++c) {
    if (badw_[c].empty()) continue;
    bad_enter_[badw_[c].hi].push_back(c);
    if (badw_[c].lo >= 1) bad_leave_[badw_[c].lo - 1].push_back(c);
  }
  in_L_.assign(N, 0);
  is_bad_.assign(N, 0);
}

void window_maintainer::emit_add(int i, int j, bool local) {
  bool gi = !is_bad_[i];
  bool gj = !is_bad_[j];
  live_[{i, j, local}] = {cur_pos_, (gi ? 1 : 0) | (gj ? 2 : 0)};
}

void window_maintainer::emit_remove(int i, int j, bool local) {
  auto it = live_.find({i, j, local});
  if (it == live_.end()) return;
  int add_pos = it->second.first;
  int flags = it->second.second;
  live_.erase(it);
  // removed while processing cur_pos_: last live position is cur_pos_ + 1,
  // unless the element was added at cur_pos_ in this very step.
  int lo = cur_pos_ + 1;
  if (add_pos == cur_pos_) return;  // transient within one step
  out_.elements.push_back({i, j, local, (flags & 1) != 0, (flags & 2) != 0, lo, add_pos});
}

void window_maintainer::refresh_local(int c) {
  auto it = U_.find(c);
  bool inU = it != U_.end() && it->second == c;
  bool want = inU && strip_.alive(c, cur_t_) && !is_bad_[c];
  if (want == static_cast<bool>(in_L_[c])) return;
  in_L_[c] = want;
  if (want)
    emit_add(c, c, true);
  else
    emit_remove(c, c, true);
}

void window_maintainer::u_insert(int i, int j) {
  auto floor_it = U_.upper_bound(i);
  if (floor_it != U_.begin()) {
    --floor_it;
    if (floor_it->second >= j) return;  // dominated (or equal)
  }
  // erase dominated successors
  for (auto it = U_.lower_bound(i); it != U_.end() && it->second <= j;) {
    int s = it->first;
    ++it;
    u_erase(s);
  }
  U_[i] = j;
  Urev_[j] = i;
  if (i == j) refresh_local(i);
}

void window_maintainer::u_erase(int i) {
  auto it = U_.find(i);
  if (it == U_.end()) return;
  int j = it->second;
  U_.erase(it);
  auto rv = Urev_.find(j);
  if (rv != Urev_.end() && rv->second == i) Urev_.erase(rv);
  if (i == j) refresh_local(i);
}

bool window_maintainer::linked(int start_a) const {
  auto it = G_.find(start_a);
  if (it == G_.end()) return false;
  auto nx = std::next(it);
  if (nx == G_.end()) return false;
  int aend = it->second;
  int bstart = nx->first;
  return bstart < aend || (bstart == aend && !is_bad_[aend]);
}

void window_maintainer::span_emit_add(int head) {
  auto it = spans_.find(head);
  assert(it != spans_.end());
  int tail = it->second;
  emit_add(head, G_[tail], false);
}

void window_maintainer::span_emit_remove(int head) {
  auto it = spans_.find(head);
  assert(it != spans_.end());
  int tail = it->second;
  auto g = G_.find(tail);
  assert(g != G_.end());  // spans are removed while their tail pair is live
  emit_remove(head, g->second, false);
}

namespace {
struct span_ref {
  int head = -1, tail = -1;
  bool valid() const { return head >= 0; }
};
}  // namespace

void window_maintainer::g_insert(int i, int j) {
  assert(i < j);
  auto floor_it = G_.upper_bound(i);
  if (floor_it != G_.begin()) {
    auto f = std::prev(floor_it);
    if (f->second >= j) return;  // dominated
  }
  for (auto it = G_.lower_bound(i); it != G_.end() && it->second <= j;) {
    int s = it->first;
    ++it;
    g_erase(s);
  }
  // neighbours after cleanup
  auto nx = G_.lower_bound(i);
  span_ref Sprev, Snext;
  int prev = -1, next = -1;
  if (nx != G_.end()) next = nx->first;
  if (nx != G_.begin()) prev = std::prev(nx)->first;
  auto span_of = [&](int start) {
    span_ref r;
    if (start < 0) return r;
    auto it = spans_.upper_bound(start);
    if (it == spans_.begin()) return r;
    --it;
    if (it->second >= start) {
      r.head = it->first;
      r.tail = it->second;
    }
    return r;
  };
  Sprev = span_of(prev);
  Snext = span_of(next);
  G_[i] = j;
  Grev_[j] = i;

  bool lp = prev >= 0 && linked(prev);
  bool ln = next >= 0 && linked(i);
  auto kill_span = [&](const span_ref& s) {
    span_emit_remove(s.head);
    spans_.erase(s.head);
    span_end_.erase(s.tail);
  };
  auto make_span = [&](int head, int tail) {
    spans_[head] = tail;
    span_end_[tail] = head;
    span_emit_add(head);
  };
  if (Sprev.valid() && Snext.valid() && Sprev.head == Snext.head) {
    // inserted strictly inside one span
    if (lp && ln) return;  // boundaries unchanged
    kill_span(Sprev);
    if (lp) {
      make_span(Sprev.head, i);
      make_span(next, Sprev.tail);
    } else if (ln) {
      make_span(Sprev.head, prev);
      make_span(i, Sprev.tail);
    } else {
      make_span(Sprev.head, prev);
      make_span(i, i);
      make_span(next, Sprev.tail);
    }
    return;
  }
  if (lp && ln) {
    kill_span(Sprev);
    kill_span(Snext);
    make_span(Sprev.head, Snext.tail);
  } else if (lp) {
    kill_span(Sprev);
    make_span(Sprev.head, i);
  } else if (ln) {
    kill_span(Snext);
    make_span(i, Snext.tail);
  } else {
    make_span(i, i);
  }
}

void window_maintainer::g_erase(int i) {
  auto it = G_.find(i);
  if (it == G_.end()) return;
  int j = it->second;
  auto span_of = [&](int start) {
    span_ref r;
    if (start < 0) return r;
    auto sit = spans_.upper_bound(start);
    if (sit == spans_.begin()) return r;
    --sit;
    if (sit->second >= start) {
      r.head = sit->first;
      r.tail = sit->second;
    }
    return r;
  };
  span_ref S = span_of(i);
  int prev = -1, next = -1;
  if (it != G_.begin()) prev = std::prev(it)->first;
  auto nx = std::next(it);
  if (nx != G_.end()) next = nx->first;

  auto kill_span = [&](const span_ref& s) {
    span_emit_remove(s.head);
    spans_.erase(s.head);
    span_end_.erase(s.tail);
  };
  auto make_span = [&](int head, int tail) {
    spans_[head] = tail;
    span_end_[tail] = head;
    span_emit_add(head);
  };

  kill_span(S);
  G_.erase(it);
  auto rv = Grev_.find(j);
  if (rv != Grev_.end() && rv->second == i) Grev_.erase(rv);

  span_ref left, right;
  if (S.head != i) left = {S.head, prev};
  if (S.tail != i) right = {next, S.tail};
  if (left.valid()) make_span(left.head, left.tail);
  if (right.valid()) make_span(right.head, right.tail);
  // the removal makes prev and next adjacent: they may now merge
  if (prev >= 0 && next >= 0 && linked(prev)) {
    span_ref A = span_of(prev), B = span_of(next);
    if (A.valid() && B.valid() && A.head != B.head) {
      kill_span(A);
      kill_span(B);
      make_span(A.head, B.tail);
    }
  }
}

void window_maintainer::advance_start(int olds, int news, int t) {
  (void)t;
  const height_entry& eo = strip_.entries()[olds];
  if (eo.kind == hkind::cell_bottom) {
    int c = eo.cell;
    auto itU = U_.find(c);
    if (itU != U_.end()) {
      int x = itU->second;
      u_erase(c);
      int j = jump_.query(c);
      if (j >= 0 && j <= x) u_insert(j, x);
    }
    auto itG = G_.find(c);
    if (itG != G_.end()) {
      int xg = itG->second;
      g_erase(c);
      int j = jump_.query(c);
      if (j >= 0 && j < xg) g_insert(j, xg);
    }
  }
  const height_entry& en = strip_.entries()[news];
  if (en.kind == hkind::wall_hi) {
    int w = en.cell;
    int k = shoot_.query(w, news);
    int ns = k - 1;
    if (ns < w && ns >= 0) {
      auto itU = U_.find(w);
      if (itU != U_.end()) {
        int x = itU->second;
        u_erase(w);
        u_insert(ns, x);
      }
      auto itG = G_.find(w);
      if (itG != G_.end()) {
        int x = itG->second;
        g_erase(w);
        g_insert(ns, x);
      }
    }
  } else if (en.kind == hkind::cell_top) {
    u_insert(en.cell, en.cell);
    refresh_local(en.cell);
  }
}

void window_maintainer::advance_end(int s, int oldt, int newt) {
  const height_entry& eo = strip_.entries()[oldt];
  if (eo.kind == hkind::wall_lo) {
    int w = eo.cell;
    // at most one spanning pair in U and in G
    auto split = [&](std::map<int, int>& M, bool isG) {
      auto it = M.lower_bound(w);
      if (it == M.begin()) return;
      --it;
      int a = it->first, b = it->second;
      if (b < w) return;
      if (isG) {
        g_erase(a);
        if (a < w - 1) g_insert(a, w - 1);
        int k = mint_.first_leq(w, s);
        if (k >= 0 && k < b) g_insert(k, b);
      } else {
        u_erase(a);
        u_insert(a, w - 1);
        int k = mint_.first_leq(w, s);
        if (k >= 0 && k <= b) u_insert(k, b);
      }
    };
    split(U_, false);
    split(G_, true);
  } else if (eo.kind == hkind::cell_bottom) {
    refresh_local(eo.cell);
  }
  const height_entry& en = strip_.entries()[newt];
  if (en.kind == hkind::cell_top) {
    int c = en.cell;
    auto it = Urev_.lower_bound(c);
    if (it != Urev_.end()) {
      int i = it->second;
      if (i < c) g_insert(i, c);
    }
    refresh_local(c);
  }
}

void window_maintainer::apply_bad_toggles(int pos) {
  auto toggle = [&](int c, bool now_bad) {
    is_bad_[c] = now_bad;
    refresh_local(c);
    // link with shared endpoint c: pair ending at c followed by pair starting at c
    auto ge = Grev_.find(c);
    auto gs = G_.find(c);
    if (ge != Grev_.end() && gs != G_.end()) {
      int a = ge->second;
      auto ia = G_.find(a);
      if (ia != G_.end() && std::next(ia) == gs) {
        // re-evaluate: rebuild by erasing and re-inserting the successor pair
        int bs = gs->first, be = gs->second;
        g_erase(bs);
        g_insert(bs, be);
      }
    }
    // flag refresh of live spans with endpoint c
    auto sh = spans_.find(c);
    if (sh != spans_.end()) {
      int tail = sh->second;
      int jend = G_[tail];
      emit_remove(c, jend, false);
      emit_add(c, jend, false);
    }
    auto grev = Grev_.find(c);
    if (grev != Grev_.end()) {
      int tail_start = grev->second;
      auto se = span_end_.find(tail_start);
      if (se != span_end_.end()) {
        int head = se->second;
        if (head != c) {  // head == c handled above
          emit_remove(head, c, false);
          emit_add(head, c, false);
        }
      }
    }
  };
  for (int c : bad_enter_[pos]) toggle(c, true);
  for (int c : bad_leave_[pos]) toggle(c, false);
}

window_state window_maintainer::current_state() const {
  window_state st;
  for (const auto& kv : U_) st.U.push_back(kv);
  for (const auto& kv : G_) st.G.push_back(kv);
  for (const auto& kv : spans_) {
    auto g = G_.find(kv.second);
    st.Gt.push_back({kv.first, g->second});
  }
  for (int c = 0; c < strip_.cells(); ++c)
    if (in_L_[c]) st.L.push_back(c);
  st.bad.assign(is_bad_.begin(), is_bad_.end());
  return st;
}

sweep_pass window_maintainer::run(const snapshot_fn& snap) {
  const int P = static_cast<int>(seq_.windows.size());
  out_ = sweep_pass{};
  out_.positions = P;
  out_.bad_windows = badw_;
  cur_pos_ = P - 1;
  cur_s_ = seq_.windows[P - 1].first;
  cur_t_ = seq_.windows[P - 1].second;

  // initial bad flags
  for (int c = 0; c < strip_.cells(); ++c)
    is_bad_[c] = !badw_[c].empty() && badw_[c].contains(P - 1);
  // from-scratch initial state
  window_state st = compute_window_state(strip_, cur_s_, cur_t_);
  for (const auto& p : st.U) {
    U_[p.first] = p.second;
    Urev_[p.second] = p.first;
  }
  for (const auto& p : st.G) {
    G_[p.first] = p.second;
    Grev_[p.second] = p.first;
  }
  // locals
  for (const auto& p : st.U) {
    if (p.first != p.second) continue;
    int c = p.first;
    bool want = strip_.alive(c, cur_t_) && !is_bad_[c];
    in_L_[c] = want;
    if (want) emit_add(c, c, true);
  }
  // spans from G + links
  for (auto it = G_.begin(); it != G_.end();) {
    int head = it->first;
    int tail = head;
    while (linked(it->first)) {
      ++it;
      tail = it->first;
    }
    ++it;
    spans_[head] = tail;
    span_end_[tail] = head;
    emit_add(head, G_[tail], false);
  }
  if (snap) snap(cur_pos_, *this);

  for (int p = P - 2; p >= 0; --p) {
    int ns = seq_.windows[p].first, nt = seq_.windows[p].second;
    cur_pos_ = p;
    if (ns != cur_s_) {
      int olds = cur_s_;
      cur_s_ = ns;
      advance_start(olds, ns, cur_t_);
    }
    if (nt != cur_t_) {
      int oldt = cur_t_;
      cur_t_ = nt;
      advance_end(cur_s_, oldt, nt);
    }
    apply_bad_toggles(p);
    if (snap) snap(p, *this);
  }
  // flush live elements
  for (const auto& kv : live_) {
    out_.elements.push_back({kv.first.i, kv.first.j, kv.first.local,
                             (kv.second.second & 1) != 0, (kv.second.second & 2) != 0, 0,
                             kv.second.first});
  }
  live_.clear();
  return std::move(out_);
}

}  // namespace subtraj
