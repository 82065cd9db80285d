#pragma once

#include <functional>
#include <map>

#include "subtraj/candidates.hpp"

namespace subtraj {

// ---------------------------------------------------------------------------
// Query structures.

/// Queries over a static list of intervals: smallest index k <= i such that x
/// lies in the intersection of intervals k..i. Intervals are entry-index
/// ranges; empty intervals are (1, 0)-style.
class shoot_left_ds {
 public:
  shoot_left_ds() = default;
  explicit shoot_left_ds(std::vector<std::pair<int, int>> intervals);
  /// smallest k in [first_index, i] with x in intersection(k..i); i+1 if none.
  int query(int i, int x) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> tree_;  // segment tree of intersections
  std::pair<int, int> node(int v) const { return tree_[v]; }
};

/// answer(i) = smallest j > i with a[j] < a[i], or -1.
class jump_right_ds {
 public:
  jump_right_ds() = default;
  explicit jump_right_ds(const std::vector<int>& values);
  int query(int i) const { return answer_[i]; }

 private:
  std::vector<int> answer_;
};

/// first index k >= i with a[k] <= threshold, or -1.
class min_tree {
 public:
  min_tree() = default;
  explicit min_tree(std::vector<int> values);
  int first_leq(int i, int threshold) const;

 private:
  int n_ = 0;
  std::vector<int> tree_;
};

// ---------------------------------------------------------------------------
// Bad indices.

/// Contiguous range of sweep positions (inclusive); empty when lo > hi.
struct pos_range {
  int lo = 1, hi = 0;
  bool empty() const { return lo > hi; }
  bool contains(int p) const { return lo <= p && p <= hi; }
};

/// Definition test at entry heights hs <= ht: every top-most point strictly
/// left of both boundary values, both strictly left of every bottom-most one.
bool bad_index_test(const fs_strip& strip, int cell, int hs, int ht);

/// Per-cell contiguous position ranges where the cell is bad, found by binary
/// searches over the monotone pieces of the four defining comparisons.
std::vector<pos_range> compute_bad_windows(const fs_strip& strip, const sweep_sequence& seq);

// ---------------------------------------------------------------------------
// Window state (from-scratch reference; also used to evaluate one window).

struct window_state {
  std::vector<std::pair<int, int>> U;   // maximal, sorted by start
  std::vector<std::pair<int, int>> G;   // maximal i<j pairs ending at exactly t
  std::vector<std::pair<int, int>> Gt;  // merged spans of G
  std::vector<int> L;                   // cells of L \ B
  std::vector<char> bad;                // per cell
};

window_state compute_window_state(const fs_strip& strip, int hs, int ht,
                                  const std::vector<char>* bad_override = nullptr);

/// Disjoint union of the local terms [l_i(s), r_i(t)] and the span terms
/// [l^_i(s), r^_j(t)] where a bad left endpoint falls back to r_i(s) and a bad
/// right endpoint to l_j(t).
interval_set proxy_cov(const fs_strip& strip, const window_state& st, int hs, int ht);

/// The same terms before merging, for disjointness checks.
std::vector<interval> proxy_cov_raw(const fs_strip& strip, const window_state& st, int hs,
                                    int ht);

/// Proxy coverage of the window at `pos` of a sweep-sequence, evaluated from
/// scratch (selection-time use; not the maintained path).
interval_set proxy_cov_at(const fs_strip& strip, const sweep_sequence& seq, int pos);

// ---------------------------------------------------------------------------
// Maintenance pass.

/// One element of the maintained set S^ = Gt union (L \ B), constant over a
/// contiguous range of sweep positions with fixed endpoint good/bad flags.
struct sweep_element {
  int i, j;
  bool local;
  bool good_i, good_j;
  int p_lo, p_hi;  // inclusive position range
};

struct sweep_pass {
  int positions = 0;
  std::vector<sweep_element> elements;
  std::vector<pos_range> bad_windows;  // per cell
};

/// Runs the maintenance sweep over one sequence (positions processed from the
/// last to the first window) and returns the element ranges. The optional
/// callback fires after every position with the maintainer's current sets.
class window_maintainer {
 public:
  window_maintainer(const fs_strip& strip, const sweep_sequence& seq);

  using snapshot_fn = std::function<void(int pos, const window_maintainer&)>;
  sweep_pass run(const snapshot_fn& snap = nullptr);

  // Accessors for snapshots.
  window_state current_state() const;
  const fs_strip& strip() const { return strip_; }
  const sweep_sequence& sequence() const { return seq_; }

 private:
  struct live_key {
    int i, j;
    bool local;
    friend auto operator<=>(const live_key&, const live_key&) = default;
  };

  void advance_start(int olds, int news, int t);
  void advance_end(int s, int oldt, int newt);
  void apply_bad_toggles(int pos);

  void u_insert(int i, int j);
  void u_erase(int i);
  void g_insert(int i, int j);
  void g_erase(int i);
  void refresh_local(int c);
  void rebuild_links_around(int gstart);
  void span_emit_add(int head);
  void span_emit_remove(int head);
  bool linked(int start_a) const;  // link between G pair at start_a and its successor

  void emit_add(int i, int j, bool local);
  void emit_remove(int i, int j, bool local);

  const fs_strip& strip_;
  const sweep_sequence& seq_;
  shoot_left_ds shoot_;
  jump_right_ds jump_;
  min_tree mint_;
  std::vector<pos_range> badw_;
  std::vector<std::vector<int>> bad_enter_, bad_leave_;  // per position cell lists

  std::map<int, int> U_, Urev_;
  std::map<int, int> G_, Grev_;
  std::map<int, int> spans_;     // head start -> tail start
  std::map<int, int> span_end_;  // tail start -> head start
  std::vector<char> in_L_;
  std::vector<char> is_bad_;
  int cur_s_ = 0, cur_t_ = 0, cur_pos_ = 0;

  std::map<live_key, std::pair<int, int>> live_;  // -> (add position, flags packed)
  sweep_pass out_;
};

}  // namespace subtraj
