#pragma once

#include <array>
#include <optional>

#include "subtraj/curve.hpp"
#include "subtraj/frechet.hpp"

namespace subtraj {

// ---------------------------------------------------------------------------
// Polytope approximation of the unit ball in the 3-space spanned by a cell.

struct hs3 {
  std::array<double, 3> n;  // outward normal, unit length
  double off;               // <n, x> <= off
};

/// Convex polytope D with B_1(0) subset D subset B_alpha(0) in R^3.
/// Built from the hull of grid points of step eps/2 that lie in the unit ball
/// and have a grid neighbour outside, rescaled so the unit ball just fits.
struct ball_polytope {
  std::vector<hs3> facets;
  std::vector<std::array<double, 3>> vertices;
  double alpha = 1.0;  // guaranteed outer radius

  static ball_polytope build(double eps);
};

/// Orthonormal frame for span{d0, u, v} so distances between points of two
/// edges can be measured in R^3 regardless of the ambient dimension.
struct frame3 {
  std::array<point, 3> basis;  // padded with zero vectors if rank < 3
  int dim = 0;

  static frame3 make(const point& d0, const point& u, const point& v);
  std::array<double, 3> coords(const point& w) const;
};

// ---------------------------------------------------------------------------
// Per-cell regions.

struct chain_vertex {
  double y;
  double x;
};

/// Convex polygon cell in local [0,1]^2 coordinates, stored as the two
/// y-monotone chains bounding it (left chain and right chain).
struct poly_cell {
  // Chains run from ybot to ytop. Both are empty iff the cell is empty.
  std::vector<chain_vertex> left;
  std::vector<chain_vertex> right;
  bool empty() const { return left.empty(); }
  bool slice(double y, double& lo, double& hi) const;
  double left_at(double y) const;
  double right_at(double y) const;
};

/// Extremal geometry of one cell, local coordinates.
struct cell_features {
  bool empty = true;
  double ybot = kInf, ytop = -kInf;
  double xbot_lo = kInf, xbot_hi = -kInf;  // bottom-most points
  double xtop_lo = kInf, xtop_hi = -kInf;  // top-most points
  double xmin = kInf, xmax = -kInf;
  double ylft_lo = kInf, ylft_hi = -kInf;  // y-range of left-most points
  double yrgt_lo = kInf, yrgt_hi = -kInf;
};

// ---------------------------------------------------------------------------
// Height entries (the sorted superset of extremal y-coordinates, with the
// symbolic perturbation encoded as a rank so no two entries compare equal).

enum class hkind : std::int8_t {
  cell_bottom = 0,
  floor = 1,     // mandatory height 0
  wall_lo = 2,
  wall_hi = 3,
  extremal = 4,  // tangents, y-edge extremes, polygon vertices
  ceiling = 5,   // mandatory height 1
  cell_top = 6,
};

/// Rank used for ties at equal y: bottom-most below everything, top-most above
/// everything of the same height; the mandatory 0/1 anchors sit so that cells
/// genuinely touching the strip boundary are alive there.
inline int hrank(hkind k) {
  switch (k) {
    case hkind::cell_bottom: return 0;
    case hkind::floor: return 1;
    case hkind::wall_lo: return 2;
    case hkind::wall_hi: return 2;
    case hkind::extremal: return 2;
    case hkind::ceiling: return 3;
    case hkind::cell_top: return 4;
  }
  return 2;
}

struct height_entry {
  double y;
  hkind kind;
  int cell;  // owning cell (wall entries: the cell to the wall's right)
  int sub;   // disambiguator within (y, kind, cell)
};

// ---------------------------------------------------------------------------
// One row of the diagram: free space of a single edge e against all of P.

enum class fs_backend { exact, polygon };

class fs_strip {
 public:
  /// eS0/eS1: the edge endpoints; radius: free-space radius.
  fs_strip() = default;

  int cells() const { return num_cells_; }
  fs_backend backend() const { return backend_; }
  bool cell_empty(int i) const { return features_[i].empty; }
  const cell_features& features(int i) const { return features_[i]; }

  /// Leftmost/rightmost x of cell i's region at height y, in global P
  /// parameter; +inf if the slice is empty. Purely numeric.
  double left_at(int i, double y) const;
  double right_at(int i, double y) const;
  bool slice(int i, double y, double& lo_g, double& hi_g) const;

  double cell_x_lo(int i) const { return static_cast<double>(i) / num_cells_; }
  double cell_x_hi(int i) const { return static_cast<double>(i + 1) / num_cells_; }

  // Wall w separates cell w-1 and cell w, w in [1, cells()-1].
  bool wall_nonempty(int w) const { return wall_lo_[w] <= wall_hi_[w]; }
  double wall_lo(int w) const { return wall_lo_[w]; }
  double wall_hi(int w) const { return wall_hi_[w]; }

  // Height entries (sorted; perturbation rank encoded).
  const std::vector<height_entry>& entries() const { return entries_; }
  int num_entries() const { return static_cast<int>(entries_.size()); }
  double entry_y(int e) const { return entries_[e].y; }

  // Entry-order aliases of the per-cell / per-wall features; -1 when absent.
  int bot_entry(int i) const { return bot_e_[i]; }
  int top_entry(int i) const { return top_e_[i]; }
  int wall_lo_entry(int w) const { return wlo_e_[w]; }
  int wall_hi_entry(int w) const { return whi_e_[w]; }

  /// Cell i has a non-empty slice at entry h (symbolic comparison).
  bool alive(int i, int h) const {
    return !features_[i].empty && bot_e_[i] <= h && h <= top_e_[i];
  }
  /// Wall w admits a crossing at entry height h.
  bool wall_open(int w, int h) const {
    return wall_nonempty(w) && wlo_e_[w] <= h && h <= whi_e_[w];
  }

  /// left_at/right_at evaluated at an entry height, honouring the symbolic
  /// alive test; +inf when symbolically empty.
  double left_at_entry(int i, int h) const;
  double right_at_entry(int i, int h) const;

  /// Right-most x of the top-most points / left-most x of the bottom-most
  /// points, global coordinates (bad-index tests).
  double top_right_x(int i) const;
  double bot_left_x(int i) const;

  int find_entry_leq(double y) const;  // last entry with .y <= y (numeric)

  static fs_strip build_exact(const point& e0, const point& e1, const polygonal_curve& P,
                              double radius, const tolerances& tol);
  static fs_strip build_polygon(const point& e0, const point& e1, const polygonal_curve& P,
                                double radius, const ball_polytope& ball, const tolerances& tol,
                                bool entries_at_polygon_vertices);

 private:
  void finalize_entries(const tolerances& tol);
  void index_entries();

  fs_backend backend_ = fs_backend::exact;
  int num_cells_ = 0;
  std::vector<quad_cell> quads_;     // exact backend
  std::vector<poly_cell> polys_;     // polygon backend
  std::vector<cell_features> features_;
  std::vector<double> wall_lo_, wall_hi_;  // index 0 unused
  std::vector<height_entry> entries_;
  std::vector<int> bot_e_, top_e_, wlo_e_, whi_e_;
};

// ---------------------------------------------------------------------------
// Whole diagram: one strip per edge of S, plus the interface lines between
// consecutive strips, plus the mirrored strips for reversed subedges.

struct freespace_options {
  fs_backend backend = fs_backend::exact;
  double radius = 0.0;
  double ball_eps = 0.1;            // polygon backend only
  bool polygon_vertex_entries = false;
  tolerances tol;
};

class free_space_diagram {
 public:
  free_space_diagram(const polygonal_curve& S, const polygonal_curve& P,
                     const freespace_options& opt);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const fs_strip& row(int j) const { return rows_[j]; }
  const fs_strip& row_mirrored(int j) const { return rows_rev_[j]; }

  /// Free x-intervals (global) of the horizontal line at S-vertex v (one
  /// interval per cell; cell i's piece at index i, empty marked lo>hi).
  const std::vector<interval>& interface_line(int v) const { return interfaces_[v]; }

  const polygonal_curve& S() const { return *S_; }
  const polygonal_curve& P() const { return *P_; }
  double radius() const { return opt_.radius; }
  const freespace_options& options() const { return opt_; }

 private:
  const polygonal_curve* S_ = nullptr;
  const polygonal_curve* P_ = nullptr;
  freespace_options opt_;
  int cols_ = 0;
  std::vector<fs_strip> rows_, rows_rev_;
  std::vector<std::vector<interval>> interfaces_;  // per S-vertex 0..M
  std::optional<ball_polytope> ball_;
};

}  // namespace subtraj
