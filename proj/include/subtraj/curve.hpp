#pragma once

#include "subtraj/core.hpp"

namespace subtraj {

/// Position on a polygonal curve: 1-based edge index plus a local parameter
/// in [0,1] along that edge. Canonical form keeps local_t < 1 except at the
/// very last vertex, so cell-boundary membership stays exact.
struct curve_param {
  int edge_index = 1;
  double local_t = 0.0;

  friend bool operator==(const curve_param&, const curve_param&) = default;
};

/// Polygonal curve in R^d, n >= 2 vertices, globally parametrized over [0,1]
/// with edge i mapped linearly onto [(i-1)/(n-1), i/(n-1)].
class polygonal_curve {
 public:
  polygonal_curve() = default;
  explicit polygonal_curve(std::vector<point> vertices);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return vertices_.size() - 1; }
  int dimension() const { return vertices_.empty() ? 0 : static_cast<int>(vertices_[0].size()); }
  const point& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<point>& vertices() const { return vertices_; }

  curve_param param_at(double global_t) const;
  double global_of(const curve_param& p) const;
  curve_param canonical(curve_param p) const;

  point eval(const curve_param& p) const;
  point eval_global(double global_t) const { return eval(param_at(global_t)); }

  polygonal_curve subcurve(const curve_param& s, const curve_param& t) const;
  polygonal_curve reversed() const;

  double arc_length() const;

 private:
  std::vector<point> vertices_;
};

/// A subcurve of a host curve, kept as parameter references; reversal is a
/// flag, the host vertices are never rewritten.
struct subcurve_ref {
  curve_param start;
  curve_param end;
  bool reversed = false;

  polygonal_curve materialize(const polygonal_curve& host) const {
    polygonal_curve c = host.subcurve(start, end);
    return reversed ? c.reversed() : c;
  }
};

}  // namespace subtraj
