#include "subtraj/curve.hpp"

#include <algorithm>
#include <cmath>

namespace subtraj {

polygonal_curve::polygonal_curve(std::vector<point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw subtraj_error("polygonal curve needs at least 2 vertices");
  const std::size_t d = vertices_[0].size();
  if (d < 1) throw subtraj_error("polygonal curve needs dimension >= 1");
  for (const auto& v : vertices_) {
    if (v.size() != d) throw subtraj_error("inconsistent vertex dimension");
    for (double c : v)
      if (!std::isfinite(c)) throw subtraj_error("non-finite vertex coordinate");
  }
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i)
    if (vertices_[i] == vertices_[i + 1])
      throw subtraj_error("duplicate consecutive vertices are not allowed");
}

curve_param polygonal_curve::param_at(double global_t) const {
  const double n = static_cast<double>(num_edges());
  double clamped = std::clamp(global_t, 0.0, 1.0);
  int edge = static_cast<int>(std::floor(clamped * n)) + 1;
  edge = std::clamp(edge, 1, static_cast<int>(num_edges()));
  double local = clamped * n - (edge - 1);
  return canonical({edge, local});
}

double polygonal_curve::global_of(const curve_param& p) const {
  return (static_cast<double>(p.edge_index - 1) + p.local_t) / static_cast<double>(num_edges());
}

curve_param polygonal_curve::canonical(curve_param p) const {
  if (p.edge_index < 1 || p.edge_index > static_cast<int>(num_edges()))
    throw subtraj_error("curve_param edge index out of range");
  p.local_t = std::clamp(p.local_t, 0.0, 1.0);
  if (p.local_t >= 1.0 && p.edge_index < static_cast<int>(num_edges())) {
    p.edge_index += 1;
    p.local_t = 0.0;
  }
  return p;
}

point polygonal_curve::eval(const curve_param& p) const {
  if (p.edge_index < 1 || p.edge_index > static_cast<int>(num_edges()))
    throw subtraj_error("curve_param edge index out of range");
  return lerp(vertices_[p.edge_index - 1], vertices_[p.edge_index], p.local_t);
}

polygonal_curve polygonal_curve::subcurve(const curve_param& s0, const curve_param& t0) const {
  curve_param s = canonical(s0), t = canonical(t0);
  if (global_of(s) > global_of(t)) throw subtraj_error("subcurve requires s <= t");
  std::vector<point> verts;
  verts.push_back(eval(s));
  for (int v = s.edge_index; v < t.edge_index; ++v) {
    const point& pv = vertices_[v];
    if (pv != verts.back()) verts.push_back(pv);
  }
  point last = eval(t);
  if (last != verts.back())
    verts.push_back(last);
  else if (verts.size() == 1)
    verts.push_back(last);  // degenerate s == t: keep a 2-vertex stub
  if (verts.size() == 1) verts.push_back(verts[0]);
  if (verts.size() >= 2 && verts[0] == verts[1] && verts.size() == 2) {
    // Degenerate zero-length subcurve: represented as the same point twice.
    polygonal_curve c;
    c.vertices_ = verts;
    return c;
  }
  polygonal_curve c;
  c.vertices_ = std::move(verts);
  return c;
}

polygonal_curve polygonal_curve::reversed() const {
  polygonal_curve c;
  c.vertices_.assign(vertices_.rbegin(), vertices_.rend());
  return c;
}

double polygonal_curve::arc_length() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) s += dist(vertices_[i], vertices_[i + 1]);
  return s;
}

}  // namespace subtraj
