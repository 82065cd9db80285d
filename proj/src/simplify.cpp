#include "subtraj/simplify.hpp"

#include "subtraj/frechet.hpp"

namespace subtraj {

namespace {

curve_param vertex_param(const polygonal_curve& P, int v) {
  const int n = static_cast<int>(P.num_vertices());
  if (v >= n - 1) return {n - 1, 1.0};
  return {v + 1, 0.0};
}

bool shortcut_ok(const polygonal_curve& P, int a, int b, double delta) {
  if (b - a <= 1) return true;
  std::vector<point> seg = {P.vertex(a), P.vertex(b)};
  polygonal_curve s(std::move(seg));
  polygonal_curve piece = P.subcurve(vertex_param(P, a), vertex_param(P, b));
  return decide_frechet(s, piece, delta);
}

}  // namespace

simplification simplify(const polygonal_curve& P, double delta, simplifier_kind kind) {
  simplification out;
  const int n = static_cast<int>(P.num_vertices());
  if (kind == simplifier_kind::identity_for_tests) {
    out.curve = P;
    out.source_vertex.resize(n);
    for (int i = 0; i < n; ++i) out.source_vertex[i] = i;
    return out;
  }
  std::vector<point> verts;
  std::vector<int> src;
  int a = 0;
  verts.push_back(P.vertex(0));
  src.push_back(0);
  while (a < n - 1) {
    // exponential probe, then binary search for the furthest valid shortcut
    int lo = a + 1, hi = a + 1;
    int step = 1;
    while (a + step < n && shortcut_ok(P, a, a + step, delta)) {
      hi = a + step;
      step *= 2;
    }
    int upper = std::min(n - 1, a + step);
    // invariant: shortcut to `hi` is valid, shortcut beyond `upper` unknown
    lo = hi;
    while (lo < upper) {
      int mid = (lo + upper + 1) / 2;
      if (shortcut_ok(P, a, mid, delta))
        lo = mid;
      else
        upper = mid - 1;
    }
    verts.push_back(P.vertex(lo));
    src.push_back(lo);
    a = lo;
  }
  // Guard against collapses onto a repeated vertex (P may revisit points).
  std::vector<point> clean;
  std::vector<int> clean_src;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (!clean.empty() && verts[i] == clean.back()) continue;
    clean.push_back(verts[i]);
    clean_src.push_back(src[i]);
  }
  if (clean.size() < 2) {
    clean.push_back(P.vertex(n - 1));
    clean_src.push_back(n - 1);
    if (clean[0] == clean[1]) {
      // fully degenerate input guarded at ingestion; keep the two endpoints
      clean[1] = P.vertex(n - 1);
    }
  }
  out.curve = polygonal_curve(std::move(clean));
  out.source_vertex = std::move(clean_src);
  return out;
}

}  // namespace subtraj
