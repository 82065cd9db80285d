#include "subtraj/candidates.hpp"

namespace subtraj {

std::vector<candidate_id> enumerate_vertex_spans(int num_vertices, int ell) {
  std::vector<candidate_id> out;
  if (ell < 2) throw subtraj_error("complexity bound must be at least 2");
  for (int span = 1; span <= ell; span *= 2) {
    for (int a = 0; a + span <= num_vertices - 1; ++a) {
      candidate_id id;
      id.type = candidate_type::vertex_span;
      id.a = a;
      id.b = a + span;
      out.push_back(id);
    }
  }
  return out;
}

std::vector<sweep_sequence> build_sweep_sequences(const fs_strip& strip, int edge, bool mirrored) {
  const int m = strip.num_entries();
  std::vector<sweep_sequence> out;
  if (m < 2) throw subtraj_error("strip entry set must contain 0 and 1");

  sweep_sequence affix;
  affix.edge = edge;
  affix.mirrored = mirrored;
  affix.windows.reserve(2 * m - 1);
  for (int i = 0; i < m; ++i) affix.windows.push_back({0, i});
  for (int i = 1; i < m; ++i) affix.windows.push_back({i, m - 1});
  out.push_back(std::move(affix));

  for (int gap = 1; gap <= m - 1; gap *= 2) {
    sweep_sequence seq;
    seq.edge = edge;
    seq.mirrored = mirrored;
    seq.windows.reserve(m + gap);
    for (int i = 0; i < gap; ++i) seq.windows.push_back({0, i});
    for (int i = 0; i + gap <= m - 1; ++i) seq.windows.push_back({i, i + gap});
    for (int i = m - gap; i < m; ++i) seq.windows.push_back({i, m - 1});
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<candidate_id> enumerate_subedge_candidates(const fs_strip& strip, int edge,
                                                       bool mirrored) {
  const int m = strip.num_entries();
  std::vector<candidate_id> out;
  for (int i = 0; i < m; ++i) {
    candidate_id lo;
    lo.type = candidate_type::edge_affix;
    lo.edge = edge;
    lo.mirrored = mirrored;
    lo.a = 0;
    lo.b = i;
    out.push_back(lo);
    if (i != 0) {
      candidate_id hi = lo;
      hi.a = i;
      hi.b = m - 1;
      out.push_back(hi);
    }
  }
  for (int gap = 1; gap <= m - 1; gap *= 2) {
    for (int i = 0; i + gap <= m - 1; ++i) {
      candidate_id id;
      id.type = candidate_type::edge_subedge;
      id.edge = edge;
      id.mirrored = mirrored;
      id.a = i;
      id.b = i + gap;
      out.push_back(id);
    }
  }
  return out;
}

subcurve_ref resolve_candidate(const candidate_id& id, const polygonal_curve& S,
                               const fs_strip& strip) {
  subcurve_ref ref;
  if (id.type == candidate_type::vertex_span) {
    const int last_edge = static_cast<int>(S.num_edges());
    ref.start = (id.a >= last_edge) ? curve_param{last_edge, 1.0} : curve_param{id.a + 1, 0.0};
    ref.end = (id.b >= last_edge) ? curve_param{last_edge, 1.0} : curve_param{id.b + 1, 0.0};
    ref.reversed = false;
    return ref;
  }
  double ya = strip.entry_y(id.a);
  double yb = strip.entry_y(id.b);
  if (!id.mirrored) {
    ref.start = S.canonical({id.edge + 1, ya});
    ref.end = S.canonical({id.edge + 1, yb});
    ref.reversed = false;
  } else {
    ref.start = S.canonical({id.edge + 1, 1.0 - yb});
    ref.end = S.canonical({id.edge + 1, 1.0 - ya});
    ref.reversed = true;
  }
  return ref;
}

}  // namespace subtraj
