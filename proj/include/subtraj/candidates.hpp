#pragma once

#include "subtraj/freespace.hpp"

namespace subtraj {

/// Candidate center curves are subcurves of the simplification S:
///  - vertex spans: S[v_a, v_b] with b - a a power of two,
///  - edge affixes and subedges between extremal heights of one edge, in both
///    orientations.
enum class candidate_type : std::int8_t { vertex_span = 0, edge_affix = 1, edge_subedge = 2 };

struct candidate_id {
  candidate_type type;
  int edge = -1;         // S-edge (0-based) for subedge candidates
  bool mirrored = false; // evaluated on the mirrored strip (reversed subcurve)
  int a = 0, b = 0;      // vertex span: vertex indices; subedge: entry indices
  friend bool operator==(const candidate_id&, const candidate_id&) = default;
  friend auto operator<=>(const candidate_id&, const candidate_id&) = default;
};

/// All vertex spans of S with power-of-two length up to 2^floor(log2(ell)).
std::vector<candidate_id> enumerate_vertex_spans(int num_vertices, int ell);

/// A sweep over windows of one strip: a list of (start, end) entry-index
/// pairs whose consecutive elements advance each coordinate by at most one
/// entry. First and last pair are degenerate (a == b).
struct sweep_sequence {
  int edge = -1;
  bool mirrored = false;
  std::vector<std::pair<int, int>> windows;  // entry indices, start <= end
};

/// The sweep family of one strip: one affix sweep plus two per power-of-two
/// gap (the mirrored ones are built against the mirrored strip by the caller).
std::vector<sweep_sequence> build_sweep_sequences(const fs_strip& strip, int edge, bool mirrored);

/// Every affix/subedge candidate of `strip` appears as a window of some
/// sequence from build_sweep_sequences.
std::vector<candidate_id> enumerate_subedge_candidates(const fs_strip& strip, int edge,
                                                       bool mirrored);

/// Resolve a candidate into a subcurve reference on S (global parameters).
subcurve_ref resolve_candidate(const candidate_id& id, const polygonal_curve& S,
                               const fs_strip& strip);

}  // namespace subtraj
