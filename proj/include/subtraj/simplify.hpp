#pragma once

#include "subtraj/curve.hpp"

namespace subtraj {

enum class simplifier_kind { greedy, identity_for_tests };

/// Vertex-restricted simplification of P. `source_vertex[i]` is the index of
/// the vertex of P that became vertex i of the simplification.
struct simplification {
  polygonal_curve curve;
  std::vector<int> source_vertex;
};

/// Computes S with d_F(S, P) <= delta <= 2*delta by greedy shortcutting: each
/// shortcut edge keeps Frechet distance <= delta to the subcurve it replaces.
simplification simplify(const polygonal_curve& P, double delta,
                        simplifier_kind kind = simplifier_kind::greedy);

}  // namespace subtraj
