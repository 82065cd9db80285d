#pragma once

#include <memory>

#include "subtraj/candidates.hpp"
#include "subtraj/cover_structs.hpp"
#include "subtraj/point_query.hpp"
#include "subtraj/reach.hpp"
#include "subtraj/simplify.hpp"

namespace subtraj {

struct solver_stats {
  int rounds = 0;
  long long ground_size = 0;
  long long candidate_windows = 0;
  int simplification_size = 0;
  double t_freespace = 0.0, t_discretize = 0.0, t_greedy = 0.0, t_total = 0.0;
};

struct chosen_center {
  candidate_id id;
  subcurve_ref ref;
  interval_set proxy;  // coverage charged to this center when it was chosen
};

struct cover_solution {
  std::vector<chosen_center> centers;
  interval_set covered;  // union of proxies
  double radius = 0.0;   // coverage radius certified by the verifier
  bool verified = false;
  bool stuck = false;  // ground set not coverable by the candidate set
  solver_stats stats;
};

/// The greedy ground set in one of three shapes: the full per-edge molecular
/// coarsening (cubic solver), bare points shared across edges (coarse first
/// pass), or sparse per-edge pieces (output-sensitive second pass).
struct ground_set {
  enum class mode { molecular, direct, sparse };
  mode m = mode::direct;
  atomic_store atoms;
  std::vector<molecular_store> mols;
  std::vector<sparse_molecular> sparse;
};

/// Shared per-instance machinery of the greedy covers: simplification, exact
/// free space at radius 4*delta, strips, sweep passes, and the Type (I)
/// coverage table.
class cover_engine {
 public:
  cover_engine(const polygonal_curve& P, double delta, int ell, const tolerances& tol,
               simplifier_kind simp = simplifier_kind::greedy,
               bool build_arrangement = true);

  struct seq_ctx {
    const fs_strip* strip;
    int edge;
    bool mirrored;
    sweep_sequence seq;
    sweep_pass pass;
    std::vector<long long> candw;
  };

  const polygonal_curve& P() const { return *P_; }
  const polygonal_curve& S() const { return simp_.curve; }
  const free_space_diagram& diagram() const { return *fsd_; }
  double delta() const { return delta_; }
  int ell() const { return ell_; }
  const tolerances& tol() const { return tol_; }

  std::vector<seq_ctx>& seqs() { return seqs_; }
  const std::vector<candidate_id>& type1_ids() const { return type1_; }
  const std::vector<interval_set>& type1_cov() const { return type1_cov_; }

  /// per-edge molecular boundary values (sorted, deduplicated, with 0 and 1)
  const std::vector<std::vector<double>>& molecular_boundaries() const { return mol_bnd_; }
  /// all boundaries merged (the atomic arrangement)
  const std::vector<double>& atomic_boundaries() const { return atomic_bnd_; }

  interval_set candidate_proxy(const candidate_id& id) const;
  subcurve_ref candidate_ref(const candidate_id& id) const;
  polygonal_curve candidate_curve(const candidate_id& id) const {
    return candidate_ref(id).materialize(S());
  }

  const fs_strip& strip_of(int edge, bool mirrored) const {
    return mirrored ? fsd_->row_mirrored(edge) : fsd_->row(edge);
  }

  /// Greedy cover of the midpoints backing the ground set. Stops after
  /// `round_cap` rounds (<=0: unbounded); returns false on a cap overrun
  /// (partial result stays in `sol`).
  bool cover_a(ground_set& g, int round_cap, cover_solution& sol);

 private:
  const polygonal_curve* P_;
  double delta_;
  int ell_;
  tolerances tol_;
  simplification simp_;
  std::unique_ptr<free_space_diagram> fsd_;
  std::vector<seq_ctx> seqs_;
  std::vector<candidate_id> type1_;
  std::vector<interval_set> type1_cov_;
  std::vector<std::vector<double>> mol_bnd_;
  std::vector<double> atomic_bnd_;
};

/// Subtrajectory covering via the full arrangement (the cubic-size ground
/// set). Covers [0,1] at radius 4*delta with O(k log n) centers.
cover_solution solve_sc(const polygonal_curve& P, double delta, int ell,
                        const tolerances& tol = {},
                        simplifier_kind simp = simplifier_kind::greedy);

}  // namespace subtraj
