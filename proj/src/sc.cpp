#include "subtraj/sc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace subtraj {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

cover_engine::cover_engine(const polygonal_curve& P, double delta, int ell,
                           const tolerances& tol, simplifier_kind simp_kind,
                           bool build_arrangement)
    : P_(&P), delta_(delta), ell_(ell), tol_(tol) {
  if (!(delta > 0)) throw subtraj_error("delta must be positive");
  if (ell < 2) throw subtraj_error("ell must be at least 2");
  simp_ = simplify(P, delta, simp_kind);

  freespace_options opt;
  opt.backend = fs_backend::exact;
  opt.radius = 4.0 * delta;
  opt.tol = tol;
  fsd_ = std::make_unique<free_space_diagram>(simp_.curve, P, opt);

  const int M = fsd_->rows();
  for (int e = 0; e < M; ++e) {
    for (bool mirrored : {false, true}) {
      const fs_strip& strip = strip_of(e, mirrored);
      for (auto& seq : build_sweep_sequences(strip, e, mirrored)) {
        seq_ctx ctx;
        ctx.strip = &strip;
        ctx.edge = e;
        ctx.mirrored = mirrored;
        ctx.seq = std::move(seq);
        window_maintainer wm(strip, ctx.seq);
        ctx.pass = wm.run();
        seqs_.push_back(std::move(ctx));
      }
    }
  }

  // Type (I) candidates and their coverage (anchored at vertex heights).
  type1_ = enumerate_vertex_spans(static_cast<int>(simp_.curve.num_vertices()), ell_);
  const double Mv = static_cast<double>(simp_.curve.num_edges());
  for (const auto& id : type1_) {
    double s = static_cast<double>(id.a) / Mv;
    double t = static_cast<double>(id.b) / Mv;
    type1_cov_.push_back(reach_cover(*fsd_, s, t));
  }

  // Molecular boundaries per edge: boundary values of every non-empty slice
  // at every entry height of the forward strip.
  mol_bnd_.resize(M);
  if (!build_arrangement) return;
  for (int e = 0; e < M; ++e) {
    const fs_strip& strip = fsd_->row(e);
    std::vector<double>& bnd = mol_bnd_[e];
    bnd.push_back(0.0);
    bnd.push_back(1.0);
    for (int h = 0; h < strip.num_entries(); ++h) {
      for (int c = 0; c < strip.cells(); ++c) {
        if (!strip.alive(c, h)) continue;
        bnd.push_back(strip.left_at_entry(c, h));
        bnd.push_back(strip.right_at_entry(c, h));
      }
    }
    std::sort(bnd.begin(), bnd.end());
    std::vector<double> dedup;
    for (double v : bnd) {
      if (dedup.empty() || v > dedup.back() + tol_.dedup) dedup.push_back(v);
    }
    if (dedup.back() < 1.0) dedup.push_back(1.0);
    bnd = std::move(dedup);
  }
  {
    std::size_t total = 0;
    for (const auto& b : mol_bnd_) total += b.size();
    atomic_bnd_.reserve(total);
    for (const auto& b : mol_bnd_) atomic_bnd_.insert(atomic_bnd_.end(), b.begin(), b.end());
    std::sort(atomic_bnd_.begin(), atomic_bnd_.end());
    std::vector<double> dedup;
    dedup.reserve(atomic_bnd_.size());
    for (double v : atomic_bnd_) {
      if (dedup.empty() || v > dedup.back() + tol_.dedup) dedup.push_back(v);
    }
    if (dedup.back() < 1.0) dedup.push_back(1.0);
    atomic_bnd_ = std::move(dedup);
  }
}

subcurve_ref cover_engine::candidate_ref(const candidate_id& id) const {
  if (id.type == candidate_type::vertex_span)
    return resolve_candidate(id, simp_.curve, fsd_->row(0));
  return resolve_candidate(id, simp_.curve, strip_of(id.edge, id.mirrored));
}

interval_set cover_engine::candidate_proxy(const candidate_id& id) const {
  if (id.type == candidate_type::vertex_span) {
    const double Mv = static_cast<double>(simp_.curve.num_edges());
    return reach_cover(*fsd_, id.a / Mv, id.b / Mv);
  }
  const fs_strip& strip = strip_of(id.edge, id.mirrored);
  window_state st = compute_window_state(strip, id.a, id.b);
  return proxy_cov(strip, st, id.a, id.b);
}

bool cover_engine::cover_a(ground_set& g, int round_cap, cover_solution& sol) {
  const int M = fsd_->rows();
  atomic_store& atoms = g.atoms;
  // initial per-edge weighted point sets
  auto edge_points = [&](int e) {
    std::vector<weighted_point> Q;
    switch (g.m) {
      case ground_set::mode::molecular:
        for (int k = 0; k < g.mols[e].size(); ++k)
          if (g.mols[e].weight(k) > 0) Q.push_back({g.mols[e].mid(k), g.mols[e].weight(k)});
        break;
      case ground_set::mode::sparse:
        for (int k = 0; k < g.sparse[e].size(); ++k)
          if (g.sparse[e].weight(k) > 0) Q.push_back({g.sparse[e].mid(k), g.sparse[e].weight(k)});
        break;
      case ground_set::mode::direct:
        for (int k = 0; k < atoms.size(); ++k)
          if (atoms.alive(k)) Q.push_back({atoms.midpoint(k), 1});
        break;
    }
    return Q;
  };
  {
    std::vector<std::vector<weighted_point>> Q(M);
    for (int e = 0; e < M; ++e) Q[e] = edge_points(e);
    for (auto& ctx : seqs_)
      ctx.candw = batch_point_query(*ctx.strip, ctx.seq, ctx.pass, Q[ctx.edge]);
  }

  auto type1_residual = [&](int idx) {
    long long s = 0;
    for (const auto& p : type1_cov_[idx].parts()) s += atoms.count_alive(p.lo, p.hi);
    return s;
  };

  int rounds = 0;
  while (atoms.alive_total() > 0) {
    if (round_cap > 0 && rounds >= round_cap) {
      sol.stats.rounds += rounds;
      return false;
    }
    // argmax over Type (I), then sequences (II/III)
    long long best = 0;
    int best_t1 = -1;
    int best_seq = -1, best_pos = -1;
    for (int i = 0; i < static_cast<int>(type1_.size()); ++i) {
      long long w = type1_residual(i);
      if (w > best) {
        best = w;
        best_t1 = i;
      }
    }
    for (int s = 0; s < static_cast<int>(seqs_.size()); ++s) {
      const auto& cw = seqs_[s].candw;
      for (int p = 0; p < static_cast<int>(cw.size()); ++p) {
        if (cw[p] > best) {
          best = cw[p];
          best_t1 = -1;
          best_seq = s;
          best_pos = p;
        }
      }
    }
    if (best <= 0) {
      // uncoverable leftovers: report and stop
      sol.stuck = true;
      sol.stats.rounds += rounds;
      return true;
    }

    chosen_center center;
    if (best_t1 >= 0) {
      center.id = type1_[best_t1];
      center.proxy = type1_cov_[best_t1];
    } else {
      const auto& ctx = seqs_[best_seq];
      auto [hs, ht] = ctx.seq.windows[best_pos];
      candidate_id id;
      id.type = candidate_type::edge_subedge;
      id.edge = ctx.edge;
      id.mirrored = ctx.mirrored;
      id.a = hs;
      id.b = ht;
      center.id = id;
      center.proxy = proxy_cov_at(*ctx.strip, ctx.seq, best_pos);
    }
    center.ref = candidate_ref(center.id);

    // retire the covered midpoints and update the per-edge weights
    std::vector<std::vector<std::pair<int, long long>>> deltas(M);
    std::vector<int> killed;
    for (const auto& part : center.proxy.parts()) {
      atoms.cover_range(part.lo, part.hi, g.m == ground_set::mode::direct ? &killed : nullptr);
      if (g.m == ground_set::mode::molecular)
        for (int e = 0; e < M; ++e) g.mols[e].cover_range(part.lo, part.hi, atoms, &deltas[e]);
      else if (g.m == ground_set::mode::sparse)
        for (int e = 0; e < M; ++e) g.sparse[e].cover_range(part.lo, part.hi, atoms, &deltas[e]);
    }
    // subtract the newly covered weight from every sequence
    std::vector<weighted_point> shared_dq;
    if (g.m == ground_set::mode::direct) {
      std::sort(killed.begin(), killed.end());
      for (int k : killed) shared_dq.push_back({atoms.midpoint(k), 1});
    }
    std::vector<std::vector<weighted_point>> dqs(M);
    if (g.m != ground_set::mode::direct) {
      for (int e = 0; e < M; ++e) {
        for (const auto& [k, d] : deltas[e]) {
          double x = g.m == ground_set::mode::molecular ? g.mols[e].mid(k) : g.sparse[e].mid(k);
          dqs[e].push_back({x, d});
        }
        std::sort(dqs[e].begin(), dqs[e].end(),
                  [](const weighted_point& a, const weighted_point& b) { return a.x < b.x; });
      }
    }
    for (auto& ctx : seqs_) {
      const auto& dq = g.m == ground_set::mode::direct ? shared_dq : dqs[ctx.edge];
      if (dq.empty()) continue;
      std::vector<long long> dw = batch_point_query(*ctx.strip, ctx.seq, ctx.pass, dq);
      for (std::size_t p = 0; p < dw.size(); ++p) ctx.candw[p] -= dw[p];
    }
    sol.covered = sol.covered.unite(center.proxy);
    sol.centers.push_back(std::move(center));
    ++rounds;
  }
  sol.stats.rounds += rounds;
  return true;
}

cover_solution solve_sc(const polygonal_curve& P, double delta, int ell, const tolerances& tol,
                        simplifier_kind simp) {
  double t0 = now_seconds();
  cover_engine eng(P, delta, ell, tol, simp);
  double t1 = now_seconds();

  ground_set g;
  g.m = ground_set::mode::molecular;
  g.atoms = atomic_store(eng.atomic_boundaries());
  g.mols.reserve(eng.molecular_boundaries().size());
  for (const auto& bnd : eng.molecular_boundaries()) g.mols.emplace_back(bnd, g.atoms);
  double t2 = now_seconds();

  cover_solution sol;
  sol.stats.ground_size = g.atoms.size();
  sol.stats.simplification_size = static_cast<int>(eng.S().num_vertices());
  for (const auto& ctx : eng.seqs()) sol.stats.candidate_windows += ctx.seq.windows.size();
  eng.cover_a(g, 0, sol);
  double t3 = now_seconds();

  sol.radius = 4.0 * delta;
  std::vector<polygonal_curve> centers;
  for (const auto& c : sol.centers) centers.push_back(c.ref.materialize(eng.S()));
  sol.verified = verify_full_coverage(centers, P, sol.radius, 1e-6);
  sol.stats.t_freespace = t1 - t0;
  sol.stats.t_discretize = t2 - t1;
  sol.stats.t_greedy = t3 - t2;
  sol.stats.t_total = now_seconds() - t0;
  return sol;
}

}  // namespace subtraj
