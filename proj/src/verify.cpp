#include "simcontract/verify.hpp"

namespace simcontract {

namespace {

void require_matching_outputs(const ConstrainedSystem& x1,
                              const ConstrainedSystem& x2, const char* op) {
  if (x1.output_dim() != x2.output_dim())
    throw DimensionError(std::string(op) + ": output dimensions differ (" +
                         std::to_string(x1.output_dim()) + " vs " +
                         std::to_string(x2.output_dim()) + ")");
}

Matrix output_difference(const ConstrainedSystem& x1,
                         const ConstrainedSystem& x2) {
  return hcat(x1.C, -x2.C);
}

}  // namespace

Subspace consistent_subspace(const ConstrainedSystem& x, const Tolerance& tol) {
  const Subspace ker_h = kernel(x.H, tol);
  const Subspace im_g = image(x.G, tol);
  Subspace v = ker_h;
  for (Index k = 0; k <= x.state_dim(); ++k) {
    Subspace next =
        intersect(ker_h, preimage(x.A, sum(v, im_g, tol), tol), tol);
    const bool fixed = next.dim() >= v.dim();
    v = std::move(next);
    if (fixed) break;
  }
  return v;
}

SimulationReport largest_simulation_relation(const ConstrainedSystem& x1,
                                             const ConstrainedSystem& x2,
                                             const Tolerance& tol) {
  require_matching_outputs(x1, x2, "largest_simulation_relation");

  SimulationReport report;
  report.tolerance = tol;

  const Index n1 = x1.state_dim(), n2 = x2.state_dim();
  const Subspace v1 = consistent_subspace(x1, tol);
  const Subspace v2 = consistent_subspace(x2, tol);
  report.v1_dim = v1.dim();
  report.v2_dim = v2.dim();

  const Matrix a_hat = block_diag(x1.A, x2.A);
  const Subspace im_g_hat = image(block_diag(x1.G, x2.G), tol);

  Subspace s =
      intersect(product(v1, v2), kernel(output_difference(x1, x2), tol), tol);
  for (Index k = 0; k <= s.dim() + 1; ++k) {
    Subspace next =
        intersect(s, preimage(a_hat, sum(s, im_g_hat, tol), tol), tol);
    ++report.iterations;
    const bool fixed = next.dim() >= s.dim();
    s = std::move(next);
    if (fixed) break;
  }

  report.relation = s;
  report.relation_dim = s.dim();

  // Side condition: driving freedom of x1 on V1 must be absorbable by x2.
  const Subspace lhs = embed(intersect(v1, image(x1.G, tol), tol), 0, n1 + n2);
  const Subspace rhs = sum(s, embed(image(x2.G, tol), n1, n1 + n2), tol);
  report.side_condition_ok = contains(rhs, lhs, tol);

  const Subspace pi1 = factor_project(s, 0, n1, tol);
  report.full = same_subspace(pi1, v1, tol);
  report.fullness_gap = v1.dim() - pi1.dim();
  report.holds = report.full && report.side_condition_ok;
  return report;
}

SimulationReport simulated_by(const ConstrainedSystem& x1,
                              const ConstrainedSystem& x2,
                              const Tolerance& tol) {
  return largest_simulation_relation(x1, x2, tol);
}

BisimilarityReport bisimilar(const ConstrainedSystem& x1,
                             const ConstrainedSystem& x2,
                             const Tolerance& tol) {
  require_matching_outputs(x1, x2, "bisimilar");
  BisimilarityReport report;
  report.forward = simulated_by(x1, x2, tol);
  report.backward = simulated_by(x2, x1, tol);
  report.bisimilar = report.forward.holds && report.backward.holds;
  return report;
}

RelationDiagnostics check_relation(const Subspace& s,
                                   const ConstrainedSystem& x1,
                                   const ConstrainedSystem& x2,
                                   bool require_full, const Tolerance& tol) {
  require_matching_outputs(x1, x2, "check_relation");
  const Index n1 = x1.state_dim(), n2 = x2.state_dim();
  if (s.ambient() != n1 + n2)
    throw DimensionError("check_relation: relation ambient " +
                         std::to_string(s.ambient()) +
                         " does not match product state dimension " +
                         std::to_string(n1 + n2));

  RelationDiagnostics diag;
  diag.fullness_required = require_full;

  const Matrix a_hat = block_diag(x1.A, x2.A);
  const Subspace im_g_hat = image(block_diag(x1.G, x2.G), tol);
  diag.invariant = contains(sum(s, im_g_hat, tol),
                            image(a_hat * s.basis, tol, a_hat.norm()), tol);

  diag.outputs_match =
      spectral_norm(output_difference(x1, x2) * s.basis) <= tol.inclusion;

  const Subspace pi1 = factor_project(s, 0, n1, tol);
  const Subspace pi2 = factor_project(s, n1, n2, tol);
  const Subspace v1 = consistent_subspace(x1, tol);
  if (diag.invariant) {
    // Invariance makes the projections themselves invariant, so membership
    // in the consistent subspace reduces to the constraint kernel.
    diag.proj1_in_v1 = spectral_norm(x1.H * pi1.basis) <= tol.inclusion;
    diag.proj2_in_v2 = spectral_norm(x2.H * pi2.basis) <= tol.inclusion;
  } else {
    diag.proj1_in_v1 = contains(v1, pi1, tol);
    diag.proj2_in_v2 = contains(consistent_subspace(x2, tol), pi2, tol);
  }

  const Subspace lhs = embed(intersect(v1, image(x1.G, tol), tol), 0, n1 + n2);
  const Subspace rhs = sum(s, embed(image(x2.G, tol), n1, n1 + n2), tol);
  diag.side_condition_ok = contains(rhs, lhs, tol);

  diag.full = !require_full || same_subspace(pi1, v1, tol);

  diag.ok = diag.proj1_in_v1 && diag.proj2_in_v2 && diag.outputs_match &&
            diag.invariant && diag.side_condition_ok && diag.full;

  if (!diag.ok) {
    auto add = [&](bool failed, const char* what) {
      if (!failed) return;
      if (!diag.failure.empty()) diag.failure += ", ";
      diag.failure += what;
    };
    add(!diag.proj1_in_v1, "projection into V1");
    add(!diag.proj2_in_v2, "projection into V2");
    add(!diag.outputs_match, "output rows");
    add(!diag.invariant, "invariance");
    add(!diag.side_condition_ok, "side condition");
    add(!diag.full, "fullness");
  }
  return diag;
}

}  // namespace simcontract
