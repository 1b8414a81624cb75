#pragma once

#include <string>

#include "simcontract/models.hpp"

namespace simcontract {

/// Result of a simulation decision between two constrained systems.
///
/// `relation` is the largest subspace S of X1 x X2 that is contained in
/// V1 x V2, matches outputs, and is invariant for the product dynamics
/// modulo the product driving directions. The verdict decomposes as
/// holds = full && side_condition_ok, where `full` means the projection of
/// S onto X1 equals the consistent subspace V1, and `side_condition_ok`
/// means (V1 ∩ im G1) x {0} is contained in S + {0} x im G2. The relation
/// is returned even when the verdict is negative, for diagnosis.
struct SimulationReport {
  bool holds = false;
  bool full = false;
  bool side_condition_ok = false;
  int iterations = 0;
  Subspace relation;
  Index v1_dim = 0;
  Index v2_dim = 0;
  Index relation_dim = 0;
  Index fullness_gap = 0;  // v1_dim minus the dimension of the projection
  Tolerance tolerance;
};

struct BisimilarityReport {
  bool bisimilar = false;
  SimulationReport forward;
  SimulationReport backward;
};

/// Per-condition outcome of checking a candidate relation. `failure` names
/// the failed conditions ("output rows", "invariance", ...), empty when ok.
struct RelationDiagnostics {
  bool ok = false;
  bool proj1_in_v1 = false;
  bool proj2_in_v2 = false;
  bool outputs_match = false;
  bool invariant = false;
  bool side_condition_ok = false;
  bool full = true;
  bool fullness_required = false;
  std::string failure;
};

/// Largest subspace V with A V ⊂ V + im G and V ⊂ ker H, computed by the
/// decreasing fixed-point iteration V_{k+1} = ker H ∩ A^{-1}(V_k + im G)
/// started from V_0 = ker H. Dimensions strictly decrease until the fixed
/// point, so at most state_dim + 1 iterations run.
Subspace consistent_subspace(const ConstrainedSystem& x,
                             const Tolerance& tol = {});

/// Computes the largest simulation relation of x1 by x2 and decides
/// whether x1 is simulated by x2. Starts from
/// S_0 = (V1 x V2) ∩ ker [C1 -C2] and iterates
/// S_{k+1} = S_k ∩ Ahat^{-1}(S_k + im Ghat) with the block-diagonal product
/// matrices; equality is detected by dimension. Requires equal output
/// dimensions.
SimulationReport largest_simulation_relation(const ConstrainedSystem& x1,
                                             const ConstrainedSystem& x2,
                                             const Tolerance& tol = {});

/// Alias of largest_simulation_relation; the verdict field decides x1 ≼ x2.
SimulationReport simulated_by(const ConstrainedSystem& x1,
                              const ConstrainedSystem& x2,
                              const Tolerance& tol = {});

/// Mutual simulation.
BisimilarityReport bisimilar(const ConstrainedSystem& x1,
                             const ConstrainedSystem& x2,
                             const Tolerance& tol = {});

/// Verifies that a given subspace S of X1 x X2 is a simulation relation of
/// x1 by x2: projections lie in the consistent subspaces (when the
/// invariance condition holds this reduces to projections lying in the
/// constraint kernels), outputs match on S, the product dynamics map S into
/// S + im Ghat, and the driving side condition holds. With `require_full`
/// the projection onto X1 must equal V1.
RelationDiagnostics check_relation(const Subspace& s,
                                   const ConstrainedSystem& x1,
                                   const ConstrainedSystem& x2,
                                   bool require_full,
                                   const Tolerance& tol = {});

}  // namespace simcontract
