#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simcontract/models.hpp"
#include "simcontract/rational.hpp"
#include "simcontract/verify.hpp"

namespace simcontract::oracle {

/// Sampled evolution of a constrained system: states and outputs per grid
/// instant, driving values per interval. The grid is uniform and strictly
/// increasing.
struct Trajectory {
  std::vector<double> times;            // size steps + 1
  std::vector<Vector> states;           // size steps + 1
  std::vector<Vector> driving;          // size steps
  std::vector<Vector> outputs;          // size steps + 1
};

/// Fixed-step 4th-order integrator with zero-order-hold driving input,
/// specialized for x' = A x + G d. The step map is applied through the
/// truncated-exponential matrices, which for a linear system with constant
/// d over the step is identical to running the classical scheme.
struct Stepper {
  Matrix phi_a;  // I + dt A + ... + dt^4 A^4 / 24
  Matrix phi_g;  // (dt I + dt^2 A / 2 + dt^3 A^2 / 6 + dt^4 A^3 / 24) G
};

Stepper make_stepper(const Matrix& a, const Matrix& g, double dt);

/// Samples trajectories of one constrained system that honor the algebraic
/// constraint: per step the driving value is the least-squares choice that
/// keeps the propagated state in the consistent subspace, plus random
/// excitation in the directions {delta : G delta in V}; the residual is
/// projected back onto V after each step.
class ConsistentSampler {
 public:
  ConsistentSampler(const ConstrainedSystem& sys, double dt,
                    const Tolerance& tol = {});

  const Subspace& consistent() const { return v_; }

  /// Throws std::domain_error when x0 is not in the consistent subspace.
  Trajectory sample(const Vector& x0, double horizon, std::uint64_t seed,
                    double excitation = 0.3) const;

 private:
  ConstrainedSystem sys_;
  double dt_;
  Tolerance tol_;
  Subspace v_;
  Matrix v_perp_;           // complement projector of V
  Stepper stepper_;
  Eigen::CompleteOrthogonalDecomposition<Matrix> driving_solver_;
  Matrix excitation_basis_;  // basis of {delta : G delta in V}
};

Trajectory sample_consistent_trajectory(const ConstrainedSystem& sys,
                                        const Vector& x0, double horizon,
                                        double dt, std::uint64_t seed,
                                        const Tolerance& tol = {});

struct TrialResult {
  int index = 0;
  bool passed = false;
  double output_mismatch = 0.0;
  double relation_drift = 0.0;
  double constraint_violation = 0.0;
  std::string note;
};

struct TrajectoryMatchReport {
  int trials = 0;
  int failures = 0;
  double max_output_mismatch = 0.0;
  double max_relation_drift = 0.0;
  double max_constraint_violation = 0.0;
  std::vector<TrialResult> trial_results;

  bool passed() const { return trials > 0 && failures == 0; }
};

/// Trajectory-level confirmation of a simulation relation. Per trial a
/// start pair is drawn from the relation, a consistent trajectory of x1 is
/// sampled, and the driving of x2 is constructed per step by least squares
/// so that the pair stays in the relation. Reported per trial: the sup-norm
/// output mismatch over the grid, the relation drift (distance of the
/// propagated pair from the relation before the per-step correction), and
/// the worst constraint violation. A trial passes when all three stay at or
/// below `trial_tol`. Each trial derives its own random stream from
/// seed + trial index, so results do not depend on scheduling.
TrajectoryMatchReport validate_by_trajectories(
    const ConstrainedSystem& x1, const ConstrainedSystem& x2,
    const Subspace& relation, int trials, double horizon, double dt,
    std::uint64_t seed, double trial_tol = 1e-6, const Tolerance& tol = {});

/// Point-level probe of the one-step matching property: for random pairs in
/// S and random admissible drivings of x1, a matching driving of x2 must
/// keep the successor pair in S while outputs agree on the sampled pair.
bool pointwise_prop1_check(const Subspace& s, const ConstrainedSystem& x1,
                           const ConstrainedSystem& x2, int samples,
                           std::uint64_t seed, double check_tol = 1e-6,
                           const Tolerance& tol = {});

/// Fraction-exact dimensions, independent of the floating-point path.
/// Entries are converted exactly (every finite double is dyadic); NaN or
/// infinite entries throw.
Index exact_consistent_dim(const ConstrainedSystem& x);
Index exact_relation_dim(const ConstrainedSystem& x1,
                         const ConstrainedSystem& x2);

}  // namespace simcontract::oracle
