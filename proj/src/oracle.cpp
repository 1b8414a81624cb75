#include "simcontract/oracle.hpp"

#include <cmath>
#include <random>

namespace simcontract::oracle {

namespace {

Vector gaussian_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

/// Projector products are numerically zero (entries of order eps times the
/// operand scale) when the projected space is full; feeding them to a
/// rank-revealing solver would produce garbage drivings. Snap them to zero.
Matrix scrub(Matrix m, double scale) {
  if (m.norm() <= 1e-12 * std::max(1.0, scale)) m.setZero();
  return m;
}

}  // namespace

Stepper make_stepper(const Matrix& a, const Matrix& g, double dt) {
  const Index n = a.rows();
  const Matrix eye = Matrix::Identity(n, n);
  // Horner form of the degree-4 truncated exponential.
  Matrix inner = eye + (dt / 4.0) * a;
  inner = eye + (dt / 3.0) * (a * inner);
  inner = eye + (dt / 2.0) * (a * inner);   // I + dt/2 A + dt^2/6 A^2 + dt^3/24 A^3
  Stepper s;
  s.phi_a = eye + dt * (a * inner);
  s.phi_g = dt * (inner * g);
  return s;
}

ConsistentSampler::ConsistentSampler(const ConstrainedSystem& sys, double dt,
                                     const Tolerance& tol)
    : sys_(sys), dt_(dt), tol_(tol) {
  v_ = consistent_subspace(sys_, tol_);
  v_perp_ = complement_projector(v_);
  stepper_ = make_stepper(sys_.A, sys_.G, dt_);
  driving_solver_.compute(scrub(v_perp_ * stepper_.phi_g, stepper_.phi_g.norm()));
  excitation_basis_ = kernel(v_perp_ * sys_.G, tol_, sys_.G.norm()).basis;
}

Trajectory ConsistentSampler::sample(const Vector& x0, double horizon,
                                     std::uint64_t seed,
                                     double excitation) const {
  if (x0.size() != sys_.state_dim())
    throw DimensionError("sample: initial state has wrong dimension");
  const double scale = std::max(1.0, x0.norm());
  if ((v_perp_ * x0).norm() > tol_.inclusion * scale)
    throw std::domain_error(
        "sample: initial state is not in the consistent subspace");

  const auto steps = static_cast<Index>(std::llround(horizon / dt_));
  std::mt19937_64 rng(seed);

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.driving.reserve(steps);
  traj.outputs.reserve(steps + 1);

  Vector x = v_.basis * (v_.basis.transpose() * x0);
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  traj.outputs.push_back(sys_.C * x);

  for (Index k = 0; k < steps; ++k) {
    Vector d = driving_solver_.solve(-(v_perp_ * (stepper_.phi_a * x)));
    if (excitation_basis_.cols() > 0 && excitation > 0.0)
      d += excitation_basis_ * (excitation * gaussian_vector(excitation_basis_.cols(), rng));
    Vector next = stepper_.phi_a * x + stepper_.phi_g * d;
    next = v_.basis * (v_.basis.transpose() * next);
    x = std::move(next);
    traj.times.push_back(static_cast<double>(k + 1) * dt_);
    traj.states.push_back(x);
    traj.driving.push_back(std::move(d));
    traj.outputs.push_back(sys_.C * x);
  }
  return traj;
}

Trajectory sample_consistent_trajectory(const ConstrainedSystem& sys,
                                        const Vector& x0, double horizon,
                                        double dt, std::uint64_t seed,
                                        const Tolerance& tol) {
  return ConsistentSampler(sys, dt, tol).sample(x0, horizon, seed);
}

TrajectoryMatchReport validate_by_trajectories(
    const ConstrainedSystem& x1, const ConstrainedSystem& x2,
    const Subspace& relation, int trials, double horizon, double dt,
    std::uint64_t seed, double trial_tol, const Tolerance& tol) {
  const Index n1 = x1.state_dim(), n2 = x2.state_dim();
  if (relation.ambient() != n1 + n2)
    throw DimensionError(
        "validate_by_trajectories: relation ambient does not match the "
        "product state dimension");

  const ConsistentSampler sampler1(x1, dt, tol);
  const Stepper step2 = make_stepper(x2.A, x2.G, dt);
  const Matrix s_perp = complement_projector(relation);

  // Both the per-step driving choice of x2 and the in-fiber correction act
  // through constant matrices; factor them once.
  Eigen::CompleteOrthogonalDecomposition<Matrix> driving_solver(
      scrub(s_perp.rightCols(n2) * step2.phi_g, step2.phi_g.norm()));
  Eigen::CompleteOrthogonalDecomposition<Matrix> correction_solver(
      scrub(s_perp.rightCols(n2), 1.0));

  TrajectoryMatchReport report;
  report.trials = trials;
  report.trial_results.reserve(trials);

  for (int t = 0; t < trials; ++t) {
    TrialResult trial;
    trial.index = t;
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));

    if (relation.dim() == 0) {
      trial.passed = true;  // only the zero pair, which never moves
      report.trial_results.push_back(trial);
      continue;
    }

    Vector pair0 = relation.basis * gaussian_vector(relation.dim(), rng);
    if (pair0.norm() > 0) pair0 /= pair0.norm();

    try {
      const Trajectory traj1 =
          sampler1.sample(pair0.head(n1), horizon, seed * 0x9e3779b9ull + t);
      Vector z = pair0.tail(n2);

      const Index steps = static_cast<Index>(traj1.driving.size());
      for (Index k = 0; k <= steps; ++k) {
        const Vector& x = traj1.states[k];
        trial.output_mismatch = std::max(
            trial.output_mismatch, (x1.C * x - x2.C * z).lpNorm<Eigen::Infinity>());
        double violation = 0.0;
        if (x1.constraint_dim() > 0)
          violation = (x1.H * x).lpNorm<Eigen::Infinity>();
        if (x2.constraint_dim() > 0)
          violation = std::max(violation, (x2.H * z).lpNorm<Eigen::Infinity>());
        trial.constraint_violation = std::max(trial.constraint_violation, violation);
        if (k == steps) break;

        const Vector& x_next = traj1.states[k + 1];
        Vector pair_free(n1 + n2);
        pair_free << x_next, step2.phi_a * z;
        const Vector d2 = driving_solver.solve(-(s_perp * pair_free));
        Vector z_next = step2.phi_a * z + step2.phi_g * d2;

        Vector pair(n1 + n2);
        pair << x_next, z_next;
        const Vector residual = s_perp * pair;
        trial.relation_drift = std::max(trial.relation_drift, residual.norm());
        z_next += correction_solver.solve(-residual);
        z = std::move(z_next);
      }
      trial.passed = trial.output_mismatch <= trial_tol &&
                     trial.relation_drift <= trial_tol &&
                     trial.constraint_violation <= trial_tol;
      if (!trial.passed) trial.note = "tolerance exceeded";
    } catch (const std::exception& e) {
      trial.passed = false;
      trial.note = e.what();
    }

    if (!trial.passed) ++report.failures;
    report.max_output_mismatch =
        std::max(report.max_output_mismatch, trial.output_mismatch);
    report.max_relation_drift =
        std::max(report.max_relation_drift, trial.relation_drift);
    report.max_constraint_violation =
        std::max(report.max_constraint_violation, trial.constraint_violation);
    report.trial_results.push_back(std::move(trial));
  }
  return report;
}

bool pointwise_prop1_check(const Subspace& s, const ConstrainedSystem& x1,
                           const ConstrainedSystem& x2, int samples,
                           std::uint64_t seed, double check_tol,
                           const Tolerance& tol) {
  const Index n1 = x1.state_dim(), n2 = x2.state_dim();
  if (s.ambient() != n1 + n2)
    throw DimensionError(
        "pointwise_prop1_check: relation ambient does not match the product "
        "state dimension");
  if (s.dim() == 0) return true;

  const Subspace v1 = consistent_subspace(x1, tol);
  const Matrix v1_perp = complement_projector(v1);
  Eigen::CompleteOrthogonalDecomposition<Matrix> admissible_solver(
      scrub(v1_perp * x1.G, x1.G.norm()));
  const Matrix free_directions = kernel(v1_perp * x1.G, tol, x1.G.norm()).basis;

  const Matrix s_perp = complement_projector(s);
  Eigen::CompleteOrthogonalDecomposition<Matrix> matching_solver(
      scrub(s_perp.rightCols(n2) * x2.G, x2.G.norm()));

  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    Vector pair = s.basis * gaussian_vector(s.dim(), rng);
    if (pair.norm() > 0) pair /= pair.norm();
    const Vector x = pair.head(n1);
    const Vector z = pair.tail(n2);

    // Admissible driving: successor of x stays in V1.
    Vector d1 = admissible_solver.solve(-(v1_perp * (x1.A * x)));
    if (free_directions.cols() > 0)
      d1 += free_directions * gaussian_vector(free_directions.cols(), rng);
    const Vector x_succ = x1.A * x + x1.G * d1;
    if ((v1_perp * x_succ).norm() > check_tol) return false;

    Vector succ_free(n1 + n2);
    succ_free << x_succ, x2.A * z;
    const Vector d2 = matching_solver.solve(-(s_perp * succ_free));
    Vector succ(n1 + n2);
    succ << x_succ, x2.A * z + x2.G * d2;

    const bool in_relation = (s_perp * succ).norm() <= check_tol;
    const bool outputs_agree =
        (x1.C * x - x2.C * z).lpNorm<Eigen::Infinity>() <= check_tol;
    if (!in_relation || !outputs_agree) return false;
  }
  return true;
}

Index exact_consistent_dim(const ConstrainedSystem& x) {
  return exact::consistent_dim(exact::from_double(x.A, x.G, x.C, x.H));
}

Index exact_relation_dim(const ConstrainedSystem& x1,
                         const ConstrainedSystem& x2) {
  return exact::relation_dim(exact::from_double(x1.A, x1.G, x1.C, x1.H),
                             exact::from_double(x2.A, x2.G, x2.C, x2.H));
}

}  // namespace simcontract::oracle
