#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace simcontract {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when operands disagree on shapes or ambient spaces.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical cutoffs. Rank decisions and inclusion decisions are kept
/// separate: a singular value counts towards the rank iff
/// sigma > rank_rel * sigma_max * max(rows, cols), and a subspace counts
/// as contained iff the spectral norm of its containment residual is at
/// most `inclusion`.
struct Tolerance {
  double rank_rel = 1e-10;
  double inclusion = 1e-8;

  bool valid() const {
    return rank_rel > 0.0 && rank_rel < 1.0 && inclusion > 0.0 &&
           inclusion < 1.0;
  }
};

/// A linear subspace of R^n represented by an orthonormal basis matrix
/// (one column per dimension). The zero subspace carries a basis with no
/// columns; R^0 is the 0 x 0 case. All operations below accept matrices
/// with zero rows or columns.
struct Subspace {
  Matrix basis;

  Index ambient() const { return basis.rows(); }
  Index dim() const { return basis.cols(); }

  static Subspace zero(Index ambient) { return Subspace{Matrix(ambient, 0)}; }
  static Subspace full(Index ambient) {
    return Subspace{Matrix::Identity(ambient, ambient)};
  }
};

/// Largest singular value; 0 for matrices with an empty dimension.
double spectral_norm(const Matrix& m);

Matrix hcat(const Matrix& a, const Matrix& b);
Matrix vcat(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);

/// Orthonormal basis of the column span; dim equals the numerical rank.
///
/// `scale` is a reference magnitude for the zero decision: singular values
/// at or below rank_rel * max(sigma_max, scale) * max(rows, cols) are
/// treated as zero. Matrices computed from projectors or products are
/// numerically zero (entries of order eps times the operand scale) rather
/// than exactly zero, and a purely relative cutoff would hand them spurious
/// rank; callers pass the operand scale instead.
Subspace image(const Matrix& m, const Tolerance& tol = {}, double scale = 0.0);

/// Orthonormal basis of {x : m x = 0}. A matrix with no rows constrains
/// nothing, so its kernel is the full space. See image() for `scale`.
Subspace kernel(const Matrix& m, const Tolerance& tol = {}, double scale = 0.0);

/// V + W.
Subspace sum(const Subspace& v, const Subspace& w, const Tolerance& tol = {});

/// V intersect W, computed from the kernel of the stacked
/// orthogonal-complement projectors.
Subspace intersect(const Subspace& v, const Subspace& w,
                   const Tolerance& tol = {});

/// {x : m x in W}.
Subspace preimage(const Matrix& m, const Subspace& w,
                  const Tolerance& tol = {});

/// True iff W is contained in V within tol.inclusion.
bool contains(const Subspace& v, const Subspace& w, const Tolerance& tol = {});

/// Mutual containment.
bool same_subspace(const Subspace& v, const Subspace& w,
                   const Tolerance& tol = {});

/// Projection of S onto the coordinate block [start, start + len).
Subspace factor_project(const Subspace& s, Index start, Index len,
                        const Tolerance& tol = {});

/// V x W inside the concatenated ambient space (basis is block diagonal,
/// so orthonormality is preserved).
Subspace product(const Subspace& v, const Subspace& w);

/// Reinterpret V as living in rows [offset, offset + V.ambient()) of a
/// larger ambient space.
Subspace embed(const Subspace& v, Index offset, Index ambient);

/// I - B B^T for the basis B of v.
Matrix complement_projector(const Subspace& v);

}  // namespace simcontract
