#include "simcontract/subspace.hpp"

#include <Eigen/SVD>

#include <string>

namespace simcontract {

namespace {

Index numerical_rank(const Eigen::VectorXd& singular_values, Index rows,
                     Index cols, const Tolerance& tol, double scale) {
  if (singular_values.size() == 0) return 0;
  const double cutoff = tol.rank_rel * std::max(singular_values(0), scale) *
                        static_cast<double>(std::max(rows, cols));
  Index rank = 0;
  while (rank < singular_values.size() && singular_values(rank) > cutoff)
    ++rank;
  return rank;
}

void require_same_ambient(const Subspace& v, const Subspace& w,
                          const char* op) {
  if (v.ambient() != w.ambient())
    throw DimensionError(std::string(op) + ": ambient dimensions differ (" +
                         std::to_string(v.ambient()) + " vs " +
                         std::to_string(w.ambient()) + ")");
}

}  // namespace

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw DimensionError("hcat: row counts differ");
  Matrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw DimensionError("vcat: column counts differ");
  Matrix out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Subspace image(const Matrix& m, const Tolerance& tol, double scale) {
  if (m.rows() == 0 || m.cols() == 0) return Subspace{Matrix(m.rows(), 0)};
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Index rank =
      numerical_rank(svd.singularValues(), m.rows(), m.cols(), tol, scale);
  return Subspace{svd.matrixU().leftCols(rank)};
}

Subspace kernel(const Matrix& m, const Tolerance& tol, double scale) {
  if (m.cols() == 0) return Subspace{Matrix(0, 0)};
  if (m.rows() == 0) return Subspace::full(m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Index rank =
      numerical_rank(svd.singularValues(), m.rows(), m.cols(), tol, scale);
  return Subspace{svd.matrixV().rightCols(m.cols() - rank)};
}

Subspace sum(const Subspace& v, const Subspace& w, const Tolerance& tol) {
  require_same_ambient(v, w, "sum");
  return image(hcat(v.basis, w.basis), tol);
}

Subspace intersect(const Subspace& v, const Subspace& w,
                   const Tolerance& tol) {
  require_same_ambient(v, w, "intersect");
  if (v.dim() == 0 || w.dim() == 0) return Subspace::zero(v.ambient());
  // Projectors have unit scale, so 1 is the zero-decision reference.
  return kernel(vcat(complement_projector(v), complement_projector(w)), tol,
                1.0);
}

Subspace preimage(const Matrix& m, const Subspace& w, const Tolerance& tol) {
  if (m.rows() != w.ambient())
    throw DimensionError("preimage: map codomain does not match ambient (" +
                         std::to_string(m.rows()) + " vs " +
                         std::to_string(w.ambient()) + ")");
  return kernel(complement_projector(w) * m, tol, m.norm());
}

bool contains(const Subspace& v, const Subspace& w, const Tolerance& tol) {
  require_same_ambient(v, w, "contains");
  if (w.dim() == 0) return true;
  const Matrix residual = w.basis - v.basis * (v.basis.transpose() * w.basis);
  return spectral_norm(residual) <= tol.inclusion;
}

bool same_subspace(const Subspace& v, const Subspace& w,
                   const Tolerance& tol) {
  return contains(v, w, tol) && contains(w, v, tol);
}

Subspace factor_project(const Subspace& s, Index start, Index len,
                        const Tolerance& tol) {
  if (start < 0 || len < 0 || start + len > s.ambient())
    throw DimensionError("factor_project: block [" + std::to_string(start) +
                         ", " + std::to_string(start + len) +
                         ") outside ambient of dimension " +
                         std::to_string(s.ambient()));
  // Basis columns are unit vectors, so 1 is the zero-decision reference.
  return image(s.basis.middleRows(start, len), tol, 1.0);
}

Subspace product(const Subspace& v, const Subspace& w) {
  return Subspace{block_diag(v.basis, w.basis)};
}

Subspace embed(const Subspace& v, Index offset, Index ambient) {
  if (offset < 0 || offset + v.ambient() > ambient)
    throw DimensionError("embed: block outside target ambient space");
  Matrix basis = Matrix::Zero(ambient, v.dim());
  basis.middleRows(offset, v.ambient()) = v.basis;
  return Subspace{basis};
}

Matrix complement_projector(const Subspace& v) {
  return Matrix::Identity(v.ambient(), v.ambient()) -
         v.basis * v.basis.transpose();
}

}  // namespace simcontract
