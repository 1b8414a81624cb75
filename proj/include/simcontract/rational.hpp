#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "simcontract/subspace.hpp"

namespace simcontract::exact {

using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion; every finite double is a dyadic rational.
/// Throws std::invalid_argument on NaN or infinity.
Rational rational_from_double(double v);

/// Parses "p", "-p" or "p/q" with arbitrary-precision integers.
Rational rational_from_string(const std::string& s);

double to_double(const Rational& r);

/// Dense rational matrix, row major. Only what fraction-exact subspace
/// algebra needs: no decompositions, just elimination.
class RatMat {
 public:
  RatMat() = default;
  RatMat(Index rows, Index cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RatMat identity(Index n);
  static RatMat from_double(const Matrix& m);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  Rational& operator()(Index r, Index c) { return a_[r * cols_ + c]; }
  const Rational& operator()(Index r, Index c) const { return a_[r * cols_ + c]; }

  RatMat operator*(const RatMat& rhs) const;
  RatMat operator-() const;

  Matrix to_double() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Rational> a_;
};

RatMat hcat(const RatMat& a, const RatMat& b);
RatMat vcat(const RatMat& a, const RatMat& b);
RatMat block_diag(const RatMat& a, const RatMat& b);

/// Rank by fraction-exact Gauss-Jordan elimination.
Index rank(const RatMat& m);

/// Columns spanning {x : m x = 0}.
RatMat kernel_basis(const RatMat& m);

/// Pivot columns of m: a basis (not normalized) of the column span.
RatMat image_basis(const RatMat& m);

RatMat sum_basis(const RatMat& v, const RatMat& w);
RatMat intersect_basis(const RatMat& v, const RatMat& w);

/// Basis of {x : m x in span(w)}.
RatMat preimage_basis(const RatMat& m, const RatMat& w);

/// Exact mirror of a constrained system.
struct RatConstrainedSystem {
  RatMat A, G, C, H;
};

RatConstrainedSystem from_double(const Matrix& A, const Matrix& G,
                                 const Matrix& C, const Matrix& H);

/// Dimension of the consistent subspace, by the same fixed-point iteration
/// as the floating-point path but over exact fractions (no tolerances).
Index consistent_dim(const RatConstrainedSystem& x);
RatMat consistent_basis(const RatConstrainedSystem& x);

/// Dimension of the largest-relation fixed point between two systems.
Index relation_dim(const RatConstrainedSystem& x1,
                   const RatConstrainedSystem& x2);

/// Exact mirror of the guarantee series interconnection, used to emit
/// composed model files without leaving exact arithmetic.
struct RatGuarantee {
  RatMat A, G, Cu, Cy, H;
};

RatGuarantee series_gar(const RatGuarantee& g1, const RatGuarantee& g2);

}  // namespace simcontract::exact
