#include "simcontract/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace simcontract::exact {

namespace {

using boost::multiprecision::cpp_int;

/// In-place Gauss-Jordan. Returns the pivot columns.
std::vector<Index> reduce(RatMat& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    for (Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row)
      for (Index c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Rational inv = m(row, col);
    for (Index c = 0; c < m.cols(); ++c) m(row, c) /= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (Index c = 0; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational rational_from_double(double v) {
  if (!std::isfinite(v))
    throw std::invalid_argument("rational_from_double: value is not finite");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  for (int i = 0; i < 53 && mant != std::floor(mant); ++i) {
    mant *= 2.0;
    --exp;
  }
  Rational r(cpp_int(static_cast<long long>(mant)));
  if (exp > 0)
    r *= Rational(cpp_int(1) << exp);
  else if (exp < 0)
    r /= Rational(cpp_int(1) << -exp);
  return r;
}

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(cpp_int(s));
    const cpp_int num(s.substr(0, slash));
    const cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

RatMat RatMat::identity(Index n) {
  RatMat m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::from_double(const Matrix& src) {
  RatMat m(src.rows(), src.cols());
  for (Index r = 0; r < src.rows(); ++r)
    for (Index c = 0; c < src.cols(); ++c)
      m(r, c) = rational_from_double(src(r, c));
  return m;
}

RatMat RatMat::operator*(const RatMat& rhs) const {
  if (cols_ != rhs.rows_)
    throw DimensionError("RatMat multiply: inner dimensions differ");
  RatMat out(rows_, rhs.cols_);
  for (Index r = 0; r < rows_; ++r)
    for (Index k = 0; k < cols_; ++k) {
      const Rational& v = (*this)(r, k);
      if (v == 0) continue;
      for (Index c = 0; c < rhs.cols_; ++c) out(r, c) += v * rhs(k, c);
    }
  return out;
}

RatMat RatMat::operator-() const {
  RatMat out(rows_, cols_);
  for (Index r = 0; r < rows_; ++r)
    for (Index c = 0; c < cols_; ++c) out(r, c) = -(*this)(r, c);
  return out;
}

Matrix RatMat::to_double() const {
  Matrix out(rows_, cols_);
  for (Index r = 0; r < rows_; ++r)
    for (Index c = 0; c < cols_; ++c) out(r, c) = exact::to_double((*this)(r, c));
  return out;
}

RatMat hcat(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows()) throw DimensionError("RatMat hcat: row counts differ");
  RatMat out(a.rows(), a.cols() + b.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (Index c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

RatMat vcat(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.cols()) throw DimensionError("RatMat vcat: column counts differ");
  RatMat out(a.rows() + b.rows(), a.cols());
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (Index r = 0; r < b.rows(); ++r)
    for (Index c = 0; c < b.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

RatMat block_diag(const RatMat& a, const RatMat& b) {
  RatMat out(a.rows() + b.rows(), a.cols() + b.cols());
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (Index r = 0; r < b.rows(); ++r)
    for (Index c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

Index rank(const RatMat& m) {
  RatMat copy = m;
  return static_cast<Index>(reduce(copy).size());
}

RatMat kernel_basis(const RatMat& m) {
  RatMat copy = m;
  const std::vector<Index> pivots = reduce(copy);
  std::vector<bool> is_pivot(m.cols(), false);
  for (Index p : pivots) is_pivot[p] = true;

  RatMat basis(m.cols(), m.cols() - static_cast<Index>(pivots.size()));
  Index col = 0;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, col) = 1;
    for (Index k = 0; k < static_cast<Index>(pivots.size()); ++k)
      basis(pivots[k], col) = -copy(k, free);
    ++col;
  }
  return basis;
}

RatMat image_basis(const RatMat& m) {
  RatMat copy = m;
  const std::vector<Index> pivots = reduce(copy);
  RatMat basis(m.rows(), static_cast<Index>(pivots.size()));
  for (Index k = 0; k < static_cast<Index>(pivots.size()); ++k)
    for (Index r = 0; r < m.rows(); ++r) basis(r, k) = m(r, pivots[k]);
  return basis;
}

RatMat sum_basis(const RatMat& v, const RatMat& w) {
  return image_basis(hcat(v, w));
}

RatMat intersect_basis(const RatMat& v, const RatMat& w) {
  if (v.rows() != w.rows())
    throw DimensionError("RatMat intersect: ambient dimensions differ");
  // x = V a = W b; solve [V -W] (a; b) = 0 and map the a part back.
  const RatMat coeffs = kernel_basis(hcat(v, -w));
  RatMat a_part(v.cols(), coeffs.cols());
  for (Index r = 0; r < v.cols(); ++r)
    for (Index c = 0; c < coeffs.cols(); ++c) a_part(r, c) = coeffs(r, c);
  return image_basis(v * a_part);
}

RatMat preimage_basis(const RatMat& m, const RatMat& w) {
  if (m.rows() != w.rows())
    throw DimensionError("RatMat preimage: map codomain does not match ambient");
  const RatMat coeffs = kernel_basis(hcat(m, -w));
  RatMat x_part(m.cols(), coeffs.cols());
  for (Index r = 0; r < m.cols(); ++r)
    for (Index c = 0; c < coeffs.cols(); ++c) x_part(r, c) = coeffs(r, c);
  return image_basis(x_part);
}

RatConstrainedSystem from_double(const Matrix& A, const Matrix& G,
                                 const Matrix& C, const Matrix& H) {
  return RatConstrainedSystem{RatMat::from_double(A), RatMat::from_double(G),
                              RatMat::from_double(C), RatMat::from_double(H)};
}

RatMat consistent_basis(const RatConstrainedSystem& x) {
  const Index n = x.A.rows();
  RatMat ker_h = x.H.rows() == 0 ? RatMat::identity(n) : kernel_basis(x.H);
  const RatMat im_g = image_basis(x.G);
  RatMat v = ker_h;
  for (Index k = 0; k <= n; ++k) {
    RatMat next = intersect_basis(ker_h, preimage_basis(x.A, sum_basis(v, im_g)));
    const bool fixed = next.cols() >= v.cols();
    v = std::move(next);
    if (fixed) break;
  }
  return v;
}

Index consistent_dim(const RatConstrainedSystem& x) {
  return consistent_basis(x).cols();
}

Index relation_dim(const RatConstrainedSystem& x1,
                   const RatConstrainedSystem& x2) {
  if (x1.C.rows() != x2.C.rows())
    throw DimensionError("relation_dim: output dimensions differ");
  const RatMat a_hat = block_diag(x1.A, x2.A);
  const RatMat im_g_hat = image_basis(block_diag(x1.G, x2.G));
  const RatMat c_diff = hcat(x1.C, -x2.C);

  RatMat s = intersect_basis(
      block_diag(consistent_basis(x1), consistent_basis(x2)),
      kernel_basis(c_diff));
  for (Index k = 0; k <= s.cols() + 1; ++k) {
    RatMat next =
        intersect_basis(s, preimage_basis(a_hat, sum_basis(s, im_g_hat)));
    const bool fixed = next.cols() >= s.cols();
    s = std::move(next);
    if (fixed) break;
  }
  return s.cols();
}

RatGuarantee series_gar(const RatGuarantee& g1, const RatGuarantee& g2) {
  if (g1.Cy.rows() != g2.Cu.rows())
    throw DimensionError("RatGuarantee series: y/u dimensions differ");
  const Index n1 = g1.A.rows(), n2 = g2.A.rows();
  RatGuarantee out;
  out.A = block_diag(g1.A, g2.A);
  out.G = block_diag(g1.G, g2.G);
  out.Cu = hcat(g1.Cu, RatMat(g1.Cu.rows(), n2));
  out.Cy = hcat(RatMat(g2.Cy.rows(), n1), g2.Cy);
  RatMat matching = hcat(g1.Cy, -g2.Cu);
  out.H = vcat(vcat(hcat(g1.H, RatMat(g1.H.rows(), n2)),
                    hcat(RatMat(g2.H.rows(), n1), g2.H)),
               matching);
  return out;
}

}  // namespace simcontract::exact
