// Shared systems and generators for the unit and acceptance suites.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "simcontract/contracts.hpp"
#include "simcontract/interconnect.hpp"

namespace fx {

using namespace simcontract;

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// --- The bundled integrator example -----------------------------------

/// x_a' = d_a, u = x_a: u is free up to having a derivative.
inline ConstrainedSystem assumption_free_u() {
  return ConstrainedSystem{mat({{0}}), mat({{1}}), mat({{1}}), Matrix(0, 1)};
}

/// Single integrator as a guarantee: u free, y' = u.
inline GuaranteeSystem guarantee_integrator() {
  return GuaranteeSystem{
      ConstrainedSystem{mat({{0, 0}, {1, 0}}), mat({{1}, {0}}),
                        mat({{1, 0}, {0, 1}}), Matrix(0, 2)},
      1, 1};
}

/// Double integrator as a guarantee: u free, y'' = u. Three states: the
/// chain (u, y', y); with u as an output a two-state realization cannot
/// exist.
inline GuaranteeSystem guarantee_double_integrator() {
  return GuaranteeSystem{
      ConstrainedSystem{mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}),
                        mat({{1}, {0}, {0}}), mat({{1, 0, 0}, {0, 0, 1}}),
                        Matrix(0, 3)},
      1, 1};
}

inline Contract contract_example() {
  return Contract{assumption_free_u(), guarantee_integrator()};
}

/// x' = u, y = x, no driving.
inline DrivenSystem plant_single_integrator() {
  return DrivenSystem{mat({{0}}), mat({{1}}), mat({{1}}), Matrix(1, 0)};
}

/// w' = d: output with a free derivative.
inline ConstrainedSystem sys_free_deriv() {
  return ConstrainedSystem{mat({{0}}), mat({{1}}), mat({{1}}), Matrix(0, 1)};
}

/// w' = 0: frozen output.
inline ConstrainedSystem sys_frozen() {
  return ConstrainedSystem{mat({{0}}), Matrix(1, 0), mat({{1}}), Matrix(0, 1)};
}

/// Free assumption of a given output dimension: x' = d, u = x.
inline ConstrainedSystem assumption_free(Index w) {
  return ConstrainedSystem{Matrix::Zero(w, w), Matrix::Identity(w, w),
                           Matrix::Identity(w, w), Matrix(0, w)};
}

/// Guarantee whose u part is a copy of the assumption and whose y is a
/// fresh free signal; any dimension-compatible plant implements the
/// contract (assumption, this).
inline GuaranteeSystem guarantee_free_y(const ConstrainedSystem& a, Index y_dim) {
  const Index na = a.state_dim();
  Matrix c = Matrix::Zero(a.output_dim() + y_dim, na + y_dim);
  c.topLeftCorner(a.output_dim(), na) = a.C;
  c.bottomRightCorner(y_dim, y_dim) = Matrix::Identity(y_dim, y_dim);
  Matrix h = Matrix::Zero(a.constraint_dim(), na + y_dim);
  h.leftCols(na) = a.H;
  return GuaranteeSystem{
      ConstrainedSystem{block_diag(a.A, Matrix::Zero(y_dim, y_dim)),
                        block_diag(a.G, Matrix::Identity(y_dim, y_dim)), c, h},
      a.output_dim(), y_dim};
}

// --- Random generation --------------------------------------------------

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng);
  }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(eng); }
};

/// Integer entries in [lo, hi] with extra mass on zero.
inline Matrix random_int_matrix(Index rows, Index cols, int lo, int hi,
                                Rng& rng) {
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m(r, c) = rng.uniform(0, 2) == 0 ? 0.0
                                       : static_cast<double>(rng.uniform(lo, hi));
  return m;
}

/// Random constrained system with small-integer entries and a fixed output
/// dimension. Diagonal shift keeps the spectrum mildly stable so that
/// trajectory validation operates at unit scale.
inline ConstrainedSystem random_constrained(Index max_n, Index w, Rng& rng,
                                            bool stabilize = true) {
  const Index n = rng.uniform(1, static_cast<int>(max_n));
  const Index s = rng.uniform(0, static_cast<int>(n));
  const Index q = rng.uniform(0, 2);
  Matrix a = random_int_matrix(n, n, -1, 1, rng);
  if (stabilize) a -= Matrix::Identity(n, n);
  return ConstrainedSystem{a, random_int_matrix(n, s, -1, 1, rng),
                           random_int_matrix(w, n, -1, 1, rng),
                           random_int_matrix(q, n, -2, 2, rng)};
}

/// Extra driving column: the result simulates the original.
inline ConstrainedSystem with_extra_driving(const ConstrainedSystem& x,
                                            Rng& rng) {
  const Index n = x.state_dim();
  return ConstrainedSystem{x.A, hcat(x.G, random_int_matrix(n, 1, -1, 1, rng)),
                           x.C, x.H};
}

/// Extra constraint row: the result is simulated by the original.
inline ConstrainedSystem with_extra_constraint(const ConstrainedSystem& x,
                                               Rng& rng) {
  const Index n = x.state_dim();
  return ConstrainedSystem{x.A, x.G, x.C,
                           vcat(x.H, random_int_matrix(1, n, -1, 1, rng))};
}

/// Unimodular integer change of coordinates together with its exact inverse.
inline void unimodular_pair(Index n, Rng& rng, Matrix& t, Matrix& t_inv) {
  t = Matrix::Identity(n, n);
  t_inv = Matrix::Identity(n, n);
  const int ops = rng.uniform(1, 3);
  for (int k = 0; k < ops; ++k) {
    const Index i = rng.uniform(0, static_cast<int>(n) - 1);
    Index j = rng.uniform(0, static_cast<int>(n) - 1);
    if (n > 1)
      while (j == i) j = rng.uniform(0, static_cast<int>(n) - 1);
    if (i == j) continue;
    const double c = rng.uniform(0, 1) == 0 ? 1.0 : -1.0;
    Matrix e = Matrix::Identity(n, n);
    e(i, j) = c;
    Matrix e_inv = Matrix::Identity(n, n);
    e_inv(i, j) = -c;
    t = e * t;
    t_inv = t_inv * e_inv;
  }
}

/// Similarity transform: the result is bisimilar to the original.
inline ConstrainedSystem similarity(const ConstrainedSystem& x, Rng& rng) {
  Matrix t, t_inv;
  unimodular_pair(x.state_dim(), rng, t, t_inv);
  return ConstrainedSystem{t * x.A * t_inv, t * x.G, x.C * t_inv, x.H * t_inv};
}

inline GuaranteeSystem with_extra_driving(const GuaranteeSystem& g, Rng& rng) {
  return GuaranteeSystem{with_extra_driving(g.base, rng), g.u_dim, g.y_dim};
}

/// Random plant with small-integer entries, mildly stable.
inline DrivenSystem random_plant(Index max_n, Index m, Index p, Rng& rng) {
  const Index n = rng.uniform(1, static_cast<int>(max_n));
  const Index s = rng.uniform(0, 1);
  Matrix a = random_int_matrix(n, n, -1, 1, rng) - Matrix::Identity(n, n);
  return DrivenSystem{a, random_int_matrix(n, m, -1, 1, rng),
                      random_int_matrix(p, n, -1, 1, rng),
                      random_int_matrix(n, s, -1, 1, rng)};
}

// --- Relation builders ---------------------------------------------------

/// {(x, L x) : x in dom} as a subspace of the concatenated space.
inline Subspace graph_subspace(const Subspace& dom, const Matrix& l,
                               const Tolerance& tol = {}) {
  return image(vcat(dom.basis, l * dom.basis), tol);
}

/// Lifts a full simulation relation S_e of an environment by an assumption
/// to the relation {(x_e, x, x_a, x)} between the two interconnections with
/// a shared plant of state dimension n.
inline Subspace lift_shared_plant_relation(const Subspace& s_e, Index ne,
                                           Index na, Index n,
                                           const Tolerance& tol = {}) {
  const Index cols = s_e.dim() + n;
  Matrix basis = Matrix::Zero(ne + n + na + n, cols);
  basis.block(0, 0, ne, s_e.dim()) = s_e.basis.topRows(ne);
  basis.block(ne + n, 0, na, s_e.dim()) = s_e.basis.bottomRows(na);
  basis.block(ne, s_e.dim(), n, n) = Matrix::Identity(n, n);
  basis.block(ne + n + na, s_e.dim(), n, n) = Matrix::Identity(n, n);
  return image(basis, tol);
}

/// The product relation between an assumption meet a series interconnection
/// and a series interconnection of guarantees, glued from relations s1
/// (on (a1, x1) x g1), r (on (a1, x1) x a2) and s2 (on (a2, x2) x g2). The
/// shared a2 coordinates are existentially projected out.
inline Subspace series_product_relation(const Subspace& s1, const Subspace& r,
                                        const Subspace& s2, Index na1,
                                        Index n1, Index n2, Index ng1,
                                        Index ng2, Index na2,
                                        const Tolerance& tol = {}) {
  const Index total = na1 + n1 + n2 + ng1 + ng2 + na2;
  auto selector = [total](std::initializer_list<std::pair<Index, Index>>
                              blocks) {
    Index rows = 0;
    for (const auto& b : blocks) rows += b.second;
    Matrix sel = Matrix::Zero(rows, total);
    Index at = 0;
    for (const auto& [offset, len] : blocks) {
      sel.block(at, offset, len, len) = Matrix::Identity(len, len);
      at += len;
    }
    return sel;
  };

  const Index a1 = 0, x1 = na1, x2 = na1 + n1, g1 = na1 + n1 + n2,
              g2 = na1 + n1 + n2 + ng1, a2 = na1 + n1 + n2 + ng1 + ng2;
  Subspace glued = preimage(selector({{a1, na1}, {x1, n1}, {g1, ng1}}), s1, tol);
  glued = intersect(
      glued, preimage(selector({{a1, na1}, {x1, n1}, {a2, na2}}), r, tol), tol);
  glued = intersect(
      glued, preimage(selector({{a2, na2}, {x2, n2}, {g2, ng2}}), s2, tol),
      tol);
  return factor_project(glued, 0, na1 + n1 + n2 + ng1 + ng2, tol);
}

}  // namespace fx
