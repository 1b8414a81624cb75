#include "simcontract/interconnect.hpp"

namespace simcontract {

namespace {

void require_valid(const std::vector<std::string>& errors, const char* what) {
  if (!errors.empty())
    throw DimensionError(std::string(what) + ": invalid operand: " + errors.front());
}

}  // namespace

GuaranteeSystem env_meet_sys(const ConstrainedSystem& e, const DrivenSystem& s) {
  require_valid(validate(e), "env_meet_sys");
  require_valid(validate(s), "env_meet_sys");
  if (e.output_dim() != s.input_dim())
    throw DimensionError("env_meet_sys: environment output dim " +
                         std::to_string(e.output_dim()) +
                         " does not match system input dim " +
                         std::to_string(s.input_dim()));

  const Index ne = e.state_dim(), n = s.state_dim();
  const Index m = s.input_dim(), p = s.output_dim();

  Matrix A = Matrix::Zero(ne + n, ne + n);
  A.topLeftCorner(ne, ne) = e.A;
  A.bottomLeftCorner(n, ne) = s.B * e.C;
  A.bottomRightCorner(n, n) = s.A;

  Matrix C = Matrix::Zero(m + p, ne + n);
  C.topLeftCorner(m, ne) = e.C;
  C.bottomRightCorner(p, n) = s.C;

  Matrix H = Matrix::Zero(e.constraint_dim(), ne + n);
  H.leftCols(ne) = e.H;

  return GuaranteeSystem{
      ConstrainedSystem{A, block_diag(e.G, s.G), C, H}, m, p};
}

GuaranteeSystem ass_meet_gar(const ConstrainedSystem& a,
                             const GuaranteeSystem& g) {
  require_valid(validate(a), "ass_meet_gar");
  require_valid(validate(g), "ass_meet_gar");
  if (a.output_dim() != g.u_dim)
    throw DimensionError("ass_meet_gar: assumption output dim " +
                         std::to_string(a.output_dim()) +
                         " does not match guarantee u dim " +
                         std::to_string(g.u_dim));

  const Index na = a.state_dim(), ng = g.base.state_dim();
  const Index m = a.output_dim();

  Matrix C = Matrix::Zero(m + g.y_dim, na + ng);
  C.topLeftCorner(m, na) = a.C;
  C.bottomRightCorner(g.y_dim, ng) = g.c_y();

  // Constraint rows: the operands' own constraints plus u-output matching.
  Matrix H = Matrix::Zero(a.constraint_dim() + g.base.constraint_dim() + m,
                          na + ng);
  H.topLeftCorner(a.constraint_dim(), na) = a.H;
  H.block(a.constraint_dim(), na, g.base.constraint_dim(), ng) = g.base.H;
  H.bottomLeftCorner(m, na) = a.C;
  H.bottomRightCorner(m, ng) = -g.c_u();

  return GuaranteeSystem{
      ConstrainedSystem{block_diag(a.A, g.base.A), block_diag(a.G, g.base.G),
                        C, H},
      m, g.y_dim};
}

DrivenSystem series_sigma(const DrivenSystem& s1, const DrivenSystem& s2) {
  require_valid(validate(s1), "series_sigma");
  require_valid(validate(s2), "series_sigma");
  if (s1.output_dim() != s2.input_dim())
    throw DimensionError("series_sigma: first output dim " +
                         std::to_string(s1.output_dim()) +
                         " does not match second input dim " +
                         std::to_string(s2.input_dim()));

  const Index n1 = s1.state_dim(), n2 = s2.state_dim();

  Matrix A = Matrix::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = s1.A;
  A.bottomLeftCorner(n2, n1) = s2.B * s1.C;
  A.bottomRightCorner(n2, n2) = s2.A;

  Matrix B = Matrix::Zero(n1 + n2, s1.input_dim());
  B.topRows(n1) = s1.B;

  Matrix C = Matrix::Zero(s2.output_dim(), n1 + n2);
  C.rightCols(n2) = s2.C;

  return DrivenSystem{A, B, C, block_diag(s1.G, s2.G)};
}

GuaranteeSystem series_gar(const GuaranteeSystem& g1,
                           const GuaranteeSystem& g2) {
  require_valid(validate(g1), "series_gar");
  require_valid(validate(g2), "series_gar");
  if (g1.y_dim != g2.u_dim)
    throw DimensionError("series_gar: first y dim " + std::to_string(g1.y_dim) +
                         " does not match second u dim " +
                         std::to_string(g2.u_dim));

  const Index n1 = g1.base.state_dim(), n2 = g2.base.state_dim();
  const Index q1 = g1.base.constraint_dim(), q2 = g2.base.constraint_dim();

  Matrix C = Matrix::Zero(g1.u_dim + g2.y_dim, n1 + n2);
  C.topLeftCorner(g1.u_dim, n1) = g1.c_u();
  C.bottomRightCorner(g2.y_dim, n2) = g2.c_y();

  Matrix H = Matrix::Zero(q1 + q2 + g1.y_dim, n1 + n2);
  H.topLeftCorner(q1, n1) = g1.base.H;
  H.block(q1, n1, q2, n2) = g2.base.H;
  H.bottomLeftCorner(g1.y_dim, n1) = g1.c_y();
  H.bottomRightCorner(g1.y_dim, n2) = -g2.c_u();

  return GuaranteeSystem{
      ConstrainedSystem{block_diag(g1.base.A, g2.base.A),
                        block_diag(g1.base.G, g2.base.G), C, H},
      g1.u_dim, g2.y_dim};
}

}  // namespace simcontract
