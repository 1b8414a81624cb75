#include "simcontract/models.hpp"

namespace simcontract {

namespace {

void check_finite(const Matrix& m, const char* name,
                  std::vector<std::string>& out) {
  if (!m.allFinite())
    out.push_back(std::string(name) + ": entries must be finite");
}

void check_shape(const Matrix& m, const char* name, Index rows, Index cols,
                 std::vector<std::string>& out) {
  if (m.rows() != rows)
    out.push_back(std::string(name) + ": expected " + std::to_string(rows) +
                  " rows, got " + std::to_string(m.rows()));
  if (cols >= 0 && m.cols() != cols)
    out.push_back(std::string(name) + ": expected " + std::to_string(cols) +
                  " columns, got " + std::to_string(m.cols()));
}

}  // namespace

std::vector<std::string> validate(const DrivenSystem& s) {
  std::vector<std::string> errors;
  if (s.A.rows() != s.A.cols())
    errors.push_back("A: must be square, got " + std::to_string(s.A.rows()) +
                     "x" + std::to_string(s.A.cols()));
  const Index n = s.A.rows();
  check_shape(s.B, "B", n, -1, errors);
  check_shape(s.G, "G", n, -1, errors);
  if (s.C.cols() != n)
    errors.push_back("C: expected " + std::to_string(n) + " columns, got " +
                     std::to_string(s.C.cols()));
  check_finite(s.A, "A", errors);
  check_finite(s.B, "B", errors);
  check_finite(s.C, "C", errors);
  check_finite(s.G, "G", errors);
  return errors;
}

std::vector<std::string> validate(const ConstrainedSystem& s) {
  std::vector<std::string> errors;
  if (s.A.rows() != s.A.cols())
    errors.push_back("A: must be square, got " + std::to_string(s.A.rows()) +
                     "x" + std::to_string(s.A.cols()));
  const Index n = s.A.rows();
  check_shape(s.G, "G", n, -1, errors);
  if (s.C.cols() != n)
    errors.push_back("C: expected " + std::to_string(n) + " columns, got " +
                     std::to_string(s.C.cols()));
  if (s.H.cols() != n)
    errors.push_back("H: expected " + std::to_string(n) + " columns, got " +
                     std::to_string(s.H.cols()));
  check_finite(s.A, "A", errors);
  check_finite(s.G, "G", errors);
  check_finite(s.C, "C", errors);
  check_finite(s.H, "H", errors);
  return errors;
}

std::vector<std::string> validate(const GuaranteeSystem& g) {
  std::vector<std::string> errors = validate(g.base);
  if (g.u_dim < 0 || g.y_dim < 0)
    errors.push_back("output partition: u and y row counts must be >= 0");
  else if (g.u_dim + g.y_dim != g.base.output_dim())
    errors.push_back("output partition: u rows (" + std::to_string(g.u_dim) +
                     ") + y rows (" + std::to_string(g.y_dim) +
                     ") must equal output rows (" +
                     std::to_string(g.base.output_dim()) + ")");
  return errors;
}

std::vector<std::string> validate(const Contract& c) {
  std::vector<std::string> errors;
  for (const auto& e : validate(c.assumption))
    errors.push_back("assumption: " + e);
  for (const auto& e : validate(c.guarantee)) errors.push_back("guarantee: " + e);
  if (c.assumption.output_dim() != c.guarantee.u_dim)
    errors.push_back("u-dimension mismatch: assumption output dim " +
                     std::to_string(c.assumption.output_dim()) +
                     ", guarantee u dim " + std::to_string(c.guarantee.u_dim));
  return errors;
}

ConstrainedSystem restrict_output_u(const GuaranteeSystem& g) {
  return ConstrainedSystem{g.base.A, g.base.G, g.c_u(), g.base.H};
}

ConstrainedSystem restrict_output_y(const GuaranteeSystem& g) {
  return ConstrainedSystem{g.base.A, g.base.G, g.c_y(), g.base.H};
}

}  // namespace simcontract
