#pragma once

#include <string>
#include <vector>

#include "simcontract/subspace.hpp"

namespace simcontract {

/// Open linear system with input, output and driving variable:
///   x' = A x + B u + G d,   y = C x.
struct DrivenSystem {
  Matrix A;  // n x n
  Matrix B;  // n x m
  Matrix C;  // p x n
  Matrix G;  // n x s

  Index state_dim() const { return A.rows(); }
  Index input_dim() const { return B.cols(); }
  Index output_dim() const { return C.rows(); }
  Index driving_dim() const { return G.cols(); }
};

/// Autonomous driven system with an algebraic constraint:
///   x' = A x + G d,   w = C x,   0 = H x.
/// Environments and assumptions are systems of this form; a constraint
/// block with zero rows means the system is unconstrained.
struct ConstrainedSystem {
  Matrix A;  // n x n
  Matrix G;  // n x s
  Matrix C;  // w x n
  Matrix H;  // q x n

  Index state_dim() const { return A.rows(); }
  Index driving_dim() const { return G.cols(); }
  Index output_dim() const { return C.rows(); }
  Index constraint_dim() const { return H.rows(); }
};

/// Constrained system whose output rows are partitioned into a u block
/// followed by a y block.
struct GuaranteeSystem {
  ConstrainedSystem base;
  Index u_dim = 0;
  Index y_dim = 0;

  Matrix c_u() const { return base.C.topRows(u_dim); }
  Matrix c_y() const { return base.C.bottomRows(y_dim); }
};

/// Pair of assumptions and guarantees. The assumption's output dimension
/// must agree with the guarantee's u block.
struct Contract {
  ConstrainedSystem assumption;
  GuaranteeSystem guarantee;

  Index u_dim() const { return assumption.output_dim(); }
  Index y_dim() const { return guarantee.y_dim; }
};

/// Each validate overload returns a list of problems (empty means ok);
/// messages name the offending matrix and the expected shape. Validation
/// never throws.
std::vector<std::string> validate(const DrivenSystem& s);
std::vector<std::string> validate(const ConstrainedSystem& s);
std::vector<std::string> validate(const GuaranteeSystem& g);
std::vector<std::string> validate(const Contract& c);

/// Same system with only the u rows (resp. y rows) of the output left.
/// A, G and H are unchanged.
ConstrainedSystem restrict_output_u(const GuaranteeSystem& g);
ConstrainedSystem restrict_output_y(const GuaranteeSystem& g);

}  // namespace simcontract
