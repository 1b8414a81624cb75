#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "simcontract/interconnect.hpp"
#include "simcontract/verify.hpp"

namespace simcontract {

/// One simulation premise of a contract-level decision, together with the
/// two systems it compared (constructed interconnections included).
struct SimulationCheck {
  std::string name;
  ConstrainedSystem lhs;
  ConstrainedSystem rhs;
  SimulationReport report;
};

/// Verdict of a contract-level check; the verdict is the conjunction of
/// the recorded simulation premises.
struct ContractReport {
  bool verdict = false;
  std::vector<SimulationCheck> checks;
};

/// Thrown by series_compose when the operands are not series composable;
/// carries the failing report.
class NotComposableError : public std::runtime_error {
 public:
  explicit NotComposableError(ContractReport r)
      : std::runtime_error("contracts are not series composable"),
        report(std::move(r)) {}
  ContractReport report;
};

/// An environment is compatible with a contract iff it is simulated by the
/// contract's assumption.
ContractReport compatible(const ConstrainedSystem& e, const Contract& c,
                          const Tolerance& tol = {});

/// A system implements a contract iff the interconnection of the assumption
/// with the system is simulated by the guarantee. This single check covers
/// every compatible environment.
ContractReport implements(const DrivenSystem& s, const Contract& c,
                          const Tolerance& tol = {});

/// c1 refines c2 iff c2's assumption is simulated by c1's assumption and
/// the interconnection of c2's assumption with c1's guarantee is simulated
/// by c2's guarantee.
ContractReport refines(const Contract& c1, const Contract& c2,
                       const Tolerance& tol = {});

/// Necessary condition for a contract to admit an implementation: the
/// assumption is simulated by the guarantee restricted to its u output.
/// Not sufficient. The full report is available through `out`.
bool consistency_necessary(const Contract& c, const Tolerance& tol = {},
                           SimulationReport* out = nullptr);

/// c1 is series composable to c2 iff the y restriction of the assumption-
/// guarantee interconnection of c1 is simulated by c2's assumption.
ContractReport series_composable(const Contract& c1, const Contract& c2,
                                 const Tolerance& tol = {});

/// Series composition (c1's assumption, series interconnection of the
/// guarantees). Throws NotComposableError when the composability check
/// fails; the composition is only defined in the composable case.
Contract series_compose(const Contract& c1, const Contract& c2,
                        const Tolerance& tol = {});

/// Replaces the guarantee by its interconnection with the assumption. The
/// result accepts the same environments and the same implementations.
Contract saturate(const Contract& c);

}  // namespace simcontract
