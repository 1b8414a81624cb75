#include "simcontract/contracts.hpp"

namespace simcontract {

ContractReport compatible(const ConstrainedSystem& e, const Contract& c,
                          const Tolerance& tol) {
  if (e.output_dim() != c.assumption.output_dim())
    throw DimensionError("compatible: environment output dim " +
                         std::to_string(e.output_dim()) +
                         " does not match assumption output dim " +
                         std::to_string(c.assumption.output_dim()));
  ContractReport report;
  report.checks.push_back({"environment_simulated_by_assumption", e,
                           c.assumption, simulated_by(e, c.assumption, tol)});
  report.verdict = report.checks.front().report.holds;
  return report;
}

ContractReport implements(const DrivenSystem& s, const Contract& c,
                          const Tolerance& tol) {
  if (s.input_dim() != c.assumption.output_dim())
    throw DimensionError("implements: system input dim " +
                         std::to_string(s.input_dim()) +
                         " does not match assumption output dim " +
                         std::to_string(c.assumption.output_dim()));
  if (s.output_dim() != c.guarantee.y_dim)
    throw DimensionError("implements: system output dim " +
                         std::to_string(s.output_dim()) +
                         " does not match guarantee y dim " +
                         std::to_string(c.guarantee.y_dim));
  const GuaranteeSystem meet = env_meet_sys(c.assumption, s);
  ContractReport report;
  report.checks.push_back({"assumption_meet_system_simulated_by_guarantee",
                           meet.base, c.guarantee.base,
                           simulated_by(meet.base, c.guarantee.base, tol)});
  report.verdict = report.checks.front().report.holds;
  return report;
}

ContractReport refines(const Contract& c1, const Contract& c2,
                       const Tolerance& tol) {
  if (c1.u_dim() != c2.u_dim())
    throw DimensionError("refines: u dimensions differ (" +
                         std::to_string(c1.u_dim()) + " vs " +
                         std::to_string(c2.u_dim()) + ")");
  if (c1.y_dim() != c2.y_dim())
    throw DimensionError("refines: y dimensions differ (" +
                         std::to_string(c1.y_dim()) + " vs " +
                         std::to_string(c2.y_dim()) + ")");
  ContractReport report;
  report.checks.push_back(
      {"assumption2_simulated_by_assumption1", c2.assumption, c1.assumption,
       simulated_by(c2.assumption, c1.assumption, tol)});
  const GuaranteeSystem meet = ass_meet_gar(c2.assumption, c1.guarantee);
  report.checks.push_back(
      {"assumption2_meet_guarantee1_simulated_by_guarantee2", meet.base,
       c2.guarantee.base, simulated_by(meet.base, c2.guarantee.base, tol)});
  report.verdict =
      report.checks[0].report.holds && report.checks[1].report.holds;
  return report;
}

bool consistency_necessary(const Contract& c, const Tolerance& tol,
                           SimulationReport* out) {
  const SimulationReport report =
      simulated_by(c.assumption, restrict_output_u(c.guarantee), tol);
  if (out) *out = report;
  return report.holds;
}

ContractReport series_composable(const Contract& c1, const Contract& c2,
                                 const Tolerance& tol) {
  if (c1.y_dim() != c2.assumption.output_dim())
    throw DimensionError("series_composable: first contract y dim " +
                         std::to_string(c1.y_dim()) +
                         " does not match second assumption output dim " +
                         std::to_string(c2.assumption.output_dim()));
  const ConstrainedSystem meet_y =
      restrict_output_y(ass_meet_gar(c1.assumption, c1.guarantee));
  ContractReport report;
  report.checks.push_back({"meet_y_simulated_by_assumption2", meet_y,
                           c2.assumption,
                           simulated_by(meet_y, c2.assumption, tol)});
  report.verdict = report.checks.front().report.holds;
  return report;
}

Contract series_compose(const Contract& c1, const Contract& c2,
                        const Tolerance& tol) {
  ContractReport composable = series_composable(c1, c2, tol);
  if (!composable.verdict) throw NotComposableError(std::move(composable));
  return Contract{c1.assumption, series_gar(c1.guarantee, c2.guarantee)};
}

Contract saturate(const Contract& c) {
  return Contract{c.assumption, ass_meet_gar(c.assumption, c.guarantee)};
}

}  // namespace simcontract
