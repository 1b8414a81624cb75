// Command-line front end: model-file checks, composition emission and
// trajectory validation with machine-readable reports.
//
// Exit codes: 0 verdict true / all trials pass, 1 verdict false or trial
// failure, 2 usage or parse error, 3 dimension mismatch.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "simcontract/contracts.hpp"
#include "simcontract/model_io.hpp"
#include "simcontract/oracle.hpp"

namespace {

using namespace simcontract;
using io::ordered_json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDimension = 3;

struct CommonOptions {
  std::string file;
  bool json = false;
  bool witness = false;
  std::optional<double> tol_rank;
  std::optional<double> tol_incl;
};

struct ValidateOptions {
  int trials = 50;
  double horizon = 5.0;
  double dt = 1e-3;
  std::uint64_t seed = 0;
};

const std::vector<std::string> kCheckKinds = {
    "simulation", "implements", "refines", "compatible", "composable",
    "consistency"};

double env_or(const char* name, double fallback) {
  const char* value = std::getenv(name);
  if (!value) return fallback;
  try {
    size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != std::string(value).size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw io::ModelError(std::string("environment variable ") + name +
                         " is not a number: '" + value + "'");
  }
}

/// Precedence: flag > environment > model file > default.
Tolerance resolve_tolerance(const io::ModelFile& mf, const CommonOptions& opt) {
  Tolerance tol;
  if (mf.has_tolerance) tol = mf.tolerance;
  tol.rank_rel = env_or("SIMCONTRACT_TOL_RANK", tol.rank_rel);
  tol.inclusion = env_or("SIMCONTRACT_TOL_INCL", tol.inclusion);
  if (opt.tol_rank) tol.rank_rel = *opt.tol_rank;
  if (opt.tol_incl) tol.inclusion = *opt.tol_incl;
  if (!tol.valid())
    throw io::ModelError("tolerances must lie strictly between 0 and 1");
  return tol;
}

ordered_json matrix_rows(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json simulation_check_json(const SimulationCheck& check,
                                   bool include_basis) {
  const SimulationReport& r = check.report;
  ordered_json j;
  j["name"] = check.name;
  j["lhs_states"] = check.lhs.state_dim();
  j["rhs_states"] = check.rhs.state_dim();
  j["holds"] = r.holds;
  j["full"] = r.full;
  j["side_condition_ok"] = r.side_condition_ok;
  j["iterations"] = r.iterations;
  j["v1_dim"] = r.v1_dim;
  j["v2_dim"] = r.v2_dim;
  j["relation_dim"] = r.relation_dim;
  j["fullness_gap"] = r.fullness_gap;
  if (include_basis) j["relation_basis"] = matrix_rows(r.relation.basis);
  return j;
}

ordered_json report_header(const std::string& command, const std::string& kind,
                           const CommonOptions& opt,
                           const std::vector<std::string>& operands,
                           const Tolerance& tol) {
  ordered_json j;
  j["tool"] = "simcontract";
  j["command"] = command;
  if (!kind.empty()) j["kind"] = kind;
  j["file"] = opt.file;
  ordered_json ops = ordered_json::array();
  for (const auto& o : operands) ops.push_back(o);
  j["operands"] = std::move(ops);
  j["tolerance"] = {{"rank_rel", tol.rank_rel}, {"inclusion", tol.inclusion}};
  return j;
}

void print_check_human(const SimulationCheck& check, bool witness) {
  const SimulationReport& r = check.report;
  std::cout << "  " << check.name << ": holds=" << (r.holds ? "true" : "false")
            << " full=" << (r.full ? "true" : "false")
            << " side_condition=" << (r.side_condition_ok ? "true" : "false")
            << "\n    v1_dim=" << r.v1_dim << " v2_dim=" << r.v2_dim
            << " relation_dim=" << r.relation_dim
            << " fullness_gap=" << r.fullness_gap
            << " iterations=" << r.iterations << "\n";
  if (witness && r.relation.dim() > 0) {
    std::cout << "    relation basis (columns span the relation):\n";
    for (Index i = 0; i < r.relation.basis.rows(); ++i) {
      std::cout << "     ";
      for (Index c = 0; c < r.relation.basis.cols(); ++c)
        std::cout << " " << io::format_double(r.relation.basis(i, c));
      std::cout << "\n";
    }
  }
}

/// Runs one named check against the model file. `kind` has been validated.
ContractReport run_check(const io::ModelFile& mf, const std::string& kind,
                         const std::vector<std::string>& operands,
                         const Tolerance& tol) {
  auto need = [&](size_t count) {
    if (operands.size() != count)
      throw io::ModelError("check " + kind + " takes " + std::to_string(count) +
                           " operand(s), got " +
                           std::to_string(operands.size()));
  };
  if (kind == "simulation") {
    need(2);
    ContractReport report;
    const ConstrainedSystem lhs = io::constrained_view(mf, operands[0]);
    const ConstrainedSystem rhs = io::constrained_view(mf, operands[1]);
    report.checks.push_back({operands[0] + "_simulated_by_" + operands[1], lhs,
                             rhs, simulated_by(lhs, rhs, tol)});
    report.verdict = report.checks.front().report.holds;
    return report;
  }
  if (kind == "implements") {
    need(2);
    return implements(io::driven_view(mf, operands[0]),
                      io::contract_view(mf, operands[1]), tol);
  }
  if (kind == "refines") {
    need(2);
    return refines(io::contract_view(mf, operands[0]),
                   io::contract_view(mf, operands[1]), tol);
  }
  if (kind == "compatible") {
    need(2);
    return compatible(io::constrained_view(mf, operands[0]),
                      io::contract_view(mf, operands[1]), tol);
  }
  if (kind == "composable") {
    need(2);
    return series_composable(io::contract_view(mf, operands[0]),
                             io::contract_view(mf, operands[1]), tol);
  }
  need(1);  // consistency
  ContractReport report;
  const Contract c = io::contract_view(mf, operands[0]);
  SimulationReport sim;
  report.verdict = consistency_necessary(c, tol, &sim);
  report.checks.push_back({"assumption_simulated_by_guarantee_u", c.assumption,
                           restrict_output_u(c.guarantee), sim});
  return report;
}

int cmd_check(const CommonOptions& opt, const std::string& kind,
              const std::vector<std::string>& operands) {
  const io::ModelFile mf = io::parse_model_file(opt.file);
  const Tolerance tol = resolve_tolerance(mf, opt);
  const ContractReport report = run_check(mf, kind, operands, tol);

  if (opt.json) {
    ordered_json j = report_header("check", kind, opt, operands, tol);
    j["verdict"] = report.verdict;
    ordered_json checks = ordered_json::array();
    for (const auto& check : report.checks)
      checks.push_back(simulation_check_json(check, true));
    j["checks"] = std::move(checks);
    std::cout << io::dump_json(j);
  } else {
    std::cout << "check " << kind;
    for (const auto& o : operands) std::cout << " " << o;
    std::cout << ": " << (report.verdict ? "true" : "false") << "\n";
    for (const auto& check : report.checks) print_check_human(check, opt.witness);
  }
  return report.verdict ? kExitTrue : kExitFalse;
}

int cmd_compose(const CommonOptions& opt, const std::string& c1,
                const std::string& c2, const std::string& out_path) {
  const io::ModelFile mf = io::parse_model_file(opt.file);
  const Tolerance tol = resolve_tolerance(mf, opt);
  const Contract con1 = io::contract_view(mf, c1);
  const Contract con2 = io::contract_view(mf, c2);
  try {
    const Contract composed = series_compose(con1, con2, tol);
    io::write_composed_model(out_path, mf, c1, c2, composed);
    if (opt.json) {
      ordered_json j = report_header("compose", "", opt, {c1, c2}, tol);
      j["verdict"] = true;
      j["output"] = out_path;
      j["guarantee_states"] = composed.guarantee.base.state_dim();
      std::cout << io::dump_json(j);
    } else {
      std::cout << "compose " << c1 << " " << c2 << ": wrote " << out_path
                << "\n";
    }
    return kExitTrue;
  } catch (const NotComposableError& e) {
    if (opt.json) {
      ordered_json j = report_header("compose", "", opt, {c1, c2}, tol);
      j["verdict"] = false;
      j["error"] = "not series composable";
      ordered_json checks = ordered_json::array();
      for (const auto& check : e.report.checks)
        checks.push_back(simulation_check_json(check, true));
      j["checks"] = std::move(checks);
      std::cout << io::dump_json(j);
    } else {
      std::cout << "compose " << c1 << " " << c2
                << ": not series composable\n";
      for (const auto& check : e.report.checks)
        print_check_human(check, opt.witness);
    }
    return kExitFalse;
  }
}

int cmd_inspect(const CommonOptions& opt, const std::string& name,
                bool exact) {
  const io::ModelFile mf = io::parse_model_file(opt.file);
  const Tolerance tol = resolve_tolerance(mf, opt);
  const ConstrainedSystem sys = io::constrained_view(mf, name);
  const Subspace v = consistent_subspace(sys, tol);

  std::optional<Index> exact_dim;
  if (exact)
    exact_dim = exact::consistent_dim(io::exact_constrained_view(mf, name));

  if (opt.json) {
    ordered_json j = report_header("inspect", "", opt, {name}, tol);
    j["states"] = sys.state_dim();
    j["consistent_dim"] = v.dim();
    if (exact_dim) j["exact_consistent_dim"] = *exact_dim;
    j["basis"] = matrix_rows(v.basis);
    std::cout << io::dump_json(j);
  } else {
    std::cout << "inspect " << name << ": states=" << sys.state_dim()
              << " consistent_dim=" << v.dim();
    if (exact_dim) std::cout << " exact_consistent_dim=" << *exact_dim;
    std::cout << "\n";
    for (Index r = 0; r < v.basis.rows(); ++r) {
      std::cout << " ";
      for (Index c = 0; c < v.basis.cols(); ++c)
        std::cout << " " << io::format_double(v.basis(r, c));
      std::cout << "\n";
    }
  }
  return kExitTrue;
}

int cmd_validate(const CommonOptions& opt, const std::string& kind,
                 const std::vector<std::string>& operands,
                 const ValidateOptions& vopt) {
  const io::ModelFile mf = io::parse_model_file(opt.file);
  const Tolerance tol = resolve_tolerance(mf, opt);
  const ContractReport report = run_check(mf, kind, operands, tol);

  ordered_json j = report_header("validate", kind, opt, operands, tol);
  j["trials"] = vopt.trials;
  j["horizon"] = vopt.horizon;
  j["dt"] = vopt.dt;
  j["seed"] = vopt.seed;
  j["claim_verdict"] = report.verdict;

  if (!report.verdict) {
    if (opt.json) {
      j["validated"] = false;
      j["error"] = "claim does not hold; nothing to validate";
      std::cout << io::dump_json(j);
    } else {
      std::cout << "validate " << kind
                << ": claim does not hold; nothing to validate\n";
    }
    return kExitFalse;
  }

  bool all_passed = true;
  ordered_json checks = ordered_json::array();
  std::uint64_t check_seed = vopt.seed;
  for (const auto& check : report.checks) {
    const oracle::TrajectoryMatchReport match = oracle::validate_by_trajectories(
        check.lhs, check.rhs, check.report.relation, vopt.trials, vopt.horizon,
        vopt.dt, check_seed, 1e-6, tol);
    check_seed += static_cast<std::uint64_t>(vopt.trials);
    all_passed = all_passed && match.passed();
    if (opt.json) {
      ordered_json cj;
      cj["name"] = check.name;
      cj["trials"] = match.trials;
      cj["failures"] = match.failures;
      cj["max_output_mismatch"] = match.max_output_mismatch;
      cj["max_relation_drift"] = match.max_relation_drift;
      cj["max_constraint_violation"] = match.max_constraint_violation;
      checks.push_back(std::move(cj));
    } else {
      std::cout << "  " << check.name << ": trials=" << match.trials
                << " failures=" << match.failures << " max_output_mismatch="
                << io::format_double(match.max_output_mismatch)
                << " max_relation_drift="
                << io::format_double(match.max_relation_drift)
                << " max_constraint_violation="
                << io::format_double(match.max_constraint_violation) << "\n";
    }
  }
  if (opt.json) {
    j["validated"] = all_passed;
    j["checks"] = std::move(checks);
    std::cout << io::dump_json(j);
  } else {
    std::cout << "validate " << kind << ": "
              << (all_passed ? "all trials passed" : "trial failures") << "\n";
  }
  return all_passed ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contract and simulation checker for constrained linear "
               "systems in driving-variable form"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "simcontract 0.1.0");

  CommonOptions opt;
  std::string kind, op_a, op_b, out_path, system_name;
  bool exact = false;
  ValidateOptions vopt;

  auto add_common = [&](CLI::App* cmd, bool with_witness = true) {
    cmd->add_flag("--json", opt.json, "emit a machine-readable report");
    if (with_witness)
      cmd->add_flag("--witness", opt.witness,
                    "print the relation basis in human-readable output");
    cmd->add_option("--tol-rank", opt.tol_rank,
                    "relative singular-value cutoff for rank decisions");
    cmd->add_option("--tol-incl", opt.tol_incl,
                    "residual norm cutoff for inclusion decisions");
  };

  CLI::App* check = app.add_subcommand("check", "decide a contract or simulation claim");
  check->add_option("kind", kind, "one of: simulation, implements, refines, compatible, composable, consistency")
      ->required()
      ->check(CLI::IsMember(kCheckKinds));
  check->add_option("file", opt.file, "model file")->required();
  check->add_option("a", op_a, "first operand")->required();
  check->add_option("b", op_b, "second operand");
  add_common(check);

  CLI::App* compose = app.add_subcommand("compose", "emit the series composition of two contracts");
  compose->add_option("file", opt.file, "model file")->required();
  compose->add_option("c1", op_a, "first contract")->required();
  compose->add_option("c2", op_b, "second contract")->required();
  compose->add_option("out", out_path, "output model file")->required();
  add_common(compose);

  CLI::App* inspect = app.add_subcommand("inspect", "print the consistent subspace of a system");
  inspect->add_option("file", opt.file, "model file")->required();
  inspect->add_option("system", system_name, "constrained or guarantee system")->required();
  inspect->add_flag("--exact", exact, "also compute the fraction-exact dimension");
  add_common(inspect);

  CLI::App* validate = app.add_subcommand("validate", "confirm a positive claim by trajectory matching");
  validate->add_option("kind", kind, "check kind, as for `check`")
      ->required()
      ->check(CLI::IsMember(kCheckKinds));
  validate->add_option("file", opt.file, "model file")->required();
  validate->add_option("a", op_a, "first operand")->required();
  validate->add_option("b", op_b, "second operand");
  validate->add_option("--trials", vopt.trials, "number of trials per simulation premise");
  validate->add_option("--horizon", vopt.horizon, "trajectory horizon in seconds");
  validate->add_option("--dt", vopt.dt, "integration step in seconds");
  validate->add_option("--seed", vopt.seed, "random seed");
  add_common(validate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return kExitUsage;
  }

  std::vector<std::string> operands;
  if (!op_a.empty()) operands.push_back(op_a);
  if (!op_b.empty()) operands.push_back(op_b);

  try {
    if (check->parsed()) return cmd_check(opt, kind, operands);
    if (compose->parsed()) return cmd_compose(opt, op_a, op_b, out_path);
    if (inspect->parsed()) return cmd_inspect(opt, system_name, exact);
    if (validate->parsed()) return cmd_validate(opt, kind, operands, vopt);
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
