#pragma once

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>

#include "simcontract/models.hpp"
#include "simcontract/rational.hpp"

namespace simcontract::io {

using ordered_json = nlohmann::ordered_json;

/// Parse failures, unresolved references and validation failures, each
/// carrying the offending location in the message.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SystemKind { driven, constrained, guarantee };

/// One named system from a model file. Matrices are kept both as doubles
/// and, when every entry was given as an integer or a "p/q" string, as
/// exact rationals (which enables the exact oracle).
struct ModelSystem {
  SystemKind kind = SystemKind::constrained;
  DrivenSystem driven;
  ConstrainedSystem constrained;
  GuaranteeSystem guarantee;
  bool exact = false;
  exact::RatMat eA, eB, eC, eG, eH, eCu, eCy;
};

/// A self-contained model document: tolerance overrides, named systems and
/// named contracts. All references are resolved and all systems validated
/// at parse time.
struct ModelFile {
  Tolerance tolerance;
  bool has_tolerance = false;
  std::map<std::string, ModelSystem> systems;
  std::map<std::string, std::pair<std::string, std::string>> contracts;
};

ModelFile parse_model_text(const std::string& text, const std::string& origin);
ModelFile parse_model_file(const std::string& path);

const ModelSystem& find_system(const ModelFile& mf, const std::string& name);

/// The named system as a constrained system; guarantees are viewed with
/// their stacked output. Driven systems are rejected.
ConstrainedSystem constrained_view(const ModelFile& mf, const std::string& name);

DrivenSystem driven_view(const ModelFile& mf, const std::string& name);
GuaranteeSystem guarantee_view(const ModelFile& mf, const std::string& name);
Contract contract_view(const ModelFile& mf, const std::string& name);

/// Exact view of a constrained or guarantee system; throws ModelError when
/// the system has floating-point entries.
exact::RatConstrainedSystem exact_constrained_view(const ModelFile& mf,
                                                   const std::string& name);

/// 17-significant-digit formatting used for every float the tool emits.
std::string format_double(double v);

/// Deterministic serializer: insertion-ordered keys, floats through
/// format_double. Arrays of scalars stay on one line.
std::string dump_json(const ordered_json& j);

/// Writes a model file containing the composed contract, its assumption and
/// its constructed guarantee. Entries stay exact when the source systems
/// were exact.
void write_composed_model(const std::string& out_path, const ModelFile& source,
                          const std::string& c1, const std::string& c2,
                          const Contract& composed);

}  // namespace simcontract::io
