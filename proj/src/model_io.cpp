#include "simcontract/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace simcontract::io {

namespace {

struct ParsedMatrix {
  Matrix num;
  exact::RatMat rat;
  bool exact = true;
};

ParsedMatrix parse_matrix(const ordered_json& j, const std::string& loc) {
  if (!j.is_array()) throw ModelError(loc + ": expected an array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  for (Index r = 0; r < rows; ++r) {
    if (!j[r].is_array())
      throw ModelError(loc + ": row " + std::to_string(r) + " is not an array");
    const Index row_len = static_cast<Index>(j[r].size());
    if (cols < 0)
      cols = row_len;
    else if (row_len != cols)
      throw ModelError(loc + ": ragged rows (row " + std::to_string(r) +
                       " has " + std::to_string(row_len) +
                       " entries, expected " + std::to_string(cols) + ")");
  }
  if (cols < 0) cols = 0;

  ParsedMatrix pm{Matrix(rows, cols), exact::RatMat(rows, cols), true};
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const ordered_json& e = j[r][c];
      const std::string where =
          loc + ": entry (" + std::to_string(r) + "," + std::to_string(c) + ")";
      if (e.is_number_integer() || e.is_number_unsigned()) {
        const auto v = e.get<long long>();
        pm.num(r, c) = static_cast<double>(v);
        pm.rat(r, c) = exact::Rational(v);
      } else if (e.is_number_float()) {
        pm.num(r, c) = e.get<double>();
        pm.exact = false;
      } else if (e.is_string()) {
        try {
          pm.rat(r, c) = exact::rational_from_string(e.get<std::string>());
        } catch (const std::exception& ex) {
          throw ModelError(where + ": " + ex.what());
        }
        pm.num(r, c) = exact::to_double(pm.rat(r, c));
      } else {
        throw ModelError(where + ": must be a number or a rational string");
      }
      if (!std::isfinite(pm.num(r, c)))
        throw ModelError(where + ": must be finite");
    }
  }
  return pm;
}

/// Zero-row matrices carry no column information in JSON; give them the
/// column count the enclosing system implies.
void fix_empty_cols(ParsedMatrix& pm, Index cols) {
  if (pm.num.rows() != 0 || pm.num.cols() == cols) return;
  pm.num = Matrix(0, cols);
  pm.rat = exact::RatMat(0, cols);
}

Tolerance parse_tolerance(const ordered_json& j, const std::string& loc) {
  if (!j.is_object()) throw ModelError(loc + ": expected an object");
  Tolerance tol;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number())
      throw ModelError(loc + "." + key + ": expected a number");
    if (key == "rank_rel")
      tol.rank_rel = value.get<double>();
    else if (key == "inclusion")
      tol.inclusion = value.get<double>();
    else
      throw ModelError(loc + ": unknown key '" + key + "'");
  }
  if (!tol.valid())
    throw ModelError(loc + ": values must lie strictly between 0 and 1");
  return tol;
}

ModelSystem parse_system(const ordered_json& j, const std::string& loc) {
  if (!j.is_object()) throw ModelError(loc + ": expected an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ModelError(loc + ": missing string key 'kind'");
  const std::string kind = j["kind"].get<std::string>();

  std::vector<std::string> allowed;
  if (kind == "driven")
    allowed = {"kind", "A", "B", "C", "G"};
  else if (kind == "constrained")
    allowed = {"kind", "A", "G", "C", "H"};
  else if (kind == "guarantee")
    allowed = {"kind", "A", "G", "Cu", "Cy", "H"};
  else
    throw ModelError(loc + ".kind: must be 'driven', 'constrained' or "
                           "'guarantee', got '" + kind + "'");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ModelError(loc + ": unknown key '" + key + "'");
  }

  auto required = [&](const char* key) {
    if (!j.contains(key))
      throw ModelError(loc + ": missing matrix '" + std::string(key) + "'");
    return parse_matrix(j[key], loc + "." + key);
  };
  auto optional_mat = [&](const char* key) -> std::optional<ParsedMatrix> {
    if (!j.contains(key)) return std::nullopt;
    return parse_matrix(j[key], loc + "." + key);
  };

  ModelSystem sys;
  ParsedMatrix a = required("A");
  const Index n = a.num.rows();
  ParsedMatrix g = optional_mat("G").value_or(
      ParsedMatrix{Matrix(n, 0), exact::RatMat(n, 0), true});

  if (kind == "driven") {
    sys.kind = SystemKind::driven;
    ParsedMatrix b = required("B");
    ParsedMatrix c = required("C");
    fix_empty_cols(c, n);
    sys.driven = DrivenSystem{a.num, b.num, c.num, g.num};
    sys.exact = a.exact && b.exact && c.exact && g.exact;
    if (sys.exact) {
      sys.eA = a.rat;
      sys.eB = b.rat;
      sys.eC = c.rat;
      sys.eG = g.rat;
    }
    if (auto errors = validate(sys.driven); !errors.empty())
      throw ModelError(loc + "." + errors.front());
    return sys;
  }

  ParsedMatrix h = optional_mat("H").value_or(
      ParsedMatrix{Matrix(0, n), exact::RatMat(0, n), true});
  fix_empty_cols(h, n);

  if (kind == "constrained") {
    sys.kind = SystemKind::constrained;
    ParsedMatrix c = required("C");
    fix_empty_cols(c, n);
    sys.constrained = ConstrainedSystem{a.num, g.num, c.num, h.num};
    sys.exact = a.exact && g.exact && c.exact && h.exact;
    if (sys.exact) {
      sys.eA = a.rat;
      sys.eG = g.rat;
      sys.eC = c.rat;
      sys.eH = h.rat;
    }
    if (auto errors = validate(sys.constrained); !errors.empty())
      throw ModelError(loc + "." + errors.front());
    return sys;
  }

  sys.kind = SystemKind::guarantee;
  ParsedMatrix cu = required("Cu");
  ParsedMatrix cy = required("Cy");
  fix_empty_cols(cu, n);
  fix_empty_cols(cy, n);
  if (cu.num.cols() != cy.num.cols())
    throw ModelError(loc + ": Cu and Cy disagree on the state dimension");
  sys.guarantee = GuaranteeSystem{
      ConstrainedSystem{a.num, g.num, vcat(cu.num, cy.num), h.num},
      cu.num.rows(), cy.num.rows()};
  sys.exact = a.exact && g.exact && cu.exact && cy.exact && h.exact;
  if (sys.exact) {
    sys.eA = a.rat;
    sys.eG = g.rat;
    sys.eCu = cu.rat;
    sys.eCy = cy.rat;
    sys.eC = exact::vcat(cu.rat, cy.rat);
    sys.eH = h.rat;
  }
  if (auto errors = validate(sys.guarantee); !errors.empty())
    throw ModelError(loc + "." + errors.front());
  return sys;
}

}  // namespace

ModelFile parse_model_text(const std::string& text, const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ModelError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ModelError(origin + ": expected a JSON object");

  ModelFile mf;
  for (const auto& [key, value] : j.items()) {
    if (key == "tolerance") {
      mf.tolerance = parse_tolerance(value, "tolerance");
      mf.has_tolerance = true;
    } else if (key == "systems") {
      if (!value.is_object())
        throw ModelError("systems: expected an object");
      for (const auto& [name, sys] : value.items())
        mf.systems.emplace(name, parse_system(sys, "systems." + name));
    } else if (key == "contracts") {
      if (!value.is_object())
        throw ModelError("contracts: expected an object");
      for (const auto& [name, con] : value.items()) {
        const std::string loc = "contracts." + name;
        if (!con.is_object() || !con.contains("assumption") ||
            !con.contains("guarantee") || !con["assumption"].is_string() ||
            !con["guarantee"].is_string())
          throw ModelError(loc +
                           ": expected string keys 'assumption' and 'guarantee'");
        mf.contracts.emplace(name,
                             std::make_pair(con["assumption"].get<std::string>(),
                                            con["guarantee"].get<std::string>()));
      }
    } else {
      throw ModelError("unknown top-level key '" + key + "'");
    }
  }

  // Cross-reference and validate the contracts now that systems exist.
  for (const auto& [name, refs] : mf.contracts) {
    const std::string loc = "contracts." + name;
    auto ass = mf.systems.find(refs.first);
    if (ass == mf.systems.end())
      throw ModelError(loc + ".assumption: unresolved reference '" +
                       refs.first + "'");
    if (ass->second.kind != SystemKind::constrained)
      throw ModelError(loc + ".assumption: '" + refs.first +
                       "' is not a constrained system");
    auto gar = mf.systems.find(refs.second);
    if (gar == mf.systems.end())
      throw ModelError(loc + ".guarantee: unresolved reference '" +
                       refs.second + "'");
    if (gar->second.kind != SystemKind::guarantee)
      throw ModelError(loc + ".guarantee: '" + refs.second +
                       "' is not a guarantee system");
    const Contract c{ass->second.constrained, gar->second.guarantee};
    if (auto errors = validate(c); !errors.empty())
      throw ModelError(loc + ": " + errors.front());
  }
  return mf;
}

ModelFile parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model_text(buffer.str(), path);
}

const ModelSystem& find_system(const ModelFile& mf, const std::string& name) {
  auto it = mf.systems.find(name);
  if (it == mf.systems.end())
    throw ModelError("unknown system '" + name + "'");
  return it->second;
}

ConstrainedSystem constrained_view(const ModelFile& mf,
                                   const std::string& name) {
  const ModelSystem& sys = find_system(mf, name);
  switch (sys.kind) {
    case SystemKind::constrained:
      return sys.constrained;
    case SystemKind::guarantee:
      return sys.guarantee.base;
    case SystemKind::driven:
      break;
  }
  throw ModelError("system '" + name +
                   "' is an input-output system; expected a constrained or "
                   "guarantee system");
}

DrivenSystem driven_view(const ModelFile& mf, const std::string& name) {
  const ModelSystem& sys = find_system(mf, name);
  if (sys.kind != SystemKind::driven)
    throw ModelError("system '" + name + "' is not an input-output system");
  return sys.driven;
}

GuaranteeSystem guarantee_view(const ModelFile& mf, const std::string& name) {
  const ModelSystem& sys = find_system(mf, name);
  if (sys.kind != SystemKind::guarantee)
    throw ModelError("system '" + name + "' is not a guarantee system");
  return sys.guarantee;
}

Contract contract_view(const ModelFile& mf, const std::string& name) {
  auto it = mf.contracts.find(name);
  if (it == mf.contracts.end())
    throw ModelError("unknown contract '" + name + "'");
  return Contract{find_system(mf, it->second.first).constrained,
                  find_system(mf, it->second.second).guarantee};
}

exact::RatConstrainedSystem exact_constrained_view(const ModelFile& mf,
                                                   const std::string& name) {
  const ModelSystem& sys = find_system(mf, name);
  if (sys.kind == SystemKind::driven)
    throw ModelError("system '" + name +
                     "' is an input-output system; expected a constrained or "
                     "guarantee system");
  if (!sys.exact)
    throw ModelError("system '" + name +
                     "' has floating-point entries; exact arithmetic needs "
                     "integer or \"p/q\" entries");
  return exact::RatConstrainedSystem{sys.eA, sys.eG, sys.eC, sys.eH};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

bool is_scalar_array(const ordered_json& j) {
  for (const auto& e : j)
    if (e.is_array() || e.is_object()) return false;
  return true;
}

void dump_value(const ordered_json& j, std::string& out, int depth) {
  const std::string pad(2 * depth, ' ');
  const std::string pad_in(2 * (depth + 1), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        escape_string(key, out);
        out += ": ";
        dump_value(value, out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_scalar_array(j)) {
        out += "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          dump_value(e, out, depth);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_value(e, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case ordered_json::value_t::string:
      escape_string(j.get<std::string>(), out);
      return;
    case ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case ordered_json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json matrix_json(const exact::RatMat& m) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  ordered_json rows = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      const exact::Rational& v = m(r, c);
      if (denominator(v) == 1 &&
          numerator(v) <= std::numeric_limits<long long>::max() &&
          numerator(v) >= std::numeric_limits<long long>::min()) {
        row.push_back(numerator(v).convert_to<long long>());
      } else {
        row.push_back(v.str());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string dump_json(const ordered_json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += "\n";
  return out;
}

void write_composed_model(const std::string& out_path, const ModelFile& source,
                          const std::string& c1, const std::string& c2,
                          const Contract& composed) {
  auto ref1 = source.contracts.find(c1);
  auto ref2 = source.contracts.find(c2);
  if (ref1 == source.contracts.end() || ref2 == source.contracts.end())
    throw ModelError("write_composed_model: unknown contract");
  const ModelSystem& ass = find_system(source, ref1->second.first);
  const ModelSystem& gar1 = find_system(source, ref1->second.second);
  const ModelSystem& gar2 = find_system(source, ref2->second.second);

  const std::string stem = c1 + "_to_" + c2;
  const std::string ass_name = stem + "_assumption";
  const std::string gar_name = stem + "_guarantee";

  ordered_json ass_json{{"kind", "constrained"}};
  ordered_json gar_json{{"kind", "guarantee"}};

  if (ass.exact && gar1.exact && gar2.exact) {
    const exact::RatGuarantee composed_exact = exact::series_gar(
        exact::RatGuarantee{gar1.eA, gar1.eG, gar1.eCu, gar1.eCy, gar1.eH},
        exact::RatGuarantee{gar2.eA, gar2.eG, gar2.eCu, gar2.eCy, gar2.eH});
    ass_json["A"] = matrix_json(ass.eA);
    if (ass.eG.cols() > 0) ass_json["G"] = matrix_json(ass.eG);
    ass_json["C"] = matrix_json(ass.eC);
    if (ass.eH.rows() > 0) ass_json["H"] = matrix_json(ass.eH);
    gar_json["A"] = matrix_json(composed_exact.A);
    if (composed_exact.G.cols() > 0) gar_json["G"] = matrix_json(composed_exact.G);
    gar_json["Cu"] = matrix_json(composed_exact.Cu);
    gar_json["Cy"] = matrix_json(composed_exact.Cy);
    if (composed_exact.H.rows() > 0) gar_json["H"] = matrix_json(composed_exact.H);
  } else {
    const ConstrainedSystem& a = composed.assumption;
    const GuaranteeSystem& g = composed.guarantee;
    ass_json["A"] = matrix_json(a.A);
    if (a.G.cols() > 0) ass_json["G"] = matrix_json(a.G);
    ass_json["C"] = matrix_json(a.C);
    if (a.H.rows() > 0) ass_json["H"] = matrix_json(a.H);
    gar_json["A"] = matrix_json(g.base.A);
    if (g.base.G.cols() > 0) gar_json["G"] = matrix_json(g.base.G);
    gar_json["Cu"] = matrix_json(g.c_u());
    gar_json["Cy"] = matrix_json(g.c_y());
    if (g.base.H.rows() > 0) gar_json["H"] = matrix_json(g.base.H);
  }

  ordered_json out;
  if (source.has_tolerance)
    out["tolerance"] = {{"rank_rel", source.tolerance.rank_rel},
                        {"inclusion", source.tolerance.inclusion}};
  out["systems"] = ordered_json::object();
  out["systems"][ass_name] = std::move(ass_json);
  out["systems"][gar_name] = std::move(gar_json);
  out["contracts"] = ordered_json::object();
  out["contracts"][stem] = {{"assumption", ass_name}, {"guarantee", gar_name}};

  std::ofstream file(out_path);
  if (!file) throw ModelError("cannot write model file '" + out_path + "'");
  file << dump_json(out);
}

}  // namespace simcontract::io
