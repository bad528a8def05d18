#pragma once

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "chyp/report.hpp"

namespace chyp {

inline constexpr int kSchemaVersion = 1;

/// Malformed or invalid group file.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Group file:
///   { "schema_version": 1, "dim_n": n,
///     "generators": [ { "name": "a", "matrix": [ [[re, im], ...], ... ] }, ... ],
///     "elements":   [ ...same shape, named elements outside the group... ] }
/// "elements" is optional and holds e.g. test maps.
struct GroupFile {
  GroupInput group;
  std::vector<NamedIsometry> elements;

  const NamedIsometry* find(const std::string& name) const {
    for (const auto& g : group.generators)
      if (g.name == name) return &g;
    for (const auto& g : elements)
      if (g.name == name) return &g;
    return nullptr;
  }
};

namespace detail {

inline CMatrix matrix_from_json(const nlohmann::json& rows, int size, const std::string& where) {
  if (!rows.is_array() || int(rows.size()) != size)
    throw InputError(where + ": matrix must have " + std::to_string(size) + " rows");
  CMatrix m(size, size);
  for (int i = 0; i < size; ++i) {
    const auto& row = rows[std::size_t(i)];
    if (!row.is_array() || int(row.size()) != size)
      throw InputError(where + ": row " + std::to_string(i) + " must have " + std::to_string(size) + " entries");
    for (int j = 0; j < size; ++j) {
      const auto& z = row[std::size_t(j)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw InputError(where + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") must be a [re, im] pair of numbers");
      m(i, j) = Complexd(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

inline nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<NamedIsometry> elements_from_json(const nlohmann::json& list, int n, const char* field,
                                                     const ToleranceConfig& cfg) {
  std::vector<NamedIsometry> out;
  if (!list.is_array()) throw InputError(std::string("'") + field + "' must be an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& g = list[i];
    const std::string where = std::string(field) + "[" + std::to_string(i) + "]";
    if (!g.is_object() || !g.contains("name") || !g["name"].is_string() || !g.contains("matrix"))
      throw InputError(where + ": needs a string 'name' and a 'matrix'");
    const std::string name = g["name"].get<std::string>();
    const CMatrix m = matrix_from_json(g["matrix"], n + 1, where + " '" + name + "'");
    try {
      out.push_back({name, verify_unitary(m, cfg)});
    } catch (const NotUnitaryError&) {
      throw;
    } catch (const Error& err) {
      throw InputError(where + " '" + name + "': " + err.what());
    }
  }
  return out;
}

}  // namespace detail

/// Parse errors carry nlohmann's line/column position; NotUnitaryError is
/// propagated with its residual.
inline GroupFile parse_group_file(const std::string& text, const ToleranceConfig& cfg = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed group file: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("group file must be a JSON object");
  if (!doc.contains("dim_n") || !doc["dim_n"].is_number_integer() || doc["dim_n"].get<int>() < 1)
    throw InputError("'dim_n' must be a positive integer");
  if (doc.contains("schema_version") && doc["schema_version"] != kSchemaVersion)
    throw InputError("unsupported schema_version");
  GroupFile out;
  out.group.dim_n = doc["dim_n"].get<int>();
  if (!doc.contains("generators")) throw InputError("missing 'generators'");
  out.group.generators = detail::elements_from_json(doc["generators"], out.group.dim_n, "generators", cfg);
  if (doc.contains("elements"))
    out.elements = detail::elements_from_json(doc["elements"], out.group.dim_n, "elements", cfg);
  std::vector<std::string> seen;
  for (const auto* list : {&out.group.generators, &out.elements})
    for (const auto& g : *list) {
      if (std::find(seen.begin(), seen.end(), g.name) != seen.end())
        throw InputError("duplicate element name '" + g.name + "'");
      seen.push_back(g.name);
    }
  return out;
}

inline GroupFile load_group_file(const std::string& path, const ToleranceConfig& cfg = {}) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_file(ss.str(), cfg);
}

inline nlohmann::json to_json(const GroupFile& file) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["dim_n"] = file.group.dim_n;
  const auto list = [](const std::vector<NamedIsometry>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : v) arr.push_back({{"name", g.name}, {"matrix", detail::matrix_to_json(g.element.matrix())}});
    return arr;
  };
  doc["generators"] = list(file.group.generators);
  if (!file.elements.empty()) doc["elements"] = list(file.elements);
  return doc;
}

inline std::string serialize_group_file(const GroupFile& file) { return to_json(file).dump(2) + "\n"; }

inline nlohmann::json to_json(const ToleranceConfig& cfg, NormKind norm) {
  return {{"tol_unitary", cfg.tol_unitary}, {"tol_null", cfg.tol_null}, {"tol_eig", cfg.tol_eig},
          {"tol_identity", cfg.tol_identity}, {"norm", to_string(norm)}};
}

inline nlohmann::json to_json(const Word& w, const std::vector<std::string>& names) {
  nlohmann::json letters = nlohmann::json::array();
  for (const auto& l : w.letters()) letters.push_back({l.generator, l.exponent});
  return {{"text", w.to_string(names)}, {"letters", letters}};
}

inline nlohmann::json to_json(const Certificate& c, const std::vector<std::string>& names) {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : c.witnesses)
    ws.push_back({{"role", w.role}, {"word", to_json(w.word, names)}, {"values", w.values}});
  return {{"kind", to_string(c.kind)}, {"narrative", c.narrative}, {"assumptions", c.assumptions}, {"witnesses", ws}};
}

inline nlohmann::json to_json(const DiscretenessReport& r) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& c : r.findings) findings.push_back(to_json(c, r.alphabet));
  nlohmann::json stats = {{"classes_explored", r.stats.classes_explored},
                          {"words_examined", r.stats.words_examined},
                          {"pair_tests", r.stats.pair_tests},
                          {"loxodromic_found", r.stats.loxodromic_found},
                          {"budget_exceeded", r.stats.budget_exceeded}};
  if (r.stats.min_n) {
    stats["min_n"] = *r.stats.min_n;
    stats["min_n_word"] = to_json(r.stats.min_n_word, r.alphabet);
  }
  return {{"mode", to_string(r.mode)},  {"experimental", r.experimental},
          {"alphabet", r.alphabet},     {"certificate", to_json(r.certificate, r.alphabet)},
          {"findings", findings},       {"stats", stats},
          {"notes", r.notes}};
}

}  // namespace chyp
