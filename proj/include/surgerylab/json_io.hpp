#pragma once

// JSON adapters for nlohmann::json. Not included by surgerylab.hpp; the
// caller supplies <nlohmann/json.hpp> or the vendored json.hpp.

#include "surgerylab/cobordism.hpp"
#include "surgerylab/continued_fraction.hpp"
#include "surgerylab/embed.hpp"
#include "surgerylab/forms.hpp"
#include "surgerylab/kirby.hpp"
#include "surgerylab/matrix.hpp"
#include "surgerylab/rational.hpp"
#include "surgerylab/surgery.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace surgerylab::json_io {

using json = nlohmann::json;

/// Integers that fit in 64 bits are JSON numbers, larger ones strings.
inline json to_json(const Integer& x) {
  if (fits_int64(x)) return json(static_cast<long long>(x));
  return json(x.str());
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw DomainError("expected an integer, got " + j.dump());
}

inline json to_json(const Rational& r) { return r.str(); }
inline json to_json(const ExtendedRational& r) { return r.str(); }

inline json to_json(const ContinuedFraction& cf) {
  json coeffs = json::array();
  for (const auto& c : cf.coefficients) {
    if (c.is_infinite()) {
      coeffs.push_back("inf");
    } else {
      coeffs.push_back(to_json(c.value()));
    }
  }
  return {{"convention", to_string(cf.convention)}, {"coefficients", coeffs}};
}

inline json to_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

inline json to_json(const SymmetricMatrix& m) { return to_json(m.matrix()); }

inline IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("expected a matrix as an array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw DomainError("expected a matrix row array, got " + row.dump());
    std::vector<Integer> r;
    for (const auto& x : row) r.push_back(integer_from_json(x));
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows);
}

/// Accepts a bare matrix or an object with a "gram" (or "matrix") member.
inline GramMatrix gram_from_json(const json& j) {
  if (j.is_object()) {
    if (j.contains("gram")) return GramMatrix(SymmetricMatrix(matrix_from_json(j.at("gram"))));
    if (j.contains("matrix")) return GramMatrix(SymmetricMatrix(matrix_from_json(j.at("matrix"))));
    throw DomainError("expected a \"gram\" member");
  }
  return GramMatrix(SymmetricMatrix(matrix_from_json(j)));
}

inline json to_json(const SignatureTriple& s) {
  return {{"n_plus", s.n_plus}, {"n_zero", s.n_zero}, {"n_minus", s.n_minus}};
}

inline json to_json(const SmithForm& s) { return to_json(s.invariant_factors); }

inline json to_json(const PlumbingTree& t) {
  json legs = json::array();
  for (const auto& leg : t.legs) legs.push_back(to_json(leg));
  return {{"center", to_json(t.center)}, {"legs", legs}};
}

inline json to_json(const SeifertData& s) {
  json fibres = json::array();
  for (const auto& f : s.fibres) fibres.push_back(to_json(f));
  return {{"e", to_json(s.e)}, {"fibres", fibres}};
}

/// Blow-down sequences are 1-based on the wire.
inline json blowdowns_to_json(const std::vector<std::size_t>& steps) {
  json out = json::array();
  for (std::size_t k : steps) out.push_back(k + 1);
  return out;
}

inline json to_json(const Embedding& e) { return to_json(e.rows); }

inline json to_json(const EmbeddingReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
  return {{"found", r.found},
          {"exhausted", r.exhausted},
          {"k_max", r.k_max},
          {"witnesses", witnesses}};
}

inline json to_json(const StageCheck& c) { return {{"check", c.check}, {"passed", c.passed}}; }

inline json to_json(const CobordismStage& s) {
  json out = {{"description", s.description},
              {"matrix", to_json(s.matrix)},
              {"boundary_value", to_json(s.boundary_value)},
              {"handles_added", s.handles_added}};
  if (s.orientation_reversed) out["orientation_reversed"] = true;
  if (!s.certified) out["certified"] = false;
  if (!s.blowdowns.empty()) out["blowdowns"] = blowdowns_to_json(s.blowdowns);
  return out;
}

inline json to_json(const std::vector<CobordismStage>& stages) {
  json out = json::array();
  for (const auto& s : stages) out.push_back(to_json(s));
  return out;
}

}  // namespace surgerylab::json_io
