#pragma once

// JSON documents for state sets, density matrices, subspaces and results.
//
//   StateSet:       {"dim": d, "states": [[[re, im], ...], ...], "labels": [...]}
//   DensityMatrix:  {"dim": d, "matrix": [[[re, im], ...], ...]}
//                   or a StateSet document with optional "weights"
//   Subspace:       {"dim": d, "basis": [[[re, im], ...], ...]}  ("states" also accepted)

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmeasure/measures.hpp"
#include "qmeasure/states.hpp"

namespace qmeasure {

using Json = nlohmann::json;

/// Malformed or invalid input document. The message names the offending field.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs may be off unit norm by this much before being rejected.
inline constexpr double kInputNormTolerance = 1e-6;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(std::span<const Complex> v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

inline Json to_json(const PureState& psi) { return to_json(psi.amplitudes()); }

inline Json to_json(const StateSet& u) {
  Json states = Json::array();
  for (const auto& s : u) states.push_back(to_json(s));
  return Json{{"dim", u.dim()}, {"states", std::move(states)}};
}

inline Json to_json(const Subspace& v) {
  Json basis = Json::array();
  for (const auto& b : v.basis()) basis.push_back(to_json(b));
  return Json{{"dim", v.ambient_dim()}, {"basis", std::move(basis)}};
}

inline Json to_json(const HermitianOperator& h) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < h.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < h.dim(); ++j) row.push_back(to_json(h(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", h.dim()}, {"matrix", std::move(rows)}};
}

inline Json to_json(const DensityMatrix& rho) { return to_json(rho.op()); }

inline Json to_json(const SimplexWeights& w) { return Json(w.values()); }

inline Json to_json(const MeasureResult& r) {
  return Json{{"value", r.value},
              {"entropy_bits", r.entropy_bits},
              {"optimizer_weights", r.optimizer_weights ? to_json(*r.optimizer_weights) : Json(nullptr)},
              {"converged", r.converged},
              {"gap_bound", r.gap_bound}};
}

inline Json to_json(const FractionResult& r) {
  return Json{{"lambda", r.lambda},
              {"witness_weights", r.witness_weights ? to_json(*r.witness_weights) : Json(nullptr)},
              {"converged", r.converged},
              {"bracket_width", r.bracket_width},
              {"upper_bound", r.upper_bound}};
}

namespace detail {

inline const Json& require(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) throw DocumentError(where + ": expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw DocumentError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline double parse_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw DocumentError(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw DocumentError(where + ": non-finite number");
  return x;
}

inline Complex parse_complex(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw DocumentError(where + ": expected [re, im]");
  return {parse_number(j[0], where + "[0]"), parse_number(j[1], where + "[1]")};
}

inline std::size_t parse_dim(const Json& doc) {
  const Json& d = require(doc, "dim", "document");
  if (!d.is_number_integer() || d.get<long long>() < 1) throw DocumentError("dim: expected a positive integer");
  return d.get<std::size_t>();
}

inline std::vector<Complex> parse_vector(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) throw DocumentError(where + ": expected an array of amplitudes");
  if (j.size() != dim)
    throw DocumentError(where + ": has " + std::to_string(j.size()) + " amplitudes, dim is " + std::to_string(dim));
  std::vector<Complex> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = parse_complex(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

/// Rejects norms off by more than 1e-6, renormalizes otherwise.
inline PureState parse_state(const Json& j, std::size_t dim, const std::string& where) {
  auto v = parse_vector(j, dim, where);
  const double n = PureState::norm(v);
  if (std::abs(n - 1.0) > kInputNormTolerance)
    throw DocumentError(where + ": norm " + std::to_string(n) + " deviates from 1 by more than 1e-6");
  return PureState::normalized(std::move(v));
}

inline std::vector<PureState> parse_states(const Json& doc, const char* key) {
  const std::size_t dim = parse_dim(doc);
  const Json& arr = require(doc, key, "document");
  if (!arr.is_array() || arr.empty()) throw DocumentError(std::string(key) + ": expected a non-empty array");
  std::vector<PureState> out;
  for (std::size_t k = 0; k < arr.size(); ++k)
    out.push_back(parse_state(arr[k], dim, std::string(key) + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace detail

inline Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
}

inline StateSet state_set_from_json(const Json& doc) {
  auto states = detail::parse_states(doc, "states");
  if (auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array() || it->size() != states.size())
      throw DocumentError("labels: expected one string per state");
    for (const auto& l : *it)
      if (!l.is_string()) throw DocumentError("labels: expected strings");
  }
  try {
    return StateSet(std::move(states));
  } catch (const std::invalid_argument& e) {
    throw DocumentError(std::string("states: ") + e.what());
  }
}

/// Reads "basis", falling back to "states" so a state-set document whose
/// vectors happen to be orthonormal can be used directly.
inline Subspace subspace_from_json(const Json& doc) {
  const char* key = doc.is_object() && !doc.contains("basis") && doc.contains("states") ? "states" : "basis";
  try {
    return Subspace(detail::parse_states(doc, key));
  } catch (const std::invalid_argument& e) {
    throw DocumentError(std::string(key) + ": " + e.what());
  }
}

/// Accepts {"dim", "matrix"} or a state-set document with optional
/// "weights" (uniform when absent).
inline DensityMatrix density_matrix_from_json(const Json& doc) {
  const std::size_t dim = detail::parse_dim(doc);
  try {
    if (doc.contains("matrix")) {
      const Json& rows = doc["matrix"];
      if (!rows.is_array() || rows.size() != dim) throw DocumentError("matrix: expected dim rows");
      Matrix m(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        const auto row = detail::parse_vector(rows[i], dim, "matrix[" + std::to_string(i) + "]");
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = row[j];
      }
      return DensityMatrix(HermitianOperator(std::move(m)));
    }
    const auto set = state_set_from_json(doc);
    if (auto it = doc.find("weights"); it != doc.end()) {
      if (!it->is_array() || it->size() != set.size()) throw DocumentError("weights: expected one weight per state");
      std::vector<double> w;
      for (std::size_t k = 0; k < it->size(); ++k)
        w.push_back(detail::parse_number((*it)[k], "weights[" + std::to_string(k) + "]"));
      return convex_combination(set, SimplexWeights(std::move(w)));
    }
    return uniform_mixture(set);
  } catch (const DocumentError&) {
    throw;
  } catch (const std::exception& e) {
    throw DocumentError(std::string("density matrix: ") + e.what());
  }
}

}  // namespace qmeasure
