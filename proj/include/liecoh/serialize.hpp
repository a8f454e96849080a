#pragma once

#include "liecoh/alt_tensor.hpp"
#include "liecoh/matrix.hpp"

#include <json.hpp>

namespace liecoh {

using json = nlohmann::ordered_json;

/// Sparse tensor wire format:
///   {"degree": q, "dim": n,
///    "entries": [{"idx": [i1,...,iq], "re": "p/q", "im": "p/q"}, ...]}
/// Rationals are exact "num/den" strings; entry order follows the canonical
/// (lexicographic) key order, so serialization is deterministic.
inline json to_json(const AltTensor& t) {
  json j;
  j["degree"] = t.degree();
  j["dim"] = t.dim();
  j["entries"] = json::array();
  for (const auto& [idx, v] : t.entries()) {
    json e;
    e["idx"] = idx;
    e["re"] = Scalar::rational_str(v.re());
    e["im"] = Scalar::rational_str(v.im());
    j["entries"].push_back(std::move(e));
  }
  return j;
}

inline json to_json(const SymTensor& t) {
  json j;
  j["degree"] = t.degree();
  j["dim"] = t.dim();
  j["entries"] = json::array();
  for (const auto& [idx, v] : t.entries()) {
    json e;
    e["idx"] = idx;
    e["re"] = Scalar::rational_str(v.re());
    e["im"] = Scalar::rational_str(v.im());
    j["entries"].push_back(std::move(e));
  }
  return j;
}

inline Scalar scalar_from_json(const json& e) {
  return Scalar(Scalar::parse_rational(e.at("re").get<std::string>()),
                Scalar::parse_rational(e.at("im").get<std::string>()));
}

inline AltTensor alt_tensor_from_json(const json& j) {
  AltTensor t(j.at("degree").get<int>(), j.at("dim").get<int>());
  for (const auto& e : j.at("entries")) {
    Index idx = e.at("idx").get<Index>();
    t.add(idx, scalar_from_json(e));
  }
  return t;
}

inline SymTensor sym_tensor_from_json(const json& j) {
  SymTensor t(j.at("degree").get<int>(), j.at("dim").get<int>());
  for (const auto& e : j.at("entries")) {
    Index idx = e.at("idx").get<Index>();
    t.add(idx, scalar_from_json(e));
  }
  return t;
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      const Scalar& v = m.at(r, c);
      json e;
      e["re"] = Scalar::rational_str(v.re());
      e["im"] = Scalar::rational_str(v.im());
      row.push_back(std::move(e));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace liecoh
