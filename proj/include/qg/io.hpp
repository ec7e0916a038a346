#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qg/examples.hpp"

namespace qg {

using json = nlohmann::json;

// 17 significant digits: enough to round-trip any double exactly.
inline std::string fmt17(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline json complex_to_json(const cplx& z) {
  return json::array({fmt17(z.real()), fmt17(z.imag())});
}

namespace detail {

inline double json_to_real(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = j.get<std::string>();
      const double x = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw ParseError(where + ": bad numeric string");
    }
  }
  throw ParseError(where + ": expected number or numeric string");
}

}  // namespace detail

inline cplx json_to_complex(const json& j, const std::string& where) {
  if (j.is_number() || j.is_string()) return {detail::json_to_real(j, where), 0.0};
  if (j.is_array() && j.size() == 2)
    return {detail::json_to_real(j[0], where), detail::json_to_real(j[1], where)};
  throw ParseError(where + ": expected number, string, or [re, im]");
}

inline json quantum_group_to_json(const QuantumGroup& g) {
  json j;
  j["name"] = g.name;
  j["dim"] = g.dim;
  j["blocks"] = g.blocks;
  json rows = json::array();
  for (int r = 0; r < g.dim * g.dim; ++r) {
    json row = json::array();
    for (int c = 0; c < g.dim; ++c) row.push_back(complex_to_json(g.delta(r, c)));
    rows.push_back(std::move(row));
  }
  j["delta"] = std::move(rows);
  return j;
}

inline void write_quantum_group(const QuantumGroup& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("IoFailure", "cannot open " + path + " for writing");
  out << quantum_group_to_json(g).dump(2) << "\n";
}

inline QuantumGroup quantum_group_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("top level: expected an object");
  for (const char* key : {"dim", "blocks", "delta"})
    if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
  if (!j["dim"].is_number_integer()) throw ParseError("dim: expected integer");
  const int dim = j["dim"].get<int>();
  if (!j["blocks"].is_array()) throw ParseError("blocks: expected array");
  std::vector<int> blocks;
  for (const auto& b : j["blocks"]) {
    if (!b.is_number_integer() || b.get<int>() <= 0)
      throw ParseError("blocks: expected positive integers");
    blocks.push_back(b.get<int>());
  }
  if (basis_size(blocks) != dim)
    throw ParseError("dim does not match sum of squared block sizes");
  const auto& rows = j["delta"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim * dim)
    throw ParseError("delta: expected dim^2 rows");
  Mat delta(dim * dim, dim);
  for (int r = 0; r < dim * dim; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError("delta row " + std::to_string(r) + ": expected dim entries");
    for (int c = 0; c < dim; ++c)
      delta(r, c) = json_to_complex(row[c], "delta[" + std::to_string(r) + "][" +
                                                std::to_string(c) + "]");
  }
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("name: expected string");
    name = j["name"].get<std::string>();
  }
  return make_quantum_group(std::move(blocks), std::move(delta), std::move(name));
}

inline QuantumGroup read_quantum_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return quantum_group_from_json(j);
}

inline CayleyTable read_cayley(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("table"))
    throw ParseError("expected { \"n\": ..., \"table\": [[...]] }");
  if (!j["n"].is_number_integer()) throw ParseError("n: expected integer");
  const int n = j["n"].get<int>();
  if (!j["table"].is_array() || static_cast<int>(j["table"].size()) != n)
    throw ParseError("table: expected n rows");
  std::vector<std::vector<int>> table(n);
  for (int a = 0; a < n; ++a) {
    const auto& row = j["table"][a];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("table row " + std::to_string(a) + ": expected n entries");
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError("table: expected integers");
      table[a].push_back(v.get<int>());
    }
  }
  return make_cayley(std::move(table));
}

}  // namespace qg
