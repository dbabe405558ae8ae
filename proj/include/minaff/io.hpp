#pragma once

// State-file serialization and locale-independent numeric formatting.
//
// State file layout (JSON):
//   { "dimA": 2, "dimB": 2, "matrix": [ [ [re, im], ... ], ... ] }
// with one inner list per matrix row.  Written entries round-trip exactly
// (shortest representation that restores the double), so no precision is
// lost on a read-back.

#include "minaff/states.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace minaff {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Value formatted with `digits` significant digits via std::to_chars; no
// locale involvement.
inline std::string format_significant(double v, int digits = 12) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

inline BipartiteState read_state(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dimA") || !doc.contains("dimB") ||
      !doc.contains("matrix"))
    throw ParseError("state file must contain dimA, dimB and matrix fields");
  Index dim_a = 0, dim_b = 0;
  try {
    dim_a = doc.at("dimA").get<Index>();
    dim_b = doc.at("dimB").get<Index>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("dimA and dimB must be integers");
  }
  if (dim_a < 1 || dim_b < 1) throw ParseError("dimA and dimB must be positive");
  const auto& rows = doc.at("matrix");
  const Index d = dim_a * dim_b;
  if (!rows.is_array() || static_cast<Index>(rows.size()) != d)
    throw ParseError("matrix must have dimA*dimB = " + std::to_string(d) + " rows");
  Mat m(d, d);
  for (Index i = 0; i < d; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != d)
      throw ParseError("matrix row " + std::to_string(i) + " must have " + std::to_string(d) +
                       " entries");
    for (Index j = 0; j < d; ++j) {
      const auto& entry = row.at(static_cast<std::size_t>(j));
      if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
          !entry.at(1).is_number())
        throw ParseError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") must be a [re, im] pair");
      m(i, j) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return BipartiteState(dim_a, dim_b, std::move(m));
}

inline BipartiteState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  return read_state(in);
}

inline void write_state(std::ostream& out, const BipartiteState& s) {
  nlohmann::ordered_json doc;
  doc["dimA"] = s.dim_a;
  doc["dimB"] = s.dim_b;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Index i = 0; i < s.rho.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Index j = 0; j < s.rho.cols(); ++j)
      row.push_back({s.rho(i, j).real(), s.rho(i, j).imag()});
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

inline void write_state_file(const std::string& path, const BipartiteState& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_state(out, s);
}

// CSV row of 12-significant-digit values, '.' decimal separator.
inline void write_csv_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_significant(values[i]);
  }
  out << '\n';
}

}  // namespace minaff
