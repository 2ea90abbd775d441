#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qd/error.hpp"
#include "qd/frame.hpp"
#include "qd/spectral.hpp"

// File formats.
//
// Frame file (JSON):
//   {"n": 2, "m": 3, "vectors": [[[re, im], [re, im]], ...]}   m vectors of n entries
// Frame file (CSV, real frames only): one vector per row, comma separated.
// Spectral model (JSON):
//   {"ess": [lo, hi], "above": [[val, mult], ...], "below": [[val, mult], ...],
//    "excess": n | "inf", "cluster_at_me": bool}

namespace qd::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& why) { throw Error(Errc::ParseError, why); }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

inline double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(where + ": non-finite number");
  return x;
}

}  // namespace detail

/// Synthesis matrix from the JSON frame object; checks shape, not rank.
inline Matrix synthesis_from_json(const json& doc) {
  using detail::parse_fail;
  if (!doc.is_object()) parse_fail("frame file: top level must be an object");
  for (const char* key : {"n", "m", "vectors"}) {
    if (!doc.contains(key)) parse_fail(std::string("frame file: missing '") + key + "'");
  }
  if (!doc["n"].is_number_integer() || !doc["m"].is_number_integer()) parse_fail("frame file: n and m must be integers");
  const auto n = doc["n"].get<std::int64_t>();
  const auto m = doc["m"].get<std::int64_t>();
  if (n < 1 || m < 1) parse_fail("frame file: n and m must be >= 1");
  const json& vectors = doc["vectors"];
  if (!vectors.is_array() || static_cast<std::int64_t>(vectors.size()) != m) {
    parse_fail("frame file: 'vectors' must hold m entries");
  }
  Matrix F(n, m);
  for (std::int64_t i = 0; i < m; ++i) {
    const json& vec = vectors[static_cast<std::size_t>(i)];
    if (!vec.is_array() || static_cast<std::int64_t>(vec.size()) != n) {
      parse_fail("frame file: vector " + std::to_string(i) + " must hold n entries");
    }
    for (std::int64_t r = 0; r < n; ++r) {
      const json& entry = vec[static_cast<std::size_t>(r)];
      const std::string where = "vectors[" + std::to_string(i) + "][" + std::to_string(r) + "]";
      if (!entry.is_array() || entry.size() != 2) parse_fail(where + ": expected [re, im]");
      F(r, i) = Complex(detail::finite_number(entry[0], where), detail::finite_number(entry[1], where));
    }
  }
  return F;
}

inline json synthesis_to_json(const Matrix& F) {
  json vectors = json::array();
  for (Index i = 0; i < F.cols(); ++i) {
    json vec = json::array();
    for (Index r = 0; r < F.rows(); ++r) vec.push_back({F(r, i).real(), F(r, i).imag()});
    vectors.push_back(std::move(vec));
  }
  return {{"n", F.rows()}, {"m", F.cols()}, {"vectors", std::move(vectors)}};
}

/// Real frame from CSV text, one vector per non-empty line.
inline Matrix synthesis_from_csv(const std::string& text) {
  using detail::parse_fail;
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        parse_fail("csv: bad number '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos || !std::isfinite(x)) {
        parse_fail("csv: bad number '" + cell + "'");
      }
      row.push_back(x);
    }
    if (!rows.empty() && row.size() != rows.front().size()) parse_fail("csv: rows have different lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) parse_fail("csv: no vectors");
  Matrix F(static_cast<Index>(rows.front().size()), static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t r = 0; r < rows[i].size(); ++r) F(static_cast<Index>(r), static_cast<Index>(i)) = rows[i][r];
  }
  return F;
}

/// Reads a frame from JSON, or CSV when the extension is ".csv".
inline Frame read_frame(const std::filesystem::path& path) {
  const std::string text = detail::slurp(path);
  if (path.extension() == ".csv") return Frame(synthesis_from_csv(text));
  return Frame(synthesis_from_json(detail::parse_json(text)));
}

inline void write_frame(const std::filesystem::path& path, const Matrix& synthesis) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::ParseError, "cannot write '" + path.string() + "'");
  out << synthesis_to_json(synthesis).dump(2) << '\n';
  if (!out) throw Error(Errc::ParseError, "failed writing '" + path.string() + "'");
}

inline spectral::SpectralModel model_from_json(const json& doc) {
  using detail::parse_fail;
  if (!doc.is_object()) parse_fail("model: top level must be an object");
  if (!doc.contains("ess") || !doc["ess"].is_array() || doc["ess"].size() != 2) {
    parse_fail("model: 'ess' must be [lo, hi]");
  }
  spectral::SpectralModel model;
  model.ess_lo = detail::finite_number(doc["ess"][0], "ess[0]");
  model.ess_hi = detail::finite_number(doc["ess"][1], "ess[1]");

  auto eigen_list = [&](const char* key) {
    std::vector<spectral::Eigenvalue> list;
    if (!doc.contains(key)) return list;
    const json& arr = doc[key];
    if (!arr.is_array()) parse_fail(std::string("model: '") + key + "' must be an array");
    for (const json& pair : arr) {
      if (!pair.is_array() || pair.size() != 2 || !pair[1].is_number_integer()) {
        parse_fail(std::string("model: entries of '") + key + "' must be [value, multiplicity]");
      }
      list.push_back({detail::finite_number(pair[0], key), pair[1].get<std::int64_t>()});
    }
    return list;
  };
  model.above = eigen_list("above");
  model.below = eigen_list("below");

  if (!doc.contains("excess")) parse_fail("model: missing 'excess'");
  const json& ex = doc["excess"];
  if (ex.is_string() && ex.get<std::string>() == "inf") {
    model.excess.reset();
  } else if (ex.is_number_integer()) {
    model.excess = ex.get<std::int64_t>();
  } else {
    parse_fail("model: 'excess' must be an integer or \"inf\"");
  }
  if (doc.contains("cluster_at_me")) {
    if (!doc["cluster_at_me"].is_boolean()) parse_fail("model: 'cluster_at_me' must be a boolean");
    model.cluster_at_me = doc["cluster_at_me"].get<bool>();
  }
  return model;
}

inline json model_to_json(const spectral::SpectralModel& model) {
  auto list = [](const std::vector<spectral::Eigenvalue>& v) {
    json arr = json::array();
    for (const auto& e : v) arr.push_back({e.value, e.multiplicity});
    return arr;
  };
  json doc = {{"ess", {model.ess_lo, model.ess_hi}},
              {"above", list(model.above)},
              {"below", list(model.below)},
              {"cluster_at_me", model.cluster_at_me}};
  if (model.excess) {
    doc["excess"] = *model.excess;
  } else {
    doc["excess"] = "inf";
  }
  return doc;
}

/// Parses and validates a spectral model file.
inline spectral::SpectralModel read_model(const std::filesystem::path& path) {
  spectral::SpectralModel model = model_from_json(detail::parse_json(detail::slurp(path)));
  spectral::validate(model);
  return model;
}

}  // namespace qd::io
