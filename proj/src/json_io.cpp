// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/json_io.hpp"

#include <fstream>

#include "opfp/laws.hpp"

namespace opfp::io {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError("complex scalar must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ConfigError("matrix must be a non-empty array of rows");
  const auto rows = j.size();
  const auto cols = j[0].size();
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw ConfigError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

namespace {

std::pair<long, long> parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return {std::stol(s), 1};
    return {std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1))};
  } catch (const std::exception&) {
    throw ConfigError("bad rational string: " + s);
  }
}

}  // namespace

json cpmap_to_json(const CpMap& eta) {
  json out;
  json kraus = json::array();
  for (const Mat& a : eta.kraus()) kraus.push_back(mat_to_json(a));
  out["kraus"] = std::move(kraus);
  out["weight"] = std::to_string(eta.weight_num()) + "/" +
                  std::to_string(eta.weight_den());
  return out;
}

CpMap cpmap_from_json(const json& j) {
  if (!j.contains("kraus")) throw ConfigError("cp map needs a kraus list");
  std::vector<Mat> kraus;
  for (const auto& k : j.at("kraus")) kraus.push_back(mat_from_json(k));
  long num = 0, den = 0;
  if (j.contains("weight")) {
    auto [n, d] = parse_rational(j.at("weight").get<std::string>());
    num = n;
    den = d;
  }
  return CpMap(std::move(kraus), num, den);
}

json partition_to_json(const nc::NcPairPartition& g) {
  json out = json::array();
  for (auto& [a, b] : g.pairs()) out.push_back(json::array({a, b}));
  return out;
}

nc::NcPairPartition partition_from_json(const json& j) {
  std::vector<std::pair<int, int>> pairs;
  int n = 0;
  for (const auto& p : j) {
    pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    n = std::max({n, pairs.back().first, pairs.back().second});
  }
  return nc::NcPairPartition(n, std::move(pairs));
}

DistPtr law_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bernoulli")
    return std::make_shared<laws::BernoulliLaw>(
        cpmap_from_json(j.at("variance")));
  if (kind == "semicircle")
    return std::make_shared<laws::SemicircleLaw>(
        cpmap_from_json(j.at("variance")));
  if (kind == "arcsine")
    return std::make_shared<laws::ArcsineLaw>(
        cpmap_from_json(j.at("variance")));
  if (kind == "matrix_model") {
    Mat x = mat_from_json(j.at("X"));
    int k = j.at("k").get<int>();
    if (k < 1 || x.rows() % k != 0)
      throw ConfigError("model level does not divide the matrix size");
    return std::make_shared<laws::MatrixModelLaw>(
        x, k, static_cast<int>(x.rows()) / k);
  }
  if (kind == "zero")
    return laws::zero_distribution(j.at("dim").get<int>());
  throw ConfigError("unknown law kind: " + kind);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("parse failure in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace opfp::io
