// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "opfp/json_io.hpp"
#include "opfp/rng.hpp"

namespace opfp::suite {

struct ScenarioConfig {
  std::uint64_t seed = 20240915;
  int threads = 0;  // 0 keeps the runtime default
  // Per-check overrides of the pass threshold. Checks that aggregate several
  // sub-identities report a normalized residual (max of sub-residual over
  // sub-tolerance) against a threshold of 1.
  std::map<std::string, double> tolerances;

  static ScenarioConfig from_json(const io::json& j);
  io::json to_json() const;
};

struct CheckReport {
  std::string check_id;
  io::json params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double wall_time_s = 0.0;

  io::json to_json() const;
  static CheckReport from_json(const io::json& j);
};

struct CltCurve {
  std::string kind;
  std::vector<int> n_values;
  std::vector<double> errors;
  double slope = 0.0;       // fitted on the tail of the curve
  double slope_full = 0.0;  // fitted on all points, for reference
  double third_moment_norm = 0.0;
  io::json to_json() const;
};

// Canonical identifiers of the verification suite, in report order.
const std::vector<std::string>& registered_check_ids();

// Runs every registered check (or the `only` subset), each with a seed
// derived from (config seed, check id), so results do not depend on
// scheduling. Reports come back sorted by check id.
std::vector<CheckReport> run_suite(const ScenarioConfig& cfg,
                                   const std::vector<std::string>& only = {});

// exit status for a report set: 0 all passed, 1 otherwise.
int suite_exit_code(const std::vector<CheckReport>& reports);

// Central-limit error curve: S_N is the N-fold convolution power of the
// 1/sqrt(N) dilation of `base`, compared against the matching central law
// with the base's variance, over orders <= max_order.
CltCurve clt_experiment(const std::string& kind, DistPtr base,
                        const std::vector<int>& n_values, int max_order,
                        std::uint64_t seed);

// Moment table at the identity and at one seeded random argument.
io::json emit_moments(DistPtr law, int level, int max_order,
                      std::uint64_t seed);

std::vector<Mat> sample_halfplane_points(std::uint64_t seed, int count, int n,
                                         double spread = 0.5);

}  // namespace opfp::suite
