// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include <cmath>

#include "opfp/laws.hpp"
#include "opfp/series.hpp"
#include "opfp/suite.hpp"

using namespace opfp;

namespace {

std::vector<double> scalar_diag(const io::json& table) {
  std::vector<double> out;
  for (const auto& m : table) out.push_back(m[0][0][0].get<double>());
  return out;
}

bool close_all(const std::vector<double>& got, const std::vector<double>& want,
               double tol = 1e-12) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (std::abs(got[i] - want[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("registry lists the canonical checks") {
  const auto& ids = suite::registered_check_ids();
  CHECK(ids.size() == 11);
  for (std::size_t i = 1; i < ids.size(); ++i) CHECK(ids[i - 1] < ids[i]);
}

TEST_CASE("suite subset runs deterministically") {
  suite::ScenarioConfig cfg;
  std::vector<std::string> only = {"01_partition_catalan_tilde",
                                   "02_scalar_law_oracles"};
  auto r1 = suite::run_suite(cfg, only);
  auto r2 = suite::run_suite(cfg, only);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].check_id == "01_partition_catalan_tilde");
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].passed);
    CHECK(r1[i].residual == r2[i].residual);
    CHECK(r1[i].params.dump() == r2[i].params.dump());
  }
  CHECK(suite::suite_exit_code(r1) == 0);
}

TEST_CASE("seed changes keep verdicts stable") {
  suite::ScenarioConfig a, b;
  a.seed = 1;
  b.seed = 999;
  std::vector<std::string> only = {"03_arcsine_engine_crosscheck"};
  auto ra = suite::run_suite(a, only);
  auto rb = suite::run_suite(b, only);
  CHECK(ra[0].passed == rb[0].passed);
  CHECK(ra[0].passed);
}

TEST_CASE("forced zero tolerance reports failure and exit code one") {
  suite::ScenarioConfig cfg;
  cfg.tolerances["02_scalar_law_oracles"] = 0.0;
  auto r = suite::run_suite(cfg, {"02_scalar_law_oracles"});
  CHECK_FALSE(r[0].passed);
  CHECK(suite::suite_exit_code(r) == 1);
}

TEST_CASE("unknown check ids are rejected") {
  suite::ScenarioConfig cfg;
  CHECK_THROWS_AS(suite::run_suite(cfg, {"no_such_check"}), ConfigError);
}

TEST_CASE("report json round trip") {
  suite::CheckReport rep;
  rep.check_id = "x";
  rep.params["k"] = 3;
  rep.residual = 1.5e-10;
  rep.tolerance = 1.0;
  rep.passed = true;
  rep.wall_time_s = 0.25;
  auto back = suite::CheckReport::from_json(rep.to_json());
  CHECK(back.check_id == rep.check_id);
  CHECK(back.residual == rep.residual);
  CHECK(back.tolerance == rep.tolerance);
  CHECK(back.passed == rep.passed);
  CHECK(back.params.dump() == rep.params.dump());
}

TEST_CASE("scenario config parsing") {
  io::json j;
  j["seed"] = 7;
  j["tolerances"]["05_abel_equation"] = 1e-6;
  auto cfg = suite::ScenarioConfig::from_json(j);
  CHECK(cfg.seed == 7);
  CHECK(cfg.tolerances.at("05_abel_equation") == 1e-6);
  io::json bad;
  bad["seed"] = "not a number";
  CHECK_THROWS_AS(suite::ScenarioConfig::from_json(bad), ConfigError);
}

TEST_CASE("moment tables for the three laws") {
  auto arc = std::make_shared<laws::ArcsineLaw>(CpMap::scaled_identity(1, 2));
  auto j = suite::emit_moments(arc, 1, 6, 42);
  CHECK(close_all(scalar_diag(j["identity"]), {1, 0, 2, 0, 6, 0, 20}));

  auto sc = std::make_shared<laws::SemicircleLaw>(CpMap::identity(1));
  CHECK(close_all(scalar_diag(suite::emit_moments(sc, 1, 6, 42)["identity"]),
                  {1, 0, 1, 0, 2, 0, 5}));

  auto ber = std::make_shared<laws::BernoulliLaw>(CpMap::identity(1));
  CHECK(close_all(scalar_diag(suite::emit_moments(ber, 1, 6, 42)["identity"]),
                  {1, 0, 1, 0, 1, 0, 1}));

  // stable serialization under a fixed seed
  CHECK(suite::emit_moments(arc, 1, 6, 42).dump() ==
        suite::emit_moments(arc, 1, 6, 42).dump());
}

TEST_CASE("law and partition parsing") {
  io::json model;
  model["kind"] = "matrix_model";
  model["X"] = io::json::parse("[[[1,0],[0,0]],[[0,0],[-1,0]]]");
  model["k"] = 2;
  DistPtr m = io::law_from_json(model);
  Mat one = Mat::Identity(1, 1);
  CHECK(std::abs(m->matricial_moment(one, 2)(0, 0) - Complex(1, 0)) < 1e-14);

  io::json zero;
  zero["kind"] = "zero";
  zero["dim"] = 2;
  CHECK(io::law_from_json(zero)->matricial_moment(Mat::Identity(2, 2), 2)
            .norm() == 0.0);

  io::json bad;
  bad["kind"] = "cauchy";
  CHECK_THROWS_AS(io::law_from_json(bad), ConfigError);

  nc::NcPairPartition g(6, {{1, 4}, {2, 3}, {5, 6}});
  CHECK(io::partition_from_json(io::partition_to_json(g)) == g);
  CHECK(io::partition_to_json(g).dump() == "[[1,4],[2,3],[5,6]]");
}

TEST_CASE("half-plane point sampling") {
  CHECK(suite::sample_halfplane_points(5, 0, 2).empty());
  auto pts = suite::sample_halfplane_points(5, 12, 3);
  CHECK(pts.size() == 12);
  for (const auto& b : pts) CHECK(herm_positive(b));
  auto again = suite::sample_halfplane_points(5, 12, 3);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(io::mat_to_json(pts[i]).dump() == io::mat_to_json(again[i]).dump());
}

TEST_CASE("free central limit of the symmetric two-point law") {
  auto ber = std::make_shared<laws::BernoulliLaw>(CpMap::identity(1));
  auto curve = suite::clt_experiment("free", ber, {2, 4, 8, 16}, 8, 11);
  REQUIRE(curve.errors.size() == 4);
  for (std::size_t i = 1; i < curve.errors.size(); ++i)
    CHECK(curve.errors[i] < curve.errors[i - 1]);
  CHECK(curve.slope == doctest::Approx(-1.0).epsilon(0.1));

  // The fourth moment of the rescaled N-fold sum is 2 - 1/N.
  auto s4 = series::free_power(laws::dilate(ber, 0.5), 4.0, 4);
  Mat one = Mat::Identity(1, 1);
  CHECK(std::abs(s4->matricial_moment(one, 4)(0, 0) -
                 Complex(2.0 - 0.25, 0)) < 1e-12);
}

TEST_CASE("monotone central limit at N = 1 measures the base gap") {
  auto ber = std::make_shared<laws::BernoulliLaw>(CpMap::identity(1));
  auto curve = suite::clt_experiment("monotone", ber, {1}, 4, 11);
  CHECK(curve.errors.size() == 1);
  CHECK(curve.errors[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("clt rejects non-centered and unusable bases") {
  Mat x(2, 2);
  x << 1, 0, 0, 0;
  auto shifted = std::make_shared<laws::MatrixModelLaw>(x, 2, 1);
  CHECK_THROWS_AS(suite::clt_experiment("free", shifted, {2, 4}, 6, 1),
                  ArgumentError);
  auto ber = std::make_shared<laws::BernoulliLaw>(CpMap::identity(1));
  CHECK_THROWS_AS(suite::clt_experiment("fancy", ber, {2}, 4, 1),
                  ArgumentError);
}
