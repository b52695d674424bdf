// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.
//
// Command-line front end: verification suite, moment tables, convolutions,
// half-plane transforms, the Abel iteration check, and central-limit rate
// experiments. All matrix payloads are JSON with [re, im] entries.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "opfp/analytic.hpp"
#include "opfp/json_io.hpp"
#include "opfp/laws.hpp"
#include "opfp/series.hpp"
#include "opfp/suite.hpp"

namespace {

using namespace opfp;

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("OPFP_SEED");
  if (!s || !*s) return std::nullopt;
  return std::strtoull(s, nullptr, 10);
}

// The arcsine analytic transforms need the rank-one form 2 a . a; recover a
// from the stored Kraus data.
Mat arcsine_atom(const CpMap& eta) {
  if (eta.kraus().size() != 1)
    throw DomainError(
        "analytic arcsine transforms need a rank-one variance 2 a.a");
  return Mat(std::sqrt(eta.weight() / 2.0) * eta.kraus().front());
}

int cmd_verify(const std::string& config_path, const std::string& only_csv,
               const std::string& report_path, int threads,
               std::optional<std::uint64_t> seed_flag) {
  suite::ScenarioConfig cfg;
  if (!config_path.empty())
    cfg = suite::ScenarioConfig::from_json(io::load_json_file(config_path));
  if (threads > 0) cfg.threads = threads;
  if (auto s = env_seed()) cfg.seed = *s;
  if (seed_flag) cfg.seed = *seed_flag;

  std::vector<std::string> only;
  if (!only_csv.empty()) {
    std::stringstream ss(only_csv);
    std::string item;
    while (std::getline(ss, item, ',')) only.push_back(item);
  }

  auto reports = suite::run_suite(cfg, only);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!report_path.empty()) {
    file.open(report_path);
    if (!file) throw ConfigError("cannot write " + report_path);
    out = &file;
  }
  for (const auto& r : reports) *out << r.to_json().dump() << "\n";
  int failed = 0;
  for (const auto& r : reports) {
    std::fprintf(stderr, "%s %s residual=%.3e tolerance=%.3g (%.2fs)\n",
                 r.passed ? "PASS" : "FAIL", r.check_id.c_str(), r.residual,
                 r.tolerance, r.wall_time_s);
    if (!r.passed) ++failed;
  }
  std::fprintf(stderr, "%zu checks, %d failed\n", reports.size(), failed);
  return suite::suite_exit_code(reports);
}

int cmd_moments(const std::string& law_path, int level, int order,
                std::uint64_t seed) {
  if (auto s = env_seed()) seed = *s;
  DistPtr law = io::law_from_json(io::load_json_file(law_path));
  std::cout << suite::emit_moments(law, level, order, seed).dump(2) << "\n";
  return 0;
}

int cmd_convolve(const std::string& op, const std::string& lhs_path,
                 const std::string& rhs_path, int order, int level,
                 const std::string& point_path) {
  DistPtr lhs = io::law_from_json(io::load_json_file(lhs_path));
  DistPtr rhs = io::law_from_json(io::load_json_file(rhs_path));
  DistPtr conv;
  if (op == "free")
    conv = series::free_convolve(lhs, rhs, order);
  else if (op == "boolean")
    conv = series::boolean_convolve(lhs, rhs, order);
  else if (op == "monotone")
    conv = series::monotone_convolve(lhs, rhs, order);
  else
    throw ConfigError("unknown convolution op: " + op);

  const int s = level * conv->base_dim();
  Mat b = point_path.empty() ? Mat(Mat::Identity(s, s))
                             : io::mat_from_json(io::load_json_file(point_path));
  auto table = conv->moment_table(b, order);
  io::json out;
  out["op"] = op;
  out["level"] = level;
  io::json mom;
  for (int n = 0; n <= order; ++n)
    mom[std::to_string(n)] = io::mat_to_json(table[n]);
  out["moments"] = std::move(mom);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_analytic(const std::string& law_path, const std::string& point_path,
                 const std::string& transform, double tol) {
  io::json law_spec = io::load_json_file(law_path);
  Mat b = io::mat_from_json(io::load_json_file(point_path));
  const std::string kind = law_spec.at("kind").get<std::string>();
  analytic::IterationConfig cfg;
  cfg.tol = tol;

  Mat g;
  double residual = 0.0;
  if (kind == "bernoulli") {
    CpMap eta = io::cpmap_from_json(law_spec.at("variance"));
    g = analytic::cauchy_bernoulli(eta, b);
    residual = (Mat(b - eta.apply(b.inverse())) * g -
                Mat::Identity(b.rows(), b.cols()))
                   .norm();
  } else if (kind == "semicircle") {
    CpMap eta = io::cpmap_from_json(law_spec.at("variance"));
    g = analytic::cauchy_semicircle(eta, b, cfg);
    residual = (g - Mat(b - eta.apply(g)).inverse()).norm();
  } else if (kind == "arcsine") {
    CpMap eta = io::cpmap_from_json(law_spec.at("variance"));
    Mat a = arcsine_atom(eta);
    g = analytic::f_arcsine(a, b, cfg).inverse();
    residual = analytic::abel_check(a, b, 1, cfg).residual;
  } else {
    throw ConfigError("no analytic transform for law kind: " + kind);
  }

  io::json out;
  out["transform"] = transform;
  out["value"] = io::mat_to_json(transform == "F" ? Mat(g.inverse()) : g);
  out["residual"] = residual;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_abel(const std::string& a_path, const std::string& point_path, int n,
             double tol) {
  Mat a = io::mat_from_json(io::load_json_file(a_path));
  Mat b = io::mat_from_json(io::load_json_file(point_path));
  analytic::IterationConfig cfg;
  cfg.tol = tol;
  auto rep = analytic::abel_check(a, b, n, cfg);
  io::json out;
  out["point"] = io::mat_to_json(rep.point);
  out["n"] = rep.n;
  out["residual"] = rep.residual;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_clt(const std::string& kind, const std::string& base_path,
            int orders, const std::string& n_csv, std::uint64_t seed) {
  if (auto s = env_seed()) seed = *s;
  DistPtr base = io::law_from_json(io::load_json_file(base_path));
  std::vector<int> ns;
  std::stringstream ss(n_csv);
  std::string item;
  while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
  auto curve = suite::clt_experiment(kind, base, ns, orders, seed);
  std::cout << curve.to_json().dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-valued free probability toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand(
      "verify", "run the identity verification suite");
  std::string config_path, only_csv, report_path;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  verify->add_option("--config", config_path, "scenario config JSON");
  verify->add_option("--only", only_csv, "comma-separated check ids");
  verify->add_option("--report", report_path, "write JSON-lines report here");
  verify->add_option("--threads", threads, "worker thread count");
  verify->add_option("--seed", seed, "override the scenario seed")
      ->each([&](const std::string&) { seed_set = true; });

  auto* moments = app.add_subcommand("moments", "moment tables of a law");
  std::string law_path;
  int level = 1, order = 8;
  std::uint64_t mseed = 20240915;
  moments->add_option("--law", law_path, "law spec JSON")->required();
  moments->add_option("--level", level, "matricial level");
  moments->add_option("--order", order, "maximum moment order");
  moments->add_option("--seed", mseed, "seed for the random point");

  auto* convolve = app.add_subcommand("convolve", "additive convolutions");
  std::string op, lhs_path, rhs_path, point_path;
  int corder = 8, clevel = 1;
  convolve->add_option("--op", op, "free|boolean|monotone")->required();
  convolve->add_option("--lhs", lhs_path, "left law JSON")->required();
  convolve->add_option("--rhs", rhs_path, "right law JSON")->required();
  convolve->add_option("--order", corder, "moment order cap");
  convolve->add_option("--level", clevel, "matricial level");
  convolve->add_option("--point", point_path, "evaluation point JSON");

  auto* analytic_cmd =
      app.add_subcommand("analytic", "half-plane transform evaluation");
  std::string alaw, apoint, transform = "G";
  double tol = 1e-12;
  analytic_cmd->add_option("--law", alaw, "law spec JSON")->required();
  analytic_cmd->add_option("--point", apoint, "half-plane point JSON")
      ->required();
  analytic_cmd->add_option("--transform", transform, "G or F");
  analytic_cmd->add_option("--tol", tol, "solver tolerance");

  auto* abel = app.add_subcommand("abel", "Abel equation residual");
  std::string abel_a, abel_point;
  int abel_n = 1;
  double abel_tol = 1e-12;
  abel->add_option("--a", abel_a, "self-adjoint atom JSON")->required();
  abel->add_option("--point", abel_point, "half-plane point JSON")->required();
  abel->add_option("--n", abel_n, "iteration count");
  abel->add_option("--tol", abel_tol, "solver tolerance");

  auto* clt = app.add_subcommand("clt", "central-limit rate experiment");
  std::string ckind, cbase, cns = "2,4,8,16,32,64";
  int corders = 8;
  std::uint64_t cseed = 20240915;
  clt->add_option("--kind", ckind, "boolean|free|monotone")->required();
  clt->add_option("--base", cbase, "base law JSON")->required();
  clt->add_option("--orders", corders, "maximum moment order");
  clt->add_option("--N", cns, "comma-separated sum lengths");
  clt->add_option("--seed", cseed, "seed for evaluation points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed())
      return cmd_verify(config_path, only_csv, report_path, threads,
                        seed_set ? std::optional<std::uint64_t>(seed)
                                 : std::nullopt);
    if (moments->parsed()) return cmd_moments(law_path, level, order, mseed);
    if (convolve->parsed())
      return cmd_convolve(op, lhs_path, rhs_path, corder, clevel, point_path);
    if (analytic_cmd->parsed())
      return cmd_analytic(alaw, apoint, transform, tol);
    if (abel->parsed()) return cmd_abel(abel_a, abel_point, abel_n, abel_tol);
    if (clt->parsed()) return cmd_clt(ckind, cbase, corders, cns, cseed);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
