// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "opfp/analytic.hpp"
#include "opfp/laws.hpp"
#include "opfp/series.hpp"

namespace opfp::suite {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

// Sub-identity collector. Each entry is either res <= tol or value >= floor;
// the check's reported residual is the worst ratio, compared against 1.
class SubChecks {
 public:
  void upper(const std::string& name, double value, double tol) {
    double ratio = tol > 0.0 ? value / tol : (value == 0.0 ? 0.0 : kInf);
    push(name, value, tol, "<=", ratio);
  }

  void lower(const std::string& name, double value, double floor) {
    double ratio = value > 0.0 ? floor / value : kInf;
    push(name, value, floor, ">=", ratio);
  }

  // Wall-time budget; contributes only a pass/fail indicator so that check
  // params and residuals stay deterministic under a fixed seed.
  void budget(const std::string& name, double measured, double bound) {
    io::json e;
    e["name"] = name;
    e["bound"] = bound;
    e["ok"] = measured <= bound;
    detail_["subchecks"].push_back(std::move(e));
    worst_ = std::max(worst_, measured <= bound ? 0.0 : 2.0);
  }

  double normalized() const { return worst_; }
  const io::json& detail() const { return detail_; }

  void note(const std::string& key, const io::json& value) {
    detail_["notes"][key] = value;
  }

 private:
  void push(const std::string& name, double value, double bound,
            const char* dir, double ratio) {
    io::json e;
    e["name"] = name;
    e["value"] = value;
    e["bound"] = bound;
    e["direction"] = dir;
    e["ok"] = ratio <= 1.0;
    detail_["subchecks"].push_back(std::move(e));
    worst_ = std::max(worst_, ratio);
  }

  double worst_ = 0.0;
  io::json detail_ = io::json::object();
};

Mat unit_scaled(Rng& rng, int n, double target) {
  return target * rng.unit_spectral(n);
}

CpMap random_two_kraus(Rng& rng, int d) {
  Mat a1 = rng.hermitian(d);
  Mat a2 = rng.hermitian(d);
  a1 /= std::max(1.0, spectral_norm(a1));
  a2 /= std::max(1.0, spectral_norm(a2));
  return CpMap({a1, a2});
}

Mat scaled_invertible_sa(Rng& rng, int d) {
  Mat a = rng.invertible_selfadjoint(d);
  return a / spectral_norm(a);
}

double table_deviation(const std::vector<Mat>& lhs,
                       const std::vector<Mat>& rhs) {
  double dev = 0.0;
  for (std::size_t i = 0; i < lhs.size() && i < rhs.size(); ++i)
    dev = std::max(dev, (lhs[i] - rhs[i]).norm());
  return dev;
}

double fit_slope(const std::vector<int>& ns, const std::vector<double>& errs,
                 bool tail_only) {
  // The rate estimate fits the asymptotic tail of the curve; early N carry
  // pre-asymptotic constants from the highest orders.
  std::size_t first = 0;
  if (tail_only && ns.size() >= 4) first = ns.size() / 2 - 1;
  std::vector<double> xs, ys;
  for (std::size_t i = first; i < ns.size(); ++i) {
    if (errs[i] > 1e-13) {
      xs.push_back(std::log(static_cast<double>(ns[i])));
      ys.push_back(std::log(errs[i]));
    }
  }
  if (xs.size() < 2) return 0.0;
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xm += xs[i];
    ym += ys[i];
  }
  xm /= xs.size();
  ym /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - xm) * (ys[i] - ym);
    den += (xs[i] - xm) * (xs[i] - xm);
  }
  return den > 0 ? num / den : 0.0;
}

// ---------------------------------------------------------------------------
// Individual checks. Every numeric bound here is part of the release gate.

SubChecks check_partitions(std::uint64_t /*seed*/) {
  SubChecks s;
  const double t0 = now_s();
  int mismatches = 0;
  for (int m = 1; m <= 10; ++m) {
    auto all = nc::enumerate_nc2(2 * m);
    if (all.size() != nc::catalan(m)) ++mismatches;
  }
  if (!nc::enumerate_nc2(3).empty()) ++mismatches;
  if (!nc::enumerate_nc2(7).empty()) ++mismatches;
  s.upper("catalan_counts_m_le_10", mismatches, 0.5);

  nc::NcPairPartition g(6, {{1, 4}, {2, 3}, {5, 6}});
  nc::NcPairPartition expect(8, {{1, 8}, {2, 5}, {3, 4}, {6, 7}});
  s.upper("tilde_enclosure_example", nc::tilde(g) == expect ? 0.0 : 1.0, 0.5);
  s.budget("runtime_s", now_s() - t0, 5.0);
  return s;
}

SubChecks check_scalar_oracles(std::uint64_t /*seed*/) {
  SubChecks s;
  const Mat one = Mat::Identity(1, 1);
  CpMap id1 = CpMap::identity(1);
  CpMap two1 = CpMap::scaled_identity(1, 2.0);

  const double cat[] = {1, 1, 2, 5, 14};
  double dev = 0.0;
  for (int k = 0; k <= 4; ++k) {
    Mat m = laws::semicircle_moment(id1, one, 2 * k);
    dev = std::max(dev, std::abs(m(0, 0).real() - cat[k]));
    dev = std::max(dev, std::abs(m(0, 0).imag()));
  }
  s.upper("semicircle_catalan", dev, 1e-12);

  const double binom[] = {2, 6, 20, 70};
  dev = 0.0;
  for (int k = 1; k <= 4; ++k) {
    Mat mf = laws::arcsine_moment_fast(two1, one, 2 * k);
    Mat me = laws::arcsine_moment_enum(two1, one, 2 * k);
    dev = std::max(dev, std::abs(mf(0, 0) - Complex(binom[k - 1], 0)));
    dev = std::max(dev, std::abs(me(0, 0) - Complex(binom[k - 1], 0)));
  }
  s.upper("arcsine_central_binomial", dev, 1e-12);

  dev = 0.0;
  for (int n = 2; n <= 12; n += 2) {
    Mat m = laws::bernoulli_moment(id1, one, n);
    dev = std::max(dev, std::abs(m(0, 0) - Complex(1, 0)));
  }
  for (int n = 1; n <= 11; n += 2)
    dev = std::max(dev,
                   laws::bernoulli_moment(id1, one, n).cwiseAbs().maxCoeff());
  s.upper("bernoulli_unit_moments", dev, 1e-12);

  // Exponential growth diagnostics against the 2 ||eta||^{1/2} heuristic;
  // reported, not asserted.
  laws::SemicircleLaw sc(id1);
  laws::BernoulliLaw ber(id1);
  laws::ArcsineLaw arc(id1);
  io::json growth;
  growth["heuristic_2_sqrt_eta"] = 2.0;
  growth["semicircle"] = laws::moment_growth_bound(sc, 8, 4);
  growth["bernoulli"] = laws::moment_growth_bound(ber, 8, 4);
  growth["arcsine"] = laws::moment_growth_bound(arc, 8, 4);
  s.note("growth_bounds", growth);
  return s;
}

SubChecks check_arcsine_engines(std::uint64_t seed) {
  SubChecks s;
  Rng rng(seed);
  double dev = 0.0;
  for (int d = 1; d <= 3; ++d) {
    CpMap eta = random_two_kraus(rng, d);
    for (int m = 1; m <= 2; ++m) {
      std::vector<Mat> points = {Mat::Identity(m * d, m * d),
                                 unit_scaled(rng, m * d, 0.8)};
      for (const Mat& b : points)
        for (int n = 2; n <= 12; n += 2) {
          Mat fe = laws::arcsine_moment_fast(eta, b, n);
          Mat en = laws::arcsine_moment_enum(eta, b, n);
          dev = std::max(dev, (fe - en).norm());
        }
    }
  }
  s.upper("enum_vs_fast", dev, 1e-9);
  return s;
}

SubChecks check_free_bernoulli_arcsine(std::uint64_t seed) {
  SubChecks s;
  Rng rng(seed);

  // Rank-one variance a.a: the free self-convolution of the two-point law
  // matches the arcsine of variance 2 a.a at every matricial level.
  const std::pair<int, int> grid[] = {{1, 1}, {1, 2}, {1, 3},
                                      {2, 2}, {2, 3}, {3, 1}};
  double dev = 0.0;
  for (auto [d, m] : grid) {
    Mat a = scaled_invertible_sa(rng, d);
    CpMap eta({a}, 1, 1);
    auto ber = std::make_shared<laws::BernoulliLaw>(eta);
    auto conv = series::free_convolve(ber, ber, 10);
    laws::ArcsineLaw arc(eta.scaled(2.0));
    std::vector<Mat> points = {Mat::Identity(m * d, m * d),
                               unit_scaled(rng, m * d, 0.8)};
    for (const Mat& b : points)
      dev = std::max(dev, table_deviation(conv->moment_table(b, 10),
                                          arc.moment_table(b, 10)));
  }
  s.upper("rank_one_identity_orders_le_10", dev, 1e-9);

  // Two-term Kraus variance: the identity must fail. Deviations per order
  // are reported; the gate asserts a visible deviation at order 4.
  const int d = 2;
  CpMap eta2 = random_two_kraus(rng, d);
  auto ber2 = std::make_shared<laws::BernoulliLaw>(eta2);
  auto conv2 = series::free_convolve(ber2, ber2, 10);
  laws::ArcsineLaw arc2(eta2.scaled(2.0));
  Mat b = Mat::Identity(d, d);
  auto ct = conv2->moment_table(b, 10);
  auto at = arc2.moment_table(b, 10);
  io::json per_order = io::json::array();
  for (int n = 0; n <= 10; ++n)
    per_order.push_back((ct[n] - at[n]).norm());
  s.note("counterexample_deviation_by_order", per_order);
  s.lower("counterexample_order4_deviation", (ct[4] - at[4]).norm(), 1e-3);
  s.note("counterexample_order6_deviation", (ct[6] - at[6]).norm());

  Mat eb = eta2.apply(b);
  double gap = (eb * b * eb - eta2.apply(b * eb * b)).norm();
  s.lower("variance_factorization_gap", gap, 1e-3);
  return s;
}

SubChecks check_abel(std::uint64_t seed) {
  SubChecks s;
  Rng rng(seed);
  double worst = 0.0;
  int idx = 0;
  for (int d = 1; d <= 3; ++d) {
    const int count = d == 1 ? 9 : 8;
    for (int i = 0; i < count; ++i, ++idx) {
      Mat a = scaled_invertible_sa(rng, d);
      Mat b = rng.halfplane_point(d);
      int n = 1 + idx % 5;
      worst = std::max(worst, analytic::abel_check(a, b, n).residual);
    }
  }
  s.upper("abel_residual_25_points_n_le_5", worst, 1e-8);
  return s;
}

SubChecks check_quadratic(std::uint64_t seed) {
  SubChecks s;
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    int d = 1 + i % 3;
    Mat a = scaled_invertible_sa(rng, d);
    Mat b = rng.halfplane_point(d);
    worst = std::max(worst, analytic::quadratic_g_check(a, b));
  }
  s.upper("quadratic_identity_100_points", worst, 1e-9);

  // Factored scalar identity (z - 2a) G (z + 2a) G = 1 at z = 3, a = 1.
  Mat one = Mat::Identity(1, 1);
  analytic::IterationConfig tight;
  tight.tol = 1e-14;
  Mat f = analytic::f_arcsine(one, Mat(3.0 * one), tight);
  Complex g = 1.0 / f(0, 0);
  Complex lhs = (3.0 - 2.0) * g * (3.0 + 2.0) * g;
  s.upper("factored_scalar_identity", std::abs(lhs - 1.0), 1e-12);
  return s;
}

SubChecks check_boolean_semicircle(std::uint64_t seed) {
  SubChecks s;
  Rng rng(seed);

  double dev = 0.0;
  for (int d = 1; d <= 3; ++d) {
    Mat a = scaled_invertible_sa(rng, d);
    auto arc = std::make_shared<laws::ArcsineLaw>(
        CpMap({std::sqrt(2.0) * a}, 1, 1));
    auto half = series::boolean_power(arc, 0.5, 10);
    laws::SemicircleLaw sc(CpMap({a}, 1, 1));
    std::vector<Mat> points = {Mat::Identity(d, d), unit_scaled(rng, d, 0.8)};
    for (const Mat& b : points)
      dev = std::max(dev, table_deviation(half->moment_table(b, 10),
                                          sc.moment_table(b, 10)));
  }
  s.upper("boolean_half_power_vs_semicircle", dev, 1e-9);

  // Partial-trace reduction of diagonal-Kraus variances.
  double worst_random = 0.0;
  double worst_equal = 0.0;
  for (int m = 2; m <= 3; ++m)
    for (int d = 1; d <= 2; ++d) {
      std::vector<Mat> as, eq;
      Mat a0 = scaled_invertible_sa(rng, d);
      for (int j = 0; j < m; ++j) {
        as.push_back(scaled_invertible_sa(rng, d));
        eq.push_back(a0);
      }
      Mat b = rng.halfplane_point(d);
      worst_random = std::max(
          worst_random, analytic::partial_trace_semicircle_check(as, b));
      worst_equal = std::max(
          worst_equal, analytic::partial_trace_semicircle_check(eq, b));
    }
  s.upper("partial_trace_random_kraus", worst_random, 1e-8);
  s.note("partial_trace_equal_kraus_control", worst_equal);
  return s;
}

SubChecks check_monotone_semigroup(std::uint64_t seed) {
  SubChecks s;
  Rng rng(seed);

  double dev = 0.0;
  for (int d = 1; d <= 2; ++d) {
    CpMap eta = random_two_kraus(rng, d);
    auto arc = std::make_shared<laws::ArcsineLaw>(eta);
    auto conv = series::monotone_convolve(arc, arc, 8);
    auto dil = laws::dilate(arc, std::sqrt(2.0));
    std::vector<Mat> points = {Mat::Identity(d, d), unit_scaled(rng, d, 0.8)};
    for (const Mat& b : points)
      dev = std::max(dev, table_deviation(conv->moment_table(b, 8),
                                          dil->moment_table(b, 8)));
  }
  s.upper("arcsine_monotone_self_stability", dev, 1e-9);

  double worst = 0.0;
  int idx = 0;
  for (int d = 1; d <= 3; ++d) {
    const int count = d == 1 ? 9 : 8;
    for (int i = 0; i < count; ++i, ++idx) {
      Mat a = scaled_invertible_sa(rng, d);
      Mat b = rng.halfplane_point(d);
      Mat lhs = analytic::semigroup_f(
          a, 1.0, analytic::semigroup_f(a, 1.0, b));
      Mat rhs = analytic::semigroup_f(a, 2.0, b);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  s.upper("semigroup_flow_25_points", worst, 1e-9);
  return s;
}

SubChecks check_subordination(std::uint64_t seed) {
  SubChecks s;
  Rng rng(seed);
  double worst_eq = 0.0;
  double worst_comm = 0.0;
  for (int i = 0; i < 50; ++i) {
    int d = 1 + i % 3;
    int n = 2 + i % 3;
    Mat a = scaled_invertible_sa(rng, d);
    CpMap eta({a}, 1, 1);
    Mat b = rng.halfplane_point(d);
    Mat w = analytic::subordination_omega(eta, n, b);
    Mat winv = w.inverse();
    Mat rhs = b / n + (1.0 - 1.0 / n) * (w - eta.apply(winv));
    worst_eq = std::max(worst_eq, (w - rhs).norm());
    if (n == 2) {
      Mat ainv = a.inverse();
      worst_comm =
          std::max(worst_comm, (w * ainv * b - b * ainv * w).norm());
    }
  }
  s.upper("subordination_equation_50_points", worst_eq, 1e-10);
  s.upper("omega2_commutation", worst_comm, 1e-9);
  return s;
}

SubChecks check_clt(std::uint64_t seed) {
  SubChecks s;
  const double t0 = now_s();
  const std::vector<int> ns = {2, 4, 8, 16, 32, 64};

  auto sym_model = std::make_shared<laws::MatrixModelLaw>(
      Mat(Eigen::Vector4cd(1.0, 2.0, -1.0, -2.0).asDiagonal()), 4, 1);
  auto skew_model = std::make_shared<laws::MatrixModelLaw>(
      Mat(Eigen::Vector3cd(2.0, -1.0, -1.0).asDiagonal()), 3, 1);
  auto ber = std::make_shared<laws::BernoulliLaw>(CpMap::identity(1));

  CltCurve c1 = clt_experiment("boolean", sym_model, ns, 8, seed);
  s.upper("boolean_symmetric_slope_dev", std::abs(c1.slope + 1.0), 0.15);
  CltCurve c2 = clt_experiment("boolean", skew_model, ns, 8, seed);
  s.upper("boolean_skewed_slope_dev", std::abs(c2.slope + 0.5), 0.15);
  CltCurve c3 = clt_experiment("free", ber, ns, 8, seed);
  s.upper("free_symmetric_slope_dev", std::abs(c3.slope + 1.0), 0.15);
  CltCurve c4 = clt_experiment("free", skew_model, ns, 8, seed);
  s.upper("free_skewed_slope_dev", std::abs(c4.slope + 0.5), 0.15);

  CltCurve c5 = clt_experiment("monotone", ber, ns, 8, seed);
  s.note("monotone_slope_informational", c5.slope);

  // Error curves decrease with N; the two largest N get a 10% allowance.
  int bumps = 0;
  for (const CltCurve* c : {&c1, &c2, &c3, &c4, &c5}) {
    for (std::size_t i = 1; i < c->errors.size(); ++i) {
      double slack = i + 2 >= c->errors.size() ? 1.1 : 1.0;
      if (c->errors[i] > slack * c->errors[i - 1]) ++bumps;
    }
  }
  s.upper("curves_monotone_decreasing", bumps, 0.5);

  s.note("curves", io::json::array({c1.to_json(), c2.to_json(), c3.to_json(),
                                    c4.to_json(), c5.to_json()}));
  s.budget("runtime_s", now_s() - t0, 120.0);
  return s;
}

SubChecks check_transform_bridges(std::uint64_t seed) {
  SubChecks s;
  Rng rng(seed);
  const int d = 2;

  // R-transform inversion recovers the semicircular R = eta(c) c.
  CpMap eta = random_two_kraus(rng, d);
  laws::SemicircleLaw sc(eta);
  double dev = 0.0;
  for (int rep = 0; rep < 4; ++rep) {
    std::vector<Mat> blocks;
    for (int i = 0; i < 3; ++i) blocks.push_back(unit_scaled(rng, d, 0.9));
    NilpotentPoint c = superdiag_embed(blocks);
    Mat r = series::eval_R(sc, c);
    dev = std::max(dev, (r - eta.apply(c.value) * c.value).norm());
  }
  s.upper("semicircle_r_recovery", dev, 1e-12);

  // 1 - F(b^{-1}) b = B(b), with F from the closed Bernoulli resolvent and
  // B from the truncated moment series at a small invertible point.
  Mat b_small = 0.1 * Mat::Identity(d, d) + unit_scaled(rng, d, 0.05);
  laws::BernoulliLaw ber(eta);
  {
    Mat f = analytic::cauchy_bernoulli(eta, b_small.inverse()).inverse();
    Mat lhs = Mat::Identity(d, d) - f * b_small;
    auto table = ber.moment_table(b_small, 30);
    Mat m = Mat::Zero(d, d);
    for (const Mat& t : table) m += t;
    Mat bser = (m - Mat::Identity(d, d)) * m.inverse();
    s.upper("f_b_bridge", (lhs - bser).norm(), 1e-10);
    s.upper("f_b_exact_form", (lhs - eta.apply(b_small) * b_small).norm(),
            1e-10);
  }

  // G(b^{-1}) = H(b): closed or fixed-point resolvents against the
  // truncated series, within its geometric tail bound.
  {
    Mat far = 12.0 * Complex(0, 1) * Mat::Identity(d, d) +
              rng.hermitian(d);
    auto tber = analytic::cauchy_generic(ber, far, 16);
    double gb = (tber.value - analytic::cauchy_bernoulli(eta, far)).norm();
    s.upper("g_h_bridge_bernoulli", gb, tber.tail_bound + 1e-10);

    auto tsc = analytic::cauchy_generic(sc, far, 14);
    double gs = (tsc.value - analytic::cauchy_semicircle(eta, far)).norm();
    s.upper("g_h_bridge_semicircle", gs, tsc.tail_bound + 1e-10);
  }

  // Resolvent of the free self-convolution against the subordination route.
  {
    Mat a = scaled_invertible_sa(rng, d);
    CpMap eta1({a}, 1, 1);
    auto ber1 = std::make_shared<laws::BernoulliLaw>(eta1);
    auto conv = series::free_convolve(ber1, ber1, 12);
    Mat far = 10.0 * Complex(0, 1) * Mat::Identity(d, d) +
              rng.hermitian(d);
    auto t = analytic::cauchy_generic(*conv, far, 12);
    Mat g_sub = analytic::f_arcsine(a, far).inverse();
    s.upper("free_conv_series_vs_subordination", (t.value - g_sub).norm(),
            t.tail_bound + 1e-9);
  }
  return s;
}

struct CheckDef {
  std::string id;
  std::function<SubChecks(std::uint64_t)> fn;
};

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {"01_partition_catalan_tilde", check_partitions},
      {"02_scalar_law_oracles", check_scalar_oracles},
      {"03_arcsine_engine_crosscheck", check_arcsine_engines},
      {"04_free_bernoulli_arcsine", check_free_bernoulli_arcsine},
      {"05_abel_equation", check_abel},
      {"06_quadratic_cauchy_identity", check_quadratic},
      {"07_boolean_semicircle_partial_trace", check_boolean_semicircle},
      {"08_monotone_stability_semigroup", check_monotone_semigroup},
      {"09_subordination", check_subordination},
      {"10_clt_rates", check_clt},
      {"11_transform_bridges", check_transform_bridges},
  };
  return defs;
}

}  // namespace

// ---------------------------------------------------------------------------

ScenarioConfig ScenarioConfig::from_json(const io::json& j) {
  ScenarioConfig cfg;
  try {
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("tolerances"))
      for (auto& [k, v] : j.at("tolerances").items())
        cfg.tolerances[k] = v.get<double>();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad scenario config: ") + e.what());
  }
  return cfg;
}

io::json ScenarioConfig::to_json() const {
  io::json j;
  j["seed"] = seed;
  j["threads"] = threads;
  j["tolerances"] = io::json::object();
  for (auto& [k, v] : tolerances) j["tolerances"][k] = v;
  return j;
}

io::json CheckReport::to_json() const {
  io::json j;
  j["check_id"] = check_id;
  j["params"] = params;
  j["residual"] = residual;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  j["wall_time_s"] = wall_time_s;
  return j;
}

CheckReport CheckReport::from_json(const io::json& j) {
  CheckReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.params = j.at("params");
  r.residual = j.at("residual").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  return r;
}

io::json CltCurve::to_json() const {
  io::json j;
  j["kind"] = kind;
  j["N"] = n_values;
  j["errors"] = errors;
  j["slope"] = slope;
  j["slope_full"] = slope_full;
  j["third_moment_norm"] = third_moment_norm;
  return j;
}

const std::vector<std::string>& registered_check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& d : registry()) v.push_back(d.id);
    return v;
  }();
  return ids;
}

namespace {

// The release gate is this fixed id list; a registry drifting away from it
// is a configuration fault, not a passing suite.
const std::vector<std::string>& canonical_check_ids() {
  static const std::vector<std::string> ids = {
      "01_partition_catalan_tilde",
      "02_scalar_law_oracles",
      "03_arcsine_engine_crosscheck",
      "04_free_bernoulli_arcsine",
      "05_abel_equation",
      "06_quadratic_cauchy_identity",
      "07_boolean_semicircle_partial_trace",
      "08_monotone_stability_semigroup",
      "09_subordination",
      "10_clt_rates",
      "11_transform_bridges",
  };
  return ids;
}

}  // namespace

std::vector<CheckReport> run_suite(const ScenarioConfig& cfg,
                                   const std::vector<std::string>& only) {
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
  if (registered_check_ids() != canonical_check_ids())
    throw ConfigError("check registry does not match the canonical id list");
  std::vector<const CheckDef*> selected;
  for (const auto& def : registry()) {
    if (only.empty() ||
        std::find(only.begin(), only.end(), def.id) != only.end())
      selected.push_back(&def);
  }
  for (const std::string& id : only)
    if (std::find(registered_check_ids().begin(),
                  registered_check_ids().end(),
                  id) == registered_check_ids().end())
      throw ConfigError("unknown check id: " + id);
  if (selected.empty()) throw ConfigError("no checks selected");

  const int count = static_cast<int>(selected.size());
  std::vector<CheckReport> reports(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    const CheckDef& def = *selected[i];
    CheckReport rep;
    rep.check_id = def.id;
    rep.tolerance = 1.0;
    auto it = cfg.tolerances.find(def.id);
    if (it != cfg.tolerances.end()) rep.tolerance = it->second;
    const double t0 = now_s();
    try {
      SubChecks s = def.fn(derive_seed(cfg.seed, def.id));
      rep.params = s.detail();
      rep.residual = s.normalized();
    } catch (const std::exception& e) {
      rep.params["error"] = e.what();
      rep.residual = kInf;
    }
    rep.wall_time_s = now_s() - t0;
    rep.passed = rep.residual <= rep.tolerance;
    reports[i] = std::move(rep);
  }
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return a.check_id < b.check_id;
            });
  return reports;
}

int suite_exit_code(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return 1;
  return 0;
}

CltCurve clt_experiment(const std::string& kind, DistPtr base,
                        const std::vector<int>& n_values, int max_order,
                        std::uint64_t seed) {
  if (kind != "boolean" && kind != "free" && kind != "monotone")
    throw ArgumentError("unknown convolution kind: " + kind);
  const int d = base->base_dim();
  const Mat id = Mat::Identity(d, d);

  double m1 = base->matricial_moment(id, 1).norm();
  if (m1 > 1e-12)
    throw ArgumentError("central-limit base must be centered");
  auto eta = base->variance();
  if (!eta)
    throw ArgumentError(
        "base variance has no self-adjoint Kraus form; use a block-diagonal "
        "model or a central law");

  CltCurve curve;
  curve.kind = kind;
  curve.n_values = n_values;
  curve.third_moment_norm = base->matricial_moment(id, 3).norm();

  std::unique_ptr<Distribution> law;
  if (kind == "boolean")
    law = std::make_unique<laws::BernoulliLaw>(*eta);
  else if (kind == "free")
    law = std::make_unique<laws::SemicircleLaw>(*eta);
  else
    law = std::make_unique<laws::ArcsineLaw>(*eta);

  Rng rng(derive_seed(seed, "clt_points"));
  Mat h = rng.hermitian(d);
  std::vector<Mat> points = {id, Mat(0.8 * h / std::max(1.0, spectral_norm(h)))};

  std::vector<std::vector<Mat>> law_tables;
  for (const Mat& pt : points) law_tables.push_back(law->moment_table(pt, max_order));

  for (int n : n_values) {
    DistPtr u = laws::dilate(base, 1.0 / std::sqrt(static_cast<double>(n)));
    DistPtr s;
    if (kind == "boolean")
      s = series::boolean_power(u, static_cast<double>(n), max_order);
    else if (kind == "free")
      s = series::free_power(u, static_cast<double>(n), max_order);
    else
      s = series::monotone_power(u, n, max_order);
    double err = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) {
      auto table = s->moment_table(points[p], max_order);
      err = std::max(err, table_deviation(table, law_tables[p]));
    }
    curve.errors.push_back(err);
  }
  curve.slope = fit_slope(curve.n_values, curve.errors, true);
  curve.slope_full = fit_slope(curve.n_values, curve.errors, false);
  return curve;
}

io::json emit_moments(DistPtr law, int level, int max_order,
                      std::uint64_t seed) {
  const int s = level * law->base_dim();
  Rng rng(derive_seed(seed, "emit_moments"));
  Mat g = rng.gaussian(s, s);
  Mat random_point = 0.9 * g / std::max(1.0, spectral_norm(g));

  io::json out;
  out["level"] = level;
  out["max_order"] = max_order;
  auto tab_id = law->moment_table(Mat::Identity(s, s), max_order);
  auto tab_rand = law->moment_table(random_point, max_order);
  io::json ji = io::json::array(), jr = io::json::array();
  for (const Mat& m : tab_id) ji.push_back(io::mat_to_json(m));
  for (const Mat& m : tab_rand) jr.push_back(io::mat_to_json(m));
  out["identity"] = std::move(ji);
  out["random_point"] = io::mat_to_json(random_point);
  out["random"] = std::move(jr);
  return out;
}

std::vector<Mat> sample_halfplane_points(std::uint64_t seed, int count, int n,
                                         double spread) {
  Rng rng(seed);
  std::vector<Mat> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(rng.halfplane_point(n, spread));
  return out;
}

}  // namespace opfp::suite
