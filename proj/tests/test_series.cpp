// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include <cmath>

#include "opfp/laws.hpp"
#include "opfp/rng.hpp"
#include "opfp/series.hpp"

using namespace opfp;

namespace {

Mat scalar(double x) {
  Mat m(1, 1);
  m(0, 0) = x;
  return m;
}

NilpotentPoint scalar_shift(int len) {
  std::vector<Mat> ones(len, Mat::Identity(1, 1));
  return superdiag_embed(ones);
}

NilpotentPoint zero_point(int d, int level) {
  return NilpotentPoint::from_strict_upper(Mat::Zero(d * level, d * level), d);
}

double max_table_dev(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    dev = std::max(dev, (a[i] - b[i]).norm());
  return dev;
}

}  // namespace

TEST_CASE("moment series at nilpotent points") {
  laws::BernoulliLaw ber(CpMap::identity(1));
  NilpotentPoint z = zero_point(2, 2);
  laws::SemicircleLaw sc2(CpMap::identity(2));
  CHECK((sc2.eval_M(z) - Mat::Identity(4, 4)).norm() == 0.0);

  // Corner of M - 1 at the shift embedding picks out one moment per offset.
  Mat m = ber.eval_M(scalar_shift(2));
  CHECK(std::abs(m(0, 2) - Complex(1, 0)) < 1e-14);  // mu(X 1 X 1) = 1

  laws::SemicircleLaw sc(CpMap::identity(1));
  Mat m4 = sc.eval_M(scalar_shift(4));
  CHECK(std::abs(m4(0, 4) - Complex(2, 0)) < 1e-13);  // Catalan(2)
}

TEST_CASE("B-transform at nilpotent points") {
  Rng rng(61);
  Mat a = rng.hermitian(2);
  CpMap eta({a}, 1, 1);
  laws::BernoulliLaw ber(eta);

  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Mat> blocks;
    for (int i = 0; i < 3; ++i) blocks.push_back(rng.gaussian(2, 2));
    NilpotentPoint p = superdiag_embed(blocks);
    Mat b = series::eval_B(ber, p);
    CHECK((b - eta.apply(p.value) * p.value).norm() < 1e-12);
  }

  CHECK(series::eval_B(ber, zero_point(2, 3)).norm() == 0.0);

  // Scalar arcsine of variance 2: M = 1 + 2b^2 + 6b^4 + ..., so the
  // B-series starts 2b^2 + 2b^4 + 4b^6.
  laws::ArcsineLaw arc(CpMap::scaled_identity(1, 2.0));
  Mat bt = series::eval_B(arc, scalar_shift(6));
  CHECK(std::abs(bt(0, 2) - Complex(2, 0)) < 1e-13);
  CHECK(std::abs(bt(0, 4) - Complex(2, 0)) < 1e-13);
  CHECK(std::abs(bt(0, 6) - Complex(4, 0)) < 1e-13);
}

TEST_CASE("semicircular B-transform closes through the moment series") {
  // B_s(b) = eta(b M_s(b)) b; the argument of eta carries the extra b on
  // the left. Scalar series check: B = b^2 + b^4 + 2b^6 for unit variance.
  laws::SemicircleLaw sc(CpMap::identity(1));
  NilpotentPoint p = scalar_shift(6);
  Mat bt = series::eval_B(sc, p);
  CHECK(std::abs(bt(0, 2) - Complex(1, 0)) < 1e-13);
  CHECK(std::abs(bt(0, 4) - Complex(1, 0)) < 1e-13);
  CHECK(std::abs(bt(0, 6) - Complex(2, 0)) < 1e-13);

  Rng rng(59);
  Mat a = rng.hermitian(2);
  a /= spectral_norm(a);
  CpMap eta({a}, 1, 1);
  laws::SemicircleLaw scm(eta);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Mat> blocks;
    for (int i = 0; i < 3; ++i) blocks.push_back(rng.gaussian(2, 2));
    NilpotentPoint q = superdiag_embed(blocks);
    Mat m = scm.eval_M(q);
    Mat lhs = series::eval_B(scm, q);
    Mat rhs = eta.apply(q.value * m) * q.value;
    CHECK((lhs - rhs).norm() < 1e-12);
    // The form without the left factor does not close.
    Mat wrong = eta.apply(m) * q.value;
    CHECK((lhs - wrong).norm() > 1e-3);
  }
}

TEST_CASE("R-transform inversion") {
  Rng rng(67);
  Mat a = rng.hermitian(2);
  CpMap eta({a}, 1, 1);
  laws::SemicircleLaw sc(eta);

  // R of the semicircular law is eta(c) c.
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Mat> blocks;
    for (int i = 0; i < 3; ++i) blocks.push_back(rng.gaussian(2, 2));
    NilpotentPoint c = superdiag_embed(blocks);
    Mat r = series::eval_R(sc, c);
    CHECK((r - eta.apply(c.value) * c.value).norm() < 1e-12);
  }

  // Same identity at a dense strictly upper point, not just superdiagonals.
  {
    Mat v = Mat::Zero(6, 6);
    v.block(0, 2, 2, 2) = rng.gaussian(2, 2);
    v.block(0, 4, 2, 2) = rng.gaussian(2, 2);
    v.block(2, 4, 2, 2) = rng.gaussian(2, 2);
    NilpotentPoint c = NilpotentPoint::from_strict_upper(v, 2);
    CHECK(c.index == 3);
    Mat r = series::eval_R(sc, c);
    CHECK((r - eta.apply(c.value) * c.value).norm() < 1e-12);
  }

  CHECK(series::eval_R(sc, zero_point(2, 3)).norm() == 0.0);

  // Scalar free cumulants of the symmetric two-point law: 1, -1 at orders
  // 2 and 4.
  laws::BernoulliLaw ber(CpMap::identity(1));
  Mat r = series::eval_R(ber, scalar_shift(4));
  CHECK(std::abs(r(0, 2) - Complex(1, 0)) < 1e-13);
  CHECK(std::abs(r(0, 4) - Complex(-1, 0)) < 1e-13);

  // Functional-inverse consistency R(p M(p)) = M(p) - 1.
  laws::ArcsineLaw arc(eta);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Mat> blocks;
    for (int i = 0; i < 3; ++i) blocks.push_back(rng.gaussian(2, 2));
    NilpotentPoint p = superdiag_embed(blocks);
    Mat m = arc.eval_M(p);
    NilpotentPoint pm =
        NilpotentPoint::from_strict_upper(Mat(p.value * m), p.base_dim);
    Mat r2 = series::eval_R(arc, pm);
    CHECK((r2 - (m - Mat::Identity(m.rows(), m.cols()))).norm() < 1e-10);
  }
}

TEST_CASE("H-transform basics") {
  laws::BernoulliLaw ber(CpMap::identity(1));
  CHECK(ber.eval_H(zero_point(1, 3)).norm() == 0.0);
  NilpotentPoint p = scalar_shift(3);
  Mat h = ber.eval_H(p);
  // Degree-one part of H is the argument itself.
  CHECK(std::abs(h(0, 1) - p.value(0, 1)) < 1e-14);
}

TEST_CASE("Boolean convolution") {
  CpMap id = CpMap::identity(1);
  auto ber = std::make_shared<laws::BernoulliLaw>(id);
  auto conv = series::boolean_convolve(ber, ber, 10);

  // Two-point plus two-point is the two-point of doubled variance.
  laws::BernoulliLaw ber2(CpMap::scaled_identity(1, 2.0));
  auto table = conv->moment_table(scalar(1.0), 8);
  auto want = ber2.moment_table(scalar(1.0), 8);
  CHECK(max_table_dev(table, want) < 1e-12);
  CHECK(std::abs(table[4](0, 0) - Complex(4, 0)) < 1e-13);

  // delta_0 is the unit.
  auto zero = laws::zero_distribution(1);
  auto with_zero = series::boolean_convolve(ber, zero, 10);
  CHECK(max_table_dev(with_zero->moment_table(scalar(1.0), 8),
                      ber->moment_table(scalar(1.0), 8)) < 1e-13);

  // Powers: t = 1 is the identity, t = 2 the self-convolution.
  auto p1 = series::boolean_power(ber, 1.0, 8);
  CHECK(max_table_dev(p1->moment_table(scalar(1.0), 8),
                      ber->moment_table(scalar(1.0), 8)) < 1e-13);
  auto p2 = series::boolean_power(ber, 2.0, 8);
  CHECK(max_table_dev(p2->moment_table(scalar(1.0), 8),
                      conv->moment_table(scalar(1.0), 8)) < 1e-13);
}

TEST_CASE("Boolean and free convolutions are commutative and associative") {
  Rng rng(71);
  Mat a1 = rng.hermitian(2), a2 = rng.hermitian(2);
  a1 /= spectral_norm(a1);
  a2 /= spectral_norm(a2);
  auto mu = std::make_shared<laws::BernoulliLaw>(CpMap({a1}, 1, 1));
  auto nu = std::make_shared<laws::SemicircleLaw>(CpMap({a2}, 1, 1));
  auto rho = std::make_shared<laws::ArcsineLaw>(CpMap({a1, a2}));
  Mat b = 0.8 * rng.unit_spectral(2);

  for (auto op : {series::boolean_convolve, series::free_convolve}) {
    auto ab = op(mu, nu, 8);
    auto ba = op(nu, mu, 8);
    CHECK(max_table_dev(ab->moment_table(b, 8), ba->moment_table(b, 8)) <
          1e-9);
    auto ab_c = op(ab, rho, 8);
    auto a_bc = op(mu, op(nu, rho, 8), 8);
    CHECK(max_table_dev(ab_c->moment_table(b, 8), a_bc->moment_table(b, 8)) <
          1e-9);
  }
}

TEST_CASE("free convolution of two-point laws, scalar oracle") {
  CpMap id = CpMap::identity(1);
  auto ber = std::make_shared<laws::BernoulliLaw>(id);
  auto conv = series::free_convolve(ber, ber, 10);
  auto t = conv->moment_table(scalar(1.0), 8);
  CHECK(std::abs(t[2](0, 0) - Complex(2, 0)) < 1e-12);
  CHECK(std::abs(t[4](0, 0) - Complex(6, 0)) < 1e-12);
  CHECK(std::abs(t[6](0, 0) - Complex(20, 0)) < 1e-12);
  CHECK(std::abs(t[8](0, 0) - Complex(70, 0)) < 1e-12);
  CHECK(t[3].norm() < 1e-13);

  auto zero = laws::zero_distribution(1);
  auto with_zero = series::free_convolve(ber, zero, 10);
  CHECK(max_table_dev(with_zero->moment_table(scalar(1.0), 8),
                      ber->moment_table(scalar(1.0), 8)) < 1e-12);

  auto p2 = series::free_power(ber, 2.0, 8);
  CHECK(max_table_dev(p2->moment_table(scalar(1.0), 8),
                      conv->moment_table(scalar(1.0), 8)) < 1e-12);
}

TEST_CASE("free convolution of semicirculars adds variances") {
  Rng rng(73);
  Mat a = rng.hermitian(2);
  a /= spectral_norm(a);
  CpMap eta({a}, 1, 1);
  auto sc = std::make_shared<laws::SemicircleLaw>(eta);
  auto conv = series::free_convolve(sc, sc, 8);
  laws::SemicircleLaw sc2(eta.scaled(2.0));
  auto dil = laws::dilate(sc, std::sqrt(2.0));
  Mat b = 0.8 * rng.unit_spectral(2);
  CHECK(max_table_dev(conv->moment_table(b, 8), sc2.moment_table(b, 8)) <
        1e-10);
  CHECK(max_table_dev(conv->moment_table(b, 8), dil->moment_table(b, 8)) <
        1e-10);
}

TEST_CASE("free two-point self-convolution vs arcsine at matricial levels") {
  Rng rng(79);
  for (int d : {1, 2}) {
    Mat a = rng.invertible_selfadjoint(d);
    a /= spectral_norm(a);
    CpMap eta({a}, 1, 1);
    auto ber = std::make_shared<laws::BernoulliLaw>(eta);
    auto conv = series::free_convolve(ber, ber, 8);
    laws::ArcsineLaw arc(eta.scaled(2.0));
    for (int m = 1; m <= 3; ++m) {
      Mat b = 0.8 * rng.unit_spectral(m * d);
      CHECK(max_table_dev(conv->moment_table(b, 8), arc.moment_table(b, 8)) <
            1e-9);
    }
  }
}

TEST_CASE("two-term variances break the two-point/arcsine identity at order six") {
  Rng rng(83);
  Mat a1 = rng.hermitian(2), a2 = rng.hermitian(2);
  a1 /= spectral_norm(a1);
  a2 /= spectral_norm(a2);
  CpMap eta({a1, a2});
  auto ber = std::make_shared<laws::BernoulliLaw>(eta);
  auto conv = series::free_convolve(ber, ber, 8);
  laws::ArcsineLaw arc(eta.scaled(2.0));
  Mat b = Mat::Identity(2, 2);
  auto ct = conv->moment_table(b, 8);
  auto at = arc.moment_table(b, 8);

  // Orders up to four agree for every variance; the factorization gap
  // eta(b) b eta(b) = eta(b eta(b) b) first bites at order six.
  CHECK((ct[2] - at[2]).norm() < 1e-12);
  CHECK((ct[4] - at[4]).norm() < 1e-12);
  CHECK((ct[6] - at[6]).norm() > 1e-3);

  Mat eb = eta.apply(b);
  Mat gap = eb * b * eb - eta.apply(b * eb * b);
  CHECK(gap.norm() > 1e-3);
  // The order-six mismatch is exactly -2/3 of the enclosed gap.
  Mat predicted = -(2.0 / 3.0) * (eta.apply(b * gap * b) * b);
  CHECK(((ct[6] - at[6]) - predicted).norm() < 1e-12);
}

TEST_CASE("monotone convolution basics") {
  CpMap id = CpMap::identity(1);
  auto ber = std::make_shared<laws::BernoulliLaw>(id);
  auto conv = series::monotone_convolve(ber, ber, 8);
  auto t = conv->moment_table(scalar(1.0), 6);
  CHECK(std::abs(t[2](0, 0) - Complex(2, 0)) < 1e-13);
  CHECK(std::abs(t[4](0, 0) - Complex(5, 0)) < 1e-13);
  CHECK(std::abs(t[6](0, 0) - Complex(13, 0)) < 1e-13);
  CHECK(t[3].norm() < 1e-14);

  auto zero = laws::zero_distribution(1);
  CHECK(max_table_dev(
            series::monotone_convolve(ber, zero, 8)->moment_table(scalar(1.0), 8),
            ber->moment_table(scalar(1.0), 8)) < 1e-13);
  CHECK(max_table_dev(
            series::monotone_convolve(zero, ber, 8)->moment_table(scalar(1.0), 8),
            ber->moment_table(scalar(1.0), 8)) < 1e-13);
}

TEST_CASE("monotone convolution is associative but not commutative") {
  Rng rng(89);
  auto ber = std::make_shared<laws::BernoulliLaw>(CpMap::identity(1));
  auto sc = std::make_shared<laws::SemicircleLaw>(CpMap::identity(1));
  Mat x(2, 2);
  x << 1, 0, 0, 0;
  auto shifted = std::make_shared<laws::MatrixModelLaw>(x, 2, 1);

  auto abc = series::monotone_convolve(
      series::monotone_convolve(ber, sc, 9), shifted, 8);
  auto a_bc = series::monotone_convolve(
      ber, series::monotone_convolve(sc, shifted, 9), 8);
  CHECK(max_table_dev(abc->moment_table(scalar(1.0), 8),
                      a_bc->moment_table(scalar(1.0), 8)) < 1e-11);

  // A non-centered factor shows the order dependence at the fourth moment.
  auto fwd = series::monotone_convolve(shifted, ber, 8);
  auto rev = series::monotone_convolve(ber, shifted, 8);
  double m4f = fwd->moment_table(scalar(1.0), 4)[4](0, 0).real();
  double m4r = rev->moment_table(scalar(1.0), 4)[4](0, 0).real();
  CHECK(std::abs(m4f - 3.0) < 1e-12);
  CHECK(std::abs(m4r - 3.75) < 1e-12);
}

TEST_CASE("arcsine is monotone stable") {
  Rng rng(97);
  for (int d : {1, 2}) {
    Mat a1 = rng.hermitian(d), a2 = rng.hermitian(d);
    a1 /= spectral_norm(a1);
    a2 /= spectral_norm(a2);
    CpMap eta({a1, a2});
    auto arc = std::make_shared<laws::ArcsineLaw>(eta);
    auto conv = series::monotone_convolve(arc, arc, 8);
    auto dil = laws::dilate(arc, std::sqrt(2.0));
    Mat b = 0.8 * rng.unit_spectral(d);
    CHECK(max_table_dev(conv->moment_table(b, 8), dil->moment_table(b, 8)) <
          1e-9);
  }
}

TEST_CASE("bordered evaluation matches the prefix moment route") {
  Rng rng(101);
  auto ber = std::make_shared<laws::BernoulliLaw>(CpMap::identity(1));
  auto sc = std::make_shared<laws::SemicircleLaw>(CpMap::identity(1));
  auto conv = series::monotone_convolve(ber, sc, 8);

  // multilinear_moment goes through the bordered eval_M; compare with the
  // prefix-embedded table at equal arguments.
  Mat b = scalar(0.7);
  auto table = conv->moment_table(b, 5);
  for (int n = 1; n <= 5; ++n) {
    std::vector<Mat> args(n, b);
    Mat viaM = conv->multilinear_moment(args);
    CHECK((viaM - table[n]).norm() < 1e-12);
  }

  // A monotone result can feed the other convolutions.
  auto mixed = series::free_convolve(conv, ber, 6);
  auto t = mixed->moment_table(scalar(1.0), 6);
  // Second moments add: 2 (monotone pair) + 1.
  CHECK(std::abs(t[2](0, 0) - Complex(3, 0)) < 1e-12);
}

TEST_CASE("boolean half power of the arcsine is the semicircle") {
  Rng rng(103);
  for (int d : {1, 2}) {
    Mat a = rng.invertible_selfadjoint(d);
    a /= spectral_norm(a);
    auto arc = std::make_shared<laws::ArcsineLaw>(
        CpMap({Mat(std::sqrt(2.0) * a)}, 1, 1));
    auto half = series::boolean_power(arc, 0.5, 10);
    laws::SemicircleLaw sc(CpMap({a}, 1, 1));
    Mat b = 0.8 * rng.unit_spectral(d);
    CHECK(max_table_dev(half->moment_table(b, 10), sc.moment_table(b, 10)) <
          1e-9);
  }
}

TEST_CASE("convolution capacity is enforced") {
  auto ber = std::make_shared<laws::BernoulliLaw>(CpMap::identity(1));
  auto conv = series::free_convolve(ber, ber, 4);
  CHECK_THROWS_AS(conv->moment_table(scalar(1.0), 6), CapacityError);
  auto sc = std::make_shared<laws::SemicircleLaw>(CpMap::identity(1));
  CHECK_THROWS_AS(series::free_convolve(sc, sc, 20), CapacityError);
  CHECK_THROWS_AS(series::monotone_convolve(sc, sc, 16), CapacityError);
}
