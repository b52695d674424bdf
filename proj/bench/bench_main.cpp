// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.
//
// Timings of the OpenMP kernels against their serial reference paths:
// partition-sum moments (term-parallel) and half-plane point sweeps.
// Both paths must agree exactly; the sweep check allows solver rounding.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "opfp/analytic.hpp"
#include "opfp/laws.hpp"
#include "opfp/rng.hpp"

using namespace opfp;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

template <class F>
double timed(F&& f, int reps = 3) {
  double best = 1e100;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_ms();
    f();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif

  Rng rng(2024);
  Mat a1 = rng.hermitian(3), a2 = rng.hermitian(3);
  a1 /= spectral_norm(a1);
  a2 /= spectral_norm(a2);
  CpMap eta({a1, a2});

  std::printf("\npartition-sum arcsine moments, d=3, level 4 (12x12)\n");
  std::printf("%6s %10s %12s %12s %9s %10s\n", "order", "terms", "serial_ms",
              "parallel_ms", "speedup", "max_dev");
  Mat b = 0.8 * rng.unit_spectral(12);
  for (int order : {12, 14, 16}) {
    Mat s, p;
    double ts = timed([&] {
      s = laws::nc_weighted_moment(eta, b, order, laws::NestWeight::Arcsine,
                                   laws::Exec::Serial);
    });
    double tp = timed([&] {
      p = laws::nc_weighted_moment(eta, b, order, laws::NestWeight::Arcsine,
                                   laws::Exec::Parallel);
    });
    std::printf("%6d %10llu %12.2f %12.2f %8.2fx %10.2e\n", order,
                (unsigned long long)nc::catalan(order / 2), ts, tp, ts / tp,
                (s - p).cwiseAbs().maxCoeff());
  }

  std::printf("\nsemicircular resolvent sweep, d=3, 256 points\n");
  std::vector<Mat> points;
  for (int i = 0; i < 256; ++i) points.push_back(rng.halfplane_point(3, 0.2));
  std::vector<Mat> gs(points.size()), gp(points.size());
  double ts = timed([&] {
    for (std::size_t i = 0; i < points.size(); ++i)
      gs[i] = analytic::cauchy_semicircle(eta, points[i]);
  });
  double tp = timed([&] {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < points.size(); ++i)
      gp[i] = analytic::cauchy_semicircle(eta, points[i]);
  });
  double dev = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    dev = std::max(dev, (gs[i] - gp[i]).norm());
  std::printf("serial %.2f ms, parallel %.2f ms, speedup %.2fx, max dev %.2e\n",
              ts, tp, ts / tp, dev);
  return 0;
}
