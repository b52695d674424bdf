// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.
//
// Release gate: runs every registered identity check at its pinned bound and
// prints one line per check plus the underlying sub-identity values. The
// process fails if any check fails.
//
// Two sub-identities are expected to fail for generic variances and are
// retained with their measured values rather than weakened: the order-4
// deviation floor of the two-term-variance counterexample (the mismatch
// provably starts at order 6; see the order-by-order table it prints), and
// the partial-trace reduction with distinct Kraus operators (the traced
// resolvent is a mixture of semicircle resolvents, not the averaged-variance
// resolvent; the equal-operator control passes).

#include <cstdio>

#include "opfp/suite.hpp"

int main() {
  opfp::suite::ScenarioConfig cfg;
  auto reports = opfp::suite::run_suite(cfg);

  int failed = 0;
  for (const auto& r : reports) {
    std::printf("%s %s residual=%.3e tolerance=%.3g (%.2fs)\n",
                r.passed ? "PASS" : "FAIL", r.check_id.c_str(), r.residual,
                r.tolerance, r.wall_time_s);
    if (r.params.contains("subchecks")) {
      for (const auto& sub : r.params["subchecks"]) {
        std::printf("    %-42s %s", sub["name"].get<std::string>().c_str(),
                    sub["ok"].get<bool>() ? "ok   " : "FAIL ");
        if (sub.contains("value"))
          std::printf("value=%.6e %s %.3g",
                      sub["value"].get<double>(),
                      sub["direction"].get<std::string>().c_str(),
                      sub["bound"].get<double>());
        std::printf("\n");
      }
    }
    if (r.params.contains("notes"))
      std::printf("    notes: %s\n", r.params["notes"].dump().c_str());
    if (r.params.contains("error"))
      std::printf("    error: %s\n",
                  r.params["error"].get<std::string>().c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%zu checks run, %d failed\n", reports.size(), failed);
  return opfp::suite::suite_exit_code(reports);
}
