// Runs the default verification suite and prints one line per acceptance criterion.

#include <cstdio>

#include "weitz/verify.hpp"

namespace {

constexpr const char* kNames[] = {
    "",
    "closed formula for N_p matches the Clifford-sum oracle",
    "star of N_p equals N_(n-p)",
    "metric multiplication is adjoint to contraction, g^k = *c^k*",
    "metric powers and N_p at n = 2p are injective",
    "iterated contractions of N_p match their closed forms",
    "splitting and Kulkarni decomposition",
    "constant curvature closed forms",
    "Clifford layer: ad rule, exterior recovery, associativity",
    "mid-degree formula",
    "positivity spot checks",
    "determinism of the JSON report",
};

}  // namespace

int main() {
  const weitz::SuiteConfig config;
  const auto report = weitz::run_suite(config);
  const bool deterministic = weitz::report_to_json(report) == weitz::report_to_json(weitz::run_suite(config));

  int failed = 0;
  for (int k = 1; k <= 11; ++k) {
    const bool ok = k == 11 ? deterministic : report.criterion_passed(k);
    failed += ok ? 0 : 1;
    if (k == 11) {
      std::printf("[%s] C11 %s\n", ok ? "PASS" : "FAIL", kNames[k]);
    } else {
      std::printf("[%s] C%d %s (%zu checks)\n", ok ? "PASS" : "FAIL", k, kNames[k], report.criterion_records(k));
    }
  }

  for (const auto& r : report.records) {
    if (r.pass) continue;
    std::printf("  failed: C%d %s n=%d p=%d k=%d seed=%llu residual=%.6g tol=%.3g %s\n", r.criterion,
                r.identity.c_str(), r.n, r.p, r.k, static_cast<unsigned long long>(r.seed), r.residual,
                r.tolerance, r.detail.c_str());
  }
  std::printf("%d of 11 criteria passed\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
