#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "weitz/double_form.hpp"

namespace weitz {

/// Closed-form N_p evaluator under test; np_formula unless overridden.
using NpEvaluator = std::function<DoubleForm(const CurvatureTensor&, int)>;

struct SuiteConfig {
  int n_min = 4;
  int n_max = 6;
  int seeds = 10;               // random instances per (n, p) cell
  std::uint64_t seed = 42;      // base seed
  int trials = 100;             // random pairs/triples per pairing check
  double tolerance = 1e-9;      // relative, for the random sweep
  bool extended = false;        // raises n_max to 8
  unsigned threads = 0;         // 0: hardware concurrency
  NpEvaluator formula;          // empty: np_formula
};

/// Throws kConfig for an empty range, a range outside [4, 8] or
/// non-positive counts and tolerances.
void validate(const SuiteConfig& config);

enum class Relation {
  kAtMost,  // residual <= tolerance
  kAbove,   // residual >  tolerance
  kAtLeast  // residual >= tolerance
};

struct VerificationRecord {
  std::string identity;
  int criterion = 0;  // acceptance group 1..10, 0 for supplementary checks
  int n = 0;
  int p = -1;         // -1 when not applicable
  int k = -1;
  std::uint64_t seed = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::kAtMost;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  SuiteConfig config;
  std::vector<VerificationRecord> records;
  std::map<std::string, double> timings_ms;  // per check group

  bool passed() const noexcept;
  std::size_t failures() const noexcept;
  /// Whether every record of the acceptance group passed; false when it has no records.
  bool criterion_passed(int criterion) const noexcept;
  std::size_t criterion_records(int criterion) const noexcept;
};

VerificationReport run_suite(const SuiteConfig& config);

/// Deterministic JSON; timings are included only on request since they vary between runs.
std::string report_to_json(const VerificationReport& report, bool include_timings = false);

}  // namespace weitz
