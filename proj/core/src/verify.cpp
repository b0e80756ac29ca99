#include "weitz/verify.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "json.hpp"
#include "weitz/clifford.hpp"
#include "weitz/error.hpp"
#include "weitz/linalg.hpp"
#include "weitz/random.hpp"
#include "weitz/weitzenboeck.hpp"

namespace weitz {

namespace {

// Seed streams, one per check group, so adding a group never shifts another.
enum Stream : std::uint64_t {
  kSweep = 1,
  kPairing,
  kMeyer,
  kHypothesis,
  kTachibana,
  kMidDegree,
  kClifford,
  kProduct,
};

constexpr double kPairingTol = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr double kRankTol = 1e-10;
constexpr int kMeyerInstances = 20;

std::string format(const char* fmt, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

double relative(const DoubleForm& candidate, const DoubleForm& oracle) {
  return (candidate - oracle).norm() / std::max(oracle.norm(), 1.0);
}

double min_eigenvalue(const DoubleForm& form) {
  if (form.coeffs().size() == 0) return 0.0;
  return jacobi_eigen(0.5 * (form.coeffs() + form.coeffs().transpose())).values(0);
}

struct Cell {
  int criterion;
  int n;
  int p = -1;
  int k = -1;
  std::uint64_t seed = 0;
};

VerificationRecord make_record(std::string identity, const Cell& cell, double residual, double tolerance,
                               Relation relation = Relation::kAtMost) {
  VerificationRecord r;
  r.identity = std::move(identity);
  r.criterion = cell.criterion;
  r.n = cell.n;
  r.p = cell.p;
  r.k = cell.k;
  r.seed = cell.seed;
  r.residual = residual;
  r.tolerance = tolerance;
  r.relation = relation;
  switch (relation) {
    case Relation::kAtMost: r.pass = residual <= tolerance; break;
    case Relation::kAbove: r.pass = residual > tolerance; break;
    case Relation::kAtLeast: r.pass = residual >= tolerance; break;
  }
  return r;
}

// On failure, report whether the candidate is a constant multiple of the oracle.
VerificationRecord compare(std::string identity, const Cell& cell, const DoubleForm& candidate,
                           const DoubleForm& oracle, double tolerance) {
  auto r = make_record(std::move(identity), cell, relative(candidate, oracle), tolerance);
  const double oo = inner(oracle, oracle);
  if (!r.pass && oo > 0.0) {
    const double factor = inner(candidate, oracle) / oo;
    const double after = (candidate - factor * oracle).norm() / std::max(candidate.norm(), 1.0);
    r.detail = after <= tolerance ? format("candidate = %.12g x oracle (residual after fit %.3g)", factor, after)
                                  : format("no constant factor fits (best %.12g, residual after fit %.3g)", factor, after);
  }
  return r;
}

DoubleForm contract_to_11(const DoubleForm& form) { return contract(form, form.p() - 1); }

// ---------------------------------------------------------------------------
// Random sweep: one Bianchi tensor per (n, seed), every degree checked against
// the Clifford-sum oracle.

std::vector<VerificationRecord> sweep_cell(int n, int index, const SuiteConfig& config, const NpEvaluator& formula) {
  const auto& ctx = context(n);
  const std::uint64_t seed = mix_seed(config.seed, {kSweep, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(index)});
  const double tol = config.tolerance;
  const CurvatureTensor omega = random_bianchi_22(seed, std::nullopt, ctx);
  const DoubleForm& w = omega.form();

  std::vector<DoubleForm> oracle;
  for (int p = 0; p <= n; ++p) oracle.push_back(np_definition(omega, p));

  std::vector<VerificationRecord> out;
  const KulkarniComponents parts = decompose_22(omega);
  const double scalar = contract(w, 2).value();

  for (int p = 2; p <= n - 2; ++p) {
    const Cell cell{0, n, p, -1, seed};
    const DoubleForm closed = formula(omega, p);
    out.push_back(compare("main_theorem", {1, n, p, -1, seed}, closed, oracle[p], tol));
    out.push_back(compare("duality", {2, n, p, -1, seed}, star(oracle[p]), oracle[n - p], tol));
    for (int k = 0; k <= p; ++k) {
      const char* id = k == p ? "contraction_full" : k == p - 1 ? "contraction_order_p_minus_1" : "contraction_low_order";
      out.push_back(compare(id, {5, n, p, k, seed}, np_contraction_rhs(omega, p, k), contract(oracle[p], k), tol));
    }
    out.push_back(compare("contraction_einstein_form", {5, n, p, p - 1, seed}, np_contraction_einstein(omega, p),
                          contract(oracle[p], p - 1), tol));
    out.push_back(compare("splitting", {6, n, p, -1, seed}, np_split(parts, p), oracle[p], tol));

    out.push_back(make_record("bianchi_preserved", cell, bianchi_residual(closed) / std::max(closed.norm(), 1.0), tol));

    const DoubleForm beta = random_form(mix_seed(seed, {100, static_cast<std::uint64_t>(p)}), ctx, p, p);
    const double lhs = inner(oracle[p], beta);
    const double rhs = inner(w, np_adjoint(beta, p));
    out.push_back(make_record("weitzenboeck_adjoint", cell,
                              std::abs(lhs - rhs) / std::max(oracle[p].norm() * beta.norm(), 1.0), tol));

    const double lowest = min_eigenvalue(oracle[p]);
    if (lowest > 0.0) {
      auto r = make_record("positivity_implies_scalar", {10, n, p, -1, seed}, scalar, 0.0, Relation::kAbove);
      r.detail = format("random instance, min eigenvalue %.6g", lowest);
      out.push_back(std::move(r));
    }
  }

  for (int p = 1; p <= n - 1 && scalar > 0.0; ++p) {
    auto r = make_record("scalar_positive_full_contraction", {10, n, p, -1, seed}, contract(oracle[p], p).value(),
                         0.0, Relation::kAbove);
    r.detail = "random instance with positive scalar curvature";
    out.push_back(std::move(r));
  }

  out.push_back(compare("decomposition_reassembly", {6, n, -1, -1, seed}, parts.reassemble(), w, tol));
  out.push_back(make_record("weyl_traceless", {6, n, -1, -1, seed}, contract(parts.weyl).norm() / std::max(w.norm(), 1.0),
                            kPairingTol));
  out.push_back(make_record("ricci_part_traceless", {6, n, -1, -1, seed},
                            std::abs(parts.traceless_ricci.coeffs().trace()) / std::max(w.norm(), 1.0), kPairingTol));

  const double scale = std::max(w.norm(), 1.0);
  out.push_back(make_record("degree_zero_vanishes", {0, n, 0, -1, seed}, oracle[0].norm() / scale, tol));
  out.push_back(make_record("top_degree_vanishes", {0, n, n, -1, seed}, oracle[n].norm() / scale, tol));
  out.push_back(compare("degree_one_is_ricci", {0, n, 1, -1, seed}, oracle[1], contract(w), tol));

  Rng rng(mix_seed(seed, {200}));
  for (int p = 1; p <= n - 1; ++p) {
    const Eigen::MatrixXd frame = extend_to_frame(sample_plane(n, p, rng), rng);
    const double expected = np_sectional_sum(w, frame, p);
    const double got = sectional(oracle[p], frame.leftCols(p));
    out.push_back(make_record("sectional_formula", {0, n, p, -1, seed}, std::abs(got - expected) / std::max(std::abs(expected), 1.0), tol));
  }

  const int mid = n / 2;
  const Eigen::MatrixXd rotated = extend_to_frame(sample_plane(n, 1, rng), rng);
  out.push_back(compare("frame_independence", {0, n, mid, -1, seed}, np_definition(w, mid, rotated), oracle[mid], tol));
  return out;
}

// ---------------------------------------------------------------------------
// Pairings of g with c and of g with the star, on random (p,p) forms.

std::vector<VerificationRecord> pairing_cell(int n, int p, const SuiteConfig& config) {
  const auto& ctx = context(n);
  const std::uint64_t seed = mix_seed(config.seed, {kPairing, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p)});
  std::vector<double> adjoint(n - p + 1, 0.0);
  std::vector<double> starred(n - p + 1, 0.0);
  std::vector<DoubleForm> powers;
  for (int k = 0; k <= n - p; ++k) powers.push_back(metric_power(k, ctx));

  for (int t = 0; t < config.trials; ++t) {
    const auto ts = static_cast<std::uint64_t>(t);
    const DoubleForm a = random_form(mix_seed(seed, {ts, 0}), ctx, p, p);
    for (int k = 1; k <= n - p; ++k) {
      const DoubleForm b = random_form(mix_seed(seed, {ts, 1, static_cast<std::uint64_t>(k)}), ctx, p + k, p + k);
      const DoubleForm ga = kn_product(powers[k], a);
      const double lhs = inner(ga, b);
      const double rhs = inner(a, contract(b, k));
      adjoint[k] = std::max(adjoint[k], std::abs(lhs - rhs) / std::max(ga.norm() * b.norm(), 1.0));
      starred[k] = std::max(starred[k], relative(star(contract(star(a), k)), ga));
    }
  }

  std::vector<VerificationRecord> out;
  for (int k = 1; k <= n - p; ++k) {
    out.push_back(make_record(k == 1 ? "metric_contraction_adjoint" : "metric_power_contraction_adjoint",
                              {3, n, p, k, seed}, adjoint[k], kPairingTol));
    out.push_back(make_record(k == 1 ? "metric_star_contraction" : "metric_power_star_contraction",
                              {3, n, p, k, seed}, starred[k], kPairingTol));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numerical rank of linear maps.

double rank_ratio(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return 1.0;
  if (m.rows() < m.cols()) return 0.0;
  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
  return sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
}

Eigen::VectorXd flatten(const DoubleForm& form) {
  return Eigen::Map<const Eigen::VectorXd>(form.coeffs().data(), form.coeffs().size());
}

std::vector<VerificationRecord> metric_rank_cell(int n) {
  const auto& ctx = context(n);
  std::vector<VerificationRecord> out;
  for (int p = 0; 2 * p <= n; ++p) {
    const auto dim = static_cast<Eigen::Index>(ctx.basis_size(p));
    for (int k = 1; k <= n - 2 * p; ++k) {
      const DoubleForm gk = metric_power(k, ctx);
      const auto rows = static_cast<Eigen::Index>(ctx.basis_size(p + k));
      Eigen::MatrixXd m(rows * rows, dim * dim);
      for (Eigen::Index c = 0; c < dim * dim; ++c) {
        Eigen::MatrixXd unit = Eigen::MatrixXd::Zero(dim, dim);
        unit(c % dim, c / dim) = 1.0;
        m.col(c) = flatten(kn_product(gk, DoubleForm(ctx, p, p, unit)));
      }
      out.push_back(make_record("metric_power_injective", {4, n, p, k, 0}, rank_ratio(m), kRankTol, Relation::kAtLeast));
    }
  }
  return out;
}

std::vector<VerificationRecord> weitzenboeck_rank_cell(int n) {
  const auto& ctx = context(n);
  const auto& basis = bianchi_basis_22(ctx);
  std::vector<VerificationRecord> out;
  for (int p = 2; p <= n - 2; ++p) {
    const auto rows = static_cast<Eigen::Index>(ctx.basis_size(p));
    Eigen::MatrixXd m(rows * rows, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      m.col(static_cast<Eigen::Index>(b)) = flatten(np_definition(basis[b], p));
    }
    auto r = make_record("weitzenboeck_injective", {4, n, p, -1, 0}, rank_ratio(m), kRankTol, Relation::kAtLeast);
    if (!r.pass) {
      const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
      const auto rank = (sv.array() > kRankTol * sv(0)).count();
      r.detail = format("numerical rank %.0f of %.0f", static_cast<double>(rank), static_cast<double>(basis.size()));
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constant curvature.

std::vector<VerificationRecord> constant_curvature_cell(int n) {
  const auto& ctx = context(n);
  const CurvatureTensor omega = constant_curvature(1.0, ctx);
  std::vector<VerificationRecord> out;
  for (int p = 0; p <= n; ++p) {
    const DoubleForm expected = (p * (n - p) / factorial(p)) * metric_power(p, ctx);
    const DoubleForm oracle = np_definition(omega, p);
    out.push_back(make_record("constant_curvature_definition", {7, n, p, -1, 0}, relative(oracle, expected), kExactTol));
    if (p >= 2 && p <= n - 2) {
      out.push_back(make_record("constant_curvature_formula", {7, n, p, -1, 0}, relative(np_formula(omega, p), expected),
                                kExactTol));
    }
    if (p <= n - 1) {
      const double target = p * factorial(n) / factorial(n - p - 1);
      const double value = contract(oracle, p).value();
      out.push_back(make_record("constant_curvature_full_contraction", {7, n, p, p, 0},
                                std::abs(value - target) / std::max(std::abs(target), 1.0), kExactTol));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clifford layer.

int inversions(const std::vector<int>& order) {
  int count = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) count += order[i] > order[j];
  }
  return count;
}

std::vector<VerificationRecord> clifford_cell(int n, const SuiteConfig& config) {
  const auto& ctx = context(n);
  std::vector<VerificationRecord> out;

  if (n >= 2) {
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const CliffordElement phi = clifford_mul(CliffordElement::generator(ctx, i), CliffordElement::generator(ctx, j));
        const Mask pair = (Mask{1} << (i - 1)) | (Mask{1} << (j - 1));
        for (int p = 0; p <= n; ++p) {
          for (Mask s : ctx.basis(p)) {
            const CliffordElement e = CliffordElement::blade(ctx, MultiIndex::from_mask(s));
            const bool straddles = popcount(s & pair) == 1;
            const CliffordElement expected = straddles ? 2.0 * clifford_mul(phi, e) : CliffordElement(ctx);
            worst = std::max(worst, (ad(phi, e) - expected).norm() / std::max(expected.norm(), 1.0));
          }
        }
      }
    }
    out.push_back(make_record("clifford_ad_rule", {8, n}, worst, kExactTol));
  }

  for (int p = 1; p <= std::min(n, 4); ++p) {
    double worst = 0.0;
    for (Mask s : ctx.basis(p)) {
      std::vector<int> order = MultiIndex::from_mask(s).indices();
      CliffordElement sum(ctx);
      do {
        CliffordElement prod = CliffordElement::scalar(ctx, 1.0);
        for (int idx : order) prod = clifford_mul(prod, CliffordElement::generator(ctx, idx));
        sum += (inversions(order) % 2 ? -1.0 : 1.0) * prod;
      } while (std::next_permutation(order.begin(), order.end()));
      const CliffordElement recovered = (1.0 / factorial(p)) * sum;
      worst = std::max(worst, (recovered - CliffordElement::blade(ctx, MultiIndex::from_mask(s))).norm());
    }
    out.push_back(make_record("clifford_exterior_recovery", {8, n, p}, worst, kExactTol));
  }

  const std::uint64_t seed = mix_seed(config.seed, {kClifford, static_cast<std::uint64_t>(n)});
  Rng rng(seed);
  const auto size = static_cast<Eigen::Index>(std::size_t{1} << n);
  double worst = 0.0;
  for (int t = 0; t < config.trials; ++t) {
    const CliffordElement a(ctx, gaussian_matrix(rng, size, 1).col(0));
    const CliffordElement b(ctx, gaussian_matrix(rng, size, 1).col(0));
    const CliffordElement c(ctx, gaussian_matrix(rng, size, 1).col(0));
    const CliffordElement left = clifford_mul(clifford_mul(a, b), c);
    const CliffordElement right = clifford_mul(a, clifford_mul(b, c));
    worst = std::max(worst, (left - right).norm() / std::max(left.norm(), 1.0));
  }
  out.push_back(make_record("clifford_associativity", {8, n, -1, -1, seed}, worst, kExactTol));
  return out;
}

// ---------------------------------------------------------------------------
// Mid-degree formula.

std::vector<VerificationRecord> mid_degree_cell(int n, int p, const SuiteConfig& config) {
  const auto& ctx = context(n);
  const std::uint64_t base = mix_seed(config.seed, {kMidDegree, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p)});
  std::vector<VerificationRecord> out;
  auto check = [&](const char* id, const CurvatureTensor& omega, std::uint64_t seed) {
    const MidDegreeSides sides = np_midpoint_formula(omega, p);
    out.push_back(compare(id, {9, n, p, -1, seed}, sides.rhs, sides.lhs, config.tolerance));
  };
  const int randoms = std::min(config.seeds, 3);
  for (int s = 0; s < randoms; ++s) {
    const std::uint64_t seed = mix_seed(base, {static_cast<std::uint64_t>(s)});
    check("mid_degree_random", random_bianchi_22(seed, std::nullopt, ctx), seed);
  }
  const std::uint64_t flat = mix_seed(base, {1000});
  check("mid_degree_weyl_free", random_conformally_flat(flat, ctx), flat);
  const std::uint64_t weyl = mix_seed(base, {1001});
  check("mid_degree_pure_weyl", random_pure_weyl(weyl, ctx), weyl);
  return out;
}

// ---------------------------------------------------------------------------
// Positivity.

std::vector<VerificationRecord> meyer_cell(int n, const SuiteConfig& config) {
  const auto& ctx = context(n);
  const std::uint64_t base = mix_seed(config.seed, {kMeyer, static_cast<std::uint64_t>(n)});
  std::vector<double> lowest(n + 1, std::numeric_limits<double>::infinity());
  std::vector<double> scalar_when_positive(n + 1, std::numeric_limits<double>::infinity());
  std::vector<int> positive(n + 1, 0);
  double operator_min = std::numeric_limits<double>::infinity();

  Rng rng(base);
  std::uniform_real_distribution<double> eps_dist(0.1, 0.9);
  for (int s = 0; s < kMeyerInstances; ++s) {
    const double eps = eps_dist(rng);
    const CurvatureTensor omega = perturbed_constant_curvature(mix_seed(base, {static_cast<std::uint64_t>(s)}), eps, ctx);
    operator_min = std::min(operator_min, min_eigenvalue(omega.form()));
    const double scalar = contract(omega.form(), 2).value();
    for (int p = 2; p <= n - 2; ++p) {
      const double m = min_eigenvalue(np_definition(omega, p));
      lowest[p] = std::min(lowest[p], m);
      if (m > 0.0) {
        ++positive[p];
        scalar_when_positive[p] = std::min(scalar_when_positive[p], scalar);
      }
    }
  }

  std::vector<VerificationRecord> out;
  out.push_back(make_record("curvature_operator_positive", {10, n, -1, -1, base}, operator_min, 0.0, Relation::kAbove));
  for (int p = 2; p <= n - 2; ++p) {
    out.push_back(make_record("meyer_positivity", {10, n, p, -1, base}, lowest[p], 0.0, Relation::kAbove));
    auto r = make_record("positivity_implies_scalar", {10, n, p, -1, base}, scalar_when_positive[p], 0.0, Relation::kAbove);
    r.detail = "perturbed constant curvature, " + std::to_string(positive[p]) + " positive instances";
    if (positive[p] == 0) {
      r.residual = 0.0;
      r.pass = true;
      r.detail += " (vacuous)";
    }
    out.push_back(std::move(r));
  }
  return out;
}

enum class Hypothesis { kScalar, kEinstein, kRicci };

// ω = a·W + g·h + μ·g² with μ chosen so the hypothesis holds with a small margin.
CurvatureTensor hypothesis_instance(Hypothesis hyp, std::uint64_t seed, const AlgebraContext& ctx) {
  const int n = ctx.dim();
  Rng rng(mix_seed(seed, {0}));
  const double weyl_scale = std::normal_distribution<double>(0.0, 1.0)(rng);
  const double margin_fraction = std::uniform_real_distribution<double>(0.01, 0.5)(rng);
  const DoubleForm h = random_symmetric_11(mix_seed(seed, {2}), ctx);
  const DoubleForm base = weyl_scale * random_pure_weyl(mix_seed(seed, {1}), ctx).form() + kn_product(metric(ctx), h);

  const Eigen::MatrixXd ricci = contract(base).coeffs();
  const double scalar = ricci.trace();
  const Eigen::MatrixXd einstein = 0.5 * scalar * Eigen::MatrixXd::Identity(n, n) - ricci;
  const double margin = margin_fraction * h.norm();
  double mu = 0.0;
  switch (hyp) {
    case Hypothesis::kScalar: mu = (margin - scalar) / (2.0 * n * (n - 1)); break;
    case Hypothesis::kRicci: mu = (margin - jacobi_eigen(ricci).values(0)) / (2.0 * (n - 1)); break;
    case Hypothesis::kEinstein: mu = (margin - jacobi_eigen(einstein).values(0)) / ((n - 1.0) * (n - 2.0)); break;
  }
  return CurvatureTensor(base + mu * metric_power(2, ctx));
}

double hypothesis_value(Hypothesis hyp, const CurvatureTensor& omega) {
  switch (hyp) {
    case Hypothesis::kScalar: return contract(omega.form(), 2).value();
    case Hypothesis::kRicci: return min_eigenvalue(contract(omega.form()));
    case Hypothesis::kEinstein: return min_eigenvalue(einstein_tensor(omega));
  }
  return 0.0;
}

std::vector<VerificationRecord> hypothesis_cell(Hypothesis hyp, int n, int p, const SuiteConfig& config) {
  const auto& ctx = context(n);
  const std::uint64_t base = mix_seed(config.seed, {kHypothesis, static_cast<std::uint64_t>(hyp),
                                                    static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p)});
  double lowest = std::numeric_limits<double>::infinity();
  double hyp_min = std::numeric_limits<double>::infinity();
  for (int s = 0; s < config.seeds; ++s) {
    const CurvatureTensor omega = hypothesis_instance(hyp, mix_seed(base, {static_cast<std::uint64_t>(s)}), ctx);
    hyp_min = std::min(hyp_min, hypothesis_value(hyp, omega));
    const DoubleForm oracle = np_definition(omega, p);
    lowest = std::min(lowest, min_eigenvalue(contract_to_11(oracle)));
  }
  const char* id = hyp == Hypothesis::kScalar   ? "scalar_positive_contraction"
                   : hyp == Hypothesis::kRicci ? "ricci_positive_contraction"
                                               : "einstein_positive_contraction";
  auto r = make_record(id, {10, n, p, p - 1, base}, lowest, 0.0, Relation::kAbove);
  r.detail = format("hypothesis minimum %.6g over instances", hyp_min);
  if (!(hyp_min > 0.0)) {
    r.pass = false;
    r.detail += " (hypothesis not met)";
  }
  return {r};
}

std::vector<VerificationRecord> full_contraction_cell(int n, const SuiteConfig& config) {
  const auto& ctx = context(n);
  const std::uint64_t base = mix_seed(config.seed, {kHypothesis, 99, static_cast<std::uint64_t>(n)});
  std::vector<double> lowest(n, std::numeric_limits<double>::infinity());
  for (int s = 0; s < config.seeds; ++s) {
    const CurvatureTensor omega =
        hypothesis_instance(Hypothesis::kScalar, mix_seed(base, {static_cast<std::uint64_t>(s)}), ctx);
    for (int p = 1; p <= n - 1; ++p) {
      lowest[p] = std::min(lowest[p], contract(np_definition(omega, p), p).value());
    }
  }
  std::vector<VerificationRecord> out;
  for (int p = 1; p <= n - 1; ++p) {
    out.push_back(make_record("scalar_positive_full_contraction", {10, n, p, p, base}, lowest[p], 0.0, Relation::kAbove));
  }
  return out;
}

std::vector<VerificationRecord> tachibana_cell(int n, const SuiteConfig& config) {
  const auto& ctx = context(n);
  const int p = n / 2;
  const std::uint64_t base = mix_seed(config.seed, {kTachibana, static_cast<std::uint64_t>(n)});
  auto spread = [&](const CurvatureTensor& omega, std::uint64_t seed) {
    const DoubleForm np = np_definition(omega, p);
    Rng rng(seed);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int t = 0; t < config.trials; ++t) {
      const double v = sectional(np, sample_plane(n, p, rng));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return std::make_pair(hi - lo, std::max({std::abs(lo), std::abs(hi), 1.0}));
  };
  std::vector<VerificationRecord> out;
  const std::uint64_t flat_seed = mix_seed(base, {0});
  const auto [flat_spread, flat_scale] = spread(random_conformally_flat(flat_seed, ctx), flat_seed);
  out.push_back(make_record("tachibana_weyl_free_constant", {0, n, p, -1, flat_seed}, flat_spread / flat_scale,
                            config.tolerance));
  const std::uint64_t witness_seed = mix_seed(base, {1});
  const auto [witness_spread, witness_scale] = spread(random_bianchi_22(witness_seed, std::nullopt, ctx), witness_seed);
  (void)witness_scale;
  out.push_back(make_record("tachibana_generic_witness", {0, n, p, -1, witness_seed}, witness_spread, 1e-3,
                            Relation::kAbove));
  return out;
}

// g^p ω on orthonormal vectors equals p! times the sum of the sectional values of ω.
std::vector<VerificationRecord> product_sectional_cell(int n, const SuiteConfig& config) {
  const auto& ctx = context(n);
  const std::uint64_t seed = mix_seed(config.seed, {kProduct, static_cast<std::uint64_t>(n)});
  Rng rng(seed);
  std::vector<VerificationRecord> out;
  for (int r = 1; r <= 2; ++r) {
    DoubleForm omega = random_form(mix_seed(seed, {static_cast<std::uint64_t>(r)}), ctx, r, r);
    omega = 0.5 * (omega + omega.transpose());
    for (int p = 0; p <= n - r; ++p) {
      const Eigen::MatrixXd vectors = sample_plane(n, p + r, rng);
      const double lhs = sectional(kn_product(metric_power(p, ctx), omega), vectors);
      double sum = 0.0;
      for (Mask m : context(p + r).basis(r)) {
        Eigen::MatrixXd pick(n, r);
        int c = 0;
        for (int i : MultiIndex::from_mask(m).indices()) pick.col(c++) = vectors.col(i - 1);
        sum += sectional(omega, pick);
      }
      const double rhs = factorial(p) * sum;
      out.push_back(make_record("product_sectional_prefactor", {0, n, p, r, seed},
                                std::abs(lhs - rhs) / std::max(std::abs(rhs), 1.0), config.tolerance));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Task {
  std::string group;
  std::function<std::vector<VerificationRecord>()> run;
};

void execute(std::vector<Task>& tasks, unsigned threads, std::vector<std::vector<VerificationRecord>>& results,
             std::vector<double>& millis) {
  results.assign(tasks.size(), {});
  millis.assign(tasks.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        results[i] = tasks[i].run();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
      millis[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kAtMost: return "<=";
    case Relation::kAbove: return ">";
    case Relation::kAtLeast: return ">=";
  }
  return "?";
}

}  // namespace

void validate(const SuiteConfig& config) {
  const int n_max = config.extended ? std::max(config.n_max, 8) : config.n_max;
  if (config.n_min > n_max) throw Error(ErrorCode::kConfig, "empty dimension range");
  if (config.n_min < 4 || n_max > 8) throw Error(ErrorCode::kConfig, "dimension range must lie within [4, 8]");
  if (config.seeds < 1) throw Error(ErrorCode::kConfig, "seeds must be positive");
  if (config.trials < 1) throw Error(ErrorCode::kConfig, "trials must be positive");
  if (!(config.tolerance > 0.0)) throw Error(ErrorCode::kConfig, "tolerance must be positive");
}

bool VerificationReport::passed() const noexcept { return failures() == 0; }

std::size_t VerificationReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const VerificationRecord& r) { return !r.pass; }));
}

bool VerificationReport::criterion_passed(int criterion) const noexcept {
  bool any = false;
  for (const auto& r : records) {
    if (r.criterion != criterion) continue;
    if (!r.pass) return false;
    any = true;
  }
  return any;
}

std::size_t VerificationReport::criterion_records(int criterion) const noexcept {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [&](const VerificationRecord& r) { return r.criterion == criterion; }));
}

VerificationReport run_suite(const SuiteConfig& config) {
  validate(config);
  VerificationReport report;
  report.config = config;
  if (config.extended) report.config.n_max = std::max(config.n_max, 8);
  const SuiteConfig& cfg = report.config;
  const NpEvaluator formula = cfg.formula ? cfg.formula : NpEvaluator([](const CurvatureTensor& w, int p) {
    return np_formula(w, p);
  });

  std::vector<Task> tasks;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    for (int s = 0; s < cfg.seeds; ++s) {
      tasks.push_back({"random_sweep", [=, &cfg] { return sweep_cell(n, s, cfg, formula); }});
    }
  }
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    for (int p = 0; p <= n - 1; ++p) tasks.push_back({"pairings", [=, &cfg] { return pairing_cell(n, p, cfg); }});
  }
  for (int n = 1; n <= 6; ++n) tasks.push_back({"metric_rank", [=] { return metric_rank_cell(n); }});
  for (int n = 4; n <= 6; ++n) tasks.push_back({"weitzenboeck_rank", [=] { return weitzenboeck_rank_cell(n); }});
  for (int n = 2; n <= 8; ++n) tasks.push_back({"constant_curvature", [=] { return constant_curvature_cell(n); }});
  for (int n = 1; n <= 6; ++n) tasks.push_back({"clifford", [=, &cfg] { return clifford_cell(n, cfg); }});
  for (int n = 4; n <= 8; ++n) {
    for (int p = 2; (n + p) / 2 <= n - 2; ++p) {
      if ((n + p) % 2 == 0) tasks.push_back({"mid_degree", [=, &cfg] { return mid_degree_cell(n, p, cfg); }});
    }
  }
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    tasks.push_back({"meyer", [=, &cfg] { return meyer_cell(n, cfg); }});
    tasks.push_back({"full_contraction", [=, &cfg] { return full_contraction_cell(n, cfg); }});
    for (int p = 2; p <= n - 2; ++p) {
      if (n == 2 * p + 2) {
        tasks.push_back({"hypotheses", [=, &cfg] { return hypothesis_cell(Hypothesis::kScalar, n, p, cfg); }});
      }
      if (n <= 2 * p + 2) {
        tasks.push_back({"hypotheses", [=, &cfg] { return hypothesis_cell(Hypothesis::kEinstein, n, p, cfg); }});
      }
      if (n >= 2 * p + 2) {
        tasks.push_back({"hypotheses", [=, &cfg] { return hypothesis_cell(Hypothesis::kRicci, n, p, cfg); }});
      }
    }
    if (n % 2 == 0) tasks.push_back({"tachibana", [=, &cfg] { return tachibana_cell(n, cfg); }});
    tasks.push_back({"product_sectional", [=, &cfg] { return product_sectional_cell(n, cfg); }});
  }

  std::vector<std::vector<VerificationRecord>> results;
  std::vector<double> millis;
  const unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  execute(tasks, threads, results, millis);

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    report.timings_ms[tasks[i].group] += millis[i];
    for (auto& r : results[i]) report.records.push_back(std::move(r));
  }
  // Acceptance groups first, in order; supplementary checks last.
  std::stable_sort(report.records.begin(), report.records.end(), [](const auto& a, const auto& b) {
    const int ka = a.criterion == 0 ? 100 : a.criterion;
    const int kb = b.criterion == 0 ? 100 : b.criterion;
    return ka < kb;
  });
  return report;
}

std::string report_to_json(const VerificationReport& report, bool include_timings) {
  using Json = nlohmann::ordered_json;
  const SuiteConfig& c = report.config;
  Json doc;
  doc["config"] = {{"n_min", c.n_min}, {"n_max", c.n_max}, {"seeds", c.seeds}, {"seed", c.seed},
                   {"trials", c.trials}, {"tolerance", c.tolerance}, {"extended", c.extended}};

  Json criteria = Json::array();
  for (int k = 1; k <= 10; ++k) {
    criteria.push_back({{"criterion", k}, {"records", report.criterion_records(k)}, {"passed", report.criterion_passed(k)}});
  }
  doc["summary"] = {{"passed", report.passed()},
                    {"records", report.records.size()},
                    {"failures", report.failures()},
                    {"criteria", std::move(criteria)}};

  Json records = Json::array();
  for (const auto& r : report.records) {
    Json j;
    j["identity"] = r.identity;
    j["criterion"] = r.criterion;
    j["n"] = r.n;
    j["p"] = r.p >= 0 ? Json(r.p) : Json(nullptr);
    j["k"] = r.k >= 0 ? Json(r.k) : Json(nullptr);
    j["seed"] = r.seed;
    j["residual"] = std::isfinite(r.residual) ? Json(r.residual) : Json(nullptr);
    j["relation"] = relation_name(r.relation);
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (!r.detail.empty()) j["detail"] = r.detail;
    records.push_back(std::move(j));
  }
  doc["records"] = std::move(records);
  if (include_timings) doc["timings_ms"] = report.timings_ms;
  return doc.dump(2) + "\n";
}

}  // namespace weitz
