// weitz: command-line front end for the double-form library.
//
// Exit codes: 0 success, 1 identity failure, 2 usage or I/O error.

#include <cstdio>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "weitz/error.hpp"
#include "weitz/random.hpp"
#include "weitz/tensor_io.hpp"
#include "weitz/verify.hpp"
#include "weitz/weitzenboeck.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct InputOptions {
  std::string path;
  bool strict = false;
  bool project = false;
};

void add_input(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--input", in.path, "Tensor file (JSON)")->required()->check(CLI::ExistingFile);
  auto* strict = cmd->add_flag("--strict", in.strict, "Reject tensors violating the first Bianchi identity");
  cmd->add_flag("--project", in.project, "Project onto Bianchi tensors before use")->excludes(strict);
}

weitz::LoadedTensor load(const InputOptions& in) {
  const auto policy = in.strict    ? weitz::BianchiPolicy::kStrict
                      : in.project ? weitz::BianchiPolicy::kProject
                                   : weitz::BianchiPolicy::kWarn;
  auto loaded = weitz::load_tensor(in.path, policy);
  if (loaded.violates_bianchi && !loaded.projected) {
    std::cerr << "warning: " << in.path << " violates the first Bianchi identity (residual "
              << loaded.raw_bianchi_residual << "); results assume it holds\n";
  }
  return loaded;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void print(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

void print_matrix(const char* label, const Eigen::MatrixXd& m) {
  const Eigen::IOFormat fmt(Eigen::StreamPrecision, 0, " ", "\n", "  ", "");
  std::cout << label << ":\n" << m.format(fmt) << "\n";
}

weitz::DoubleForm compute_np(const weitz::CurvatureTensor& omega, int p, const std::string& method) {
  return method == "formula" ? weitz::np_formula(omega, p) : weitz::np_definition(omega, p);
}

void check_degree(int p, int lo, int hi) {
  if (p < lo || p > hi) {
    throw weitz::Error(weitz::ErrorCode::kInvalidDegree,
                       "--p must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// Sectional values of `form` on `samples` random planes of its degree.
std::pair<double, double> sample_range(const weitz::DoubleForm& form, int samples, std::uint64_t seed) {
  weitz::Rng rng(seed);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int s = 0; s < samples; ++s) {
    const double v = weitz::sectional(form, weitz::sample_plane(form.dim(), form.p(), rng));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double forms, Clifford ad operators and Weitzenboeck curvature operators"};
  app.require_subcommand(1);
  bool json = false;

  weitz::SuiteConfig suite;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "Run the identity verification suite");
  verify->add_option("--n-min", suite.n_min, "Smallest dimension")->capture_default_str();
  verify->add_option("--n-max", suite.n_max, "Largest dimension")->capture_default_str();
  verify->add_option("--seeds", suite.seeds, "Random instances per cell")->capture_default_str();
  verify->add_option("--seed", suite.seed, "Base seed")->capture_default_str();
  verify->add_option("--trials", suite.trials, "Random pairs per pairing check")->capture_default_str();
  verify->add_option("--tol", suite.tolerance, "Relative tolerance of the random sweep")->capture_default_str();
  verify->add_option("--threads", suite.threads, "Worker threads (0: all cores)")->capture_default_str();
  verify->add_flag("--extended", suite.extended, "Include n = 7, 8");
  verify->add_flag("--timings", timings, "Include wall-clock timings in the JSON report");
  verify->add_flag("--json", json, "Print the JSON report");

  InputOptions in;
  int p = 2;
  std::string method = "formula";
  std::string output;
  auto* weitz_cmd = app.add_subcommand("weitzenboeck", "Compute N_p of a curvature tensor");
  add_input(weitz_cmd, in);
  weitz_cmd->add_option("--p", p, "Degree")->required();
  weitz_cmd->add_option("--method", method, "formula or definition")
      ->check(CLI::IsMember({"formula", "definition"}))
      ->capture_default_str();
  weitz_cmd->add_option("--output", output, "Output file")->required();
  weitz_cmd->add_flag("--json", json, "Structured output");

  int samples = 100;
  std::uint64_t seed = 0;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues and sampled sectional values of N_p");
  add_input(spectrum_cmd, in);
  spectrum_cmd->add_option("--p", p, "Degree")->required();
  spectrum_cmd->add_option("--samples", samples, "Random planes")->capture_default_str();
  spectrum_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  spectrum_cmd->add_flag("--json", json, "Structured output");

  auto* decompose_cmd = app.add_subcommand("decompose", "Weyl, traceless Ricci and scalar parts");
  add_input(decompose_cmd, in);
  decompose_cmd->add_flag("--json", json, "Structured output");

  auto* sectional_cmd = app.add_subcommand("sectional", "Sectional values of N_p on random p-planes");
  add_input(sectional_cmd, in);
  sectional_cmd->add_option("--p", p, "Degree")->required();
  sectional_cmd->add_option("--samples", samples, "Random planes")->capture_default_str();
  sectional_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  sectional_cmd->add_flag("--json", json, "Structured output");

  auto* pcurv_cmd = app.add_subcommand("pcurvature", "p-curvature form and sampled values");
  add_input(pcurv_cmd, in);
  pcurv_cmd->add_option("--p", p, "Degree")->required();
  pcurv_cmd->add_option("--samples", samples, "Random planes")->capture_default_str();
  pcurv_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  pcurv_cmd->add_flag("--json", json, "Structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (samples < 0) {
    std::cerr << "error: --samples must be non-negative\n";
    return kExitUsage;
  }

  try {
    if (*verify) {
      const auto report = weitz::run_suite(suite);
      if (json) {
        std::cout << weitz::report_to_json(report, timings);
      } else {
        for (int k = 1; k <= 10; ++k) {
          std::printf("criterion %2d  %-4s  (%zu records)\n", k, report.criterion_passed(k) ? "PASS" : "FAIL",
                      report.criterion_records(k));
        }
        for (const auto& r : report.records) {
          if (r.pass) continue;
          std::printf("  failed %-34s n=%d p=%d k=%d residual=%.3e tol=%.1e %s\n", r.identity.c_str(), r.n, r.p, r.k,
                      r.residual, r.tolerance, r.detail.c_str());
        }
        std::printf("%zu records, %zu failures\n", report.records.size(), report.failures());
      }
      return report.passed() ? 0 : kExitFailure;
    }

    const auto loaded = load(in);
    const auto& omega = loaded.tensor;
    const int n = omega.dim();

    if (*weitz_cmd) {
      check_degree(p, 0, n);
      const auto np = compute_np(omega, p, method);
      weitz::save_form(np, output);
      if (json) {
        print({{"n", n}, {"p", p}, {"method", method}, {"output", output}, {"norm", np.norm()},
               {"bianchi_residual", loaded.raw_bianchi_residual}});
      } else {
        std::cout << "wrote N_" << p << " (" << method << ", norm " << np.norm() << ") to " << output << "\n";
      }
      return 0;
    }

    if (*spectrum_cmd) {
      check_degree(p, 0, n);
      const auto report = weitz::spectrum(weitz::operator_matrix(weitz::np_definition(omega, p)), samples, seed);
      if (json) {
        Json doc{{"n", n}, {"p", p}, {"min_eigenvalue", report.min_eigenvalue}};
        doc["eigenvalues"] = std::vector<double>(report.eigenvalues.data(),
                                                 report.eigenvalues.data() + report.eigenvalues.size());
        doc["samples"] = report.sample_count;
        doc["seed"] = report.seed;
        doc["min_sampled_sectional"] = report.min_sampled_sectional ? Json(*report.min_sampled_sectional) : Json();
        doc["max_sampled_sectional"] = report.max_sampled_sectional ? Json(*report.max_sampled_sectional) : Json();
        doc["jacobi_sweeps"] = report.jacobi_sweeps;
        print(doc);
      } else {
        std::cout << "eigenvalues of N_" << p << ":\n";
        for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) std::cout << "  " << report.eigenvalues(i) << "\n";
        std::cout << "min eigenvalue " << report.min_eigenvalue << "\n";
        if (report.min_sampled_sectional) {
          std::cout << "sampled sectional range [" << *report.min_sampled_sectional << ", "
                    << *report.max_sampled_sectional << "] over " << report.sample_count << " planes\n";
        }
      }
      return 0;
    }

    if (*decompose_cmd) {
      const auto parts = weitz::decompose_22(omega);
      const double scalar = weitz::contract(omega.form(), 2).value();
      if (json) {
        print({{"n", n},
               {"scalar_curvature", scalar},
               {"scalar_part", parts.scalar_part},
               {"traceless_ricci", matrix_json(parts.traceless_ricci.coeffs())},
               {"weyl_norm", parts.weyl.norm()},
               {"weyl", Json::parse(weitz::serialize_form(parts.weyl))}});
      } else {
        std::cout << "scalar curvature " << scalar << "\n";
        std::cout << "scalar part      " << parts.scalar_part << "\n";
        std::cout << "weyl norm        " << parts.weyl.norm() << "\n";
        print_matrix("traceless ricci", parts.traceless_ricci.coeffs());
      }
      return 0;
    }

    if (*sectional_cmd) {
      check_degree(p, 1, n - 1);
      const auto np = weitz::np_definition(omega, p);
      weitz::Rng rng(seed);
      Json values = Json::array();
      double worst = 0.0;
      for (int s = 0; s < samples; ++s) {
        const Eigen::MatrixXd frame = weitz::extend_to_frame(weitz::sample_plane(n, p, rng), rng);
        const double direct = weitz::sectional(np, frame.leftCols(p));
        const double summed = weitz::np_sectional_sum(omega.form(), frame, p);
        worst = std::max(worst, std::abs(direct - summed));
        values.push_back({{"sectional", direct}, {"frame_sum", summed}});
        if (!json) std::printf("%4d  %.12g  %.12g\n", s, direct, summed);
      }
      if (json) {
        print({{"n", n}, {"p", p}, {"seed", seed}, {"max_difference", worst}, {"samples", std::move(values)}});
      } else {
        std::printf("max |sectional - frame sum| = %.3e\n", worst);
      }
      return 0;
    }

    if (*pcurv_cmd) {
      check_degree(p, 0, n - 2);
      const auto form = weitz::p_curvature_form(omega, p);
      if (p == 0) {
        if (json) {
          print({{"n", n}, {"p", 0}, {"value", form.value()}});
        } else {
          std::cout << "0-curvature " << form.value() << "\n";
        }
        return 0;
      }
      const auto [lo, hi] = sample_range(form, samples, seed);
      if (json) {
        Json doc{{"n", n}, {"p", p}, {"seed", seed}};
        doc["min_sampled"] = samples > 0 ? Json(lo) : Json();
        doc["max_sampled"] = samples > 0 ? Json(hi) : Json();
        doc["form"] = Json::parse(weitz::serialize_form(form));
        print(doc);
      } else {
        if (samples > 0) std::cout << p << "-curvature sampled range [" << lo << ", " << hi << "]\n";
        print_matrix("form", form.coeffs());
      }
      return 0;
    }
  } catch (const weitz::Error& e) {
    std::cerr << "error (" << weitz::to_string(e.code()) << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
