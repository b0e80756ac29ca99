#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "weitz/double_form.hpp"

namespace weitz {

// Tensor files are JSON:
//   {"n": 4, "p": 2, "q": 2, "symmetric": true,
//    "entries": [{"ij": [1, 2], "kl": [1, 2], "value": 1.0}, ...]}
// Indices are 1-based and strictly increasing; unlisted entries are zero.
// "p"/"q" default to 2 and "symmetric" to true for curvature tensors.

enum class BianchiPolicy {
  kWarn,     // accept, report the residual
  kStrict,   // reject when the residual exceeds the default tolerance
  kProject,  // replace by the orthogonal projection onto Bianchi forms
};

struct LoadedTensor {
  CurvatureTensor tensor;
  double raw_bianchi_residual;  // before any projection
  bool violates_bianchi;        // raw residual above the default tolerance
  bool projected;
};

LoadedTensor parse_tensor(std::string_view text, BianchiPolicy policy = BianchiPolicy::kWarn);
LoadedTensor load_tensor(const std::filesystem::path& path, BianchiPolicy policy = BianchiPolicy::kWarn);

/// Any (p,q) form; "symmetric": true mirrors entries across the diagonal.
DoubleForm parse_form(std::string_view text);
DoubleForm load_form(const std::filesystem::path& path);

/// Symmetric forms are written as their upper triangle with "symmetric": true.
std::string serialize_form(const DoubleForm& form);
void save_form(const DoubleForm& form, const std::filesystem::path& path);

}  // namespace weitz
