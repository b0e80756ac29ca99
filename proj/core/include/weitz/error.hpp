#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weitz {

enum class ErrorCode {
  kInvalidIndex,
  kInvalidRank,
  kInvalidDegree,
  kDimensionMismatch,
  kDegeneratePlane,
  kFormulaRange,
  kUnsupportedDimension,
  kAsymmetricForm,
  kBianchiViolation,
  kParse,
  kSchema,
  kIo,
  kConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; `code()` classifies them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace weitz
