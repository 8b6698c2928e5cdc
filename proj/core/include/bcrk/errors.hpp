#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bcrk {

// Base class for all contract violations surfaced to callers.  code() is a
// stable machine-readable identifier; the CLI maps it into its error object.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define BCRK_DEFINE_ERROR(NAME)                                  \
  class NAME : public Error {                                    \
   public:                                                       \
    explicit NAME(const std::string& m) : Error(#NAME, m) {}     \
  };

BCRK_DEFINE_ERROR(NegativeEntry)
BCRK_DEFINE_ERROR(NotNormalized)
BCRK_DEFINE_ERROR(ShapeMismatch)
BCRK_DEFINE_ERROR(StateSpaceExceeded)
BCRK_DEFINE_ERROR(UnknownAxis)
BCRK_DEFINE_ERROR(AxisCollision)
BCRK_DEFINE_ERROR(OverlappingGroups)
BCRK_DEFINE_ERROR(IncompatibleAlphabets)
BCRK_DEFINE_ERROR(NotDecoupled)
BCRK_DEFINE_ERROR(NotSemiDeterministic)
BCRK_DEFINE_ERROR(NotMarkovSource)
BCRK_DEFINE_ERROR(EmptyFrontier)
BCRK_DEFINE_ERROR(InvalidArgument)

#undef BCRK_DEFINE_ERROR

}  // namespace bcrk
