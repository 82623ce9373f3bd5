#pragma once

#include <stdexcept>
#include <string>

namespace vz {

enum class ErrorKind {
  DuplicatePole,
  SharedRoot,
  DegreeCollapse,
  ZeroPolynomial,
  DuplicateSites,
  DegenerateScale,
  OutOfInterval,
  SkeletonProximity,
  OnSkeleton,
  EmptyRootSet,
  ExclusionTooLarge,
  NotFound,
  AtPole,
  NoDominantDegree,
  PolynomialPart,
  InvalidArgument,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; the kind tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by floating-point limits rather than bad input.
  bool is_numeric() const noexcept {
    return kind_ == ErrorKind::DegreeCollapse || kind_ == ErrorKind::ExclusionTooLarge ||
           kind_ == ErrorKind::NotFound;
  }

 private:
  ErrorKind kind_;
};

}  // namespace vz
