#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vz/lemniscate.hpp"
#include "vz/ratcalc.hpp"

namespace vz {

/// A problem file holds either a rational function or a lemniscate power sum.
///
/// Rational, polar form:
///   {"poles":[{"re":..,"im":..,"order":k,"coeffs":[{"re":..,"im":..},...]}], "polynomial_part":[...]}
/// Rational, numerator over poles:
///   {"numerator":[...], "denominator_poles":[{"re":..,"im":..,"order":k}]}
/// Lemniscate:
///   {"polynomials":[[c0, c1, ...], ...], "multipliers":[...]}
/// Coefficient lists run from the constant term up. A complex number is a plain number,
/// {"re":..,"im":..} or [re, im].
struct Problem {
  std::optional<PolarForm> rational;
  std::optional<LemniscateProblem> lemniscate;

  /// Poles, or the roots of the lemniscate polynomials.
  std::vector<cplx> sites() const;
};

/// Throws Error(Parse) on malformed input.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

std::string to_json(const PolarForm& q);
std::string to_json(const LemniscateProblem& p);

}  // namespace vz
