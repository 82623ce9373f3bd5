#pragma once

#include <utility>
#include <vector>

#include "vz/polynomial.hpp"
#include "vz/scalar.hpp"

namespace vz {

/// One pole of a rational function together with its polar part
/// sum_j coeffs[j-1] / (z - location)^j.
struct Pole {
  cplx location;
  std::vector<cplx> coeffs;  ///< least to most singular; the last one is nonzero

  int order() const { return static_cast<int>(coeffs.size()); }
};

/// Rational function as a sum of polar parts plus a polynomial part.
struct PolarForm {
  std::vector<Pole> poles;
  DensePolynomial polynomial_part;

  int pole_count() const { return static_cast<int>(poles.size()); }
  int total_order() const;
  bool has_polynomial_part() const { return !polynomial_part.is_zero(); }
  std::vector<cplx> locations() const;

  /// Throws DuplicatePole or InvalidArgument.
  void validate() const;

  cplx operator()(const cplx& z) const;
};

/// Partial fractions of numerator / prod (z - z_i)^{r_i}.
PolarForm polar_decompose(const DensePolynomial& numerator,
                          const std::vector<std::pair<cplx, int>>& denominator_poles);

/// n-th derivative of a polar form, stored divided by n!.
class DerivativeState {
 public:
  explicit DerivativeState(PolarForm base);

  const PolarForm& base() const { return base_; }
  int n() const { return n_; }

  /// c[i][j-1] = a_{i,j} (-1)^n (j)_n / n!
  const std::vector<std::vector<cplx>>& scaled_coefficients() const { return c_; }

  /// Polynomial part differentiated n times, divided by n!.
  const DensePolynomial& scaled_polynomial_part() const { return poly_; }

  DerivativeState next() const;

  /// Q^(n)(z) / n!
  cplx evaluate_scaled(const cplx& z) const;
  /// Q^(n)(z); overflows for large n.
  cplx evaluate(const cplx& z) const;

 private:
  PolarForm base_;
  int n_ = 0;
  std::vector<std::vector<cplx>> c_;
  DensePolynomial poly_;
};

DerivativeState derivative(const DerivativeState& state);
DerivativeState derivative_state(const PolarForm& base, int n);

/// Q^(n) = alpha_n R_n / (P P0^n) with R_n monic, P = prod (z-z_i)^{r_i}, P0 = prod (z-z_i).
template <class C>
struct NumeratorResult {
  Polynomial<C> r_n;
  cplx scaled_alpha;     ///< alpha_n / n!
  double log_abs_alpha;  ///< log |alpha_n|, finite even when alpha_n overflows
  int degree = 0;
  int n = 0;

  cplx alpha() const;
};

/// Default leading-coefficient floor relative to the coefficient's absolute-value bound.
template <class C>
constexpr double default_degree_floor() {
  return scalar_traits<C>::precision == Precision::Double ? 1e-12 : 1e-24;
}

/// Expands the numerator of Q^(n)/n!. Leading coefficients that are indistinguishable
/// from rounding (|N_k| <= floor * bound_k) are stripped.
/// Throws PolynomialPart if the base has a polynomial part and DegreeCollapse if
/// every coefficient falls below the floor.
template <class C>
NumeratorResult<C> numerator(const DerivativeState& state,
                             double floor = default_degree_floor<C>());

extern template struct NumeratorResult<cplx>;
extern template struct NumeratorResult<cdd>;
extern template NumeratorResult<cplx> numerator<cplx>(const DerivativeState&, double);
extern template NumeratorResult<cdd> numerator<cdd>(const DerivativeState&, double);

struct DegreeDiagnostic {
  int n = 0;
  int degree = 0;
  double degree_ratio = 0.0;   ///< m_n / n
  double alpha_growth = 0.0;   ///< log|n!/alpha_n| / n
};

template <class C>
std::vector<DegreeDiagnostic> degree_diagnostics(const std::vector<NumeratorResult<C>>& results);

extern template std::vector<DegreeDiagnostic> degree_diagnostics<cplx>(
    const std::vector<NumeratorResult<cplx>>&);
extern template std::vector<DegreeDiagnostic> degree_diagnostics<cdd>(
    const std::vector<NumeratorResult<cdd>>&);

/// Numerator N of Q^(n)/n! = N / (z - pole)^(order + n) for Q = numerator / (z - pole)^order,
/// computed from the Taylor expansion of the numerator about the pole.
DensePolynomial single_pole_derivative(const DensePolynomial& numerator, cplx pole, int order,
                                       int n);

/// Generalised binomial coefficient x(x-1)...(x-k+1)/k! for integer x.
double binomial(long x, long k);

}  // namespace vz
