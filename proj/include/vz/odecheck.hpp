#pragma once

#include <vector>

#include "vz/polynomial.hpp"
#include "vz/ratcalc.hpp"
#include "vz/scalar.hpp"

namespace vz {

/// Q = sum_i weights[i] (z - poles[i])^{-s}.
struct PowerSumFunction {
  int s = 1;
  std::vector<cplx> poles;
  std::vector<cplx> weights;

  void validate() const;
  PolarForm polar_form() const;
};

struct OdeResidual {
  cplx value;          ///< left-hand side, zero in exact arithmetic
  double scale = 0.0;  ///< largest absolute term
  double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

/// sum_{i=0}^{d} e_i(z) / ((s+n)(s+n+1)...(s+n+i-1)) Q^(n+i)(z), with e_i the elementary
/// symmetric functions of (z - z_1), ..., (z - z_d). Throws AtPole.
OdeResidual powersum_residual(const PowerSumFunction& f, int n, const cplx& z);

enum class D2Form {
  Corrected,  ///< P0 R''/((n+1)n) - e1 R'/(n+1) + R
  Printed,    ///< P0 R''/((n+1)(n+2)) - e1 R'/(n+1) + R
};

/// Residual for R_n, the monic numerator of the n-th derivative of 1/(z-z1) + 1/(z-z2),
/// with P0 = (z-z1)(z-z2) and e1 = 2z - z1 - z2.
OdeResidual d2_numerator_residual(cplx z1, cplx z2, int n, const cplx& z, D2Form form = D2Form::Corrected);

/// The same operator applied to R_n as a polynomial; returns the residual polynomial
/// and, through scale, the largest coefficient magnitude among the three terms.
DensePolynomial d2_residual_polynomial(cplx z1, cplx z2, int n, D2Form form, double* scale = nullptr);

}  // namespace vz
