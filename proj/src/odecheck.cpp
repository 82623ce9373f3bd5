#include "vz/odecheck.hpp"

#include <algorithm>
#include <cmath>

#include "vz/error.hpp"

namespace vz {

void PowerSumFunction::validate() const {
  if (s < 1) throw Error(ErrorKind::InvalidArgument, "pole order s must be positive");
  if (poles.empty() || poles.size() != weights.size())
    throw Error(ErrorKind::InvalidArgument, "one weight per pole required");
  for (const auto& w : weights)
    if (w == cplx(0.0)) throw Error(ErrorKind::InvalidArgument, "weights must be nonzero");
}

PolarForm PowerSumFunction::polar_form() const {
  validate();
  PolarForm q;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    Pole p{poles[i], std::vector<cplx>(static_cast<std::size_t>(s), cplx(0.0))};
    p.coeffs.back() = weights[i];
    q.poles.push_back(std::move(p));
  }
  q.validate();
  return q;
}

OdeResidual powersum_residual(const PowerSumFunction& f, int n, const cplx& z) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  const PolarForm q = f.polar_form();
  double scale = 1.0;
  for (const auto& p : f.poles) scale = std::max(scale, std::abs(p));
  for (const auto& p : f.poles)
    if (std::abs(z - p) <= 1e-14 * scale) throw Error(ErrorKind::AtPole, "evaluation at a pole");

  // e[i]: elementary symmetric functions of z - z_k.
  const std::size_t d = f.poles.size();
  std::vector<cplx> e(d + 1, cplx(0.0));
  e[0] = 1.0;
  for (const auto& p : f.poles) {
    const cplx w = z - p;
    for (std::size_t i = d; i > 0; --i) e[i] += w * e[i - 1];
  }

  // Everything is divided by n!: the i-th term becomes
  // e_i (n+1)...(n+i) / ((s+n)...(s+n+i-1)) * Q^(n+i)/(n+i)!.
  DerivativeState st = derivative_state(q, n);
  OdeResidual r;
  r.value = 0.0;
  double factor = 1.0;
  for (std::size_t i = 0; i <= d; ++i) {
    if (i > 0) {
      factor *= static_cast<double>(n + static_cast<int>(i)) / static_cast<double>(f.s + n + static_cast<int>(i) - 1);
      st = st.next();
    }
    const cplx term = e[i] * factor * st.evaluate_scaled(z);
    r.value += term;
    r.scale = std::max(r.scale, std::abs(term));
  }
  return r;
}

namespace {

struct D2Parts {
  DensePolynomial r, dr, d2r, p0, e1;
  double den2 = 0.0, den1 = 0.0;
};

D2Parts d2_parts(cplx z1, cplx z2, int n, D2Form form) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  PolarForm q;
  q.poles = {{z1, {cplx(1.0)}}, {z2, {cplx(1.0)}}};
  D2Parts p;
  p.r = numerator<cplx>(derivative_state(q, n)).r_n;
  p.dr = p.r.derivative();
  p.d2r = p.dr.derivative();
  p.p0 = DensePolynomial{z1 * z2, -(z1 + z2), cplx(1.0)};
  p.e1 = DensePolynomial{-(z1 + z2), cplx(2.0)};
  const double m = n + 1.0;
  p.den2 = form == D2Form::Corrected ? m * n : m * (n + 2.0);
  p.den1 = m;
  return p;
}

}  // namespace

OdeResidual d2_numerator_residual(cplx z1, cplx z2, int n, const cplx& z, D2Form form) {
  const D2Parts p = d2_parts(z1, z2, n, form);
  const cplx t2 = p.p0(z) * p.d2r(z) / p.den2;
  const cplx t1 = -p.e1(z) * p.dr(z) / p.den1;
  const cplx t0 = p.r(z);
  OdeResidual r;
  r.value = t2 + t1 + t0;
  r.scale = std::max({std::abs(t2), std::abs(t1), std::abs(t0)});
  return r;
}

DensePolynomial d2_residual_polynomial(cplx z1, cplx z2, int n, D2Form form, double* scale) {
  const D2Parts p = d2_parts(z1, z2, n, form);
  const DensePolynomial t2 = cplx(1.0 / p.den2) * (p.p0 * p.d2r);
  const DensePolynomial t1 = cplx(-1.0 / p.den1) * (p.e1 * p.dr);
  DensePolynomial res = t2 + t1 + p.r;
  if (scale) {
    double s = 0.0;
    for (const auto* t : {&t2, &t1, &p.r})
      for (const auto& c : t->coeffs()) s = std::max(s, std::abs(c));
    *scale = s;
  }
  return res;
}

}  // namespace vz
