#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "vz/polynomial.hpp"
#include "vz/ratcalc.hpp"
#include "vz/scalar.hpp"

namespace vz {

template <class C>
struct RootSet {
  std::vector<C> roots;
  std::vector<double> residuals;  ///< |p/p'| at the final iterate
  std::vector<bool> converged;
  int sweeps = 0;
  int attempts = 0;

  std::size_t size() const { return roots.size(); }
  bool all_converged() const {
    for (bool c : converged)
      if (!c) return false;
    return true;
  }
  std::size_t converged_count() const {
    std::size_t k = 0;
    for (bool c : converged) k += c ? 1 : 0;
    return k;
  }
};

RootSet<cplx> to_double(const RootSet<cdd>& rs);

/// One evaluation for the simultaneous iteration: the Newton quotient p/p' and
/// whether |p| is already within its own rounding error.
template <class C>
struct Correction {
  C newton;
  bool at_noise = false;
  // Within double rounding of zero; only meaningful when the value was taken more accurately.
  bool near_noise = false;
};

struct AberthOptions {
  double tolerance = 1e-12;
  int max_sweeps = 200;
};

/// 2 max_k |a_{deg-k} / a_deg|^{1/k}; every root lies in the closed disk of this radius.
double fujiwara_bound(const DensePolynomial& p);

/// Starting points from the upper convex hull of (k, log|a_k|).
std::vector<cplx> newton_polygon_start(const DensePolynomial& p);

/// m points on a circle with golden-ratio angular jitter.
std::vector<cplx> circle_start(double radius, int m);

/// Gauss-Seidel Aberth-Ehrlich sweeps from the given starting points.
template <class C, class Eval>
RootSet<C> aberth(const Eval& eval, std::vector<C> z, const AberthOptions& opt) {
  const std::size_t m = z.size();
  RootSet<C> out;
  out.converged.assign(m, false);
  out.residuals.assign(m, std::numeric_limits<double>::infinity());
  std::vector<int> noisy(m, 0), near(m, 0);
  int sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    bool all = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (out.converged[j]) continue;
      const Correction<C> corr = eval(z[j]);
      // Noise-level values only freeze a root after a few sweeps, so approximations
      // sharing a cluster still get pushed apart by the Aberth term.
      if (corr.near_noise) ++near[j];
      if ((corr.at_noise && (++noisy[j] > 3 || !is_finite(corr.newton))) || near[j] > 30) {
        out.converged[j] = true;
        out.residuals[j] = is_finite(corr.newton) ? mag(corr.newton) : 0.0;
        continue;
      }
      C s(0.0);
      for (std::size_t k = 0; k < m; ++k)
        if (k != j) s += C(1.0) / (z[j] - z[k]);
      const C w = corr.newton / (C(1.0) - corr.newton * s);
      all = false;
      if (!is_finite(w)) {
        // Stationary point or exact base root: nudge off it.
        const double h = 1e-7 * (1.0 + mag(z[j]));
        z[j] += C(cplx(h * 0.6, h * 0.8));
        continue;
      }
      z[j] -= w;
      const double step = mag(w);
      out.residuals[j] = step;
      if (step <= opt.tolerance * (1.0 + mag(z[j]))) out.converged[j] = true;
    }
    if (all) break;
  }
  out.roots = std::move(z);
  out.sweeps = sweep;
  out.attempts = 1;
  return out;
}

/// Newton quotient of a dense polynomial by Horner, with the standard running error bound.
template <class C>
class DenseEvaluator {
 public:
  explicit DenseEvaluator(const Polynomial<C>& p) : p_(p) {}

  Correction<C> operator()(const C& z) const {
    const auto [v, dv] = p_.eval_with_derivative(z);
    const double bound = p_.abs_bound(mag(z));
    const double noise = 4.0 * (p_.degree() + 1) * scalar_traits<C>::unit_roundoff * bound;
    Correction<C> c;
    c.newton = v / dv;
    c.at_noise = mag(v) <= noise;
    return c;
  }

 private:
  const Polynomial<C>& p_;
};

/// Double iterates with value and slope taken by double-double Horner. Rounding in the
/// residual would otherwise stop clustered roots well short of double accuracy.
template <>
class DenseEvaluator<cplx> {
 public:
  explicit DenseEvaluator(const DensePolynomial& p) : p_(p), lifted_(p.coeffs().begin(), p.coeffs().end()) {}

  Correction<cplx> operator()(const cplx& z) const {
    const cdd zz(z);
    cdd v = lifted_.back();
    cdd dv(0.0);
    for (std::size_t k = lifted_.size() - 1; k-- > 0;) {
      dv = dv * zz + v;
      v = v * zz + lifted_[k];
    }
    const double bound = p_.abs_bound(std::abs(z));
    const double noise = 4.0 * (p_.degree() + 1) * scalar_traits<cdd>::unit_roundoff * bound;
    Correction<cplx> c;
    c.newton = to_cd(v / dv);
    c.at_noise = mag(v) <= noise;
    c.near_noise = mag(v) <= noise * 0x1p53;
    return c;
  }

 private:
  const DensePolynomial& p_;
  std::vector<cdd> lifted_;
};

/// f(z) = sum_t c_t prod_q B_q(z)^{e_tq}, evaluated through logarithms so that very
/// high powers neither overflow nor lose the cancellation between terms.
class PowerProductSum {
 public:
  PowerProductSum(std::vector<DensePolynomial> bases, std::vector<cplx> coeffs,
                  std::vector<std::vector<int>> exponents);

  Correction<cplx> operator()(const cplx& z) const;

  std::size_t term_count() const { return coeffs_.size(); }

 private:
  std::vector<DensePolynomial> bases_;
  std::vector<DensePolynomial> base_derivs_;
  std::vector<cplx> coeffs_;
  std::vector<std::vector<int>> exponents_;
};

/// Implicit form of the numerator of Q^(n)/n! over the linear factors (z - z_k).
PowerProductSum numerator_evaluator(const DerivativeState& state);

/// Roots of a dense polynomial. Starts from Newton-polygon radii; falls back to
/// circles of radius 0.5 and 1.0 times the Fujiwara bound.
template <class C>
RootSet<C> solve(const Polynomial<C>& p, double tolerance = -1.0);

extern template RootSet<cplx> solve<cplx>(const Polynomial<cplx>&, double);
extern template RootSet<cdd> solve<cdd>(const Polynomial<cdd>&, double);

/// Same restart schedule with a caller-supplied evaluator; `shape` supplies degree and start radii.
RootSet<cplx> solve_implicit(const PowerProductSum& f, const DensePolynomial& shape,
                             double tolerance = 1e-12);

struct NumeratorRoots {
  NumeratorResult<cplx> numerator;
  RootSet<cplx> roots;
};

/// Degree from the dense expansion in the requested precision; roots from the implicit
/// evaluator (double) or from the dense extended-precision polynomial.
NumeratorRoots numerator_roots(const DerivativeState& state, Precision precision = Precision::Double,
                               double tolerance = -1.0);

}  // namespace vz
