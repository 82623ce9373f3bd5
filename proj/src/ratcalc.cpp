#include "vz/ratcalc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vz/error.hpp"

namespace vz {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicatePole: return "DuplicatePole";
    case ErrorKind::SharedRoot: return "SharedRoot";
    case ErrorKind::DegreeCollapse: return "DegreeCollapse";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DuplicateSites: return "DuplicateSites";
    case ErrorKind::DegenerateScale: return "DegenerateScale";
    case ErrorKind::OutOfInterval: return "OutOfInterval";
    case ErrorKind::SkeletonProximity: return "SkeletonProximity";
    case ErrorKind::OnSkeleton: return "OnSkeleton";
    case ErrorKind::EmptyRootSet: return "EmptyRootSet";
    case ErrorKind::ExclusionTooLarge: return "ExclusionTooLarge";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::AtPole: return "AtPole";
    case ErrorKind::NoDominantDegree: return "NoDominantDegree";
    case ErrorKind::PolynomialPart: return "PolynomialPart";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

double binomial(long x, long k) {
  if (k < 0) return 0.0;
  if (x >= 0 && k > x) return 0.0;
  if (x >= 0 && k > x - k) k = x - k;
  double r = 1.0;
  for (long l = 0; l < k; ++l) r = r * static_cast<double>(x - l) / static_cast<double>(l + 1);
  return std::round(r);
}

int PolarForm::total_order() const {
  int r = 0;
  for (const auto& p : poles) r += p.order();
  return r;
}

std::vector<cplx> PolarForm::locations() const {
  std::vector<cplx> out;
  out.reserve(poles.size());
  for (const auto& p : poles) out.push_back(p.location);
  return out;
}

void PolarForm::validate() const {
  if (poles.empty()) throw Error(ErrorKind::InvalidArgument, "at least one pole is required");
  double scale = 1.0;
  for (const auto& p : poles) scale = std::max(scale, std::abs(p.location));
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const auto& p = poles[i];
    if (p.coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "pole with empty coefficient list");
    if (p.coeffs.back() == cplx(0.0, 0.0))
      throw Error(ErrorKind::InvalidArgument, "top polar coefficient must be nonzero");
    if (!is_finite(p.location)) throw Error(ErrorKind::InvalidArgument, "non-finite pole");
    for (std::size_t k = 0; k < i; ++k)
      if (std::abs(p.location - poles[k].location) <= 1e-12 * scale)
        throw Error(ErrorKind::DuplicatePole, "poles " + std::to_string(k) + " and " +
                                                  std::to_string(i) + " coincide");
  }
}

cplx PolarForm::operator()(const cplx& z) const {
  cplx acc = polynomial_part(z);
  for (const auto& p : poles) {
    const cplx inv = 1.0 / (z - p.location);
    cplx pw = inv;
    for (const auto& a : p.coeffs) {
      acc += a * pw;
      pw *= inv;
    }
  }
  return acc;
}

PolarForm polar_decompose(const DensePolynomial& numerator,
                          const std::vector<std::pair<cplx, int>>& denominator_poles) {
  if (denominator_poles.empty()) throw Error(ErrorKind::InvalidArgument, "no poles given");
  DensePolynomial num(numerator);
  num.trim_exact();
  if (num.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "numerator is zero");

  double scale = 1.0;
  for (const auto& [z, r] : denominator_poles) {
    if (r < 1) throw Error(ErrorKind::InvalidArgument, "pole order must be positive");
    scale = std::max(scale, std::abs(z));
  }
  for (std::size_t i = 0; i < denominator_poles.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (std::abs(denominator_poles[i].first - denominator_poles[k].first) <= 1e-12 * scale)
        throw Error(ErrorKind::DuplicatePole, "repeated pole location");

  PolarForm out;
  DensePolynomial full = DensePolynomial::constant(1.0);
  for (const auto& [z, r] : denominator_poles)
    for (int k = 0; k < r; ++k) full.mul_linear(z);
  out.polynomial_part = num.divmod(full).first;
  out.polynomial_part.trim_exact();

  for (std::size_t i = 0; i < denominator_poles.size(); ++i) {
    const auto [zi, ri] = denominator_poles[i];
    if (std::abs(num(zi)) <= 1e-12 * num.abs_bound(std::abs(zi)))
      throw Error(ErrorKind::SharedRoot, "numerator vanishes at a pole");

    DensePolynomial rest = DensePolynomial::constant(1.0);
    for (std::size_t k = 0; k < denominator_poles.size(); ++k) {
      if (k == i) continue;
      for (int l = 0; l < denominator_poles[k].second; ++l) rest.mul_linear(denominator_poles[k].first);
    }
    // Taylor coefficients at zi of num / rest, by power-series division.
    const DensePolynomial a = num.taylor_shift(zi);
    const DensePolynomial b = rest.taylor_shift(zi);
    auto coef = [](const DensePolynomial& p, int k) {
      return k < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(k)] : cplx(0.0);
    };
    std::vector<cplx> g(static_cast<std::size_t>(ri));
    for (int m = 0; m < ri; ++m) {
      cplx s = coef(a, m);
      for (int l = 1; l <= m; ++l) s -= coef(b, l) * g[static_cast<std::size_t>(m - l)];
      g[static_cast<std::size_t>(m)] = s / b[0];
    }
    Pole pole{zi, std::vector<cplx>(static_cast<std::size_t>(ri))};
    for (int j = 1; j <= ri; ++j) pole.coeffs[static_cast<std::size_t>(j - 1)] = g[static_cast<std::size_t>(ri - j)];
    out.poles.push_back(std::move(pole));
  }
  return out;
}

DerivativeState::DerivativeState(PolarForm base) : base_(std::move(base)) {
  base_.validate();
  c_.reserve(base_.poles.size());
  for (const auto& p : base_.poles) c_.push_back(p.coeffs);
  poly_ = base_.polynomial_part;
}

DerivativeState DerivativeState::next() const {
  DerivativeState out(*this);
  const double np1 = static_cast<double>(n_ + 1);
  // Recomputed from the base rather than updated in place, so integer multiples stay exact.
  const double sign = (n_ + 1) % 2 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < out.c_.size(); ++i)
    for (std::size_t j = 0; j < out.c_[i].size(); ++j)
      out.c_[i][j] = base_.poles[i].coeffs[j] * (sign * binomial(n_ + 1 + static_cast<long>(j), static_cast<long>(j)));
  DensePolynomial d = poly_.derivative();
  for (auto& a : d.coeffs()) a /= np1;
  out.poly_ = d;
  out.n_ = n_ + 1;
  return out;
}

cplx DerivativeState::evaluate_scaled(const cplx& z) const {
  cplx acc = poly_(z);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const cplx inv = 1.0 / (z - base_.poles[i].location);
    cplx pw = std::pow(inv, n_ + 1);
    for (const auto& c : c_[i]) {
      acc += c * pw;
      pw *= inv;
    }
  }
  return acc;
}

cplx DerivativeState::evaluate(const cplx& z) const {
  return evaluate_scaled(z) * std::tgamma(static_cast<double>(n_) + 1.0);
}

DerivativeState derivative(const DerivativeState& state) { return state.next(); }

DerivativeState derivative_state(const PolarForm& base, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  DerivativeState s(base);
  for (int k = 0; k < n; ++k) s = s.next();
  return s;
}

template <class C>
cplx NumeratorResult<C>::alpha() const {
  return scaled_alpha * std::tgamma(static_cast<double>(n) + 1.0);
}

template <class C>
NumeratorResult<C> numerator(const DerivativeState& state, double floor) {
  const PolarForm& base = state.base();
  if (base.has_polynomial_part())
    throw Error(ErrorKind::PolynomialPart, "numerator requires a vanishing polynomial part");
  const int n = state.n();
  const std::size_t d = base.poles.size();

  // Coefficients straight from the base so the extended path sees exact integers.
  std::vector<std::vector<C>> c(d);
  std::vector<std::vector<double>> c_abs(d);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (int j = 1; j <= base.poles[i].order(); ++j) {
      const double poch = binomial(n + j - 1, j - 1);  // (j)_n / n!
      C a = from_cd<C>(base.poles[i].coeffs[static_cast<std::size_t>(j - 1)]);
      c[i].push_back(a * C(sign * poch));
      c_abs[i].push_back(std::abs(base.poles[i].coeffs[static_cast<std::size_t>(j - 1)]) * poch);
    }
  }

  const int full_degree = n * static_cast<int>(d - 1) + base.total_order() - 1;
  std::vector<C> acc(static_cast<std::size_t>(std::max(full_degree, 0) + 1), C(0.0));
  std::vector<KahanSum> acc_kahan;
  constexpr bool use_kahan = std::is_same_v<C, cplx>;
  if constexpr (use_kahan) acc_kahan.resize(acc.size());
  std::vector<double> bound(acc.size(), 0.0);

  for (std::size_t i = 0; i < d; ++i) {
    const C zi = from_cd<C>(base.poles[i].location);
    const double zi_abs = std::abs(base.poles[i].location);
    Polynomial<C> term = Polynomial<C>::constant(c[i][0]);
    DensePolynomial term_abs = DensePolynomial::constant(c_abs[i][0]);
    for (std::size_t j = 1; j < c[i].size(); ++j) {
      term.mul_linear(zi);
      term[0] = term[0] + c[i][j];
      term_abs.mul_linear(-zi_abs);
      term_abs[0] += c_abs[i][j];
    }
    for (std::size_t k = 0; k < d; ++k) {
      if (k == i) continue;
      const C zk = from_cd<C>(base.poles[k].location);
      const double zk_abs = std::abs(base.poles[k].location);
      const int power = base.poles[k].order() + n;
      for (int l = 0; l < power; ++l) {
        term.mul_linear(zk);
        term_abs.mul_linear(-zk_abs);
      }
    }
    for (std::size_t k = 0; k < term.size(); ++k) {
      if constexpr (use_kahan) {
        acc_kahan[k].add(term[k]);
      } else {
        acc[k] = acc[k] + term[k];
      }
      bound[k] += term_abs[k].real();
    }
  }
  if constexpr (use_kahan)
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = acc_kahan[k].value();

  std::size_t top = acc.size();
  while (top > 0 && mag(acc[top - 1]) <= floor * bound[top - 1]) --top;
  if (top == 0)
    throw Error(ErrorKind::DegreeCollapse,
                "all numerator coefficients below the floor at n=" + std::to_string(n));
  acc.resize(top);

  NumeratorResult<C> out;
  out.n = n;
  out.degree = static_cast<int>(top) - 1;
  const C lead = acc.back();
  for (auto& a : acc) a = a / lead;
  acc.back() = C(1.0);
  out.r_n = Polynomial<C>(std::move(acc));
  out.scaled_alpha = to_cd(lead);
  out.log_abs_alpha = std::lgamma(static_cast<double>(n) + 1.0) + std::log(mag(lead));
  return out;
}

template <class C>
std::vector<DegreeDiagnostic> degree_diagnostics(const std::vector<NumeratorResult<C>>& results) {
  std::vector<DegreeDiagnostic> out;
  out.reserve(results.size());
  for (const auto& r : results) {
    DegreeDiagnostic g;
    g.n = r.n;
    g.degree = r.degree;
    if (r.n > 0) {
      const double nn = static_cast<double>(r.n);
      g.degree_ratio = r.degree / nn;
      g.alpha_growth = (std::lgamma(nn + 1.0) - r.log_abs_alpha) / nn;
    } else {
      g.degree_ratio = std::nan("");
      g.alpha_growth = std::nan("");
    }
    out.push_back(g);
  }
  return out;
}

DensePolynomial single_pole_derivative(const DensePolynomial& numerator, cplx pole, int order,
                                       int n) {
  if (order < 1 || n < 0) throw Error(ErrorKind::InvalidArgument, "order >= 1 and n >= 0 required");
  DensePolynomial num(numerator);
  num.trim_exact();
  if (num.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "numerator is zero");
  const DensePolynomial taylor = num.taylor_shift(pole);
  if (std::abs(taylor[0]) <= 1e-12 * num.abs_bound(std::abs(pole)))
    throw Error(ErrorKind::SharedRoot, "numerator vanishes at the pole");

  // In w = z - pole the k-th Taylor term T_k w^(k-m) differentiates to
  // T_k * binom(k-m, n) * n! * w^(k-m-n).
  std::vector<cplx> w(taylor.size(), cplx(0.0));
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t k = 0; k < taylor.size(); ++k) {
    const long kk = static_cast<long>(k);
    double f = 0.0;
    if (kk < order) {
      f = sign * binomial(n + order - kk - 1, n);
    } else {
      f = binomial(kk - order, n);
    }
    w[k] = taylor[k] * f;
  }
  DensePolynomial shifted(std::move(w));
  shifted.trim_exact();
  return shifted.taylor_shift(-pole);
}

template struct NumeratorResult<cplx>;
template struct NumeratorResult<cdd>;
template NumeratorResult<cplx> numerator<cplx>(const DerivativeState&, double);
template NumeratorResult<cdd> numerator<cdd>(const DerivativeState&, double);
template std::vector<DegreeDiagnostic> degree_diagnostics<cplx>(const std::vector<NumeratorResult<cplx>>&);
template std::vector<DegreeDiagnostic> degree_diagnostics<cdd>(const std::vector<NumeratorResult<cdd>>&);

}  // namespace vz
