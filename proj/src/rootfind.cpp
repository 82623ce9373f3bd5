#include "vz/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "vz/error.hpp"

namespace vz {

namespace {

constexpr double kGolden = 0.6180339887498949;

template <class C>
double default_tolerance() {
  return scalar_traits<C>::precision == Precision::Double ? 1e-12 : 1e-24;
}

template <class C>
int default_sweeps() {
  return scalar_traits<C>::precision == Precision::Double ? 200 : 500;
}

// Keeps the attempt with more converged roots.
template <class C>
void keep_better(RootSet<C>& best, RootSet<C>&& cand) {
  const int attempts = best.attempts + cand.attempts;
  if (best.roots.empty() || cand.converged_count() > best.converged_count()) best = std::move(cand);
  best.attempts = attempts;
}

template <class C, class Eval>
RootSet<C> solve_with_restarts(const Eval& eval, const DensePolynomial& shape, const AberthOptions& opt) {
  const int m = shape.degree();
  const double fb = fujiwara_bound(shape);
  RootSet<C> best;
  const std::vector<std::vector<cplx>> starts = {newton_polygon_start(shape),
                                                 circle_start(0.5 * fb, m), circle_start(fb, m)};
  for (const auto& s : starts) {
    std::vector<C> init;
    init.reserve(s.size());
    for (const auto& z : s) init.push_back(from_cd<C>(z));
    keep_better(best, aberth<C>(eval, std::move(init), opt));
    if (best.all_converged()) break;
  }
  return best;
}

}  // namespace

RootSet<cplx> to_double(const RootSet<cdd>& rs) {
  RootSet<cplx> out;
  out.roots.reserve(rs.roots.size());
  for (const auto& z : rs.roots) out.roots.push_back(to_cd(z));
  out.residuals = rs.residuals;
  out.converged = rs.converged;
  out.sweeps = rs.sweeps;
  out.attempts = rs.attempts;
  return out;
}

double fujiwara_bound(const DensePolynomial& p) {
  DensePolynomial q(p);
  q.trim_exact();
  if (q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Fujiwara bound of the zero polynomial");
  const int deg = q.degree();
  if (deg < 1) throw Error(ErrorKind::InvalidArgument, "Fujiwara bound needs degree >= 1");
  const double lead = std::abs(q.leading());
  double best = 0.0;
  for (int k = 1; k <= deg; ++k) {
    const double r = std::abs(q[static_cast<std::size_t>(deg - k)]) / lead;
    if (r > 0.0) best = std::max(best, std::pow(r, 1.0 / k));
  }
  return 2.0 * best;
}

std::vector<cplx> circle_start(double radius, int m) {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(std::max(m, 0)));
  if (radius <= 0.0 || !std::isfinite(radius)) radius = 1.0;
  for (int j = 0; j < m; ++j) {
    const double jitter = 0.25 * std::fmod((j + 1) * kGolden, 1.0);
    const double ang = 2.0 * std::numbers::pi * (j + jitter) / m + 0.4;
    out.push_back(std::polar(radius, ang));
  }
  return out;
}

std::vector<cplx> newton_polygon_start(const DensePolynomial& p) {
  const int deg = p.degree();
  std::vector<cplx> out;
  if (deg < 1) return out;
  std::vector<std::pair<int, double>> pts;
  for (int k = 0; k <= deg; ++k) {
    const double a = std::abs(p[static_cast<std::size_t>(k)]);
    if (a > 0.0 && std::isfinite(a)) pts.emplace_back(k, std::log(a));
  }
  if (pts.empty() || pts.back().first != deg) return circle_start(1.0, deg);

  // Upper hull, monotone chain.
  std::vector<std::pair<int, double>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross = (b.first - a.first) * (q.second - a.second) - (b.second - a.second) * (q.first - a.first);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }

  // Zero roots from missing low-order coefficients start close to the origin.
  const int low = hull.front().first;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const int span = hull[s + 1].first - hull[s].first;
    smallest = std::min(smallest, std::exp((hull[s].second - hull[s + 1].second) / span));
  }
  if (!std::isfinite(smallest)) smallest = 1.0;
  for (int j = 0; j < low; ++j)
    out.push_back(std::polar(1e-3 * smallest, 2.0 * std::numbers::pi * (j + kGolden) / low));

  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const int span = hull[s + 1].first - hull[s].first;
    const double radius = std::exp((hull[s].second - hull[s + 1].second) / span);
    const double phase = 2.0 * std::numbers::pi * std::fmod((s + 1) * kGolden, 1.0);
    for (int j = 0; j < span; ++j)
      out.push_back(std::polar(radius, phase + 2.0 * std::numbers::pi * j / span + 0.4));
  }
  return out;
}

PowerProductSum::PowerProductSum(std::vector<DensePolynomial> bases, std::vector<cplx> coeffs,
                                 std::vector<std::vector<int>> exponents)
    : bases_(std::move(bases)), coeffs_(std::move(coeffs)), exponents_(std::move(exponents)) {
  if (coeffs_.size() != exponents_.size())
    throw Error(ErrorKind::InvalidArgument, "one exponent row per term required");
  for (const auto& row : exponents_) {
    if (row.size() != bases_.size()) throw Error(ErrorKind::InvalidArgument, "exponent row length");
    for (int e : row)
      if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  }
  base_derivs_.reserve(bases_.size());
  for (const auto& b : bases_) base_derivs_.push_back(b.derivative());
}

Correction<cplx> PowerProductSum::operator()(const cplx& z) const {
  constexpr double u = scalar_traits<cplx>::unit_roundoff;
  const std::size_t nb = bases_.size();
  std::vector<cplx> logb(nb), ratio(nb);
  std::vector<double> err_b(nb);
  const double az = std::abs(z);
  for (std::size_t q = 0; q < nb; ++q) {
    const cplx b = bases_[q](z);
    if (b == cplx(0.0, 0.0)) return {cplx(std::nan(""), 0.0), false};
    logb[q] = std::log(b);
    ratio[q] = base_derivs_[q](z) / b;
    err_b[q] = bases_[q].abs_bound(az) / std::abs(b) + std::abs(logb[q]) + 1.0;
  }

  std::vector<cplx> logt(coeffs_.size());
  std::vector<double> err_t(coeffs_.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    if (coeffs_[t] == cplx(0.0, 0.0)) {
      logt[t] = cplx(-std::numeric_limits<double>::infinity(), 0.0);
      continue;
    }
    cplx s = std::log(coeffs_[t]);
    double e = 2.0 + std::abs(s);
    for (std::size_t q = 0; q < nb; ++q) {
      const int k = exponents_[t][q];
      if (k == 0) continue;
      s += static_cast<double>(k) * logb[q];
      e += k * err_b[q];
    }
    logt[t] = s;
    err_t[t] = e;
    top = std::max(top, s.real());
  }
  if (!std::isfinite(top)) return {cplx(0.0, 0.0), true};

  cplx f(0.0, 0.0), df(0.0, 0.0);
  double noise = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    if (!std::isfinite(logt[t].real())) continue;
    const cplx term = std::exp(logt[t] - top);
    cplx dlog(0.0, 0.0);
    for (std::size_t q = 0; q < nb; ++q)
      if (exponents_[t][q] != 0) dlog += static_cast<double>(exponents_[t][q]) * ratio[q];
    f += term;
    df += term * dlog;
    noise += err_t[t] * std::abs(term);
  }
  Correction<cplx> c;
  c.newton = f / df;
  c.at_noise = std::abs(f) <= 2.0 * u * noise;
  return c;
}

PowerProductSum numerator_evaluator(const DerivativeState& state) {
  const PolarForm& base = state.base();
  if (base.has_polynomial_part())
    throw Error(ErrorKind::PolynomialPart, "numerator requires a vanishing polynomial part");
  const int n = state.n();
  const std::size_t d = base.poles.size();
  std::vector<DensePolynomial> bases;
  for (const auto& p : base.poles) bases.push_back(DensePolynomial{-p.location, cplx(1.0)});
  std::vector<cplx> coeffs;
  std::vector<std::vector<int>> exps;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < d; ++i) {
    const int ri = base.poles[i].order();
    for (int j = 1; j <= ri; ++j) {
      coeffs.push_back(base.poles[i].coeffs[static_cast<std::size_t>(j - 1)] * (sign * binomial(n + j - 1, j - 1)));
      std::vector<int> row(d);
      for (std::size_t k = 0; k < d; ++k) row[k] = (k == i) ? ri - j : base.poles[k].order() + n;
      exps.push_back(std::move(row));
    }
  }
  return PowerProductSum(std::move(bases), std::move(coeffs), std::move(exps));
}

template <class C>
RootSet<C> solve(const Polynomial<C>& p, double tolerance) {
  Polynomial<C> q(p);
  q.trim_exact();
  if (q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot solve the zero polynomial");
  if (q.degree() < 1) return RootSet<C>{};
  AberthOptions opt;
  opt.tolerance = tolerance > 0.0 ? tolerance : default_tolerance<C>();
  opt.max_sweeps = default_sweeps<C>();
  const DenseEvaluator<C> eval(q);
  return solve_with_restarts<C>(eval, q.template cast<cplx>(), opt);
}

RootSet<cplx> solve_implicit(const PowerProductSum& f, const DensePolynomial& shape, double tolerance) {
  if (shape.degree() < 1) return RootSet<cplx>{};
  AberthOptions opt;
  opt.tolerance = tolerance;
  opt.max_sweeps = default_sweeps<cplx>();
  return solve_with_restarts<cplx>(f, shape, opt);
}

NumeratorRoots numerator_roots(const DerivativeState& state, Precision precision, double tolerance) {
  NumeratorRoots out;
  if (precision == Precision::Double) {
    out.numerator = numerator<cplx>(state);
    const PowerProductSum f = numerator_evaluator(state);
    out.roots = solve_implicit(f, out.numerator.r_n, tolerance > 0.0 ? tolerance : 1e-12);
  } else {
    const NumeratorResult<cdd> ext = numerator<cdd>(state);
    out.numerator.r_n = ext.r_n.cast<cplx>();
    out.numerator.scaled_alpha = ext.scaled_alpha;
    out.numerator.log_abs_alpha = ext.log_abs_alpha;
    out.numerator.degree = ext.degree;
    out.numerator.n = ext.n;
    out.roots = to_double(solve<cdd>(ext.r_n, tolerance));
  }
  return out;
}

template RootSet<cplx> solve<cplx>(const Polynomial<cplx>&, double);
template RootSet<cdd> solve<cdd>(const Polynomial<cdd>&, double);

}  // namespace vz
