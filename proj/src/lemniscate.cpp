#include "vz/lemniscate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "vz/error.hpp"

namespace vz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exponent of P_j in the i-th cleared term.
int cleared_exponent(const LemniscateProblem& p, std::size_t i, std::size_t j, int n) {
  const int mj = p.multiplier(j);
  if (i == j) return mj > 0 ? mj * n : 0;
  return mj < 0 ? -mj * n : 0;
}

DensePolynomial abs_coeffs(const DensePolynomial& p) {
  DensePolynomial q(p);
  for (auto& c : q.coeffs()) c = std::abs(c);
  return q;
}

DensePolynomial power(const DensePolynomial& p, int k) {
  DensePolynomial out = DensePolynomial::constant(1.0);
  for (int l = 0; l < k; ++l) out = out * p;
  return out;
}

}  // namespace

void LemniscateProblem::validate() const {
  if (polys.size() < 2) throw Error(ErrorKind::InvalidArgument, "at least two polynomials required");
  if (!multipliers.empty() && multipliers.size() != polys.size())
    throw Error(ErrorKind::InvalidArgument, "one multiplier per polynomial required");
  for (std::size_t i = 0; i < polys.size(); ++i) {
    DensePolynomial p(polys[i]);
    p.trim_exact();
    if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "polynomials must be nonconstant");
    if (std::abs(p.leading() - cplx(1.0)) > 1e-12) throw Error(ErrorKind::InvalidArgument, "polynomials must be monic");
    if (multiplier(i) == 0) throw Error(ErrorKind::InvalidArgument, "multipliers must be nonzero");
  }
}

int LemniscateProblem::dominant_index() const {
  int best = -1;
  long top = std::numeric_limits<long>::min();
  bool unique = false;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (multiplier(i) < 0) return -1;
    const long deg = static_cast<long>(multiplier(i)) * polys[i].degree();
    if (deg > top) {
      top = deg;
      best = static_cast<int>(i);
      unique = true;
    } else if (deg == top) {
      unique = false;
    }
  }
  return unique ? best : -1;
}

std::vector<cplx> LemniscateProblem::sites() const {
  std::vector<cplx> out;
  for (const auto& p : polys) {
    const RootSet<cplx> rs = solve(p);
    out.insert(out.end(), rs.roots.begin(), rs.roots.end());
  }
  return out;
}

DensePolynomial build_rn(const LemniscateProblem& problem, int n) {
  problem.validate();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  const std::size_t k = problem.polys.size();
  DensePolynomial sum, bound;
  for (std::size_t i = 0; i < k; ++i) {
    DensePolynomial term = DensePolynomial::constant(1.0);
    DensePolynomial term_abs = DensePolynomial::constant(1.0);
    for (std::size_t j = 0; j < k; ++j) {
      const int e = cleared_exponent(problem, i, j, n);
      if (e == 0) continue;
      term = term * power(problem.polys[j], e);
      term_abs = term_abs * power(abs_coeffs(problem.polys[j]), e);
    }
    sum = sum + term;
    bound = bound + term_abs;
  }
  auto& c = sum.coeffs();
  std::size_t top = c.size();
  while (top > 0 && std::abs(c[top - 1]) <= 1e-12 * bound[top - 1].real()) --top;
  if (top == 0) throw Error(ErrorKind::DegreeCollapse, "R_n vanishes to rounding");
  c.resize(top);
  return sum;
}

PowerProductSum rn_evaluator(const LemniscateProblem& problem, int n) {
  problem.validate();
  const std::size_t k = problem.polys.size();
  std::vector<cplx> coeffs(k, cplx(1.0));
  std::vector<std::vector<int>> exps(k, std::vector<int>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) exps[i][j] = cleared_exponent(problem, i, j, n);
  return PowerProductSum(problem.polys, std::move(coeffs), std::move(exps));
}

double psi_max(const LemniscateProblem& problem, const cplx& z) {
  double best = -kInf;
  for (std::size_t i = 0; i < problem.polys.size(); ++i)
    best = std::max(best, problem.multiplier(i) * std::log(std::abs(problem.polys[i](z))));
  return best;
}

double psi_cleared(const LemniscateProblem& problem, const cplx& z) {
  double extra = 0.0;
  for (std::size_t i = 0; i < problem.polys.size(); ++i)
    if (problem.multiplier(i) < 0) extra -= problem.multiplier(i) * std::log(std::abs(problem.polys[i](z)));
  return psi_max(problem, z) + extra;
}

double dominance_radius(const LemniscateProblem& problem) {
  problem.validate();
  const int dom = problem.dominant_index();
  if (dom < 0) throw Error(ErrorKind::NoDominantDegree, "no strictly dominant m_i deg P_i");
  const std::size_t k = problem.polys.size();
  const DensePolynomial& p1 = problem.polys[static_cast<std::size_t>(dom)];
  const double log_km1 = std::log(static_cast<double>(k - 1));

  // lower(rho) <= |P_1(z)| and upper_i(rho) >= |P_i(z)| on |z| = rho; the margin below is
  // increasing in rho once lower > 0, so bisection finds the threshold.
  auto holds = [&](double rho) {
    double lower = std::pow(rho, p1.degree());
    for (int j = 0; j < p1.degree(); ++j) lower -= std::abs(p1[static_cast<std::size_t>(j)]) * std::pow(rho, j);
    if (!(lower > 0.0)) return false;
    const double lhs = problem.multiplier(static_cast<std::size_t>(dom)) * std::log(lower);
    for (std::size_t i = 0; i < k; ++i) {
      if (static_cast<int>(i) == dom) continue;
      const double upper = abs_coeffs(problem.polys[i])(cplx(rho)).real();
      if (!(lhs > log_km1 + problem.multiplier(i) * std::log(upper))) return false;
    }
    return true;
  };
  double hi = 1.0;
  int guard = 0;
  while (!holds(hi)) {
    hi *= 2.0;
    if (++guard > 200) throw Error(ErrorKind::NotFound, "dominance radius search diverged");
  }
  double lo = 0.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (holds(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

RootSet<cplx> lemniscate_roots(const LemniscateProblem& problem, int n) {
  const DensePolynomial dense = build_rn(problem, n);
  if (dense.degree() < 1) return RootSet<cplx>{};
  return solve_implicit(rn_evaluator(problem, n), dense, 1e-12);
}

LemniscateReport compactness_and_compare(const LemniscateProblem& problem, const std::vector<int>& n_list,
                                         const Window& window, int grid, std::uint64_t seed) {
  problem.validate();
  LemniscateReport rep;
  rep.compact = problem.dominant_index() >= 0;
  rep.radius = rep.compact ? dominance_radius(problem) : std::nan("");
  const std::vector<cplx> sites = problem.sites();

  // Probe points away from the switching set of the max.
  std::vector<cplx> probes;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int tries = 0; probes.size() < 20 && tries < 100000; ++tries) {
    const cplx z = window.center + window.half_side * cplx(unif(rng), unif(rng));
    std::vector<double> vals;
    for (std::size_t i = 0; i < problem.polys.size(); ++i)
      vals.push_back(problem.multiplier(i) * std::log(std::abs(problem.polys[i](z))));
    std::sort(vals.rbegin(), vals.rend());
    if (vals[0] - vals[1] >= 0.1) probes.push_back(z);
  }

  for (int n : n_list) {
    LemniscateRun run;
    run.n = n;
    const DensePolynomial dense = build_rn(problem, n);
    run.degree = dense.degree();
    const RootSet<cplx> rs = lemniscate_roots(problem, n);
    run.roots = rs.roots;
    run.converged = static_cast<int>(rs.converged_count());
    for (const auto& z : rs.roots) run.max_modulus = std::max(run.max_modulus, std::abs(z));
    const double log_lead = std::log(std::abs(dense.leading())) / n;
    const double inv_n = 1.0 / n;
    auto target = [&](const cplx& z) { return psi_cleared(problem, z) - log_lead; };
    run.l1 = grid_l1(rs.roots, inv_n, target, sites, window, grid, 2e-3 * window.half_side, seed).value;
    double perr = 0.0;
    for (const auto& z : probes) {
      double s = 0.0;
      for (const auto& r : rs.roots) s += std::log(std::abs(z - r));
      perr += std::abs(s * inv_n - target(z));
    }
    run.pointwise_error = probes.empty() ? std::nan("") : perr / static_cast<double>(probes.size());
    rep.runs.push_back(std::move(run));
  }
  return rep;
}

}  // namespace vz
