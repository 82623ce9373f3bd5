#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vz/error.hpp"
#include "vz/ratcalc.hpp"

using namespace vz;

namespace {

constexpr cplx I(0.0, 1.0);

PolarForm simple_poles(const std::vector<cplx>& locs, const std::vector<cplx>& res) {
  PolarForm q;
  for (std::size_t k = 0; k < locs.size(); ++k) q.poles.push_back({locs[k], {res[k]}});
  return q;
}

// n-th derivative by the Cauchy integral on a small circle, trapezoidal rule.
// Independent of the polar-part formulas: only evaluates the base function.
cplx cauchy_derivative(const PolarForm& q, const cplx& z, int n, double radius) {
  const int m = 256;
  cplx acc(0.0);
  for (int k = 0; k < m; ++k) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
    acc += q(z + radius * e) / std::pow(radius * e, n);
  }
  return acc / static_cast<double>(m) * std::tgamma(n + 1.0);
}

}  // namespace

TEST_CASE("partial fractions by hand") {
  SUBCASE("2z / (z^2 - 1)") {
    const auto q = polar_decompose(DensePolynomial({0.0, 2.0}), {{1.0, 1}, {-1.0, 1}});
    REQUIRE(q.pole_count() == 2);
    CHECK(std::abs(q.poles[0].coeffs[0] - 1.0) < 1e-14);
    CHECK(std::abs(q.poles[1].coeffs[0] - 1.0) < 1e-14);
  }
  SUBCASE("1 / (z^2 + 1)") {
    const auto q = polar_decompose(DensePolynomial::constant(1.0), {{I, 1}, {-I, 1}});
    CHECK(std::abs(q.poles[0].coeffs[0] - 1.0 / (2.0 * I)) < 1e-14);
    CHECK(std::abs(q.poles[1].coeffs[0] + 1.0 / (2.0 * I)) < 1e-14);
  }
  SUBCASE("1 / (z - 5)") {
    const auto q = polar_decompose(DensePolynomial::constant(1.0), {{5.0, 1}});
    CHECK(q.poles[0].coeffs.size() == 1);
    CHECK(q.poles[0].coeffs[0] == cplx(1.0));
  }
  SUBCASE("higher order poles recombine") {
    const DensePolynomial num({{1, 1}, {0, -2}, {3, 0}});
    const auto q = polar_decompose(num, {{0.5, 2}, {cplx(-1, 1), 3}});
    for (double x : {0.1, 2.0, -3.0}) {
      const cplx z(x, 0.7);
      const cplx direct = num(z) / (std::pow(z - 0.5, 2) * std::pow(z - cplx(-1, 1), 3));
      CHECK(std::abs(q(z) - direct) < 1e-12 * std::abs(direct));
    }
  }
}

TEST_CASE("partial fractions reject bad input") {
  CHECK_THROWS_AS(polar_decompose(DensePolynomial({-1.0, 1.0}), {{1.0, 1}, {2.0, 1}}), Error);
  try {
    polar_decompose(DensePolynomial::constant(1.0), {{1.0, 1}, {1.0, 1}});
    FAIL("expected DuplicatePole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicatePole);
  }
}

TEST_CASE("derivative coefficients") {
  auto q = simple_poles({1.0, -1.0}, {1.0, 1.0});
  const auto s1 = derivative(DerivativeState(q));
  CHECK(s1.scaled_coefficients()[0][0] == cplx(-1.0));
  CHECK(s1.scaled_coefficients()[1][0] == cplx(-1.0));

  PolarForm second;
  second.poles.push_back({0.3, {0.0, 1.0}});
  DerivativeState s(second);
  s = s.next();
  CHECK(s.scaled_coefficients()[0][1] == cplx(-2.0));
  for (int k = 1; k < 5; ++k) s = s.next();
  CHECK(s.n() == 5);
  CHECK(s.scaled_coefficients()[0][1] == cplx(-6.0));
}

TEST_CASE("scaled coefficients are signed binomials, exactly") {
  // Pascal triangle in 64-bit integers.
  std::vector<std::vector<std::uint64_t>> pascal(40, std::vector<std::uint64_t>(40, 0));
  for (int a = 0; a < 40; ++a) {
    pascal[a][0] = 1;
    for (int b = 1; b <= a; ++b) pascal[a][b] = pascal[a - 1][b - 1] + (b <= a - 1 ? pascal[a - 1][b] : 0);
  }
  PolarForm q;
  q.poles.push_back({0.0, std::vector<cplx>(6, cplx(1.0))});
  for (int n = 0; n <= 30; ++n) {
    const auto s = derivative_state(q, n);
    for (int j = 1; j <= 6; ++j) {
      const double expect = static_cast<double>(pascal[n + j - 1][j - 1]) * (n % 2 ? -1.0 : 1.0);
      CHECK(s.scaled_coefficients()[0][static_cast<std::size_t>(j - 1)] == cplx(expect));
    }
  }
}

TEST_CASE("lower order polar terms lose to the top one") {
  PolarForm q;
  q.poles.push_back({0.0, {5.0, -3.0, 1.0}});
  double prev = INFINITY;
  for (int n = 1; n <= 40; ++n) {
    const auto s = derivative_state(q, n);
    const auto& c = s.scaled_coefficients()[0];
    const double ratio = std::abs(c[0]) / std::abs(c[2]) + std::abs(c[1]) / std::abs(c[2]);
    CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("derivatives match a contour-integral oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  PolarForm q;
  q.poles.push_back({cplx(1, 0.5), {1.0, cplx(0, 2)}});
  q.poles.push_back({cplx(-1, -0.2), {cplx(0.5, -1)}});
  q.poles.push_back({cplx(0.1, 1.4), {0.3, 0.0, 1.0}});
  for (int n = 0; n <= 6; ++n) {
    const auto s = derivative_state(q, n);
    int checked = 0;
    while (checked < 20) {
      const cplx z(u(rng), u(rng));
      double dmin = INFINITY;
      for (const auto& p : q.poles) dmin = std::min(dmin, std::abs(z - p.location));
      if (dmin < 0.4) continue;
      const cplx oracle = cauchy_derivative(q, z, n, 0.25 * dmin);
      CHECK(std::abs(s.evaluate(z) - oracle) <= 1e-5 * std::abs(oracle));
      ++checked;
    }
  }
}

TEST_CASE("numerator examples") {
  SUBCASE("1/(z-1) + 1/(z+1), n = 1") {
    const auto r = numerator<cplx>(derivative_state(simple_poles({1.0, -1.0}, {1.0, 1.0}), 1));
    CHECK(r.degree == 2);
    CHECK(std::abs(r.r_n[0] - 1.0) < 1e-14);
    CHECK(std::abs(r.r_n[1]) < 1e-14);
    CHECK(std::abs(r.alpha() + 2.0) < 1e-14);
  }
  SUBCASE("1/(z-1) + 2/(z+1), n = 1") {
    const auto r = numerator<cplx>(derivative_state(simple_poles({1.0, -1.0}, {1.0, 2.0}), 1));
    CHECK(r.degree == 2);
    CHECK(std::abs(r.r_n[0] - 1.0) < 1e-14);
    CHECK(std::abs(r.r_n[1] + 2.0 / 3.0) < 1e-14);
  }
  SUBCASE("three simple poles, n = 5") {
    const auto r = numerator<cplx>(
        derivative_state(simple_poles({cplx(1, 0), cplx(-0.4, 0.9), cplx(-0.3, -1.1)}, {1.0, cplx(0.7, 0.2), -1.3}), 5));
    CHECK(r.degree == 12);
  }
  SUBCASE("polynomial part is rejected") {
    auto q = simple_poles({1.0}, {1.0});
    q.polynomial_part = DensePolynomial({1.0, 1.0});
    CHECK_THROWS_AS(numerator<cplx>(DerivativeState(q)), Error);
  }
}

TEST_CASE("numerator identity at random points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  PolarForm q;
  q.poles.push_back({cplx(0.8, 0.1), {1.0, cplx(0.5, 0.5)}});
  q.poles.push_back({cplx(-0.6, 0.7), {cplx(-1, 0.3)}});
  q.poles.push_back({cplx(-0.2, -0.9), {2.0}});
  for (int n = 0; n <= 40; n += 4) {
    const auto s = derivative_state(q, n);
    const auto r = numerator<cplx>(s);
    for (int k = 0; k < 10; ++k) {
      const cplx z(u(rng), u(rng));
      cplx p(1.0), p0(1.0);
      for (const auto& pole : q.poles) {
        p *= std::pow(z - pole.location, pole.order());
        p0 *= z - pole.location;
      }
      const cplx rhs = r.scaled_alpha * r.r_n(z) / (p * std::pow(p0, n));
      const cplx lhs = s.evaluate_scaled(z);
      // Horner on the expanded numerator cancels; measure against its rounding scale.
      const double horner = std::abs(r.scaled_alpha) * r.r_n.abs_bound(std::abs(z)) / std::abs(p * std::pow(p0, n));
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(std::abs(lhs), horner));
    }
  }
}

TEST_CASE("generic degree n(d-1) + r - 1") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  PolarForm q;
  q.poles.push_back({cplx(g(rng), g(rng)), {cplx(g(rng), g(rng))}});
  q.poles.push_back({cplx(g(rng), g(rng)), {cplx(g(rng), g(rng)), cplx(g(rng), g(rng))}});
  q.poles.push_back({cplx(g(rng), g(rng)), {cplx(g(rng), g(rng))}});
  const int d = 3, r = 4;
  for (int n = 1; n <= 30; ++n) CHECK(numerator<cplx>(derivative_state(q, n)).degree == n * (d - 1) + r - 1);
}

TEST_CASE("cancelling residues drop the degree") {
  // 1/(z^2-1): numerator proportional to (z+1)^(n+1) - (z-1)^(n+1).
  const auto q = simple_poles({1.0, -1.0}, {0.5, -0.5});
  for (int n = 1; n <= 5; ++n) {
    const auto r = numerator<cplx>(derivative_state(q, n));
    CHECK(r.degree == n);
    const auto a = DensePolynomial::linear_power(-1.0, n + 1);
    const auto b = DensePolynomial::linear_power(1.0, n + 1);
    auto diff = a - b;
    diff.trim_exact();
    const auto expect = diff.monic();
    // Odd powers vanish by symmetry, so the exact comparison is coefficientwise up to rounding.
    for (std::size_t k = 0; k < expect.size(); ++k) CHECK(std::abs(r.r_n[k] - expect[k]) < 1e-12);
  }
  for (int n = 1; n <= 20; ++n) CHECK(numerator<cdd>(derivative_state(q, n)).degree == n);
}

TEST_CASE("alpha growth tends to zero") {
  const auto q = simple_poles({cplx(0, 1), cplx(0, -1), cplx(1.5, 0)}, {1.0, 2.0, cplx(0, 1)});
  std::vector<NumeratorResult<cplx>> rs;
  for (int n : {10, 20, 40, 80}) rs.push_back(numerator<cplx>(derivative_state(q, n)));
  const auto diag = degree_diagnostics(rs);
  for (std::size_t k = 1; k < diag.size(); ++k) CHECK(std::abs(diag[k].alpha_growth) < std::abs(diag[k - 1].alpha_growth));
}

TEST_CASE("single pole numerator") {
  SUBCASE("matches the partial fraction path") {
    const DensePolynomial num({2.0, 1.0});
    const auto q = polar_decompose(num, {{1.0, 3}});
    const auto s = derivative_state(q, 1);
    const auto top = single_pole_derivative(num, 1.0, 3, 1);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 10; ++k) {
      const cplx z(u(rng), u(rng));
      const cplx direct = top(z) / std::pow(z - 1.0, 4);
      CHECK(std::abs(direct - s.evaluate_scaled(z)) <= 1e-10 * std::abs(direct));
    }
  }
  SUBCASE("simple pole becomes constant after deg R steps") {
    const DensePolynomial num({1.0, -2.0, 0.5, 1.0});
    const auto top = single_pole_derivative(num, cplx(0.5, 0.5), 1, 3);
    CHECK(top.degree() == 0);
    // Q^(d)/d! = -R(alpha) / (alpha - z)^(d+1) up to sign bookkeeping.
    const cplx alpha(0.5, 0.5);
    const cplx z(2.0, -1.0);
    const cplx expect = -num(alpha) / std::pow(alpha - z, 4);
    CHECK(std::abs(top(z) / std::pow(z - alpha, 4) - expect) < 1e-12 * std::abs(expect));
  }
  SUBCASE("pure polar term has a constant numerator") {
    for (int n : {1, 5, 17}) CHECK(single_pole_derivative(DensePolynomial::constant(1.0), 2.0, 2, n).degree() == 0);
  }
}
