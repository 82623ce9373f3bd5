#include <cmath>

#include "doctest.h"
#include "vz/error.hpp"
#include "vz/lemniscate.hpp"

using namespace vz;

namespace {

LemniscateProblem square_and_shift() {
  LemniscateProblem p;
  p.polys = {DensePolynomial({0.0, 0.0, 1.0}), DensePolynomial({-3.0, 1.0})};
  return p;
}

}  // namespace

TEST_CASE("power sums by hand") {
  LemniscateProblem lin;
  lin.polys = {DensePolynomial({0.0, 1.0}), DensePolynomial({-1.0, 1.0})};
  const auto r1 = build_rn(lin, 1);
  REQUIRE(r1.degree() == 1);
  CHECK(r1[0] == cplx(-1.0));
  CHECK(r1[1] == cplx(2.0));

  const auto r2 = build_rn(square_and_shift(), 2);
  REQUIRE(r2.degree() == 4);
  const double expect[] = {9.0, -6.0, 1.0, 0.0, 1.0};
  for (int k = 0; k <= 4; ++k) CHECK(r2[static_cast<std::size_t>(k)] == cplx(expect[k]));
}

TEST_CASE("psi max examples") {
  const auto p = square_and_shift();
  CHECK(psi_max(p, 0.0) == doctest::Approx(std::log(3.0)));
  CHECK(psi_max(p, 10.0) == doctest::Approx(std::log(100.0)));
  // |z^2| = |z-3| on the real axis at z = (-1 + sqrt 13)/2.
  const double x = (-1.0 + std::sqrt(13.0)) / 2.0;
  CHECK(std::abs(2 * std::log(x) - std::log(3.0 - x)) < 1e-14);
  CHECK(psi_max(p, x) == doctest::Approx(std::log(3.0 - x)));
}

TEST_CASE("validation") {
  LemniscateProblem p;
  p.polys = {DensePolynomial({0.0, 2.0}), DensePolynomial({1.0, 1.0})};
  CHECK_THROWS_AS(p.validate(), Error);
  p.polys = {DensePolynomial({0.0, 1.0})};
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("dominance radius") {
  const auto p = square_and_shift();
  CHECK(p.dominant_index() == 0);
  // r^2 = r + 3 on |z| = r.
  CHECK(dominance_radius(p) == doctest::Approx((1.0 + std::sqrt(13.0)) / 2.0).epsilon(1e-12));

  LemniscateProblem tie;
  tie.polys = {DensePolynomial({-1.0, 1.0}), DensePolynomial({1.0, 1.0})};
  CHECK(tie.dominant_index() == -1);
  CHECK_THROWS_AS(dominance_radius(tie), Error);
}

TEST_CASE("roots stay inside the dominance radius") {
  const auto p = square_and_shift();
  const double radius = dominance_radius(p);
  for (int n : {5, 10, 20, 40}) {
    const auto rs = lemniscate_roots(p, n);
    CHECK(static_cast<int>(rs.size()) == 2 * n);
    CHECK(rs.all_converged());
    for (const auto& z : rs.roots) CHECK(std::abs(z) <= radius);
  }
}

TEST_CASE("equal degrees put the zeros on the bisector") {
  LemniscateProblem tie;
  tie.polys = {DensePolynomial({-1.0, 1.0}), DensePolynomial({1.0, 1.0})};
  for (int n : {4, 9}) {
    const auto rs = lemniscate_roots(tie, n);
    for (const auto& z : rs.roots) CHECK(std::abs(z.real()) < 1e-10);
  }
}

TEST_CASE("compactness report") {
  const auto p = square_and_shift();
  const Window w{{0.0, 0.0}, 4.0};
  const auto rep = compactness_and_compare(p, {10, 20, 40}, w, 100);
  CHECK(rep.compact);
  REQUIRE(rep.runs.size() == 3);
  for (std::size_t k = 1; k < rep.runs.size(); ++k) {
    CHECK(rep.runs[k].pointwise_error < rep.runs[k - 1].pointwise_error);
    CHECK(rep.runs[k].l1 < rep.runs[k - 1].l1);
  }
  for (const auto& r : rep.runs) CHECK(r.max_modulus <= rep.radius);
}

TEST_CASE("negative multipliers are cleared") {
  LemniscateProblem p;
  p.polys = {DensePolynomial({-1.0, 1.0}), DensePolynomial({1.0, 1.0})};
  p.multipliers = {1, -1};
  // (z-1)^n + (z+1)^-n cleared: (z-1)^n (z+1)^n + 1.
  const auto r = build_rn(p, 2);
  const auto expect = DensePolynomial::linear_power(1.0, 2) * DensePolynomial::linear_power(-1.0, 2) +
                      DensePolynomial::constant(1.0);
  REQUIRE(r.size() == expect.size());
  for (std::size_t k = 0; k < r.size(); ++k) CHECK(std::abs(r[k] - expect[k]) < 1e-14);
  CHECK(p.dominant_index() == -1);
}

TEST_CASE("figure configuration is compact") {
  LemniscateProblem p;
  const cplx I(0, 1);
  p.polys = {DensePolynomial({-1.0, 1.0}), DensePolynomial({1.0, 1.0}), DensePolynomial({-I, 1.0}),
             DensePolynomial({I, 1.0})};
  p.multipliers = {12, 8, 7, 21};
  CHECK(p.dominant_index() == 3);
  CHECK(build_rn(p, 2).degree() == 42);
}
