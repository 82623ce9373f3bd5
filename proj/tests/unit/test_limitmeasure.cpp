#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "vz/error.hpp"
#include "vz/limitmeasure.hpp"

using namespace vz;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<cplx> cube_roots() { return {1.0, std::polar(1.0, 2 * kPi / 3), std::polar(1.0, -2 * kPi / 3)}; }

// Arclength density straight from the geometric definition, no edge parametrisation.
double arclength_density(const std::vector<cplx>& sites, int i, int j, const cplx& z) {
  const double d = static_cast<double>(sites.size());
  return std::abs(sites[j] - sites[i]) /
         (2.0 * (d - 1.0) * kPi * std::abs(z - sites[i]) * std::abs(z - sites[j]));
}

// Mass of an edge by quadrature of the arclength density along the segment or ray.
double brute_mass(const VoronoiDiagram& v, const EdgeSegment& e) {
  const double speed = std::abs(e.direction);
  auto f = [&](double t) { return arclength_density(v.sites(), e.i, e.j, e.at(t)) * speed; };
  return gauss_kronrod<double, 61>::integrate(f, e.t_lo, e.t_hi, 15, 1e-14);
}

std::vector<cplx> random_sites(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> s;
  for (int k = 0; k < d; ++k) s.emplace_back(u(rng), u(rng));
  return s;
}

}  // namespace

TEST_CASE("density examples") {
  const auto v = VoronoiDiagram::build({I, -I});
  const auto& e = v.edges()[0];
  CHECK(edge_density(v, e, 0.0) == doctest::Approx(2.0 / kPi));
  // Arclength value: divide by |dz/dt| = 2.
  CHECK(edge_density(v, e, 0.0) / std::abs(e.direction) == doctest::Approx(1.0 / kPi));
  double prev = edge_density(v, e, 0.0);
  for (double t = 1.0; t < 1e6; t *= 3.0) {
    const double cur = edge_density(v, e, t);
    CHECK(cur < prev);
    prev = cur;
  }
  const auto w = VoronoiDiagram::build(cube_roots());
  const auto& ray = w.edges()[0];
  const double outside = std::isfinite(ray.t_lo) ? ray.t_lo - 1.0 : ray.t_hi + 1.0;
  CHECK_THROWS_AS(edge_density(w, ray, outside), Error);
}

TEST_CASE("edge masses") {
  SUBCASE("single line has mass one") {
    const auto v = VoronoiDiagram::build({I, -I});
    CHECK(edge_mass(v, v.edges()[0]) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("three symmetric rays carry a third each") {
    const auto v = VoronoiDiagram::build(cube_roots());
    for (const auto& e : v.edges()) {
      CHECK(edge_mass(v, e) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
      CHECK(brute_mass(v, e) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    }
  }
  SUBCASE("collinear sites give two half-mass lines") {
    const auto v = VoronoiDiagram::build({0.0, 2.0, 10.0});
    for (const auto& e : v.edges()) CHECK(edge_mass(v, e) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(total_mass(v) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("cdf on the real axis for sites i and -i") {
  const auto v = VoronoiDiagram::build({I, -I});
  const auto& e = v.edges()[0];
  // Cell of i (index 0) on the right of the walking direction: t runs toward -x.
  CHECK(std::abs(e.at(-0.5) - 1.0) < 1e-15);
  CHECK(edge_cdf(v, e, -0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(e.at(0.5) + 1.0) < 1e-15);
  CHECK(edge_cdf(v, e, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
  auto f = [&](double t) { return edge_density(v, e, t); };
  CHECK(gauss_kronrod<double, 61>::integrate(f, -kInf, 0.5, 15, 1e-14) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("closed-form cdf agrees with quadrature of the density") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 50) {
    const auto v = VoronoiDiagram::build(random_sites(rng, 2 + checked % 6));
    for (const auto& e : v.edges()) {
      if (checked >= 50) break;
      const double lo = std::isfinite(e.t_lo) ? e.t_lo : -5.0;
      const double hi = std::isfinite(e.t_hi) ? e.t_hi : 5.0;
      double a = lo + (hi - lo) * u(rng), b = lo + (hi - lo) * u(rng);
      if (a > b) std::swap(a, b);
      auto f = [&](double t) { return edge_density(v, e, t); };
      const double quad = gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
      CHECK(std::abs(edge_cdf(v, e, b) - edge_cdf(v, e, a) - quad) < 1e-10);
      CHECK(std::abs(edge_mass(v, e) - brute_mass(v, e)) < 1e-10);
      ++checked;
    }
  }
}

TEST_CASE("total mass is one") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 100; ++k) {
    const auto v = VoronoiDiagram::build(random_sites(rng, 2 + k % 9));
    CHECK(std::abs(total_mass(v) - 1.0) < 1e-12);
  }
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const GaussLegendre g(10);
  double s0 = 0.0, s18 = 0.0;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    s0 += g.weights[k];
    s18 += g.weights[k] * std::pow(g.nodes[k], 18);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s18 == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
}

TEST_CASE("potential of the limit measure") {
  SUBCASE("two sites at 2i") {
    const auto v = VoronoiDiagram::build({I, -I});
    CHECK(std::abs(potential_from_measure(v, 2.0 * I, 200) - std::log(3.0)) < 1e-6);
  }
  SUBCASE("far field approaches log|z|") {
    const auto v = VoronoiDiagram::build({cplx(0.3, 0.1), cplx(-0.5, 0.4), cplx(0.1, -0.7)});
    double prev = INFINITY;
    for (double r : {1e2, 1e3, 1e4}) {
      const cplx z = std::polar(r, 0.3);
      const double gap = std::abs(potential_from_measure(v, z) - std::log(r));
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev < 1e-3);
  }
  SUBCASE("agrees with psi near the vertex") {
    const auto v = VoronoiDiagram::build(cube_roots());
    const PsiEvaluator psi(cube_roots());
    CHECK(std::abs(potential_from_measure(v, 0.1) - psi.psi(0.1)) < 1e-5);
  }
  SUBCASE("refuses points on the skeleton") {
    const auto v = VoronoiDiagram::build({I, -I});
    CHECK_THROWS_AS(potential_from_measure(v, 0.5), Error);
  }
}

TEST_CASE("cauchy transform") {
  const auto v = VoronoiDiagram::build({I, -I});
  const CauchyEvaluator c(v);
  const cplx z = 2.0 * I;
  CHECK(std::abs(c(z) - (-I / 3.0)) < 1e-15);
  CHECK(cauchy_residual(c, v, z).absolute < 1e-14);

  const PsiEvaluator psi({I, -I});
  const double h = 1e-5;
  const double px = (psi.psi(z + h) - psi.psi(z - h)) / (2 * h);
  const double py = (psi.psi(z + I * h) - psi.psi(z - I * h)) / (2 * h);
  const cplx dpsi = 0.5 * cplx(px, -py);
  CHECK(std::abs(dpsi.real() - 0.0) < 1e-6);
  CHECK(std::abs(dpsi.imag() - (-1.0 / 6.0)) < 1e-6);

  CHECK_THROWS_AS(c(3.0), Error);
  CHECK_THROWS_AS(c(I), Error);
}

TEST_CASE("cauchy transform is twice the complex derivative of psi") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<cplx> sites{cplx(0.2, 0.9), cplx(-0.8, -0.1), cplx(0.7, -0.6), cplx(-0.1, 0.2)};
  const auto v = VoronoiDiagram::build(sites);
  const PsiEvaluator psi(sites);
  const CauchyEvaluator c(v);
  int checked = 0;
  while (checked < 50) {
    const cplx z(u(rng), u(rng));
    if (distance_to_skeleton(v, z) < 0.05 || locate(v, z).distance < 0.05) continue;
    const double h = 1e-5;
    const double px = (psi.psi(z + h) - psi.psi(z - h)) / (2 * h);
    const double py = (psi.psi(z + I * h) - psi.psi(z - I * h)) / (2 * h);
    CHECK(std::abs(cplx(px, -py) - c(z)) < 1e-5);
    CHECK(cauchy_residual(c, v, z).relative < 1e-12);
    ++checked;
  }
}

TEST_CASE("measure csv exports") {
  const auto v = VoronoiDiagram::build({I, -I});
  const std::string csv = measure_csv(v);
  CHECK(csv.rfind("i,j,t_lo,t_hi,mass\n", 0) == 0);
  CHECK(csv.find("0,1,-inf,inf,1\n") != std::string::npos);
  const std::string cdf = measure_cdf_csv(v, 4);
  CHECK(cdf.rfind("i,j,u,t,cdf\n", 0) == 0);
}
