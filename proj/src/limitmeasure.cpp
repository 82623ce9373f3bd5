#include "vz/limitmeasure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vz/error.hpp"
#include "vz/format.hpp"

namespace vz {

namespace {

constexpr double kPi = std::numbers::pi;

double norm_factor(const VoronoiDiagram& diagram) {
  return 1.0 / ((diagram.site_count() - 1) * kPi);
}

void check_interval(const EdgeSegment& edge, double t) {
  const double slack = 1e-12 * (1.0 + std::abs(t));
  if (std::isnan(t) || t < edge.t_lo - slack || t > edge.t_hi + slack)
    throw Error(ErrorKind::OutOfInterval, "t=" + shortest(t) + " outside [" + shortest(edge.t_lo) +
                                              ", " + shortest(edge.t_hi) + "]");
}

template <class F>
double panel(const F& f, double a, double b, const GaussLegendre& gl) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) s += gl.weights[k] * f(mid + half * gl.nodes[k]);
  return s * half;
}

template <class F>
double adaptive(const F& f, double a, double b, double whole, const GaussLegendre& gl, double tol_per_width,
                int depth) {
  const double m = 0.5 * (a + b);
  const double left = panel(f, a, m, gl);
  const double right = panel(f, m, b, gl);
  // The rounding floor term keeps smooth panels from splitting forever; only a panel
  // touching the log singularity at an infinite end keeps refining, down to the depth cap.
  const double diff = std::abs(left + right - whole);
  if (diff <= tol_per_width * (b - a) || diff <= 1e-14 * (std::abs(left) + std::abs(right)) || depth >= 45 ||
      !std::isfinite(diff))
    return left + right;
  return adaptive(f, a, m, left, gl, tol_per_width, depth + 1) +
         adaptive(f, m, b, right, gl, tol_per_width, depth + 1);
}

}  // namespace

double edge_density(const VoronoiDiagram& diagram, const EdgeSegment& edge, double t) {
  check_interval(edge, t);
  return 0.5 * norm_factor(diagram) / (0.25 + t * t);
}

double edge_cdf(const VoronoiDiagram& diagram, const EdgeSegment& edge, double t) {
  check_interval(edge, t);
  t = std::clamp(t, edge.t_lo, edge.t_hi);
  return (std::atan(2.0 * t) - std::atan(2.0 * edge.t_lo)) * norm_factor(diagram);
}

double edge_mass(const VoronoiDiagram& diagram, const EdgeSegment& edge) {
  return (std::atan(2.0 * edge.t_hi) - std::atan(2.0 * edge.t_lo)) * norm_factor(diagram);
}

double total_mass(const VoronoiDiagram& diagram) {
  double s = 0.0;
  for (const auto& e : diagram.edges()) s += edge_mass(diagram, e);
  return s;
}

std::vector<EdgeMeasure> edge_measures(const VoronoiDiagram& diagram) {
  std::vector<EdgeMeasure> out;
  for (const auto& e : diagram.edges()) out.push_back({&e, edge_mass(diagram, e)});
  return out;
}

GaussLegendre::GaussLegendre(int n) : nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n)) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre needs at least one node");
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i - 1)] = -z;
    nodes[static_cast<std::size_t>(n - i)] = z;
    weights[static_cast<std::size_t>(i - 1)] = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[static_cast<std::size_t>(n - i)] = weights[static_cast<std::size_t>(i - 1)];
  }
}

double potential_from_measure(const VoronoiDiagram& diagram, const cplx& z, int quadrature_nodes) {
  if (distance_to_skeleton(diagram, z) <= diagram.tolerance())
    throw Error(ErrorKind::SkeletonProximity, "point lies on the skeleton");
  const GaussLegendre gl(quadrature_nodes);
  double acc = 0.0;
  // Each half of an edge is integrated in s = pi/2 - |u|, the offset from the far end,
  // so that t = 1/(2 tan s) stays accurate where the log kernel is singular.
  auto piece = [&](const EdgeSegment& e, double t0, double t1, double sign) {
    const double sa = std::atan2(1.0, 2.0 * t1), sb = std::atan2(1.0, 2.0 * t0);
    if (!(sb > sa)) return 0.0;
    auto f = [&](double s) { return std::log(std::abs(z - e.at(sign * 0.5 / std::tan(s)))); };
    return adaptive(f, sa, sb, panel(f, sa, sb, gl), gl, 1e-13, 0);
  };
  for (const auto& e : diagram.edges()) {
    if (e.t_hi > 0.0) acc += piece(e, std::max(e.t_lo, 0.0), e.t_hi, 1.0);
    if (e.t_lo < 0.0) acc += piece(e, std::max(-e.t_hi, 0.0), -e.t_lo, -1.0);
  }
  return acc * norm_factor(diagram);
}

CauchyEvaluator::CauchyEvaluator(const VoronoiDiagram& diagram) : diagram_(&diagram) {}

cplx CauchyEvaluator::branch(int i, const cplx& z) const {
  const auto& s = diagram_->sites();
  cplx acc(0.0, 0.0);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (static_cast<int>(j) != i) acc += 1.0 / (z - s[j]);
  return acc / static_cast<double>(s.size() - 1);
}

cplx CauchyEvaluator::operator()(const cplx& z) const {
  const Location loc = locate(*diagram_, z);
  if (loc.on_boundary()) throw Error(ErrorKind::OnSkeleton, "Cauchy transform is two-valued on the skeleton");
  if (loc.distance == 0.0) throw Error(ErrorKind::AtPole, "evaluation at a site");
  return branch(loc.cell, z);
}

CauchyResidual cauchy_residual(const CauchyEvaluator& evaluator, const VoronoiDiagram& diagram, const cplx& z) {
  const cplx c = evaluator(z);
  cplx prod(1.0, 0.0);
  double scale = 1.0;
  for (int i = 0; i < diagram.site_count(); ++i) {
    const cplx b = evaluator.branch(i, z);
    prod *= c - b;
    scale *= std::abs(c) + std::abs(b);
  }
  CauchyResidual r;
  r.absolute = std::abs(prod);
  r.relative = scale > 0.0 ? r.absolute / scale : r.absolute;
  return r;
}

std::string measure_csv(const VoronoiDiagram& diagram) {
  std::ostringstream os;
  os << "i,j,t_lo,t_hi,mass\n";
  for (const auto& e : diagram.edges())
    os << e.i << ',' << e.j << ',' << shortest(e.t_lo) << ',' << shortest(e.t_hi) << ','
       << shortest(edge_mass(diagram, e)) << '\n';
  return os.str();
}

std::string measure_cdf_csv(const VoronoiDiagram& diagram, int samples_per_edge) {
  if (samples_per_edge < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples per edge");
  std::ostringstream os;
  os << "i,j,u,t,cdf\n";
  const double f = norm_factor(diagram);
  for (const auto& e : diagram.edges()) {
    const double ua = std::atan(2.0 * e.t_lo), ub = std::atan(2.0 * e.t_hi);
    for (int k = 0; k < samples_per_edge; ++k) {
      const double u = ua + (ub - ua) * k / (samples_per_edge - 1);
      double t = 0.5 * std::tan(u);
      if (k == 0) t = e.t_lo;
      if (k == samples_per_edge - 1) t = e.t_hi;
      os << e.i << ',' << e.j << ',' << shortest(u) << ',' << shortest(t) << ',' << shortest((u - ua) * f) << '\n';
    }
  }
  return os.str();
}

}  // namespace vz
