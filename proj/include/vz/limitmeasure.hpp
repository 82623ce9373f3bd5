#pragma once

#include <string>
#include <vector>

#include "vz/scalar.hpp"
#include "vz/voronoi.hpp"

namespace vz {

/// Density of the limit measure on an edge with respect to t:
/// 1 / (2 (d-1) pi (1/4 + t^2)). Throws OutOfInterval outside [t_lo, t_hi].
double edge_density(const VoronoiDiagram& diagram, const EdgeSegment& edge, double t);

/// Mass of the edge up to parameter t, (atan 2t - atan 2t_lo) / ((d-1) pi).
double edge_cdf(const VoronoiDiagram& diagram, const EdgeSegment& edge, double t);
double edge_mass(const VoronoiDiagram& diagram, const EdgeSegment& edge);
double total_mass(const VoronoiDiagram& diagram);

struct EdgeMeasure {
  const EdgeSegment* edge = nullptr;
  double mass = 0.0;
  double cdf(const VoronoiDiagram& diagram, double t) const { return edge_cdf(diagram, *edge, t); }
};

std::vector<EdgeMeasure> edge_measures(const VoronoiDiagram& diagram);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
  explicit GaussLegendre(int n);
};

/// Integral of log|z - w| against the limit measure, edge by edge in u = atan(2t)
/// (where the measure is uniform) with adaptive composite Gauss-Legendre panels.
/// Throws SkeletonProximity when z is within 1e-9 * diameter of the skeleton.
double potential_from_measure(const VoronoiDiagram& diagram, const cplx& z, int quadrature_nodes = 20);

/// Piecewise rational Cauchy transform: in cell i, (d-1)^{-1} sum_{j != i} 1/(z - z_j).
class CauchyEvaluator {
 public:
  explicit CauchyEvaluator(const VoronoiDiagram& diagram);

  cplx branch(int i, const cplx& z) const;
  /// Branch of the cell containing z. Throws OnSkeleton on ties, AtPole at a site.
  cplx operator()(const cplx& z) const;

 private:
  const VoronoiDiagram* diagram_;
};

struct CauchyResidual {
  double absolute = 0.0;  ///< |prod_i (C(z) - branch_i(z))|
  double relative = 0.0;  ///< absolute / prod_i (|C(z)| + |branch_i(z)|)
};

CauchyResidual cauchy_residual(const CauchyEvaluator& evaluator, const VoronoiDiagram& diagram,
                               const cplx& z);

/// CSV with header "i,j,t_lo,t_hi,mass".
std::string measure_csv(const VoronoiDiagram& diagram);
/// CSV with header "i,j,u,t,cdf", k samples per edge uniform in u.
std::string measure_cdf_csv(const VoronoiDiagram& diagram, int samples_per_edge);

}  // namespace vz
