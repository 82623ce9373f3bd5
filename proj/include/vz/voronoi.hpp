#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vz/scalar.hpp"

namespace vz {

/// Piece of the bisector of sites i < j, z(t) = midpoint + t * direction with
/// direction = -i (z_j - z_i), so cell i lies on the right when walking along t.
struct EdgeSegment {
  int i = 0;
  int j = 0;
  cplx midpoint;
  cplx direction;
  double t_lo = 0.0;  ///< may be -inf
  double t_hi = 0.0;  ///< may be +inf

  cplx at(double t) const { return midpoint + t * direction; }
  /// Parameter of the orthogonal projection of z onto the supporting line.
  double project(const cplx& z) const;
  bool bounded_below() const;
  bool bounded_above() const;
};

class VoronoiDiagram {
 public:
  /// Clips every bisector against the half-planes of the remaining sites.
  /// Throws DegenerateScale or DuplicateSites.
  static VoronoiDiagram build(std::vector<cplx> sites);

  const std::vector<cplx>& sites() const { return sites_; }
  const std::vector<EdgeSegment>& edges() const { return edges_; }
  const std::vector<cplx>& vertices() const { return vertices_; }
  int site_count() const { return static_cast<int>(sites_.size()); }
  double diameter() const { return diameter_; }
  /// Absolute tolerance used for ties and clipping, 1e-9 times the diameter.
  double tolerance() const { return tol_; }

  /// Index into edges() for the unordered pair, if the cells share an edge.
  std::optional<std::size_t> edge_between(int i, int j) const;

 private:
  std::vector<cplx> sites_;
  std::vector<EdgeSegment> edges_;
  std::vector<cplx> vertices_;
  std::vector<int> adjacency_;  // d*d, -1 when absent
  double diameter_ = 0.0;
  double tol_ = 0.0;
};

struct Location {
  int cell = 0;
  std::vector<int> tied;  ///< all indices within tolerance of the minimum distance
  double distance = 0.0;  ///< distance to the nearest site

  bool on_boundary() const { return tied.size() > 1; }
};

Location locate(const VoronoiDiagram& diagram, const cplx& z);

/// Phi(z) = min_i |z - z_i| and Psi(z) = (log|prod (z - z_i)| - log Phi(z)) / (d - 1).
class PsiEvaluator {
 public:
  explicit PsiEvaluator(std::vector<cplx> sites);

  double phi(const cplx& z) const;
  /// Finite at the sites: the nearest factor is dropped before taking logs.
  double psi(const cplx& z) const;
  /// (log|prod| - log|z - z_i|)/(d-1), the harmonic branch of cell i.
  double branch(int i, const cplx& z) const;

  const std::vector<cplx>& sites() const { return sites_; }

 private:
  std::vector<cplx> sites_;
};

struct EdgeHit {
  std::size_t edge = 0;
  double t = 0.0;  ///< clamped parameter of the closest point
  double distance = 0.0;
};

/// Closest point on the skeleton; rays and lines are handled through infinite t bounds.
EdgeHit nearest_edge(const VoronoiDiagram& diagram, const cplx& z);
double distance_to_skeleton(const VoronoiDiagram& diagram, const cplx& z);

/// JSON with sites, edges (pair, t_lo, t_hi; infinities as "inf"/"-inf") and vertices.
std::string to_json(const VoronoiDiagram& diagram);

}  // namespace vz
