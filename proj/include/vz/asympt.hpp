#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vz/polynomial.hpp"
#include "vz/rootfind.hpp"
#include "vz/scalar.hpp"
#include "vz/voronoi.hpp"

namespace vz {

/// Uniform atomic measure on the converged roots.
struct EmpiricalMeasure {
  std::vector<cplx> points;
  double weight = 0.0;  ///< 1 / points.size()
  int n = 0;
  int excluded = 0;     ///< non-converged roots dropped before weighting

  double total_weight() const { return weight * static_cast<double>(points.size()); }
};

/// Throws EmptyRootSet when no converged root remains.
EmpiricalMeasure empirical(const RootSet<cplx>& roots, int n);
EmpiricalMeasure empirical(const std::vector<cplx>& points, int n);

/// Axis-aligned square [cx - h, cx + h] x [cy - h, cy + h].
struct Window {
  cplx center{0.0, 0.0};
  double half_side = 1.0;

  bool contains(const cplx& z) const {
    return std::abs(z.real() - center.real()) <= half_side && std::abs(z.imag() - center.imag()) <= half_side;
  }
  double area() const { return 4.0 * half_side * half_side; }
};

struct EdgeComparison {
  int i = 0;
  int j = 0;
  double mass = 0.0;       ///< limit measure of the edge
  double empirical = 0.0;  ///< atom weight assigned to the edge
  double ks = 0.0;         ///< sup_t |E(t) - F(t)| / mass in the edge parameter
  std::vector<double> histogram;  ///< empirical weight per bin, bins uniform in atan(2t)
};

/// One row per atom for the CSV export.
struct AtomAssignment {
  cplx point;
  int edge = -1;  ///< -1 when off the skeleton
  double t = 0.0;
  double distance = 0.0;
  double share = 1.0;  ///< fraction of the atom credited to this edge (vertex ties split)
};

struct ComparisonReport {
  int n = 0;
  int m_n = 0;
  std::vector<EdgeComparison> edges;
  double off_skeleton_fraction = 0.0;
  double mean_distance = 0.0;         ///< over all atoms
  double mean_distance_window = 0.0;  ///< over atoms inside the window (NaN without one)
  int window_atoms = 0;
  int excluded = 0;
  std::optional<double> potential_l1;
  std::vector<AtomAssignment> atoms;

  double max_ks() const;
};

/// Nearest-edge projection, cutoff 0.5 |z_j - z_i| sqrt(1/4 + t^2) for the off-skeleton test,
/// and per-edge Kolmogorov-Smirnov distance against the exact CDF.
ComparisonReport project_and_bin(const EmpiricalMeasure& measure, const VoronoiDiagram& diagram,
                                 int bins_per_edge = 16, std::optional<Window> window = std::nullopt);

struct L1Result {
  double value = 0.0;
  double excluded_fraction = 0.0;
  int samples = 0;
};

/// Jittered-grid mean of |weight * sum log|z - a| - target(z)| over the window, skipping
/// samples within exclusion_radius of an atom or singular point.
/// Throws ExclusionTooLarge when more than 1% of samples are skipped.
L1Result grid_l1(const std::vector<cplx>& atoms, double weight, const std::function<double(const cplx&)>& target,
                 const std::vector<cplx>& singular, const Window& window, int grid, double exclusion_radius,
                 std::uint64_t seed);

/// L1 distance between the atoms' normalised log potential and Psi. A negative
/// exclusion_radius selects 1e-3 times the window side.
L1Result potential_l1(const EmpiricalMeasure& measure, const VoronoiDiagram& diagram, const Window& window,
                      int grid = 200, double exclusion_radius = -1.0, std::uint64_t seed = 1);

/// Zeros of the (n-1)-th derivative of A1/(z-z1) + A2/(z-z2) from the Moebius closed form.
std::vector<cplx> twopole_zeros(cplx a1, cplx a2, cplx z1, cplx z2, int n);

/// Smallest N such that every zero of Q^(n), Q = numerator/(z-pole)^order, has modulus > r
/// for n = N..N+4. Throws NotFound when the search passes n_max.
int single_pole_escape(const DensePolynomial& numerator, cplx pole, int order, double r, int n_max = 500);

/// Largest pairwise distance after greedy nearest matching; infinity when sizes differ.
double matching_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

std::string to_json(const ComparisonReport& report);
std::string atoms_csv(const std::vector<ComparisonReport>& reports);

}  // namespace vz
