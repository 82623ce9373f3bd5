#pragma once

#include <cstdint>
#include <vector>

#include "vz/asympt.hpp"
#include "vz/polynomial.hpp"
#include "vz/rootfind.hpp"

namespace vz {

/// R_n = sum_i P_i^(m_i n) with monic P_i and integer multipliers m_i (default 1).
/// Negative multipliers are cleared by multiplying through with prod_{m_j<0} P_j^(|m_j| n).
struct LemniscateProblem {
  std::vector<DensePolynomial> polys;
  std::vector<int> multipliers;

  void validate() const;
  int multiplier(std::size_t i) const { return multipliers.empty() ? 1 : multipliers[i]; }
  /// Index of the strictly dominant m_i deg P_i, or -1 (also -1 when a multiplier is negative).
  int dominant_index() const;
  /// Roots of all P_i, the analogue of the pole set.
  std::vector<cplx> sites() const;
};

/// Expanded R_n after clearing denominators.
DensePolynomial build_rn(const LemniscateProblem& problem, int n);

/// Implicit evaluator for the same R_n.
PowerProductSum rn_evaluator(const LemniscateProblem& problem, int n);

/// max_i m_i log|P_i(z)|.
double psi_max(const LemniscateProblem& problem, const cplx& z);

/// Limit of (1/n) log|R_n| for the cleared form: psi_max plus sum over negative multipliers.
double psi_cleared(const LemniscateProblem& problem, const cplx& z);

/// Radius beyond which |P_1^(m_1 n)| > (k-1) max_{i != 1} |P_i^(m_i n)| for every n >= 1,
/// P_1 the dominant term. Throws NoDominantDegree.
double dominance_radius(const LemniscateProblem& problem);

struct LemniscateRun {
  int n = 0;
  int degree = 0;
  std::vector<cplx> roots;
  int converged = 0;
  double max_modulus = 0.0;
  double l1 = 0.0;
  double pointwise_error = 0.0;  ///< mean |(1/n) log|R_n| - limit| at fixed probe points
};

struct LemniscateReport {
  bool compact = false;
  double radius = 0.0;  ///< NaN without a dominant term
  std::vector<LemniscateRun> runs;
};

/// Root-solves R_n for each n, checks the roots against the dominance radius and measures
/// the grid L1 distance between (1/n) log|R_n| and its limit. Without a dominant term the
/// report is marked non-compact and only the pointwise errors are meaningful.
LemniscateReport compactness_and_compare(const LemniscateProblem& problem, const std::vector<int>& n_list,
                                         const Window& window, int grid = 200, std::uint64_t seed = 1);

/// Roots of R_n through the implicit evaluator.
RootSet<cplx> lemniscate_roots(const LemniscateProblem& problem, int n);

}  // namespace vz
