#include "vz/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "vz/error.hpp"
#include "vz/format.hpp"
#include "vz/limitmeasure.hpp"
#include "vz/ratcalc.hpp"

namespace vz {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

EmpiricalMeasure empirical(const RootSet<cplx>& roots, int n) {
  std::vector<cplx> pts;
  int excluded = 0;
  for (std::size_t k = 0; k < roots.roots.size(); ++k) {
    if (k < roots.converged.size() && !roots.converged[k]) {
      ++excluded;
      continue;
    }
    pts.push_back(roots.roots[k]);
  }
  EmpiricalMeasure m = empirical(pts, n);
  m.excluded = excluded;
  return m;
}

EmpiricalMeasure empirical(const std::vector<cplx>& points, int n) {
  if (points.empty()) throw Error(ErrorKind::EmptyRootSet, "no roots to weight");
  EmpiricalMeasure m;
  m.points = points;
  m.weight = 1.0 / static_cast<double>(points.size());
  m.n = n;
  return m;
}

double ComparisonReport::max_ks() const {
  double k = 0.0;
  for (const auto& e : edges) k = std::max(k, e.ks);
  return k;
}

ComparisonReport project_and_bin(const EmpiricalMeasure& measure, const VoronoiDiagram& diagram, int bins_per_edge,
                                 std::optional<Window> window) {
  if (bins_per_edge < 1) throw Error(ErrorKind::InvalidArgument, "bins_per_edge must be positive");
  const auto& edges = diagram.edges();
  const auto& sites = diagram.sites();
  ComparisonReport rep;
  rep.n = measure.n;
  rep.m_n = static_cast<int>(measure.points.size()) + measure.excluded;
  rep.excluded = measure.excluded;

  std::vector<std::vector<std::pair<double, double>>> on_edge(edges.size());  // (t, weight)
  double dist_sum = 0.0, dist_win = 0.0;
  const double w = measure.weight;

  for (const auto& z : measure.points) {
    std::vector<double> dist(edges.size()), tpar(edges.size());
    double dmin = kInf;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      tpar[k] = std::clamp(e.project(z), e.t_lo, e.t_hi);
      dist[k] = std::abs(z - e.at(tpar[k]));
      dmin = std::min(dmin, dist[k]);
    }
    std::vector<std::size_t> tied;
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (dist[k] <= dmin + diagram.tolerance()) tied.push_back(k);

    dist_sum += dmin;
    if (window && window->contains(z)) {
      dist_win += dmin;
      ++rep.window_atoms;
    }

    const auto& e0 = edges[tied.front()];
    const double cutoff = 0.5 * std::abs(sites[static_cast<std::size_t>(e0.j)] - sites[static_cast<std::size_t>(e0.i)]) *
                          std::sqrt(0.25 + tpar[tied.front()] * tpar[tied.front()]);
    if (dmin > cutoff) {
      rep.off_skeleton_fraction += w;
      rep.atoms.push_back({z, -1, 0.0, dmin, 1.0});
      continue;
    }
    const double share = 1.0 / static_cast<double>(tied.size());
    for (std::size_t k : tied) {
      on_edge[k].emplace_back(tpar[k], share * w);
      rep.atoms.push_back({z, static_cast<int>(k), tpar[k], dmin, share});
    }
  }
  const double count = static_cast<double>(measure.points.size());
  rep.mean_distance = dist_sum / count;
  rep.mean_distance_window = rep.window_atoms > 0 ? dist_win / rep.window_atoms : std::nan("");

  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    EdgeComparison c;
    c.i = e.i;
    c.j = e.j;
    c.mass = edge_mass(diagram, e);
    c.histogram.assign(static_cast<std::size_t>(bins_per_edge), 0.0);
    auto& atoms = on_edge[k];
    std::sort(atoms.begin(), atoms.end());
    const double ua = std::atan(2.0 * e.t_lo), ub = std::atan(2.0 * e.t_hi);
    double cum = 0.0, sup = 0.0;
    std::size_t a = 0;
    while (a < atoms.size()) {
      const double t = atoms[a].first;
      const double f = edge_cdf(diagram, e, t);
      sup = std::max(sup, std::abs(cum - f));
      while (a < atoms.size() && atoms[a].first == t) {
        cum += atoms[a].second;
        const double u = std::atan(2.0 * t);
        auto bin = static_cast<long>(std::floor((u - ua) / (ub - ua) * bins_per_edge));
        bin = std::clamp(bin, 0L, static_cast<long>(bins_per_edge - 1));
        c.histogram[static_cast<std::size_t>(bin)] += atoms[a].second;
        ++a;
      }
      sup = std::max(sup, std::abs(cum - f));
    }
    sup = std::max(sup, std::abs(cum - c.mass));
    c.empirical = cum;
    c.ks = sup / c.mass;
    rep.edges.push_back(std::move(c));
  }
  return rep;
}

L1Result grid_l1(const std::vector<cplx>& atoms, double weight, const std::function<double(const cplx&)>& target,
                 const std::vector<cplx>& singular, const Window& window, int grid, double exclusion_radius,
                 std::uint64_t seed) {
  if (grid < 1) throw Error(ErrorKind::InvalidArgument, "grid must be positive");
  if (!(window.half_side > 0.0)) throw Error(ErrorKind::InvalidArgument, "window half-side must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double cell = 2.0 * window.half_side / grid;
  const double x0 = window.center.real() - window.half_side;
  const double y0 = window.center.imag() - window.half_side;
  double acc = 0.0;
  int used = 0, skipped = 0;
  for (int gy = 0; gy < grid; ++gy) {
    for (int gx = 0; gx < grid; ++gx) {
      const double jx = unif(rng), jy = unif(rng);
      const cplx z(x0 + (gx + jx) * cell, y0 + (gy + jy) * cell);
      double near = kInf;
      for (const auto& s : singular) near = std::min(near, std::abs(z - s));
      double logsum = 0.0;
      for (const auto& a : atoms) {
        const double r = std::abs(z - a);
        near = std::min(near, r);
        logsum += std::log(r);
      }
      if (near < exclusion_radius) {
        ++skipped;
        continue;
      }
      acc += std::abs(weight * logsum - target(z));
      ++used;
    }
  }
  L1Result r;
  r.samples = used;
  r.excluded_fraction = static_cast<double>(skipped) / (static_cast<double>(grid) * grid);
  if (r.excluded_fraction > 0.01)
    throw Error(ErrorKind::ExclusionTooLarge, "excluded fraction " + shortest(r.excluded_fraction));
  r.value = acc / used;
  return r;
}

L1Result potential_l1(const EmpiricalMeasure& measure, const VoronoiDiagram& diagram, const Window& window, int grid,
                      double exclusion_radius, std::uint64_t seed) {
  for (const auto& s : diagram.sites())
    if (!window.contains(s)) throw Error(ErrorKind::InvalidArgument, "window must contain every site");
  if (exclusion_radius < 0.0) exclusion_radius = 1e-3 * 2.0 * window.half_side;
  const PsiEvaluator psi(diagram.sites());
  return grid_l1(measure.points, measure.weight, [&](const cplx& z) { return psi.psi(z); }, diagram.sites(), window,
                 grid, exclusion_radius, seed);
}

std::vector<cplx> twopole_zeros(cplx a1, cplx a2, cplx z1, cplx z2, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  if (a1 == cplx(0.0) || a2 == cplx(0.0)) throw Error(ErrorKind::InvalidArgument, "residues must be nonzero");
  if (z1 == z2) throw Error(ErrorKind::DuplicatePole, "poles coincide");
  const cplx b = std::pow(-a1 / a2, 1.0 / n);
  std::vector<cplx> out;
  for (int k = 0; k < n; ++k) {
    const cplx w = b * std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    if (std::abs(w - 1.0) <= 1e-12) continue;
    out.push_back((w * z2 - z1) / (w - 1.0));
  }
  return out;
}

int single_pole_escape(const DensePolynomial& numerator, cplx pole, int order, double r, int n_max) {
  constexpr int kRun = 5;
  int streak = 0;
  for (int n = 0; n <= n_max + kRun - 1; ++n) {
    const DensePolynomial p = single_pole_derivative(numerator, pole, order, n);
    double min_mod = kInf;
    if (p.degree() >= 1) {
      const RootSet<cplx> rs = solve(p);
      for (const auto& z : rs.roots) min_mod = std::min(min_mod, std::abs(z));
    }
    streak = min_mod > r ? streak + 1 : 0;
    if (streak == kRun) return n - kRun + 1;
    if (streak == 0 && n >= n_max) break;
  }
  throw Error(ErrorKind::NotFound, "no escape up to n_max=" + std::to_string(n_max));
}

double matching_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return kInf;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    double best = kInf;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double dd_ = std::abs(x - b[k]);
      if (dd_ < best) {
        best = dd_;
        idx = k;
      }
    }
    used[idx] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

std::string to_json(const ComparisonReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["m_n"] = report.m_n;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : report.edges) {
    nlohmann::ordered_json ej;
    ej["pair"] = {e.i, e.j};
    ej["mass"] = e.mass;
    ej["empirical"] = e.empirical;
    ej["ks"] = e.ks;
    ej["histogram"] = e.histogram;
    j["edges"].push_back(ej);
  }
  j["off_skeleton_fraction"] = report.off_skeleton_fraction;
  j["mean_distance"] = report.mean_distance;
  j["mean_distance_window"] = report.mean_distance_window;
  j["window_atoms"] = report.window_atoms;
  j["excluded"] = report.excluded;
  if (report.potential_l1) j["potential_l1"] = *report.potential_l1;
  return j.dump(2);
}

std::string atoms_csv(const std::vector<ComparisonReport>& reports) {
  std::ostringstream os;
  os << "n,re,im,i,j,t,distance,share\n";
  for (const auto& rep : reports) {
    for (const auto& a : rep.atoms) {
      int i = -1, jj = -1;
      if (a.edge >= 0) {
        i = rep.edges[static_cast<std::size_t>(a.edge)].i;
        jj = rep.edges[static_cast<std::size_t>(a.edge)].j;
      }
      os << rep.n << ',' << shortest(a.point.real()) << ',' << shortest(a.point.imag()) << ',' << i << ',' << jj
         << ',' << shortest(a.t) << ',' << shortest(a.distance) << ',' << shortest(a.share) << '\n';
    }
  }
  return os.str();
}

}  // namespace vz
