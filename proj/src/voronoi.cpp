#include "vz/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "vz/error.hpp"

namespace vz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::ordered_json t_value(double t) {
  if (t == kInf) return "inf";
  if (t == -kInf) return "-inf";
  return t;
}

nlohmann::ordered_json point(const cplx& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

double EdgeSegment::project(const cplx& z) const {
  return ((z - midpoint) * std::conj(direction)).real() / std::norm(direction);
}

bool EdgeSegment::bounded_below() const { return std::isfinite(t_lo); }
bool EdgeSegment::bounded_above() const { return std::isfinite(t_hi); }

VoronoiDiagram VoronoiDiagram::build(std::vector<cplx> sites) {
  const std::size_t d = sites.size();
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "need at least two sites");
  for (const auto& s : sites)
    if (!is_finite(s)) throw Error(ErrorKind::InvalidArgument, "non-finite site");

  VoronoiDiagram vd;
  double diam = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) diam = std::max(diam, std::abs(sites[i] - sites[j]));
  if (!(diam > 0.0) || !std::isfinite(diam))
    throw Error(ErrorKind::DegenerateScale, "all sites coincide");
  const double tol = 1e-9 * diam;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(sites[i] - sites[j]) <= tol)
        throw Error(ErrorKind::DuplicateSites,
                    "sites " + std::to_string(j) + " and " + std::to_string(i) + " coincide");

  vd.sites_ = std::move(sites);
  vd.diameter_ = diam;
  vd.tol_ = tol;
  vd.adjacency_.assign(d * d, -1);
  const auto& z = vd.sites_;

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      EdgeSegment e;
      e.i = static_cast<int>(i);
      e.j = static_cast<int>(j);
      e.midpoint = 0.5 * (z[i] + z[j]);
      e.direction = cplx(0.0, -1.0) * (z[j] - z[i]);
      double lo = -kInf, hi = kInf;
      bool empty = false;
      for (std::size_t k = 0; k < d && !empty; ++k) {
        if (k == i || k == j) continue;
        // |z(t) - z_i|^2 - |z(t) - z_k|^2 = alpha + beta t must be <= 0.
        const cplx b = z[k] - z[i];
        const double alpha = 2.0 * (e.midpoint * std::conj(b)).real() + std::norm(z[i]) - std::norm(z[k]);
        const double beta = 2.0 * (e.direction * std::conj(b)).real();
        if (std::abs(beta) <= 1e-12 * std::abs(e.direction) * std::abs(b)) {
          if (alpha > 2.0 * std::abs(b) * tol) empty = true;
        } else if (beta > 0.0) {
          hi = std::min(hi, -alpha / beta);
        } else {
          lo = std::max(lo, -alpha / beta);
        }
      }
      if (empty || !(lo < hi)) continue;
      if ((hi - lo) * std::abs(e.direction) <= tol) continue;
      e.t_lo = lo;
      e.t_hi = hi;
      vd.adjacency_[i * d + j] = vd.adjacency_[j * d + i] = static_cast<int>(vd.edges_.size());
      vd.edges_.push_back(e);
    }
  }

  for (const auto& e : vd.edges_) {
    for (double t : {e.t_lo, e.t_hi}) {
      if (!std::isfinite(t)) continue;
      const cplx v = e.at(t);
      const bool seen = std::any_of(vd.vertices_.begin(), vd.vertices_.end(),
                                    [&](const cplx& w) { return std::abs(w - v) <= tol; });
      if (!seen) vd.vertices_.push_back(v);
    }
  }
  return vd;
}

std::optional<std::size_t> VoronoiDiagram::edge_between(int i, int j) const {
  const std::size_t d = sites_.size();
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= d || static_cast<std::size_t>(j) >= d) return std::nullopt;
  const int e = adjacency_[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)];
  if (e < 0) return std::nullopt;
  return static_cast<std::size_t>(e);
}

Location locate(const VoronoiDiagram& diagram, const cplx& z) {
  const auto& s = diagram.sites();
  Location loc;
  loc.distance = kInf;
  std::vector<double> dist(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    dist[i] = std::abs(z - s[i]);
    if (dist[i] < loc.distance) {
      loc.distance = dist[i];
      loc.cell = static_cast<int>(i);
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (dist[i] - loc.distance <= diagram.tolerance()) loc.tied.push_back(static_cast<int>(i));
  return loc;
}

PsiEvaluator::PsiEvaluator(std::vector<cplx> sites) : sites_(std::move(sites)) {
  if (sites_.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two sites");
}

double PsiEvaluator::phi(const cplx& z) const {
  double m = kInf;
  for (const auto& s : sites_) m = std::min(m, std::abs(z - s));
  return m;
}

double PsiEvaluator::branch(int i, const cplx& z) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < sites_.size(); ++j)
    if (static_cast<int>(j) != i) acc += std::log(std::abs(z - sites_[j]));
  return acc / static_cast<double>(sites_.size() - 1);
}

double PsiEvaluator::psi(const cplx& z) const {
  int nearest = 0;
  double m = kInf;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const double r = std::abs(z - sites_[i]);
    if (r < m) {
      m = r;
      nearest = static_cast<int>(i);
    }
  }
  return branch(nearest, z);
}

EdgeHit nearest_edge(const VoronoiDiagram& diagram, const cplx& z) {
  EdgeHit best;
  best.distance = kInf;
  const auto& edges = diagram.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    const double t = std::clamp(e.project(z), e.t_lo, e.t_hi);
    const double dist = std::abs(z - e.at(t));
    if (dist < best.distance) best = {k, t, dist};
  }
  return best;
}

double distance_to_skeleton(const VoronoiDiagram& diagram, const cplx& z) {
  return nearest_edge(diagram, z).distance;
}

std::string to_json(const VoronoiDiagram& diagram) {
  nlohmann::ordered_json j;
  j["sites"] = nlohmann::ordered_json::array();
  for (const auto& s : diagram.sites()) j["sites"].push_back(point(s));
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : diagram.edges()) {
    nlohmann::ordered_json ej;
    ej["pair"] = {e.i, e.j};
    ej["t_lo"] = t_value(e.t_lo);
    ej["t_hi"] = t_value(e.t_hi);
    ej["midpoint"] = point(e.midpoint);
    ej["direction"] = point(e.direction);
    j["edges"].push_back(ej);
  }
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : diagram.vertices()) j["vertices"].push_back(point(v));
  return j.dump(2);
}

}  // namespace vz
