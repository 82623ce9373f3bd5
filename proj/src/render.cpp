#include "vz/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vz/error.hpp"
#include "vz/format.hpp"

namespace vz {

Window fit_window(const std::vector<cplx>& points, double pad) {
  if (points.empty()) return Window{};
  double x0 = points[0].real(), x1 = x0, y0 = points[0].imag(), y1 = y0;
  for (const auto& p : points) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  Window w;
  w.center = {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
  w.half_side = 0.5 * pad * std::max({x1 - x0, y1 - y0, 1e-9});
  if (points.size() == 1) w.half_side = 1.0;
  return w;
}

std::vector<Segment> clip_skeleton(const VoronoiDiagram& diagram, const Window& window) {
  std::vector<Segment> out;
  const double xl = window.center.real() - window.half_side, xr = window.center.real() + window.half_side;
  const double yl = window.center.imag() - window.half_side, yr = window.center.imag() + window.half_side;
  for (const auto& e : diagram.edges()) {
    double lo = e.t_lo, hi = e.t_hi;
    // Liang-Barsky against the four sides.
    const double px[2] = {e.direction.real(), e.direction.imag()};
    const double p0[2] = {e.midpoint.real(), e.midpoint.imag()};
    const double mins[2] = {xl, yl}, maxs[2] = {xr, yr};
    bool keep = true;
    for (int a = 0; a < 2 && keep; ++a) {
      if (px[a] == 0.0) {
        if (p0[a] < mins[a] || p0[a] > maxs[a]) keep = false;
        continue;
      }
      double t1 = (mins[a] - p0[a]) / px[a], t2 = (maxs[a] - p0[a]) / px[a];
      if (t1 > t2) std::swap(t1, t2);
      lo = std::max(lo, t1);
      hi = std::min(hi, t2);
      if (!(lo < hi)) keep = false;
    }
    if (keep) out.emplace_back(e.at(lo), e.at(hi));
  }
  return out;
}

std::vector<Segment> lemniscate_boundary(const LemniscateProblem& problem, const Window& window, int resolution) {
  if (resolution < 2) throw Error(ErrorKind::InvalidArgument, "resolution must be at least 2");
  const std::size_t k = problem.polys.size();
  auto branch = [&](std::size_t i, const cplx& z) {
    return problem.multiplier(i) * std::log(std::abs(problem.polys[i](z)));
  };
  auto label = [&](const cplx& z) {
    std::size_t best = 0;
    double v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      const double b = branch(i, z);
      if (b > v) {
        v = b;
        best = i;
      }
    }
    return best;
  };
  const int n = resolution;
  const double h = 2.0 * window.half_side / n;
  const cplx origin = window.center - cplx(window.half_side, window.half_side);
  auto node = [&](int ix, int iy) { return origin + cplx(ix * h, iy * h); };
  std::vector<std::size_t> lab(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix) lab[static_cast<std::size_t>(iy * (n + 1) + ix)] = label(node(ix, iy));
  auto at = [&](int ix, int iy) { return lab[static_cast<std::size_t>(iy * (n + 1) + ix)]; };

  // Crossing on a grid edge by bisection on the difference of the two end branches.
  auto crossing = [&](cplx a, cplx b, std::size_t la, std::size_t lb) {
    for (int it = 0; it < 30; ++it) {
      const cplx m = 0.5 * (a + b);
      if (branch(la, m) >= branch(lb, m))
        a = m;
      else
        b = m;
    }
    return 0.5 * (a + b);
  };

  std::vector<Segment> out;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const int cx[4] = {ix, ix + 1, ix + 1, ix};
      const int cy[4] = {iy, iy, iy + 1, iy + 1};
      std::vector<cplx> pts;
      for (int s = 0; s < 4; ++s) {
        const int t = (s + 1) % 4;
        const std::size_t la = at(cx[s], cy[s]), lb = at(cx[t], cy[t]);
        if (la != lb) pts.push_back(crossing(node(cx[s], cy[s]), node(cx[t], cy[t]), la, lb));
      }
      if (pts.size() == 2) {
        out.emplace_back(pts[0], pts[1]);
      } else if (pts.size() > 2) {
        cplx c(0.0, 0.0);
        for (const auto& p : pts) c += p;
        c /= static_cast<double>(pts.size());
        for (const auto& p : pts) out.emplace_back(p, c);
      }
    }
  }
  return out;
}

std::string render_svg(const SvgScene& scene) {
  const Window& w = scene.window;
  const double side = 2.0 * w.half_side;
  const double x0 = w.center.real() - w.half_side;
  const double ytop = w.center.imag() + w.half_side;
  auto f = [](double v) { return significant(v, 9); };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\""
     << f(x0) << ' ' << f(-ytop) << ' ' << f(side) << ' ' << f(side) << "\">\n";
  if (!scene.title.empty()) os << "<title>" << scene.title << "</title>\n";
  os << "<rect x=\"" << f(x0) << "\" y=\"" << f(-ytop) << "\" width=\"" << f(side) << "\" height=\"" << f(side)
     << "\" fill=\"white\"/>\n";
  os << "<g transform=\"scale(1,-1)\">\n";
  os << "<g class=\"skeleton\" stroke=\"#3465a4\" stroke-width=\"" << f(side * 0.002) << "\" fill=\"none\">\n";
  for (const auto& [a, b] : scene.edges)
    os << "<line class=\"edge\" x1=\"" << f(a.real()) << "\" y1=\"" << f(a.imag()) << "\" x2=\"" << f(b.real())
       << "\" y2=\"" << f(b.imag()) << "\"/>\n";
  os << "</g>\n";
  const double rs = side * 0.005;
  os << "<g class=\"sites\" fill=\"#cc0000\">\n";
  for (const auto& s : scene.sites)
    os << "<rect class=\"site\" x=\"" << f(s.real() - rs) << "\" y=\"" << f(s.imag() - rs) << "\" width=\""
       << f(2 * rs) << "\" height=\"" << f(2 * rs) << "\"/>\n";
  os << "</g>\n";
  os << "<g class=\"roots\" fill=\"black\">\n";
  for (const auto& r : scene.roots) {
    if (!w.contains(r)) continue;
    os << "<circle class=\"root\" cx=\"" << f(r.real()) << "\" cy=\"" << f(r.imag()) << "\" r=\"" << f(side * 0.003)
       << "\"/>\n";
  }
  os << "</g>\n</g>\n</svg>\n";
  return os.str();
}

}  // namespace vz
