#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vz/asympt.hpp"
#include "vz/lemniscate.hpp"
#include "vz/voronoi.hpp"

namespace vz {

using Segment = std::pair<cplx, cplx>;

struct SvgScene {
  Window window;
  std::vector<cplx> sites;
  std::vector<Segment> edges;  ///< drawn with class "edge"
  std::vector<cplx> roots;     ///< only those inside the window are drawn, class "root"
  std::string title;
};

/// Square window around the points, half-side = pad times half the larger bounding-box side.
Window fit_window(const std::vector<cplx>& points, double pad = 1.3);

/// Skeleton clipped to the window; rays and lines end at the border.
std::vector<Segment> clip_skeleton(const VoronoiDiagram& diagram, const Window& window);

/// Switching set of argmax_i m_i log|P_i| traced on a resolution x resolution grid.
std::vector<Segment> lemniscate_boundary(const LemniscateProblem& problem, const Window& window, int resolution = 300);

/// SVG 1.1 in world coordinates (y axis up), numbers with 9 significant digits.
std::string render_svg(const SvgScene& scene);

}  // namespace vz
