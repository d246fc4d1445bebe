#pragma once

#include <string>
#include <vector>

#include "scert/problem.hpp"

namespace scert {

inline constexpr std::size_t kRenderAngles = 256;

struct RenderLayer {
  std::string id;  // e.g. "layer-s-cw", "layer-lipschitz-u", "layer-member-1-s-u"
  Certificate cert;
};

// Every certificate the problem's data supports, one layer per mode.
std::vector<RenderLayer> render_layers(const ProblemFile& problem);

// The certificate intersected with the window, counterclockwise; empty for trivial certificates.
std::vector<Vector> window_polygon(const Certificate& cert, const RenderWindow& window);

// SVG 1.1 drawing of a 2-D problem; edges cut by the window are dashed.
std::string render_svg(const ProblemFile& problem, const RenderWindow& window);

}  // namespace scert
