#pragma once

#include <string>
#include <vector>

#include "psc/decorated_graph.hpp"
#include "psc/kasteleyn.hpp"

namespace psc {

struct RenderOptions {
  const Orientation* orientation = nullptr;     // draw edge arrows when set
  std::vector<std::vector<int>> paths;          // corner walks drawn on top
};

// Deterministic standalone SVG of the decorated graph: diamonds, l-edges,
// L-links, sigma corners, optional Kasteleyn arrows and path overlays.
std::string render_svg(const DecoratedGraph& g, const RenderOptions& opts = {});

}  // namespace psc
