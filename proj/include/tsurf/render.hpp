#pragma once

#include <string>

#include "tsurf/flow.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

// Polygons at their own coordinates, longest bounding-box side scaled to 800
// units; cylinders shaded by index when a decomposition is given.
std::string render_svg(const TranslationSurface& s, const Decomposition* dec = nullptr);
void render_svg(const TranslationSurface& s, const Decomposition* dec, const std::string& path);

}  // namespace tsurf
