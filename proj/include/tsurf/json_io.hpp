#pragma once

#include <string>

#include "json.hpp"

#include "tsurf/flow.hpp"
#include "tsurf/homology.hpp"
#include "tsurf/surface.hpp"
#include "tsurf/veech.hpp"

namespace tsurf {

using Json = nlohmann::ordered_json;

Json to_json(const CycNum& x);
Json to_json(const RealCyc& x);  // {"exact": CycNum, "double": value}
Json to_json(const Mat2& m);
Json to_json(const IntPoly& p);
Json to_json(const IMat& m);
Json to_json(const TraceFieldReport& r);
Json to_json(const SaddleConnection& sc, const TranslationSurface& s);
Json to_json(const Cylinder& c, const TranslationSurface& s);
Json to_json(const Decomposition& d, const TranslationSurface& s);

CycNum cyc_from_json(const Json& j);

// {"order", "polygons": [{"id", "vertices"}], "gluing": [[[id, edge], [id, edge]]]}
Json surface_to_json(const SurfaceData& s);
Json surface_to_json(const TranslationSurface& s, bool with_metadata = true);
SurfaceData surface_from_json(const Json& j);
TranslationSurface load_surface(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace tsurf
