#include "tsurf/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tsurf {

namespace {

[[noreturn]] void bad(const std::string& m) { throw Error("ParseError", m); }

Json edge_json(const TranslationSurface& s, EdgeRef e)
{
    return Json::array({s.polygon(e.poly).id, e.edge});
}

Json corner_json(const TranslationSurface& s, Corner c)
{
    return Json::array({s.polygon(c.poly).id, c.vertex});
}

}  // namespace

Json to_json(const CycNum& x)
{
    Json j;
    j["order"] = x.order();
    Json cs = Json::array();
    for (const auto& c : x.coeffs())
        cs.push_back(rational_string(c));
    j["coeffs"] = cs;
    return j;
}

Json to_json(const RealCyc& x)
{
    Json j;
    j["exact"] = to_json(x.value().reduced());
    j["double"] = x.to_double();
    return j;
}

Json to_json(const Mat2& m)
{
    Json j;
    const Mat2 r = m.reduced();
    j["exact"] = Json::array({Json::array({to_json(r.a.value()), to_json(r.b.value())}),
                              Json::array({to_json(r.c.value()), to_json(r.d.value())})});
    j["double"] = Json::array({Json::array({r.a.to_double(), r.b.to_double()}),
                               Json::array({r.c.to_double(), r.d.to_double()})});
    return j;
}

Json to_json(const IntPoly& p)
{
    Json a = Json::array();
    for (const auto& c : p) {
        if (c.fits_slong_p())
            a.push_back(c.get_si());
        else
            a.push_back(c.get_str());
    }
    return a;
}

Json to_json(const IMat& m)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        a.push_back(row);
    }
    return a;
}

Json to_json(const TraceFieldReport& r)
{
    Json j;
    j["degree"] = r.degree;
    j["min_poly"] = to_json(r.min_poly);
    j["primitive"] = to_json(r.primitive);
    j["description"] = r.generator_description;
    return j;
}

Json to_json(const SaddleConnection& sc, const TranslationSurface& s)
{
    Json j;
    j["start"] = corner_json(s, sc.start);
    j["end"] = corner_json(s, sc.end);
    j["start_class"] = sc.start_class;
    j["end_class"] = sc.end_class;
    j["holonomy"] = to_json(sc.holonomy);
    auto z = sc.holonomy.to_complex();
    j["holonomy_double"] = Json::array({z.real(), z.imag()});
    Json cr = Json::array();
    for (const auto& e : sc.crossings)
        cr.push_back(edge_json(s, e));
    j["crossings"] = cr;
    return j;
}

Json to_json(const Cylinder& c, const TranslationSurface& s)
{
    Json j;
    j["modulus"] = to_json(c.modulus);
    j["area"] = to_json(c.area);
    j["scaled_circumference"] = to_json(c.scaled_circumference);
    j["scaled_width"] = to_json(c.scaled_width);
    if (c.circumference)
        j["circumference"] = to_json(*c.circumference);
    if (c.width)
        j["width"] = to_json(*c.width);
    j["circumference_double"] = c.circumference_d;
    j["width_double"] = c.width_d;
    j["modulus_double"] = c.modulus_d;
    Json core = Json::array();
    for (const auto& e : c.core)
        core.push_back(edge_json(s, e));
    j["core"] = core;
    Json bottom = Json::array(), top = Json::array();
    for (const auto& sc : c.bottom)
        bottom.push_back(to_json(sc, s));
    for (const auto& sc : c.top)
        top.push_back(to_json(sc, s));
    j["bottom"] = bottom;
    j["top"] = top;
    return j;
}

Json to_json(const Decomposition& d, const TranslationSurface& s)
{
    Json j;
    j["status"] = d.status == DecompStatus::Ok      ? "ok"
                  : d.status == DecompStatus::NotJS ? "not_jenkins_strebel"
                                                    : "undetermined";
    j["direction"] = Json::array({to_json(d.direction.v.x), to_json(d.direction.v.y)});
    if (!d.message.empty())
        j["message"] = d.message;
    Json cs = Json::array();
    for (const auto& c : d.cylinders)
        cs.push_back(to_json(c, s));
    j["cylinders"] = cs;
    return j;
}

CycNum cyc_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        bad("number needs \"order\" and \"coeffs\"");
    if (!j["order"].is_number_integer() || j["order"].get<long>() < 1)
        bad("order must be a positive integer");
    const long order = j["order"].get<long>();
    if (order > join_cap())
        throw Error("FieldJoinOverflow", "order " + std::to_string(order) + " exceeds cap");
    if (!j["coeffs"].is_array())
        bad("coeffs must be an array");
    std::vector<Rational> cs;
    for (const auto& c : j["coeffs"]) {
        if (c.is_string())
            cs.push_back(parse_rational(c.get<std::string>()));
        else if (c.is_number_integer())
            cs.push_back(Rational(c.get<long>()));
        else
            bad("coefficient must be a rational string");
    }
    if (static_cast<int>(cs.size()) > euler_phi(static_cast<int>(order)))
        bad("too many coefficients for order " + std::to_string(order));
    return CycNum(static_cast<int>(order), cs);
}

Json surface_to_json(const SurfaceData& s)
{
    Json j;
    j["order"] = s.order;
    Json ps = Json::array();
    for (const auto& p : s.polygons) {
        Json pj;
        pj["id"] = p.id;
        Json vs = Json::array();
        for (const auto& v : p.vertices)
            vs.push_back(to_json(v));
        pj["vertices"] = vs;
        ps.push_back(pj);
    }
    j["polygons"] = ps;
    Json gl = Json::array();
    for (const auto& [a, b] : s.gluing)
        gl.push_back(Json::array({Json::array({s.polygons.at(a.poly).id, a.edge}),
                                  Json::array({s.polygons.at(b.poly).id, b.edge})}));
    j["gluing"] = gl;
    return j;
}

Json surface_to_json(const TranslationSurface& s, bool with_metadata)
{
    Json j = surface_to_json(s.data());
    if (with_metadata) {
        const auto& inv = s.invariants();
        Json m;
        m["genus"] = inv.genus;
        m["zero_orders"] = inv.zero_orders;
        m["area"] = to_json(inv.area);
        m["vertices"] = inv.vertices;
        m["edges"] = inv.edges;
        m["faces"] = inv.faces;
        j["metadata"] = m;
    }
    return j;
}

SurfaceData surface_from_json(const Json& j)
{
    if (!j.is_object())
        bad("surface must be an object");
    for (const char* key : {"order", "polygons", "gluing"})
        if (!j.contains(key))
            bad(std::string("missing key \"") + key + "\"");
    SurfaceData s;
    if (!j["order"].is_number_integer())
        bad("order must be an integer");
    s.order = j["order"].get<int>();
    if (!j["polygons"].is_array() || !j["gluing"].is_array())
        bad("polygons and gluing must be arrays");
    std::map<std::string, int> ids;
    for (const auto& pj : j["polygons"]) {
        if (!pj.is_object() || !pj.contains("id") || !pj.contains("vertices") ||
            !pj["id"].is_string() || !pj["vertices"].is_array())
            bad("polygon needs string \"id\" and array \"vertices\"");
        Polygon p;
        p.id = pj["id"].get<std::string>();
        for (const auto& v : pj["vertices"])
            p.vertices.push_back(cyc_from_json(v));
        ids.emplace(p.id, static_cast<int>(s.polygons.size()));
        s.polygons.push_back(std::move(p));
    }
    auto ref = [&](const Json& e) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer())
            bad("edge reference must be [id, index]");
        auto it = ids.find(e[0].get<std::string>());
        // unknown ids become out-of-range refs so validate() reports BadEdgeRef
        int poly = it == ids.end() ? -1 : it->second;
        return EdgeRef{poly, e[1].get<int>()};
    };
    for (const auto& g : j["gluing"]) {
        if (!g.is_array() || g.size() != 2)
            bad("gluing entry must be a pair");
        s.gluing.push_back({ref(g[0]), ref(g[1])});
    }
    return s;
}

TranslationSurface load_surface(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("IOError", "cannot read " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        bad(e.what());
    }
    return TranslationSurface::make(surface_from_json(j));
}

void save_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error("IOError", "cannot write " + path);
    out << text;
    if (!out)
        throw Error("IOError", "write failed for " + path);
}

}  // namespace tsurf
