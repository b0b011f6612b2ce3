#include "tsurf/render.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tsurf {

namespace {

using P = std::array<double, 2>;

constexpr std::array<const char*, 8> kPalette = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                                 "#59a14f", "#edc948", "#b07aa1", "#9c755f"};
constexpr double kSide = 800.0;
constexpr double kMargin = 20.0;

std::vector<P> clip(const std::vector<P>& poly, P d, double c, double sign)
{
    // keep points with sign * (cross(d, x) - c) >= 0
    auto f = [&](const P& x) { return sign * (d[0] * x[1] - d[1] * x[0] - c); };
    std::vector<P> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const P& a = poly[i];
        const P& b = poly[(i + 1) % n];
        double fa = f(a), fb = f(b);
        if (fa >= 0)
            out.push_back(a);
        if ((fa >= 0) != (fb >= 0)) {
            double t = fa / (fa - fb);
            out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
        }
    }
    return out;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
}

}  // namespace

std::string render_svg(const TranslationSurface& s, const Decomposition* dec)
{
    std::vector<std::vector<P>> polys;
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (int p = 0; p < s.num_polygons(); ++p) {
        std::vector<P> pts;
        for (int j = 0; j < s.size(p); ++j) {
            const Vec2& v = s.vertex(p, j);
            P q{v.x.to_double(), v.y.to_double()};
            x0 = std::min(x0, q[0]);
            x1 = std::max(x1, q[0]);
            y0 = std::min(y0, q[1]);
            y1 = std::max(y1, q[1]);
            pts.push_back(q);
        }
        polys.push_back(std::move(pts));
    }
    const double scale = kSide / std::max({x1 - x0, y1 - y0, 1e-12});
    const double W = (x1 - x0) * scale + 2 * kMargin, H = (y1 - y0) * scale + 2 * kMargin;
    auto sx = [&](double x) { return fmt((x - x0) * scale + kMargin); };
    auto sy = [&](double y) { return fmt((y1 - y) * scale + kMargin); };
    auto path = [&](const std::vector<P>& pts) {
        std::string d;
        for (const auto& q : pts)
            d += (d.empty() ? "" : " ") + sx(q[0]) + "," + sy(q[1]);
        return d;
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
       << "\" viewBox=\"0 0 " << fmt(W) << " " << fmt(H) << "\">\n";
    os << "<g id=\"polygons\">\n";
    for (std::size_t p = 0; p < polys.size(); ++p)
        os << "<polygon points=\"" << path(polys[p])
           << "\" fill=\"#f4f4f4\" stroke=\"#333333\" stroke-width=\"1\"><title>"
           << s.polygon(static_cast<int>(p)).id << "</title></polygon>\n";
    os << "</g>\n";
    if (dec && dec->ok()) {
        os << "<g id=\"cylinders\">\n";
        for (std::size_t c = 0; c < dec->cylinders.size(); ++c) {
            const Cylinder& cy = dec->cylinders[c];
            P d{cy.d.x.to_double(), cy.d.y.to_double()};
            for (std::size_t k = 0; k < cy.strips.size(); ++k) {
                const int p = cy.strips[k].first;
                auto band = clip(polys[p], d, cy.strip_levels[k].first.to_double(), 1.0);
                band = clip(band, d, cy.strip_levels[k].second.to_double(), -1.0);
                if (band.size() < 3)
                    continue;
                os << "<polygon points=\"" << path(band) << "\" fill=\"" << kPalette[c % kPalette.size()]
                   << "\" fill-opacity=\"0.55\" stroke=\"none\" class=\"cyl" << c << "\"/>\n";
            }
        }
        os << "</g>\n";
    }
    os << "<g id=\"cones\">\n";
    for (int p = 0; p < s.num_polygons(); ++p)
        for (int j = 0; j < s.size(p); ++j) {
            int cls = s.vertex_class(p, j);
            if (s.vertex_classes()[cls].multiplicity < 2)
                continue;
            os << "<circle cx=\"" << sx(polys[p][j][0]) << "\" cy=\"" << sy(polys[p][j][1])
               << "\" r=\"4\" fill=\"" << kPalette[cls % kPalette.size()] << "\" stroke=\"#000000\"/>\n";
        }
    os << "</g>\n</svg>\n";
    return os.str();
}

void render_svg(const TranslationSurface& s, const Decomposition* dec, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("IOError", "cannot write " + path);
    out << render_svg(s, dec);
    if (!out)
        throw Error("IOError", "write failed for " + path);
}

}  // namespace tsurf
