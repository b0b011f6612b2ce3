#include "tsurf/veech.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <sstream>

#include "tsurf/poly.hpp"

namespace tsurf {

namespace {

int mod(int a, int k) { return ((a % k) + k) % k; }

Vec2 reduce(const Vec2& v) { return {v.x.reduced(), v.y.reduced()}; }

}  // namespace

EdgeRef AffineAuto::edge_image(const TranslationSurface& s, EdgeRef e) const
{
    int q = polygon_map[e.poly];
    return {q, mod(e.edge + shift[e.poly], s.size(q))};
}

std::vector<EdgeRef> AffineAuto::edge_map(const TranslationSurface& s) const
{
    std::vector<EdgeRef> out;
    for (int p = 0; p < s.num_polygons(); ++p)
        for (int j = 0; j < s.size(p); ++j)
            out.push_back(edge_image(s, {p, j}));
    return out;
}

bool verify_auto(const TranslationSurface& s, const AffineAuto& f, std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    const int np = s.num_polygons();
    if (static_cast<int>(f.polygon_map.size()) != np || static_cast<int>(f.shift.size()) != np ||
        static_cast<int>(f.offsets.size()) != np)
        return fail("size mismatch");
    if (f.linear.det() != RealCyc(1L))
        return fail("determinant is not 1");
    std::vector<bool> hit(np, false);
    for (int p = 0; p < np; ++p) {
        int q = f.polygon_map[p];
        if (q < 0 || q >= np || hit[q])
            return fail("polygon map is not a bijection");
        hit[q] = true;
        if (s.size(p) != s.size(q))
            return fail("polygon sizes differ");
        for (int j = 0; j < s.size(p); ++j) {
            Vec2 img = f.linear.apply(s.vertex(p, j)) + f.offsets[p];
            if (img != s.vertex(q, j + f.shift[p]))
                return fail("vertex equation fails at " + s.polygon(p).id);
        }
    }
    for (int p = 0; p < np; ++p)
        for (int j = 0; j < s.size(p); ++j) {
            EdgeRef e{p, j};
            if (f.edge_image(s, s.glued(e)) != s.glued(f.edge_image(s, e)))
                return fail("edge map does not commute with the gluing");
        }
    return true;
}

Mat2 parabolic_matrix(const Vec2& d, const RealCyc& mu)
{
    RealCyc k = (mu / norm2(d)).reduced();
    Mat2 m;
    m.a = (RealCyc(1L) - k * d.x * d.y).reduced();
    m.b = (k * d.x * d.x).reduced();
    m.c = (-(k * d.y * d.y)).reduced();
    m.d = (RealCyc(1L) + k * d.x * d.y).reduced();
    return m;
}

ParabolicResult parabolic_element(const TranslationSurface& s, const Vec2& d, int cap)
{
    ParabolicResult out;
    Decomposition dec = cylinder_decomposition(s, d, cap);
    out.twist.d = d;
    if (dec.status == DecompStatus::NotJS) {
        out.status = ParabolicStatus::NotJS;
        out.message = dec.message;
        return out;
    }
    if (dec.status == DecompStatus::Undetermined) {
        out.status = ParabolicStatus::Undetermined;
        out.message = dec.message;
        return out;
    }
    Commensurability c = commensurate_moduli(dec.cylinders);
    out.twist.cylinders = std::move(dec.cylinders);
    if (!c.ok) {
        out.status = ParabolicStatus::Incommensurable;
        out.message = "moduli ratio " + c.ratio.value().to_string() + " is irrational";
        return out;
    }
    out.twist.powers = c.m;
    out.twist.mu = c.mu;
    out.matrix = parabolic_matrix(d, c.mu);
    return out;
}

MultitwistRecord multitwist_auto(const TranslationSurface&, const MulticurveTwistData& twist)
{
    MultitwistRecord r;
    r.d = twist.d;
    for (const auto& c : twist.cylinders)
        r.cores.push_back(c.core);
    r.powers = twist.powers;
    r.linear = parabolic_matrix(twist.d, twist.mu);
    return r;
}

std::vector<Mat2> default_rotations(const TranslationSurface& s)
{
    long n = s.order();
    long L = n % 2 == 0 ? n : 2 * n;
    std::vector<Mat2> out;
    for (long j = 1; j < L; ++j)
        out.push_back(Mat2::rotation(j, L));
    return out;
}

namespace {

std::optional<AffineAuto> extend(const TranslationSurface& s, const Mat2& A,
                                 const std::vector<std::vector<Vec2>>& img_edges, int q0, int r0)
{
    const int np = s.num_polygons();
    AffineAuto f;
    f.linear = A;
    f.polygon_map.assign(np, -1);
    f.shift.assign(np, 0);
    std::vector<bool> used(np, false);
    f.polygon_map[0] = q0;
    f.shift[0] = r0;
    used[q0] = true;
    std::deque<int> todo{0};
    while (!todo.empty()) {
        int p = todo.front();
        todo.pop_front();
        int q = f.polygon_map[p];
        int k = s.size(p);
        for (int j = 0; j < k; ++j)
            if (img_edges[p][j] != s.edge_vector({q, mod(j + f.shift[p], k)}))
                return std::nullopt;
        for (int j = 0; j < k; ++j) {
            EdgeRef src = s.glued({p, j});
            EdgeRef dst = s.glued({q, mod(j + f.shift[p], k)});
            if (s.size(src.poly) != s.size(dst.poly))
                return std::nullopt;
            int sh = mod(dst.edge - src.edge, s.size(dst.poly));
            if (f.polygon_map[src.poly] < 0) {
                if (used[dst.poly])
                    return std::nullopt;
                f.polygon_map[src.poly] = dst.poly;
                f.shift[src.poly] = sh;
                used[dst.poly] = true;
                todo.push_back(src.poly);
            } else if (f.polygon_map[src.poly] != dst.poly || f.shift[src.poly] != sh) {
                return std::nullopt;
            }
        }
    }
    for (int p = 0; p < np; ++p) {
        if (f.polygon_map[p] < 0)
            return std::nullopt;
        f.offsets.push_back(
            reduce(s.vertex(f.polygon_map[p], f.shift[p]) - A.apply(s.vertex(p, 0))));
    }
    return f;
}

}  // namespace

std::vector<AffineAuto> symmetry_search(const TranslationSurface& s,
                                        const std::vector<Mat2>& candidates)
{
    std::vector<AffineAuto> out;
    const int np = s.num_polygons();
    for (const Mat2& A : candidates) {
        if (A.det() != RealCyc(1L))
            continue;
        std::vector<std::vector<Vec2>> img(np);
        for (int p = 0; p < np; ++p)
            for (int j = 0; j < s.size(p); ++j)
                img[p].push_back(reduce(A.apply(s.edge_vector({p, j}))));
        for (int q = 0; q < np; ++q) {
            if (s.size(q) != s.size(0))
                continue;
            for (int r = 0; r < s.size(q); ++r) {
                if (img[0][0] != s.edge_vector({q, r}))
                    continue;
                if (auto f = extend(s, A, img, q, r))
                    out.push_back(std::move(*f));
            }
        }
    }
    return out;
}

std::vector<AffineAuto> symmetry_search(const TranslationSurface& s)
{
    return symmetry_search(s, default_rotations(s));
}

Classification classify(const Mat2& A)
{
    if (A.det() != RealCyc(1L))
        throw Error("NonUnitDeterminant", "det = " + A.det().value().to_string());
    Classification c;
    c.trace = A.trace().reduced();
    RealCyc disc = c.trace * c.trace - RealCyc(4L);
    int s = disc.sign();
    c.kind = s < 0 ? MatrixKind::Elliptic : s == 0 ? MatrixKind::Parabolic : MatrixKind::Hyperbolic;
    if (A.b.is_zero() && A.c.is_zero() && A.a == A.d)
        c.kind = MatrixKind::Elliptic;  // +-I
    c.trace_min_poly = min_poly(c.trace.value());
    c.eigen_poly = reciprocal_lift(c.trace_min_poly);
    if (c.kind == MatrixKind::Hyperbolic) {
        double t = c.trace.to_double();
        double l = (std::abs(t) + std::sqrt(t * t - 4.0)) / 2.0;
        c.lambda = t < 0 ? -l : l;
        c.lambda_inv = 1.0 / c.lambda;
    }
    return c;
}

std::string kind_name(MatrixKind k)
{
    switch (k) {
    case MatrixKind::Elliptic:
        return "elliptic";
    case MatrixKind::Parabolic:
        return "parabolic";
    case MatrixKind::Hyperbolic:
        return "hyperbolic";
    }
    return "";
}

Mat2 mirror(const Mat2& A) { return {A.a, -A.b, -A.c, A.d}; }

namespace {

std::string describe(const RealCyc& gen, int deg, const IntPoly& mp)
{
    if (deg == 1)
        return "Q";
    long M = gen.order();
    for (long m = 3; m <= 2 * M; ++m) {
        if ((2 * M) % m != 0 || euler_phi(static_cast<int>(m)) / 2 != deg)
            continue;
        if (in_subfield(cos2pi(1, m).value(), gen.value()))
            return "Q(cos(2pi/" + std::to_string(m) + "))";
    }
    std::ostringstream os;
    os << "Q(a), a = " << gen.to_double() << ", root of " << poly_string(mp);
    return os.str();
}

}  // namespace

TraceFieldReport trace_field(const std::vector<RealCyc>& traces)
{
    if (traces.empty())
        throw Error("BadParameter", "no traces given");
    std::vector<RealCyc> t;
    for (const auto& x : traces) {
        RealCyc r = x.reduced();
        if (r.is_rational())
            continue;
        bool dup = false;
        for (const auto& y : t)
            if (y == r) {
                dup = true;
                break;
            }
        if (!dup)
            t.push_back(r);
    }
    TraceFieldReport rep;
    if (t.empty()) {
        rep.degree = 1;
        rep.primitive = RealCyc(1L);
        rep.min_poly = {-1, 1};
        rep.generator_description = "Q";
        return rep;
    }
    auto report = [&](const RealCyc& g) {
        rep.primitive = g;
        rep.min_poly = min_poly(g.value());
        rep.degree = degree(rep.min_poly);
        rep.generator_description = describe(g, rep.degree, rep.min_poly);
        return rep;
    };
    for (const auto& g : t) {
        bool ok = true;
        for (const auto& x : t)
            if (!(x == g) && !in_subfield(x.value(), g.value())) {
                ok = false;
                break;
            }
        if (ok)
            return report(g);
    }
    std::mt19937 rng(20240601u);
    std::uniform_int_distribution<long> coef(1, 8);
    for (int attempt = 0; attempt < 64; ++attempt) {
        RealCyc g(0L);
        for (const auto& x : t)
            g += RealCyc(attempt == 0 ? 1L : coef(rng)) * x;
        g = g.reduced();
        if (g.is_rational())
            continue;
        bool ok = true;
        for (const auto& x : t)
            if (!in_subfield(x.value(), g.value())) {
                ok = false;
                break;
            }
        if (ok)
            return report(g);
    }
    throw Error("PrimitiveSearchFailed", "no primitive element after 64 attempts");
}

TraceFieldReport trace_field_from_hyperbolic(const Mat2& A)
{
    Classification c = classify(A);
    if (c.kind != MatrixKind::Hyperbolic)
        throw Error("NotHyperbolic", "matrix is " + kind_name(c.kind));
    return trace_field({c.trace});
}

bool subfield_of(const TraceFieldReport& a, const TraceFieldReport& b)
{
    return in_subfield(a.primitive.value(), b.primitive.value());
}

bool same_field(const TraceFieldReport& a, const TraceFieldReport& b)
{
    return a.degree == b.degree && subfield_of(a, b) && subfield_of(b, a);
}

RealCyc cross_ratio(const Vec2& v1, const Vec2& v2, const Vec2& v3, const Vec2& v4)
{
    return ((cross(v1, v3) * cross(v2, v4)) / (cross(v2, v3) * cross(v1, v4))).reduced();
}

TraceFieldReport cross_ratio_field(const std::vector<Direction>& slopes, int cap)
{
    std::vector<Vec2> pts;
    for (const auto& d : slopes) {
        Vec2 v = reduce(d.v);
        bool dup = false;
        for (const auto& w : pts)
            if (cross(v, w).is_zero()) {
                dup = true;
                break;
            }
        if (!dup)
            pts.push_back(v);
    }
    const int n = static_cast<int>(pts.size());
    if (n < 4)
        throw Error("TooFewSlopes", std::to_string(n) + " distinct slopes, need 4");
    std::vector<RealCyc> crs;
    int count = 0;
    for (int a = 0; a < n && count < cap; ++a)
        for (int b = a + 1; b < n && count < cap; ++b)
            for (int c = b + 1; c < n && count < cap; ++c)
                for (int d = c + 1; d < n && count < cap; ++d, ++count)
                    crs.push_back(cross_ratio(pts[a], pts[b], pts[c], pts[d]));
    return trace_field(crs);
}

Eigen::Matrix2d to_double(const Mat2& A)
{
    Eigen::Matrix2d m;
    m << A.a.to_double(), A.b.to_double(), A.c.to_double(), A.d.to_double();
    return m;
}

std::complex<double> lambda0(const Eigen::Matrix2d& A)
{
    std::complex<double> a1(A(0, 0), A(1, 0)), ai(A(0, 1), A(1, 1));
    return ai / a1;
}

std::complex<double> mu0(const Eigen::Matrix2d& A)
{
    const std::complex<double> i(0, 1);
    std::complex<double> a1(A(0, 0), A(1, 0)), ai(A(0, 1), A(1, 1));
    return (a1 + i * ai) / (a1 - i * ai);
}

std::complex<double> lambda0(const Mat2& A) { return lambda0(to_double(A)); }
std::complex<double> mu0(const Mat2& A) { return mu0(to_double(A)); }

Mat2 iota0(const Mat2& A) { return {A.d, A.b, A.c, A.a}; }

Eigen::Matrix2d iota0(const Eigen::Matrix2d& A)
{
    Eigen::Matrix2d m;
    m << A(1, 1), A(0, 1), A(1, 0), A(0, 0);
    return m;
}

std::complex<double> cayley(std::complex<double> tau)
{
    const std::complex<double> i(0, 1);
    return (i - tau) / (i + tau);
}

std::pair<double, double> cot_geodesic(double theta)
{
    if (!(theta > 0 && theta < std::numbers::pi / 2))
        throw Error("BadParameter", "angle must lie in (0, pi/2)");
    return {1.0 / std::tan(theta), 1.0 / std::tan(theta / 2)};
}

std::pair<Mat2, Mat2> wiman_generators(int g, WimanForm which)
{
    if (g < 2)
        throw Error("BadParameter", "genus must be at least 2");
    const long n = 2L * g + 1;
    // cot(pi/2n) for omega_g, cot(pi/n) for omega_1
    long q = which == WimanForm::OmegaG ? 2 * n : n;
    RealCyc c2 = (RealCyc(2L) * cot_pi(1, q)).reduced();
    Mat2 shear{1L, 0L, -c2, 1L};
    // (cos t, sin t; -sin t, cos t) with t = pi/n resp. 2 pi/n
    Mat2 rot = Mat2::rotation(-1, q).reduced();
    return {shear, rot};
}

}  // namespace tsurf

namespace tsurf {

std::vector<ParabolicResult> find_parabolics(const TranslationSurface& s, const RealCyc& bound,
                                             int max_count, int cap)
{
    std::vector<ParabolicResult> out;
    std::vector<Vec2> tried;
    for (const auto& sc : saddle_connections(s, bound)) {
        if (static_cast<int>(out.size()) >= max_count)
            break;
        Vec2 v = reduce(Vec2::from_complex(sc.holonomy, s.coord_order()));
        bool seen = false;
        for (const auto& w : tried)
            if (cross(v, w).is_zero()) {
                seen = true;
                break;
            }
        if (seen)
            continue;
        tried.push_back(v);
        ParabolicResult p = parabolic_element(s, v, cap);
        if (p.ok())
            out.push_back(std::move(p));
    }
    return out;
}

}  // namespace tsurf
