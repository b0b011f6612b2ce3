#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsurf/numfield.hpp"

namespace tsurf {

// Planar vector with exact real coordinates.
struct Vec2 {
    RealCyc x, y;

    Vec2() = default;
    Vec2(RealCyc x_, RealCyc y_) : x(std::move(x_)), y(std::move(y_)) {}
    static Vec2 from_complex(const CycNum& z, int order);
    CycNum to_complex() const;

    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator*(const RealCyc& s, const Vec2& v) { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

inline RealCyc cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline RealCyc dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline RealCyc norm2(const Vec2& a) { return dot(a, a); }
int orient(const Vec2& a, const Vec2& b);  // sign of cross(a, b)

// 2x2 real matrix acting on C = R^2.
struct Mat2 {
    RealCyc a{1L}, b{0L}, c{0L}, d{1L};

    static Mat2 identity() { return {}; }
    static Mat2 diag(const RealCyc& x, const RealCyc& y) { return {x, 0L, 0L, y}; }
    // rotation by 2 pi p / q
    static Mat2 rotation(long p, long q);

    RealCyc det() const { return a * d - b * c; }
    RealCyc trace() const { return a + d; }
    Mat2 inverse() const;
    Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    // A z = alpha z + beta conj(z)
    std::pair<CycNum, CycNum> complex_form() const;
    Mat2 reduced() const { return {a.reduced(), b.reduced(), c.reduced(), d.reduced()}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y)
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
    std::string to_string() const;
};

struct EdgeRef {
    int poly = 0;
    int edge = 0;
    friend bool operator==(const EdgeRef& x, const EdgeRef& y)
    {
        return x.poly == y.poly && x.edge == y.edge;
    }
    friend bool operator!=(const EdgeRef& x, const EdgeRef& y) { return !(x == y); }
    friend bool operator<(const EdgeRef& x, const EdgeRef& y)
    {
        return x.poly != y.poly ? x.poly < y.poly : x.edge < y.edge;
    }
};

struct Corner {
    int poly = 0;
    int vertex = 0;
    friend bool operator==(const Corner& x, const Corner& y)
    {
        return x.poly == y.poly && x.vertex == y.vertex;
    }
};

struct Polygon {
    std::string id;
    std::vector<CycNum> vertices;
};

// Raw, unchecked surface description (as parsed or built).
struct SurfaceData {
    int order = 1;
    std::vector<Polygon> polygons;
    std::vector<std::pair<EdgeRef, EdgeRef>> gluing;
};

struct ValidationIssue {
    std::string code;  // NonConvexPolygon, GluingMismatch, Disconnected, BadConeAngle, ...
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate(const SurfaceData& data);

struct VertexClass {
    std::vector<Corner> corners;  // in counter-clockwise order around the point
    int multiplicity = 1;         // cone angle / 2 pi
};

struct SurfaceInvariants {
    int genus = 0;
    std::vector<std::pair<int, int>> cone_points;  // (vertex class, multiplicity)
    std::vector<int> zero_orders;                  // m - 1 for every class with m >= 2
    RealCyc area;
    int euler_characteristic = 0;
    int vertices = 0, edges = 0, faces = 0;
};

/*
 * A validated translation surface.  Every instance has passed validate();
 * vertex classes, planar coordinates and edge vectors are cached on
 * construction and the object never changes afterwards.
 */
class TranslationSurface {
public:
    // throws Error("InvalidSurface") listing the issues
    static TranslationSurface make(SurfaceData data);

    const SurfaceData& data() const { return *data_; }
    int order() const { return data_->order; }
    // order of the field holding real and imaginary parts of all coordinates
    int coord_order() const { return cache_->coord_order; }
    int num_polygons() const { return static_cast<int>(data_->polygons.size()); }
    const Polygon& polygon(int p) const { return data_->polygons[p]; }
    int size(int p) const { return static_cast<int>(data_->polygons[p].vertices.size()); }
    int polygon_index(const std::string& id) const;

    EdgeRef glued(EdgeRef e) const { return cache_->glue[e.poly][e.edge]; }
    const Vec2& vertex(int p, int j) const;
    Vec2 edge_vector(EdgeRef e) const;
    CycNum edge_holonomy(EdgeRef e) const;
    // the representative of the glued pair containing e (lexicographically smaller)
    EdgeRef canonical(EdgeRef e) const { return std::min(e, glued(e)); }
    std::vector<EdgeRef> edge_pairs() const;  // canonical representatives, sorted

    const std::vector<VertexClass>& vertex_classes() const { return cache_->classes; }
    int vertex_class(int p, int j) const { return cache_->corner_class[p][j]; }
    // next corner counter-clockwise around the same point
    Corner next_ccw(Corner c) const;

    const SurfaceInvariants& invariants() const { return cache_->inv; }
    RealCyc area() const { return cache_->inv.area; }
    int genus() const { return cache_->inv.genus; }

private:
    struct Cache {
        int coord_order = 4;
        std::vector<std::vector<EdgeRef>> glue;
        std::vector<std::vector<Vec2>> verts;
        std::vector<VertexClass> classes;
        std::vector<std::vector<int>> corner_class;
        SurfaceInvariants inv;
    };
    std::shared_ptr<const SurfaceData> data_;
    std::shared_ptr<const Cache> cache_;
};

SurfaceInvariants invariants(const TranslationSurface& s);

// d unit squares; permutations are 0-based
TranslationSurface build_origami(const std::vector<int>& h, const std::vector<int>& v);
TranslationSurface build_2ngon(int n);
TranslationSurface build_double_ngon(int n);
TranslationSurface build_wiman(int g, int k);

enum class BilliardMode {
    Literal,   // one copy per group element
    Quotient,  // copies differing by a translation symmetry of P are identified
};
struct BilliardGroupElement {
    CycNum u;           // z -> u z or z -> u conj(z)
    bool flip = false;  // true when the map reverses orientation
};
std::vector<BilliardGroupElement> billiard_group(const Polygon& p, int order);
TranslationSurface build_billiard(const Polygon& p, int order,
                                  BilliardMode mode = BilliardMode::Literal);
// isosceles triangle (0, zeta_2n^-k, zeta_2n^k) and its right half
Polygon wiman_triangle(int g, int k);
Polygon wiman_half_triangle(int g, int k);

TranslationSurface act(const TranslationSurface& s, const Mat2& A);

// double-precision copy for drawing; never fed back into exact code
struct FloatSurface {
    std::vector<std::string> ids;
    std::vector<std::vector<std::complex<double>>> vertices;
    bool inexact = true;
};
FloatSurface act_float(const TranslationSurface& s, double a, double b, double c, double d);

}  // namespace tsurf
