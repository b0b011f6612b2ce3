#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsurf/surface.hpp"

namespace tsurf {

constexpr int kDefaultCap = 10000;

// Projective direction, first nonzero component equal to 1.
struct Direction {
    Vec2 v;
    static Direction of(const Vec2& raw);
    static Direction vertical() { return of({0L, 1L}); }
    static Direction horizontal() { return of({1L, 0L}); }
};

struct SaddleConnection {
    int start_class = -1;
    int end_class = -1;
    Corner start;  // polygon and vertex the connection leaves from
    Corner end;    // polygon and vertex it arrives at
    CycNum holonomy;
    std::vector<EdgeRef> crossings;  // edges left through, in order
};

struct Cylinder {
    Direction direction;
    // raw direction vector d used for the computation; quantities marked
    // "scaled" are multiplied by |d|, which is 1 for the axis directions
    Vec2 d;
    RealCyc scaled_circumference;
    RealCyc scaled_width;
    std::optional<RealCyc> circumference;  // present when |d| lies in Q
    std::optional<RealCyc> width;
    RealCyc modulus;
    RealCyc area;
    double circumference_d = 0, width_d = 0, modulus_d = 0;
    std::vector<EdgeRef> core;  // exit edges crossed by the core curve, in order
    std::vector<SaddleConnection> bottom, top;
    std::vector<std::pair<int, int>> strips;  // (polygon, strip index)
    // bounds of cross(d, p) over each strip, parallel to strips
    std::vector<std::pair<RealCyc, RealCyc>> strip_levels;
};

enum class DecompStatus { Ok, NotJS, Undetermined };

struct Decomposition {
    DecompStatus status = DecompStatus::Ok;
    Direction direction;
    std::vector<Cylinder> cylinders;
    std::string message;
    bool ok() const { return status == DecompStatus::Ok; }
};

Decomposition cylinder_decomposition(const TranslationSurface& s, const Vec2& d,
                                     int cap = kDefaultCap);

enum class TraceKind { HitsCone, Closes, Undetermined };

struct TraceStart {
    bool at_corner = true;
    Corner corner;  // when at_corner
    int poly = 0;   // otherwise: polygon and point inside it
    Vec2 point;
    static TraceStart from_corner(Corner c) { return {true, c, c.poly, {}}; }
    static TraceStart interior(int poly, Vec2 p) { return {false, {}, poly, std::move(p)}; }
};

struct TraceOutcome {
    TraceKind kind = TraceKind::Undetermined;
    CycNum displacement;  // hit: holonomy to the cone point; closes: return displacement
    std::vector<EdgeRef> crossings;
    Corner end;  // reached vertex when HitsCone
    int end_class = -1;
};

TraceOutcome trace_ray(const TranslationSurface& s, const TraceStart& from, const Vec2& d,
                       int cap = kDefaultCap);

std::vector<SaddleConnection> saddle_connections(const TranslationSurface& s, const RealCyc& bound);
// sum of the in-polygon displacements along the crossing list, or nullopt
// when the list is not realised by a straight segment between vertices
std::optional<CycNum> retrace(const TranslationSurface& s, const SaddleConnection& sc);

struct Commensurability {
    bool ok = false;
    RealCyc mu;
    std::vector<long> m;
    RealCyc ratio;  // offending ratio when !ok
};

Commensurability commensurate_moduli(const std::vector<RealCyc>& moduli);
Commensurability commensurate_moduli(const std::vector<Cylinder>& cyls);

}  // namespace tsurf
