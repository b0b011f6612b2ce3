#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "tsurf/surface.hpp"

using namespace tsurf;

namespace {

Polygon square(const std::string& id)
{
    return {id, {CycNum(0L), CycNum(1L), CycNum(1L) + CycNum::i(), CycNum::i()}};
}

void check_against_walk(const TranslationSurface& s)
{
    auto w = oracle::corner_walk(s.data());
    const auto& inv = s.invariants();
    CHECK(inv.genus == w.genus());
    auto z = inv.zero_orders;
    std::sort(z.begin(), z.end());
    CHECK(z == w.zero_orders());
    CHECK(inv.vertices == w.vertices);
    CHECK(inv.edges == w.edges);
    CHECK(inv.faces == w.faces);
    CHECK(std::abs(inv.area.to_double() - oracle::area(s.data())) < 1e-9);
    int total = 0;
    for (int zo : inv.zero_orders)
        total += zo;
    CHECK(total == 2 * inv.genus - 2);
}

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("torus from a glued square")
{
    SurfaceData d;
    d.order = 4;
    d.polygons = {square("Q")};
    d.gluing = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
    CHECK(validate(d).ok());
    auto s = TranslationSurface::make(d);
    CHECK(s.vertex_classes().size() == 1);
    CHECK(s.vertex_classes()[0].multiplicity == 1);
    CHECK(s.genus() == 1);
    CHECK(s.area() == RealCyc(1L));
    CHECK(s.invariants().zero_orders.empty());
}

TEST_CASE("validation failures")
{
    SurfaceData d;
    d.order = 4;
    d.polygons = {square("Q")};
    d.gluing = {{{0, 3}, {0, 2}}, {{0, 0}, {0, 1}}};
    auto r = validate(d);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues.front().code == "GluingMismatch");
    CHECK_THROWS_AS(TranslationSurface::make(d), Error);

    SurfaceData e;
    e.order = 4;
    e.polygons = {square("Q")};
    e.gluing = {{{0, 0}, {0, 2}}};
    auto re = validate(e);
    REQUIRE_FALSE(re.ok());
    CHECK(re.issues.front().code == "GluingNotInvolution");

    SurfaceData f;
    f.order = 4;
    f.polygons = {{"N", {CycNum(0L), CycNum(2L), CycNum(1L) + CycNum::i() / CycNum(4L), CycNum(2L) * CycNum::i()}}};
    f.gluing = {};
    bool nonconvex = false;
    for (const auto& is : validate(f).issues)
        nonconvex |= is.code == "NonConvexPolygon";
    CHECK(nonconvex);

    SurfaceData g;
    g.order = 4;
    g.polygons = {square("A"), square("B")};
    g.gluing = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}, {{1, 0}, {1, 2}}, {{1, 1}, {1, 3}}};
    bool disconnected = false;
    for (const auto& is : validate(g).issues)
        disconnected |= is.code == "Disconnected";
    CHECK(disconnected);
}

TEST_CASE("origamis")
{
    auto t = build_origami({0}, {0});
    CHECK(t.genus() == 1);
    CHECK(t.invariants().zero_orders.empty());

    auto L = build_origami({1, 0, 2}, {2, 1, 0});
    CHECK(L.genus() == 2);
    CHECK(L.invariants().zero_orders == std::vector<int>{2});
    auto o = oracle::origami({1, 0, 2}, {2, 1, 0});
    CHECK(o.genus == 2);
    check_against_walk(L);

    auto cyl = build_origami({1, 0}, {0, 1});
    CHECK(cyl.genus() == 1);
    CHECK(cyl.area() == RealCyc(2L));

    CHECK_THROWS_AS(build_origami({1, 0}, {0}), Error);
    CHECK_THROWS_AS(build_origami({0, 1}, {0, 1}), Error);
}

TEST_CASE("regular 2n-gons")
{
    auto s5 = build_2ngon(5);
    CHECK(s5.genus() == 2);
    CHECK(sorted(s5.invariants().zero_orders) == std::vector<int>{1, 1});
    CHECK(s5.vertex_classes().size() == 2);
    check_against_walk(s5);
    CHECK(build_2ngon(3).genus() == 1);
    auto s7 = build_2ngon(7);
    CHECK(s7.genus() == 3);
    CHECK(sorted(s7.invariants().zero_orders) == std::vector<int>{2, 2});
    check_against_walk(s7);
    check_against_walk(build_2ngon(9));
    CHECK_THROWS_AS(build_2ngon(4), Error);
}

TEST_CASE("double n-gons")
{
    auto d5 = build_double_ngon(5);
    CHECK(d5.genus() == 2);
    CHECK(d5.invariants().zero_orders == std::vector<int>{2});
    CHECK(d5.invariants().vertices == 1);
    CHECK(d5.invariants().edges == 5);
    CHECK(d5.invariants().faces == 2);
    CHECK(d5.vertex_classes()[0].multiplicity == 3);
    check_against_walk(d5);
    auto d7 = build_double_ngon(7);
    CHECK(d7.genus() == 3);
    CHECK(d7.invariants().zero_orders == std::vector<int>{4});
    CHECK(build_double_ngon(9).genus() == 4);
    check_against_walk(build_double_ngon(9));
}

TEST_CASE("Wiman surfaces")
{
    auto w21 = build_wiman(2, 1);
    auto d5 = build_double_ngon(5);
    CHECK(w21.genus() == d5.genus());
    CHECK(sorted(w21.invariants().zero_orders) == sorted(d5.invariants().zero_orders));
    CHECK(w21.area() == RealCyc(5L) * sin2pi(1, 5));

    auto w22 = build_wiman(2, 2);
    CHECK(w22.genus() == 2);
    CHECK(w22.area() == RealCyc(5L) * sin2pi(2, 5));

    auto w32 = build_wiman(3, 2);
    CHECK(w32.genus() == 3);
    int total = 0;
    for (int z : w32.invariants().zero_orders)
        total += z;
    CHECK(total == 4);
    for (int g = 2; g <= 5; ++g)
        for (int k = 1; k <= g; ++k)
            check_against_walk(build_wiman(g, k));
    CHECK_THROWS_AS(build_wiman(3, 4), Error);
}

TEST_CASE("billiards")
{
    // right triangle with angles pi/2, pi/5, 3 pi/10
    Polygon half = wiman_half_triangle(2, 1);
    auto b = build_billiard(half, 10);
    CHECK(b.genus() == 2);
    SurfaceData hd;
    hd.polygons = {half};
    CHECK(b.num_polygons() == 20);
    CHECK(std::abs(b.area().to_double() - 20 * std::abs(oracle::area(hd))) < 1e-9);

    Polygon sq = square("Q");
    auto t = build_billiard(sq, 4);
    CHECK(t.num_polygons() == 4);
    CHECK(t.genus() == 1);

    auto w = build_wiman(2, 1);
    auto q = build_billiard(wiman_triangle(2, 1), 10, BilliardMode::Quotient);
    CHECK(q.genus() == w.genus());
    CHECK(sorted(q.invariants().zero_orders) == sorted(w.invariants().zero_orders));
    CHECK(q.area() == w.area());
    check_against_walk(q);
}

TEST_CASE("SL2 action")
{
    auto t = build_origami({0}, {0});
    auto same = act(t, Mat2::identity());
    CHECK(same.data().polygons.size() == t.data().polygons.size());
    for (int j = 0; j < 4; ++j)
        CHECK(same.vertex(0, j) == t.vertex(0, j));
    auto st = act(t, Mat2::diag(RealCyc(2L), RealCyc(Rational(1, 2))));
    CHECK(st.genus() == 1);
    CHECK(st.area() == RealCyc(1L));

    auto s = build_2ngon(5);
    auto r = act(s, Mat2::rotation(1, 10));
    CHECK(r.area() == s.area());
    CHECK(r.genus() == s.genus());
    CHECK(sorted(r.invariants().zero_orders) == sorted(s.invariants().zero_orders));

    CHECK_THROWS_AS(act(t, Mat2::diag(RealCyc(-1L), RealCyc(1L))), Error);
}

TEST_CASE("polygon lookup")
{
    auto s = build_double_ngon(5);
    CHECK(s.polygon_index("P1") == 1);
    CHECK_THROWS_AS(s.polygon_index("nope"), Error);
}
