#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "oracles.hpp"
#include "tsurf/json_io.hpp"
#include "tsurf/poly.hpp"

using namespace tsurf;

namespace {

constexpr int kCases = 200;

const std::vector<int> kOrders{3, 4, 5, 7, 8, 9, 10, 12, 15};

CycNum random_cyc(std::mt19937& rng, int order)
{
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<Rational> c(euler_phi(order));
    for (auto& x : c) {
        x = Rational(num(rng), den(rng));
        x.canonicalize();
    }
    return CycNum(order, c);
}

CycNum random_cyc(std::mt19937& rng)
{
    std::uniform_int_distribution<std::size_t> pick(0, kOrders.size() - 1);
    return random_cyc(rng, kOrders[pick(rng)]);
}

RealCyc random_real(std::mt19937& rng)
{
    CycNum z = random_cyc(rng);
    return RealCyc(z + z.conj());
}

Mat2 random_int_mat(std::mt19937& rng, bool positive_det)
{
    std::uniform_int_distribution<long> e(-3, 3);
    for (;;) {
        Mat2 A{e(rng), e(rng), e(rng), e(rng)};
        const int s = A.det().sign();
        if (positive_det ? s > 0 : s != 0)
            return A;
    }
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

std::complex<double> eval_int_poly(const IntPoly& p, std::complex<double> z, double* scale)
{
    std::complex<double> v = 0;
    double s = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        v = v * z + it->get_d();
        s = s * std::abs(z) + std::abs(it->get_d());
    }
    *scale = s;
    return v;
}

std::string key(const CycNum& z) { return z.reduced().to_string(); }

IMat inverse_symplectic(const IMat& M, const IMat& J) { return -J * M.transpose() * J; }

}  // namespace

TEST_CASE("field axioms")
{
    std::mt19937 rng(1001);
    int cases = 0;
    for (; cases < 300; ++cases) {
        CycNum a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        if (!a.is_zero())
            CHECK(a.inv() * a == CycNum(1L));
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK(a - a == CycNum(0L));
    }
    CHECK(cases >= kCases);
}

TEST_CASE("real sign agrees with the embedding")
{
    std::mt19937 rng(1002);
    int decided = 0;
    for (int i = 0; i < 300; ++i) {
        RealCyc x = random_real(rng);
        ComplexBall b = embed(x.value(), 1, 64);
        if (std::abs(b.center.real()) <= b.radius)
            continue;
        CHECK(real_sign(x) == (b.center.real() > 0 ? 1 : -1));
        CHECK(x.sign() == real_sign(x));
        ++decided;
    }
    CHECK(decided >= kCases);
}

TEST_CASE("sine ratios lie in the real cyclotomic field")
{
    std::mt19937 rng(1003);
    std::uniform_int_distribution<long> qd(3, 30);
    int cases = 0;
    for (; cases < kCases; ++cases) {
        const long q = qd(rng);
        const long p = std::uniform_int_distribution<long>(1, 2 * q)(rng);
        CHECK(in_subfield(sin_ratio(p, q).value(), (RealCyc(2L) * cos2pi(1, q)).value()));
    }
    CHECK(cases >= kCases);
}

TEST_CASE("conjugate embeddings are roots of the minimal polynomial")
{
    std::mt19937 rng(1004);
    int roots = 0;
    for (int i = 0; i < kCases; ++i) {
        CycNum x = random_cyc(rng);
        IntPoly mp = min_poly(x);
        CHECK(degree(mp) == algebraic_degree(x));
        const int N = x.order();
        for (long k = 1; k < N; ++k) {
            if (std::gcd(k, static_cast<long>(N)) != 1)
                continue;
            ComplexBall b = embed(x, k, 128);
            double scale = 0;
            auto v = eval_int_poly(mp, b.center, &scale);
            CHECK(std::abs(v) <= 1e-9 * (1 + scale));
            ++roots;
        }
    }
    CHECK(roots >= kCases);
}

TEST_CASE("origami invariants match the commutator oracle")
{
    std::mt19937 rng(1005);
    int cases = 0;
    for (; cases < kCases; ++cases) {
        auto [h, v] = oracle::random_origami(rng, 8);
        auto s = build_origami(h, v);
        auto o = oracle::origami(h, v);
        CHECK(s.genus() == o.genus);
        CHECK(s.invariants().zero_orders == o.zero_orders);
        CHECK(s.area() == RealCyc(static_cast<long>(h.size())));
        auto w = oracle::corner_walk(s.data());
        CHECK(w.genus() == o.genus);
        int total = 0;
        for (int z : s.invariants().zero_orders)
            total += z;
        CHECK(total == 2 * s.genus() - 2);
    }
    CHECK(cases >= kCases);
}

TEST_CASE("act composes and scales area")
{
    std::mt19937 rng(1006);
    const std::vector<TranslationSurface> base{build_origami({0}, {0}), build_origami({1, 0, 2}, {2, 1, 0}),
                                               build_2ngon(5), build_double_ngon(5)};
    int cases = 0;
    for (; cases < kCases; ++cases) {
        const auto& s = base[cases % base.size()];
        Mat2 A = random_int_mat(rng, true), B = random_int_mat(rng, true);
        auto left = act(act(s, A), B);
        auto right = act(s, B * A);
        CHECK(surface_to_json(left, false) == surface_to_json(right, false));
        CHECK(act(s, A).area() == A.det() * s.area());
    }
    CHECK(cases >= kCases);
}

TEST_CASE("surface JSON round-trips")
{
    std::mt19937 rng(1007);
    int cases = 0;
    for (; cases < kCases; ++cases) {
        auto [h, v] = oracle::random_origami(rng, 6);
        auto s = act(build_origami(h, v), random_int_mat(rng, true));
        const std::string text = surface_to_json(s).dump(2);
        auto back = TranslationSurface::make(surface_from_json(Json::parse(text)));
        CHECK(surface_to_json(back).dump(2) == text);
        CycNum z = random_cyc(rng);
        CHECK(cyc_from_json(Json::parse(to_json(z).dump())) == z);
    }
    CHECK(cases >= kCases);
}

TEST_CASE("cylinder areas add up and reversal preserves the decomposition")
{
    std::mt19937 rng(1008);
    std::uniform_int_distribution<long> e(-3, 3);
    int cases = 0;
    while (cases < kCases) {
        long p = e(rng), q = e(rng);
        if ((p == 0 && q == 0) || gcd_l(std::abs(p), std::abs(q)) != 1)
            continue;
        auto [h, v] = oracle::random_origami(rng, 5);
        auto s = build_origami(h, v);
        auto dec = cylinder_decomposition(s, {p, q});
        REQUIRE(dec.ok());
        RealCyc total(0L);
        std::vector<double> areas, mods;
        for (const auto& c : dec.cylinders) {
            total += c.area;
            areas.push_back(c.area.to_double());
            mods.push_back(c.modulus.to_double());
            CHECK(c.modulus * c.scaled_width == c.scaled_circumference);
        }
        CHECK(total == s.area());
        auto rev = cylinder_decomposition(s, {-p, -q});
        REQUIRE(rev.ok());
        std::vector<double> rareas, rmods;
        for (const auto& c : rev.cylinders) {
            rareas.push_back(c.area.to_double());
            rmods.push_back(c.modulus.to_double());
        }
        for (auto* x : {&areas, &mods, &rareas, &rmods})
            std::sort(x->begin(), x->end());
        CHECK(rareas.size() == areas.size());
        for (std::size_t i = 0; i < std::min(areas.size(), rareas.size()); ++i) {
            CHECK(std::abs(areas[i] - rareas[i]) < 1e-12);
            CHECK(std::abs(mods[i] - rmods[i]) < 1e-12);
        }
        ++cases;
    }
    CHECK(cases >= kCases);
}

TEST_CASE("torus directions decompose exactly when the slope is rational")
{
    std::mt19937 rng(1009);
    auto torus = build_origami({0}, {0});
    std::uniform_int_distribution<long> e(-12, 12);
    int rational = 0;
    while (rational < kCases) {
        long p = e(rng), q = e(rng);
        if ((p == 0 && q == 0) || gcd_l(std::abs(p), std::abs(q)) != 1)
            continue;
        auto dec = cylinder_decomposition(torus, {p, q});
        REQUIRE(dec.ok());
        CHECK(dec.cylinders.size() == 1);
        CHECK(dec.cylinders[0].area == RealCyc(1L));
        CHECK(dec.cylinders[0].scaled_circumference == RealCyc(p * p + q * q));
        ++rational;
    }
    const RealCyc sqrt5 = RealCyc(4L) * cos2pi(1, 5) + RealCyc(1L);
    std::uniform_int_distribution<long> c(1, 4);
    for (int i = 0; i < 20; ++i) {
        RealCyc slope = RealCyc(Rational(e(rng), c(rng))) + RealCyc(Rational(c(rng), c(rng))) * sqrt5;
        auto dec = cylinder_decomposition(torus, {RealCyc(1L), slope}, 200);
        CHECK_FALSE(dec.ok());
    }
    CHECK(rational >= kCases);
}

TEST_CASE("saddle connections re-trace and are closed under negation")
{
    std::mt19937 rng(1010);
    int connections = 0, surfaces = 0;
    for (; surfaces < kCases; ++surfaces) {
        auto [h, v] = oracle::random_origami(rng, 4);
        auto s = build_origami(h, v);
        auto scs = saddle_connections(s, RealCyc(2L));
        std::map<std::string, int> count;
        std::set<std::string> seen;
        for (const auto& sc : scs) {
            auto r = retrace(s, sc);
            REQUIRE(r);
            CHECK(*r == sc.holonomy);
            ++count[key(sc.holonomy)];
            const std::string id = std::to_string(sc.start.poly) + ":" + std::to_string(sc.start.vertex) + ":" +
                                   key(sc.holonomy);
            CHECK(seen.insert(id).second);
            ++connections;
        }
        for (const auto& [k, n] : count) {
            const auto it = std::find_if(scs.begin(), scs.end(), [&](const auto& sc) { return key(sc.holonomy) == k; });
            CHECK(count[key(-it->holonomy)] == n);
        }
    }
    CHECK(surfaces >= kCases);
    CHECK(connections >= kCases);
}

TEST_CASE("iota0 reverses products")
{
    std::mt19937 rng(1011);
    int cases = 0;
    for (; cases < kCases; ++cases) {
        Mat2 A = random_int_mat(rng, false), B = random_int_mat(rng, false);
        A.a = A.a + RealCyc(Rational(1, 3));
        B.d = B.d * random_real(rng);
        CHECK(iota0(A * B) == iota0(B) * iota0(A));
        CHECK(iota0(iota0(A)) == A);
    }
    CHECK(cases >= kCases);
}

TEST_CASE("half-plane diagram commutes")
{
    std::mt19937 rng(1012);
    std::normal_distribution<double> u(0, 1.5);
    int cases = 0;
    double worst = 0;
    while (cases < kCases) {
        Eigen::Matrix2d M;
        M << u(rng), u(rng), u(rng), u(rng);
        const double d = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
        if (d < 0.05)
            continue;
        M /= std::sqrt(d);
        worst = std::max(worst, std::abs(mu0(M) - cayley(lambda0(M))));
        CHECK(std::abs(mu0(M)) < 1);
        ++cases;
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("random origamis carry symplectic homology bases")
{
    std::mt19937 rng(1013);
    int cases = 0;
    for (; cases < kCases; ++cases) {
        auto [h, v] = oracle::random_origami(rng, 7);
        auto s = build_origami(h, v);
        auto c = build_complex(s);
        auto b = homology_basis(c);
        CHECK((c.d1 * c.d2).isZero());
        CHECK(c.euler_characteristic() == 2 - 2 * s.genus());
        CHECK(b.genus == s.genus());
        CHECK(gram(c, b.cycles) == standard_J(s.genus()));
    }
    CHECK(cases >= kCases);
}

TEST_CASE("random words in affine generators act symplectically")
{
    struct Gen {
        IMat M;
        Mat2 A;
    };
    struct Setup {
        TranslationSurface s;
        CellComplex c;
        SymplecticBasis b;
        std::vector<Gen> gens;
    };
    std::vector<Setup> setups;
    for (auto [surf, rot] : {std::pair{build_2ngon(5), Mat2::rotation(1, 10)},
                             std::pair{build_double_ngon(5), Mat2::rotation(1, 5)},
                             std::pair{build_double_ngon(7), Mat2::rotation(1, 7)}}) {
        Setup x{surf, build_complex(surf), {}, {}};
        x.b = homology_basis(x.c);
        auto r = symmetry_search(x.s, {rot});
        REQUIRE(r.size() == 1);
        x.gens.push_back({auto_action(x.s, x.c, r[0], x.b), r[0].linear});
        auto p = parabolic_element(x.s, {0L, 1L});
        REQUIRE(p.ok());
        x.gens.push_back({twist_action(x.s, x.c, multitwist_auto(x.s, p.twist), x.b), p.matrix});
        setups.push_back(std::move(x));
    }
    std::mt19937 rng(1014);
    int cases = 0;
    for (; cases < kCases; ++cases) {
        auto& x = setups[cases % setups.size()];
        const IMat J = standard_J(x.b.genus);
        const int len = std::uniform_int_distribution<int>(1, 6)(rng);
        IMat M = IMat::Identity(2 * x.b.genus, 2 * x.b.genus);
        Mat2 A = Mat2::identity();
        for (int i = 0; i < len; ++i) {
            const auto& g = x.gens[std::uniform_int_distribution<std::size_t>(0, x.gens.size() - 1)(rng)];
            if (rng() % 2) {
                M = M * g.M;
                A = (A * g.A).reduced();
            } else {
                M = M * inverse_symplectic(g.M, J);
                A = (A * g.A.inverse()).reduced();
            }
        }
        CHECK(is_symplectic(M, J));
        auto sp = spectral_report(M);
        CHECK(sp.palindromic);
        CHECK(canonical_subspace_check(x.s, x.c, x.b, M, A).ok);
    }
    CHECK(cases >= kCases);
}

TEST_CASE("powers of a multitwist commute and add")
{
    struct Setup {
        TranslationSurface s;
        CellComplex c;
        SymplecticBasis b;
        MultitwistRecord rec;
    };
    std::vector<Setup> setups;
    for (auto surf : {build_2ngon(5), build_double_ngon(7), build_origami({1, 2, 0}, {0, 2, 1})})
        for (Vec2 d : {Vec2{0L, 1L}, Vec2{1L, 0L}}) {
            auto p = parabolic_element(surf, d);
            if (!p.ok())
                continue;
            Setup x{surf, build_complex(surf), {}, multitwist_auto(surf, p.twist)};
            x.b = homology_basis(x.c);
            setups.push_back(std::move(x));
        }
    REQUIRE(setups.size() >= 4);
    auto power = [](const Setup& x, long e) {
        MultitwistRecord r = x.rec;
        for (auto& m : r.powers)
            m *= e;
        return twist_action(x.s, x.c, r, x.b);
    };
    std::mt19937 rng(1015);
    std::uniform_int_distribution<long> e(-4, 4);
    int cases = 0;
    for (; cases < kCases; ++cases) {
        const auto& x = setups[cases % setups.size()];
        const long a = e(rng), b = e(rng);
        const IMat Ta = power(x, a), Tb = power(x, b);
        CHECK(IMat(Ta * Tb) == IMat(Tb * Ta));
        CHECK(IMat(Ta * Tb) == power(x, a + b));
        const IMat N = Ta - IMat::Identity(Ta.rows(), Ta.cols());
        CHECK(IMat(N * N).isZero());
    }
    CHECK(cases >= kCases);
}
