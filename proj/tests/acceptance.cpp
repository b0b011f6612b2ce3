#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tsurf/hodge.hpp"
#include "tsurf/poly.hpp"

using namespace tsurf;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream why;
    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (ok)
                why << what;
            ok = false;
        }
    }
};

std::vector<RealCyc> sorted(std::vector<RealCyc> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

std::string label(const std::string& name, int g, int k) { return name + "(" + std::to_string(g) + "," + std::to_string(k) + ")"; }

RealCyc shoelace(const Polygon& p)
{
    CycNum twice(0L);
    const std::size_t n = p.vertices.size();
    for (std::size_t j = 0; j < n; ++j)
        twice += p.vertices[j].conj() * p.vertices[(j + 1) % n];
    return RealCyc(twice.im()) / RealCyc(2L);
}

// 1. vertical moduli of the regular polygon surfaces
void moduli(Outcome& o)
{
    for (int n : {5, 7, 9}) {
        const int g = (n - 1) / 2;
        std::vector<RealCyc> expect{cot_pi(1, 2 * n)};
        for (int i = 0; i < g; ++i)
            expect.push_back(RealCyc(2L) * cot_pi(1, 2 * n));
        auto dec = cylinder_decomposition(build_2ngon(n), {0L, 1L});
        o.require(dec.ok(), "2ngon decomposition failed");
        std::vector<RealCyc> got;
        for (const auto& c : dec.cylinders)
            got.push_back(c.modulus);
        o.require(sorted(got) == sorted(expect), "2ngon(" + std::to_string(n) + ") moduli");

        auto dd = cylinder_decomposition(build_double_ngon(n), {0L, 1L});
        o.require(dd.ok(), "double-ngon decomposition failed");
        got.clear();
        for (const auto& c : dd.cylinders)
            got.push_back(c.modulus);
        o.require(got == std::vector<RealCyc>(g, RealCyc(2L) * cot_pi(1, n)),
                  "double-ngon(" + std::to_string(n) + ") moduli");
    }
}

// 2. mirrored parabolic and rotation reproduce the triangle-group generators
void generators(Outcome& o)
{
    for (int n : {5, 7, 9}) {
        const int g = (n - 1) / 2;
        for (auto [s, form, q] : {std::tuple{build_2ngon(n), WimanForm::OmegaG, 2 * n},
                                  std::tuple{build_double_ngon(n), WimanForm::Omega1, n}}) {
            auto [G1, G2] = wiman_generators(g, form);
            auto p = parabolic_element(s, {0L, 1L});
            o.require(p.ok(), "no vertical parabolic");
            if (!p.ok())
                continue;
            o.require(mirror(p.matrix.inverse()) == G1, "parabolic generator n=" + std::to_string(n));
            auto rot = symmetry_search(s, {Mat2::rotation(1, q)});
            o.require(rot.size() == 1 && mirror(rot[0].linear) == G2, "rotation generator n=" + std::to_string(n));
        }
    }
}

// 3. trace fields of the Wiman differentials
void trace_fields(Outcome& o)
{
    for (int g = 2; g <= 6; ++g) {
        const int n = 2 * g + 1;
        for (int k = 1; k <= g; ++k) {
            const int n0 = n / std::gcd(k, n);
            auto s = build_wiman(g, k);
            std::vector<RealCyc> traces;
            for (const auto& f : symmetry_search(s))
                traces.push_back(f.linear.trace());
            for (Vec2 d : {Vec2{0L, 1L}, Vec2{1L, 0L}}) {
                auto p = parabolic_element(s, d);
                if (p.ok())
                    traces.push_back(p.matrix.trace());
            }
            auto tf = trace_field(traces);
            const CycNum c = cos2pi(1, n0).value();
            o.require(tf.degree == oracle::phi(n0) / 2, label("degree W", g, k));
            o.require(degree(tf.min_poly) == tf.degree, label("min poly W", g, k));
            o.require(in_subfield(c, tf.primitive.value()) && in_subfield(tf.primitive.value(), c),
                      label("field W", g, k));
        }
    }
}

// 4. homology actions on builder outputs
void homology(Outcome& o)
{
    std::vector<std::pair<std::string, TranslationSurface>> surfaces{
        {"torus", build_origami({0}, {0})},
        {"L", build_origami({1, 0, 2}, {2, 1, 0})},
        {"origami4", build_origami({1, 2, 3, 0}, {1, 0, 3, 2})},
        {"2ngon5", build_2ngon(5)},
        {"2ngon7", build_2ngon(7)},
        {"2ngon9", build_2ngon(9)},
        {"dngon5", build_double_ngon(5)},
        {"dngon7", build_double_ngon(7)},
        {"dngon9", build_double_ngon(9)},
        {"wiman32", build_wiman(3, 2)},
        {"wiman43", build_wiman(4, 3)},
        {"billiard21", build_billiard(wiman_half_triangle(2, 1), 10)},
    };
    int hyperbolic = 0;
    for (const auto& [name, s] : surfaces) {
        auto c = build_complex(s);
        auto b = homology_basis(c);
        const IMat J = standard_J(b.genus);
        o.require(c.euler_characteristic() == 2 - 2 * s.genus(), name + " euler characteristic");
        o.require(b.genus == s.genus() && gram(c, b.cycles) == J, name + " symplectic basis");
        std::vector<std::pair<Mat2, IMat>> acts;
        for (const auto& f : symmetry_search(s))
            acts.push_back({f.linear, auto_action(s, c, f, b)});
        const std::size_t nsym = acts.size();
        for (Vec2 d : {Vec2{0L, 1L}, Vec2{1L, 0L}}) {
            auto p = parabolic_element(s, d);
            if (p.ok())
                acts.push_back({p.matrix, twist_action(s, c, multitwist_auto(s, p.twist), b)});
        }
        const std::size_t nbase = acts.size();
        for (std::size_t i = 0; i < nbase; ++i)
            for (std::size_t j = std::max(i + 1, nsym); j < nbase; ++j) {
                Mat2 L = (acts[i].first * acts[j].first).reduced();
                if (classify(L).kind == MatrixKind::Hyperbolic)
                    acts.push_back({L, IMat(acts[i].second * acts[j].second)});
            }
        for (const auto& [A, M] : acts) {
            o.require(is_symplectic(M, J), name + " symplectic action");
            auto sp = spectral_report(M);
            o.require(sp.palindromic, name + " palindromic");
            o.require(canonical_subspace_check(s, c, b, M, A).ok, name + " period identity");
            if (classify(A).kind != MatrixKind::Hyperbolic)
                continue;
            ++hyperbolic;
            const double t = A.trace().to_double();
            const double lam = std::copysign((std::abs(t) + std::sqrt(t * t - 4)) / 2, t);
            o.require(sp.leading && std::abs(*sp.leading - lam) < 1e-9, name + " leading eigenvalue");
            o.require(sp.leading_simple && sp.leading_dominant, name + " simple dominant");
        }
    }
    o.require(surfaces.size() >= 10, "fewer than 10 surfaces");
    o.require(hyperbolic >= 10, "too few hyperbolic actions");
}

std::map<int, WimanModel>& models()
{
    static std::map<int, WimanModel> cache;
    return cache;
}

const WimanModel& model(int g)
{
    auto& c = models();
    auto it = c.find(g);
    if (it == c.end())
        it = c.emplace(g, wiman_model(g)).first;
    return it->second;
}

// 5. eigenform relations
void eigenforms(Outcome& o)
{
    for (int g = 2; g <= 5; ++g)
        for (int k = 1; k <= g; ++k) {
            auto r = eigenform_relation_check(model(g), k);
            o.require(r.shift_ok, label("shift relation", g, k));
            o.require(r.psi_ok, label("psi relation", g, k));
        }
}

// 6. Psi-blocks
void psi(Outcome& o)
{
    for (int g = 2; g <= 5; ++g) {
        auto r = psi_blocks(model(g));
        o.require(static_cast<int>(r.blocks.size()) == g, "block count g=" + std::to_string(g));
        o.require(r.dims == std::vector<int>(g, 2), "block dimensions g=" + std::to_string(g));
        o.require(r.orthogonal, "orthogonality g=" + std::to_string(g));
    }
}

// 7. certified period matrices
void period_matrices(Outcome& o)
{
    for (int g : {2, 3}) {
        auto p = period_matrix(model(g), 128);
        auto q = period_matrix(model(g), 256);
        const std::string G = " g=" + std::to_string(g);
        o.require(p.err <= 1e-10, "error bound" + G);
        o.require(p.symmetric, "symmetry" + G);
        o.require(p.im_positive && p.min_eig_lower > 0, "Im positive" + G);
        o.require(q.err <= p.err / 2, "precision doubling" + G);
    }
}

// 8. real multiplication verdicts
void verdicts(Outcome& o)
{
    for (int g = 3; g <= 6; ++g) {
        const int n = 2 * g + 1;
        for (int k = 1; k <= g; ++k) {
            const int t = std::gcd(k, n);
            const int rt = (g / t) * t;
            const bool expect = t < k && k < rt;
            auto v = rm_verdict(g, k);
            o.require(v.violated == expect, label("verdict", g, k));
            o.require(v.area == RealCyc(static_cast<long>(n)) * sin2pi(k, n), label("area", g, k));
            o.require(v.area.sign() > 0, label("area sign", g, k));
            o.require(build_wiman(g, k).area() == v.area, label("flat area", g, k));
            if (v.violated)
                o.require(v.i + v.j == 2 * k && v.i != v.j, label("witness", g, k));
        }
    }
}

// 9. half-plane diagram
void half_plane(Outcome& o)
{
    std::mt19937 rng(20240901);
    std::normal_distribution<double> u(0, 1.5);
    double worst = 0;
    int count = 0;
    while (count < 100) {
        Eigen::Matrix2d M;
        M << u(rng), u(rng), u(rng), u(rng);
        const double d = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
        if (d < 0.05)
            continue;
        M /= std::sqrt(d);
        worst = std::max(worst, std::abs(mu0(M) - cayley(lambda0(M))));
        ++count;
    }
    o.require(worst < 1e-12, "max error " + std::to_string(worst));
}

// 10. billiards in the Wiman triangles
void billiards(Outcome& o)
{
    for (int g = 2; g <= 4; ++g) {
        const int n = 2 * g + 1;
        for (int k = 1; k <= g; ++k) {
            if (std::gcd(k, n) != 1)
                continue;
            Polygon T = wiman_triangle(g, k);
            auto w = build_wiman(g, k);
            auto q = build_billiard(T, 2 * n, BilliardMode::Quotient);
            auto lit = build_billiard(T, 2 * n, BilliardMode::Literal);
            auto zo = [](const TranslationSurface& s) {
                auto z = s.invariants().zero_orders;
                std::sort(z.begin(), z.end());
                return z;
            };
            const RealCyc aT = shoelace(T).abs();
            const long GP = static_cast<long>(billiard_group(T, 2 * n).size());
            o.require(q.genus() == w.genus(), label("genus", g, k));
            o.require(zo(q) == zo(w), label("zero orders", g, k));
            o.require(q.area() == w.area(), label("area", g, k));
            o.require(q.area() == RealCyc(2L * n) * aT, label("quotient area", g, k));
            o.require(lit.area() == RealCyc(GP) * aT, label("literal area", g, k));
            o.require(lit.area() == RealCyc(2L) * q.area(), label("area ratio", g, k));
        }
    }
}

// 11. seeded property suites
void properties(Outcome& o)
{
    const std::string cmd = std::string(TSURF_PROPERTIES_BIN) + " --no-colors 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    o.require(pipe != nullptr, "cannot run property suites");
    if (!pipe)
        return;
    std::string text;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe))
        text += buf;
    const int status = pclose(pipe);
    o.require(status == 0, "property suites failed");
    const auto pos = text.find("test cases:");
    int cases = 0, passed = 0;
    if (pos != std::string::npos)
        std::sscanf(text.c_str() + pos, "test cases: %d | %d passed", &cases, &passed);
    o.require(cases >= 12 && passed == cases, "suite count " + std::to_string(passed) + "/" + std::to_string(cases));
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"cylinder moduli of 2ngon and double-ngon, n = 5, 7, 9", moduli},
        {"mirrored Veech generators, n = 5, 7, 9", generators},
        {"trace fields Q(cos 2pi/n0) for g = 2..6", trace_fields},
        {"homology actions on 12 builder surfaces", homology},
        {"eigenform relations, g <= 5", eigenforms},
        {"Psi-blocks of dimension 2, orthogonal, g <= 5", psi},
        {"certified period matrices, g = 2, 3", period_matrices},
        {"real multiplication verdicts, g = 3..6", verdicts},
        {"half-plane diagram on 100 SL2 matrices", half_plane},
        {"billiard unfoldings against Wiman surfaces", billiards},
        {"seeded property suites", properties},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu: %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    secs, o.ok ? "" : " : ", o.why.str().c_str());
        std::fflush(stdout);
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
