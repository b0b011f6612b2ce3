#include "tsurf/homology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "tsurf/poly.hpp"

namespace tsurf {

std::pair<int, int> CellComplex::occurrence(const TranslationSurface& s, EdgeRef e) const
{
    auto it = index.find(e);
    if (it != index.end())
        return {it->second, 1};
    return {index.at(s.glued(e)), -1};
}

CellComplex build_complex(const TranslationSurface& s)
{
    CellComplex c;
    c.V = static_cast<int>(s.vertex_classes().size());
    c.edges = s.edge_pairs();
    c.E = static_cast<int>(c.edges.size());
    c.F = s.num_polygons();
    for (int i = 0; i < c.E; ++i) {
        const EdgeRef e = c.edges[i];
        c.index[e] = i;
        c.tail.push_back(s.vertex_class(e.poly, e.edge));
        c.head.push_back(s.vertex_class(e.poly, (e.edge + 1) % s.size(e.poly)));
    }
    c.d1 = IMat::Zero(c.V, c.E);
    for (int i = 0; i < c.E; ++i) {
        c.d1(c.head[i], i) += 1;
        c.d1(c.tail[i], i) -= 1;
    }
    c.d2 = IMat::Zero(c.E, c.F);
    for (int p = 0; p < c.F; ++p)
        for (int j = 0; j < s.size(p); ++j) {
            auto [e, sg] = c.occurrence(s, {p, j});
            c.d2(e, p) += sg;
        }
    c.rotation.resize(c.V);
    for (int v = 0; v < c.V; ++v) {
        const Corner first = s.vertex_classes()[v].corners.front();
        Corner k = first;
        do {
            auto [e, sg] = c.occurrence(s, {k.poly, k.vertex});
            c.rotation[v].push_back({e, sg > 0});
            k = s.next_ccw(k);
        } while (!(k == first));
    }
    return c;
}

bool is_cycle(const CellComplex& c, const Cycle& x) { return (c.d1 * x).isZero(); }

long intersection(const CellComplex& c, const Cycle& a, const Cycle& b)
{
    long total = 0;
    for (const auto& rot : c.rotation) {
        const int d = static_cast<int>(rot.size());
        // strands of b pushed to its right meet the link of v in the sectors;
        // x[i] is their net counter-clockwise flow across half-edge i
        std::vector<long> dem(d, 0), x(d, 0);
        for (int i = 0; i < d; ++i) {
            long phi = rot[i].outgoing ? b(rot[i].edge) : -b(rot[i].edge);
            dem[rot[i].outgoing ? (i + d - 1) % d : i] += phi;
        }
        for (int i = 0; i + 1 < d; ++i)
            x[i + 1] = x[i] - dem[i];
        for (int i = 0; i < d; ++i) {
            long phi = rot[i].outgoing ? a(rot[i].edge) : -a(rot[i].edge);
            total += phi * x[i];
        }
    }
    return total;
}

IMat gram(const CellComplex& c, const std::vector<Cycle>& cycles)
{
    const int n = static_cast<int>(cycles.size());
    IMat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = intersection(c, cycles[i], cycles[j]);
    return g;
}

IMat standard_J(int g)
{
    IMat j = IMat::Zero(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        j(i, g + i) = 1;
        j(g + i, i) = -1;
    }
    return j;
}

namespace {

std::vector<Cycle> tree_cotree(const CellComplex& c)
{
    // spanning tree of the vertex graph
    std::vector<int> par_edge(c.V, -1), par_sign(c.V, 0);
    std::vector<bool> seen(c.V, false), in_tree(c.E, false);
    std::vector<std::vector<int>> inc(c.V);
    for (int e = 0; e < c.E; ++e) {
        inc[c.tail[e]].push_back(e);
        inc[c.head[e]].push_back(e);
    }
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int e : inc[v]) {
            int w = c.tail[e] == v ? c.head[e] : c.tail[e];
            if (seen[w])
                continue;
            seen[w] = true;
            in_tree[e] = true;
            par_edge[w] = e;
            par_sign[w] = c.tail[e] == w ? 1 : -1;  // +1: edge runs from w towards the root
            q.push_back(w);
        }
    }
    // spanning tree of the dual graph avoiding tree edges
    std::vector<bool> fseen(c.F, false), in_cotree(c.E, false);
    std::vector<std::vector<std::pair<int, int>>> adj(c.F);
    for (int e = 0; e < c.E; ++e) {
        if (in_tree[e])
            continue;
        std::vector<int> faces;
        for (int f = 0; f < c.F; ++f)
            for (long k = std::abs(c.d2(e, f)); k > 0; --k)
                faces.push_back(f);
        // both sides in one face cancel in d2 and give only a dual loop
        if (faces.size() == 2) {
            adj[faces[0]].push_back({faces[1], e});
            adj[faces[1]].push_back({faces[0], e});
        }
    }
    std::deque<int> fq{0};
    fseen[0] = true;
    while (!fq.empty()) {
        int f = fq.front();
        fq.pop_front();
        for (auto [g, e] : adj[f]) {
            if (fseen[g])
                continue;
            fseen[g] = true;
            in_cotree[e] = true;
            fq.push_back(g);
        }
    }
    auto to_root = [&](int v) {
        Cycle ch = c.zero();
        while (par_edge[v] >= 0) {
            int e = par_edge[v];
            ch(e) += par_sign[v];
            v = par_sign[v] > 0 ? c.head[e] : c.tail[e];
        }
        return ch;
    };
    std::vector<Cycle> out;
    for (int e = 0; e < c.E; ++e) {
        if (in_tree[e] || in_cotree[e])
            continue;
        Cycle z = c.zero();
        z(e) = 1;
        z += to_root(c.head[e]);
        z -= to_root(c.tail[e]);
        out.push_back(z);
    }
    return out;
}

}  // namespace

SymplecticBasis homology_basis(const CellComplex& c)
{
    const int chi = c.euler_characteristic();
    if (chi >= 2)
        throw Error("GenusZero", "surface has genus 0");
    std::vector<Cycle> rest = tree_cotree(c);
    const int g = (2 - chi) / 2;
    if (static_cast<int>(rest.size()) != 2 * g)
        throw Error("InternalError", "tree-cotree produced the wrong number of cycles");
    std::vector<Cycle> as, bs;
    while (!rest.empty()) {
        Cycle a = rest.front();
        rest.erase(rest.begin());
        // Euclid on the pairings <a, o> until one partner is left
        while (true) {
            int piv = -1;
            long best = 0;
            int nonzero = 0;
            for (int i = 0; i < static_cast<int>(rest.size()); ++i) {
                long v = intersection(c, a, rest[i]);
                if (v == 0)
                    continue;
                ++nonzero;
                if (piv < 0 || std::abs(v) < best) {
                    piv = i;
                    best = std::abs(v);
                }
            }
            if (piv < 0)
                throw Error("InternalError", "intersection form is degenerate");
            if (nonzero == 1)
                break;
            long pv = intersection(c, a, rest[piv]);
            for (int i = 0; i < static_cast<int>(rest.size()); ++i) {
                if (i == piv)
                    continue;
                long v = intersection(c, a, rest[i]);
                rest[i] -= (v / pv) * rest[piv];
            }
        }
        int bi = 0;
        while (intersection(c, a, rest[bi]) == 0)
            ++bi;
        Cycle b = rest[bi];
        rest.erase(rest.begin() + bi);
        long ab = intersection(c, a, b);
        if (std::abs(ab) != 1)
            throw Error("InternalError", "intersection form is not unimodular");
        if (ab < 0)
            b = -b;
        for (auto& w : rest) {
            long wb = intersection(c, w, b), wa = intersection(c, w, a);
            w = w - wb * a + wa * b;
        }
        as.push_back(a);
        bs.push_back(b);
    }
    SymplecticBasis basis;
    basis.genus = g;
    basis.cycles = as;
    basis.cycles.insert(basis.cycles.end(), bs.begin(), bs.end());
    basis.J = gram(c, basis.cycles);
    return basis;
}

IVec coordinates(const CellComplex& c, const SymplecticBasis& basis, const Cycle& x)
{
    const int g = basis.genus;
    IVec v(2 * g);
    for (int i = 0; i < g; ++i) {
        v(i) = intersection(c, x, basis.cycles[g + i]);
        v(g + i) = intersection(c, basis.cycles[i], x);
    }
    return v;
}

Cycle from_coordinates(const SymplecticBasis& basis, const IVec& v)
{
    Cycle x = Cycle::Zero(basis.cycles.front().size());
    for (int i = 0; i < v.size(); ++i)
        x += v(i) * basis.cycles[i];
    return x;
}

CycNum period(const TranslationSurface& s, const CellComplex& c, const Cycle& x)
{
    CycNum p(0L);
    for (int e = 0; e < c.E; ++e)
        if (x(e) != 0)
            p += CycNum(x(e)) * s.edge_holonomy(c.edges[e]);
    return p.reduced();
}

std::vector<CycNum> periods(const TranslationSurface& s, const CellComplex& c,
                            const SymplecticBasis& basis)
{
    std::vector<CycNum> out;
    for (const auto& x : basis.cycles)
        out.push_back(period(s, c, x));
    return out;
}

bool is_symplectic(const IMat& M, const IMat& J) { return M.transpose() * J * M == J; }

Cycle push_forward(const TranslationSurface& s, const CellComplex& c, const AffineAuto& f,
                   const Cycle& x)
{
    Cycle y = c.zero();
    for (int e = 0; e < c.E; ++e) {
        if (x(e) == 0)
            continue;
        auto [t, sg] = c.occurrence(s, f.edge_image(s, c.edges[e]));
        y(t) += sg * x(e);
    }
    return y;
}

IMat auto_action(const TranslationSurface& s, const CellComplex& c, const AffineAuto& f,
                 const SymplecticBasis& basis)
{
    std::string why;
    if (!verify_auto(s, f, &why))
        throw Error("NotAnAutomorphism", why);
    const int n = 2 * basis.genus;
    IMat M(n, n);
    for (int i = 0; i < n; ++i)
        M.col(i) = coordinates(c, basis, push_forward(s, c, f, basis.cycles[i]));
    if (!is_symplectic(M, basis.J))
        throw Error("NotAnAutomorphism", "induced map does not preserve the intersection form");
    return M;
}

long crossing_functional(const TranslationSurface& s, const CellComplex& c,
                         const std::vector<EdgeRef>& core, const Cycle& x)
{
    long total = 0;
    for (const EdgeRef& e : core) {
        // the curve leaves the polygon through e, so orient(edge, d) = -1 there
        auto [t, sg] = c.occurrence(s, e);
        total -= sg * x(t);
    }
    return total;
}

IVec core_class(const TranslationSurface& s, const CellComplex& c, const SymplecticBasis& basis,
                const std::vector<EdgeRef>& core)
{
    const int g = basis.genus;
    IVec v(2 * g);
    for (int i = 0; i < g; ++i) {
        v(i) = -crossing_functional(s, c, core, basis.cycles[g + i]);
        v(g + i) = crossing_functional(s, c, core, basis.cycles[i]);
    }
    return v;
}

IMat twist_action(const TranslationSurface& s, const CellComplex& c, const MultitwistRecord& twist,
                  const SymplecticBasis& basis)
{
    const int n = 2 * basis.genus;
    IMat M = IMat::Identity(n, n);
    const IMat& J = basis.J;
    for (std::size_t k = 0; k < twist.cores.size(); ++k) {
        IVec ck = core_class(s, c, basis, twist.cores[k]);
        // <c, x> = c^T J x
        IVec row = J.transpose() * ck;
        M += twist.powers[k] * ck * row.transpose();
    }
    return M;
}

namespace {

int cauchy_bound(const IntPoly& p)
{
    const int d = degree(p);
    double m = 0;
    for (int i = 0; i < d; ++i)
        m = std::max(m, std::abs(p[i].get_d() / p[d].get_d()));
    return static_cast<int>(std::ceil(m)) + 2;
}

IMat power(IMat m, long e)
{
    IMat r = IMat::Identity(m.rows(), m.cols());
    while (e > 0) {
        if (e & 1)
            r = r * m;
        m = m * m;
        e >>= 1;
    }
    return r;
}

}  // namespace

SpectralReport spectral_report(const IMat& M)
{
    SpectralReport r;
    r.char_poly = char_poly(M);
    r.palindromic = is_palindromic(r.char_poly);
    IntPoly rest = r.char_poly;
    const int deg = degree(rest);
    for (int m = 1; m <= 4 * deg * deg + 8 && degree(rest) > 0; ++m) {
        if (euler_phi(m) > degree(rest))
            continue;
        IntPoly phi = cyclotomic_poly(m);
        while (degree(rest) > 0 && divides(phi, rest)) {
            rest = exact_quotient(rest, phi);
            r.cyclotomic_factors.push_back(m);
        }
    }
    r.quasi_unipotent = degree(rest) == 0;
    if (r.quasi_unipotent) {
        long L = 1;
        for (int m : r.cyclotomic_factors)
            L = std::lcm(L, static_cast<long>(m));
        r.finite_order = power(M, L) == IMat::Identity(M.rows(), M.cols());
    }
    r.roots = numeric_roots(r.char_poly);
    if (r.roots.empty())
        return r;
    std::size_t top = 0;
    for (std::size_t i = 1; i < r.roots.size(); ++i)
        if (std::abs(r.roots[i]) > std::abs(r.roots[top]))
            top = i;
    const std::complex<double> z = r.roots[top];
    if (std::abs(z) <= 1.0 + 1e-9 || std::abs(z.imag()) > 1e-9 * std::abs(z))
        return r;
    const double lam = z.real();
    r.leading = lam;
    double other = 0, gap = std::abs(lam);
    for (std::size_t i = 0; i < r.roots.size(); ++i) {
        if (i == top)
            continue;
        other = std::max(other, std::abs(r.roots[i]));
        gap = std::min(gap, std::abs(r.roots[i] - z));
    }
    r.dominance_margin = std::abs(lam) - other;
    const double delta = std::max(std::min(gap, r.dominance_margin) / 4, 1e-12 * std::abs(lam));
    const QPoly p = to_qpoly(r.char_poly);
    const QPoly g = poly_gcd(p, derivative(p));
    const QPoly sf = poly_divmod(p, g).first;
    const Rational lo = to_rational(lam - delta), hi = to_rational(lam + delta);
    const bool one_root = sturm_count(sf, lo, hi) == 1;
    const bool not_repeated = degree(g) <= 0 || sturm_count(g, lo, hi) == 0;
    r.leading_simple = one_root && not_repeated;
    const Rational big(cauchy_bound(r.char_poly));
    const Rational alam = to_rational(std::abs(lam) - delta);
    // no real root of larger modulus, besides the isolated one
    const int beyond = lam > 0 ? sturm_count(sf, hi, big) + sturm_count(sf, -big, -alam)
                               : sturm_count(sf, -big, lo) + sturm_count(sf, alam, big);
    r.leading_dominant = r.leading_simple && beyond == 0 && r.dominance_margin > 2 * delta;
    return r;
}

PeriodCheck canonical_subspace_check(const TranslationSurface& s, const CellComplex& c,
                                     const SymplecticBasis& basis, const IMat& M, const Mat2& A)
{
    PeriodCheck out;
    const std::vector<CycNum> p = periods(s, c, basis);
    const int ord = s.coord_order();
    for (int i = 0; i < M.cols(); ++i) {
        CycNum lhs(0L);
        for (int j = 0; j < M.rows(); ++j)
            if (M(j, i) != 0)
                lhs += CycNum(M(j, i)) * p[j];
        CycNum rhs = A.apply(Vec2::from_complex(p[i], ord)).to_complex();
        CycNum diff = (lhs - rhs).reduced();
        if (!diff.is_zero())
            out.ok = false;
        out.discrepancy.push_back(diff);
    }
    return out;
}

}  // namespace tsurf
