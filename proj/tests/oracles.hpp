#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "tsurf/surface.hpp"

// Oracles computed from raw data in double precision or plain combinatorics,
// sharing no code with the library beyond its data types.
namespace oracle {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct CornerWalk {
    std::vector<double> angles;  // total angle of each vertex class, in units of 2 pi
    int vertices = 0, edges = 0, faces = 0;
    int genus() const { return (2 - (vertices - edges + faces)) / 2; }
    std::vector<int> zero_orders() const
    {
        std::vector<int> z;
        for (double a : angles) {
            int m = static_cast<int>(std::lround(a));
            if (m >= 2)
                z.push_back(m - 1);
        }
        std::sort(z.begin(), z.end());
        return z;
    }
};

// walk (p, j) -> glued(p, j - 1) summing interior angles
inline CornerWalk corner_walk(const tsurf::SurfaceData& d)
{
    std::map<std::pair<int, int>, std::pair<int, int>> glue;
    for (const auto& [a, b] : d.gluing) {
        glue[{a.poly, a.edge}] = {b.poly, b.edge};
        glue[{b.poly, b.edge}] = {a.poly, a.edge};
    }
    auto pt = [&](int p, int j) {
        const auto& vs = d.polygons[p].vertices;
        int n = static_cast<int>(vs.size());
        return vs[((j % n) + n) % n].to_complex();
    };
    std::map<std::pair<int, int>, bool> seen;
    CornerWalk w;
    w.faces = static_cast<int>(d.polygons.size());
    w.edges = static_cast<int>(d.gluing.size());
    for (int p = 0; p < w.faces; ++p) {
        const int n = static_cast<int>(d.polygons[p].vertices.size());
        for (int j = 0; j < n; ++j) {
            if (seen[{p, j}])
                continue;
            double total = 0;
            int q = p, i = j;
            while (!seen[{q, i}]) {
                seen[{q, i}] = true;
                const int m = static_cast<int>(d.polygons[q].vertices.size());
                C a = pt(q, i + 1) - pt(q, i), b = pt(q, i - 1) - pt(q, i);
                total += std::arg(b / a);
                auto nx = glue.at({q, ((i - 1) % m + m) % m});
                q = nx.first;
                i = nx.second;
            }
            w.angles.push_back(total / (2 * kPi));
            ++w.vertices;
        }
    }
    return w;
}

inline double area(const tsurf::SurfaceData& d)
{
    double a = 0;
    for (const auto& p : d.polygons) {
        const int n = static_cast<int>(p.vertices.size());
        for (int j = 0; j < n; ++j) {
            C u = p.vertices[j].to_complex(), v = p.vertices[(j + 1) % n].to_complex();
            a += (u.real() * v.imag() - u.imag() * v.real()) / 2;
        }
    }
    return a;
}

// origami with right-neighbour h and top-neighbour v: cone points are the cycles of
// the commutator v^-1 h^-1 v h, a cycle of length L being a point of angle 2 pi L
struct OrigamiData {
    int genus = 0;
    std::vector<int> zero_orders;
};

inline OrigamiData origami(const std::vector<int>& h, const std::vector<int>& v)
{
    const int d = static_cast<int>(h.size());
    std::vector<int> hi(d), vi(d);
    for (int i = 0; i < d; ++i) {
        hi[h[i]] = i;
        vi[v[i]] = i;
    }
    std::vector<int> comm(d);
    for (int i = 0; i < d; ++i)
        comm[i] = vi[hi[v[h[i]]]];
    std::vector<bool> seen(d, false);
    int V = 0;
    OrigamiData o;
    for (int i = 0; i < d; ++i) {
        if (seen[i])
            continue;
        int len = 0;
        for (int j = i; !seen[j]; j = comm[j]) {
            seen[j] = true;
            ++len;
        }
        ++V;
        if (len >= 2)
            o.zero_orders.push_back(len - 1);
    }
    std::sort(o.zero_orders.begin(), o.zero_orders.end());
    o.genus = (2 - (V - 2 * d + d)) / 2;
    return o;
}

inline bool transitive(const std::vector<int>& h, const std::vector<int>& v)
{
    const int d = static_cast<int>(h.size());
    std::vector<bool> seen(d, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : {h[x], v[x]})
            if (!seen[y]) {
                seen[y] = true;
                ++count;
                stack.push_back(y);
            }
    }
    return count == d;
}

inline std::pair<std::vector<int>, std::vector<int>> random_origami(std::mt19937& rng, int dmax)
{
    std::uniform_int_distribution<int> dd(1, dmax);
    for (;;) {
        int d = dd(rng);
        std::vector<int> h(d), v(d);
        std::iota(h.begin(), h.end(), 0);
        std::iota(v.begin(), v.end(), 0);
        std::shuffle(h.begin(), h.end(), rng);
        std::shuffle(v.begin(), v.end(), rng);
        if (transitive(h, v))
            return {h, v};
    }
}

// monic polynomial with the given real roots, coefficients low degree first, rounded
inline std::vector<long> integer_poly_from_roots(const std::vector<double>& roots)
{
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> n(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= r * c[i];
        }
        c = n;
    }
    std::vector<long> out;
    for (double x : c)
        out.push_back(std::lround(x));
    return out;
}

// 2 cos(2 pi j / n) over j coprime to n, 1 <= j < n/2
inline std::vector<double> two_cos_conjugates(int n)
{
    std::vector<double> r;
    for (int j = 1; 2 * j < n; ++j)
        if (std::gcd(j, n) == 1)
            r.push_back(2 * std::cos(2 * kPi * j / n));
    return r;
}

inline int phi(int n)
{
    int c = 0;
    for (int j = 1; j <= n; ++j)
        if (std::gcd(j, n) == 1)
            ++c;
    return c;
}

}  // namespace oracle
