#include "tsurf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace tsurf {

namespace {

// exact level with a cheap certified double approximation
struct Lv {
    RealCyc v;
    double a = 0;
    double err = 0;
};

Lv make_lv(RealCyc v)
{
    Lv l;
    const CycNum& x = v.value();
    double l1 = 0;
    for (const auto& c : x.numerators())
        l1 += std::fabs(c.get_d());
    double den = x.denominator().get_d();
    l.a = v.to_double();
    l.err = (x.degree() + 4) * std::ldexp(l1 / den, -50) + 1e-300;
    if (!std::isfinite(l.err) || !std::isfinite(l.a))
        l.err = std::numeric_limits<double>::infinity();
    l.v = std::move(v);
    return l;
}

int cmp(const Lv& x, const Lv& y)
{
    double diff = x.a - y.a;
    if (std::fabs(diff) > x.err + y.err)
        return diff > 0 ? 1 : -1;
    return (x.v - y.v).sign();
}

int find_level(const std::vector<Lv>& lv, const Lv& t)
{
    int lo = 0, hi = static_cast<int>(lv.size()) - 1;
    while (lo <= hi) {
        int mid = (lo + hi) / 2;
        int c = cmp(lv[mid], t);
        if (c == 0)
            return mid;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return -1;
}

bool insert_level(std::vector<Lv>& lv, const Lv& t)
{
    auto it = std::lower_bound(lv.begin(), lv.end(), t,
                               [](const Lv& x, const Lv& y) { return cmp(x, y) < 0; });
    if (it != lv.end() && cmp(*it, t) == 0)
        return false;
    lv.insert(it, t);
    return true;
}

RealCyc level_of(const Vec2& d, const Vec2& p) { return cross(d, p); }

// point of edge u -> w at level t
Vec2 point_at_level(const Vec2& u, const Vec2& w, const RealCyc& tu, const RealCyc& tw,
                    const RealCyc& t)
{
    RealCyc s = (t - tu) / (tw - tu);
    return u + s * (w - u);
}

std::optional<Rational> rational_sqrt(const RealCyc& x)
{
    if (!x.value().is_rational())
        return std::nullopt;
    Rational q = x.value().coeff(0);
    if (sgn(q) < 0)
        return std::nullopt;
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    Integer rn = sqrt(n), rd = sqrt(d);
    return Rational(rn, rd);
}

struct PolyInfo {
    std::vector<Lv> lv;      // sorted cut levels
    std::vector<Lv> vlev;    // level of each vertex
    std::vector<int> kind;   // per edge: +1 entry, -1 exit, 0 parallel
    std::vector<RealCyc> shift;  // level shift across each edge
    std::vector<int> vidx;   // position of each vertex level in lv
    int base = 0;            // first global strip id
};

}  // namespace

Direction Direction::of(const Vec2& raw)
{
    if (raw.is_zero())
        throw Error("ZeroDirection", "direction vector is zero");
    Direction d;
    if (!raw.x.is_zero())
        d.v = {RealCyc(1L), (raw.y / raw.x).reduced()};
    else
        d.v = {RealCyc(0L), RealCyc(1L)};
    return d;
}

Decomposition cylinder_decomposition(const TranslationSurface& s, const Vec2& d, int cap)
{
    Decomposition out;
    out.direction = Direction::of(d);
    const int np = s.num_polygons();
    std::vector<PolyInfo> info(np);
    for (int p = 0; p < np; ++p) {
        PolyInfo& pi = info[p];
        const int k = s.size(p);
        for (int j = 0; j < k; ++j)
            pi.vlev.push_back(make_lv(level_of(d, s.vertex(p, j))));
        for (int j = 0; j < k; ++j) {
            pi.kind.push_back(orient(s.edge_vector({p, j}), d));
            EdgeRef f = s.glued({p, j});
            pi.shift.push_back(level_of(d, s.vertex(f.poly, f.edge) - s.vertex(p, j + 1)));
        }
    }

    std::deque<std::pair<int, Lv>> work;
    for (int p = 0; p < np; ++p)
        for (const auto& l : info[p].vlev)
            if (insert_level(info[p].lv, l))
                work.push_back({p, l});
    long added = 0;
    while (!work.empty()) {
        auto [p, t] = work.front();
        work.pop_front();
        PolyInfo& pi = info[p];
        if (cmp(t, pi.lv.front()) <= 0 || cmp(t, pi.lv.back()) >= 0)
            continue;
        const int k = s.size(p);
        for (int dir : {-1, 1}) {
            for (int e = 0; e < k; ++e) {
                if (pi.kind[e] != dir)
                    continue;
                const Lv& ta = pi.vlev[e];
                const Lv& tb = pi.vlev[(e + 1) % k];
                int ca = cmp(t, ta), cb = cmp(t, tb);
                if (ca * cb > 0)
                    continue;
                if (ca != 0 && cb != 0) {
                    EdgeRef f = s.glued({p, e});
                    Lv nt = make_lv((t.v + pi.shift[e]).reduced());
                    if (insert_level(info[f.poly].lv, nt)) {
                        if (++added > cap) {
                            out.status = DecompStatus::Undetermined;
                            out.message = "level propagation exceeded cap " + std::to_string(cap);
                            return out;
                        }
                        work.push_back({f.poly, nt});
                    }
                }
                break;
            }
        }
    }

    int total = 0;
    for (int p = 0; p < np; ++p) {
        PolyInfo& pi = info[p];
        pi.base = total;
        total += static_cast<int>(pi.lv.size()) - 1;
        for (const auto& l : pi.vlev)
            pi.vidx.push_back(find_level(pi.lv, l));
    }
    auto covering = [&](int p, int i, int dir) {
        const PolyInfo& pi = info[p];
        const int k = s.size(p);
        for (int e = 0; e < k; ++e) {
            if (pi.kind[e] != dir)
                continue;
            int a = pi.vidx[e], b = pi.vidx[(e + 1) % k];
            if (std::min(a, b) <= i && i < std::max(a, b))
                return e;
        }
        throw Error("Internal", "no edge covers strip");
    };
    std::vector<int> strip_poly(total), strip_idx(total), next(total, -1), exit_edge(total),
        entry_edge(total);
    for (int p = 0; p < np; ++p)
        for (int i = 0; i + 1 < static_cast<int>(info[p].lv.size()); ++i) {
            int id = info[p].base + i;
            strip_poly[id] = p;
            strip_idx[id] = i;
            exit_edge[id] = covering(p, i, -1);
            entry_edge[id] = covering(p, i, 1);
        }
    for (int id = 0; id < total; ++id) {
        int p = strip_poly[id], i = strip_idx[id], e = exit_edge[id];
        EdgeRef f = s.glued({p, e});
        const RealCyc& sh = info[p].shift[e];
        Lv lo = make_lv(info[p].lv[i].v + sh), hi = make_lv(info[p].lv[i + 1].v + sh);
        const auto& ql = info[f.poly].lv;
        int j = find_level(ql, lo);
        if (j < 0 || j + 1 >= static_cast<int>(ql.size()) || cmp(ql[j + 1], hi) != 0) {
            out.status = DecompStatus::NotJS;
            out.message = "strip boundaries do not match across an edge";
            return out;
        }
        next[id] = info[f.poly].base + j;
    }

    const RealCyc n2 = norm2(d);
    const auto root = rational_sqrt(n2);
    const double dnorm = std::sqrt(n2.to_double());

    struct Pt {
        Vec2 p;
        int vertex = -1;
    };
    auto boundary_point = [&](int p, int e, int level_index) {
        const PolyInfo& pi = info[p];
        const int k = s.size(p);
        Pt r;
        if (pi.vidx[e] == level_index) {
            r.vertex = e;
            r.p = s.vertex(p, e);
        } else if (pi.vidx[(e + 1) % k] == level_index) {
            r.vertex = (e + 1) % k;
            r.p = s.vertex(p, r.vertex);
        } else {
            r.p = point_at_level(s.vertex(p, e), s.vertex(p, e + 1), pi.vlev[e].v,
                                 pi.vlev[(e + 1) % k].v, pi.lv[level_index].v);
        }
        return r;
    };

    std::vector<bool> seen(total, false);
    for (int start = 0; start < total; ++start) {
        if (seen[start])
            continue;
        std::vector<int> cyc;
        for (int id = start; !seen[id]; id = next[id]) {
            seen[id] = true;
            cyc.push_back(id);
        }
        if (next[cyc.back()] != start) {
            out.status = DecompStatus::NotJS;
            out.message = "strip map is not a permutation";
            return out;
        }
        Cylinder cy;
        cy.direction = out.direction;
        cy.d = d;
        {
            int p = strip_poly[start], i = strip_idx[start];
            cy.scaled_width = (info[p].lv[i + 1].v - info[p].lv[i].v).reduced();
        }
        RealCyc S(0L);
        // lower and upper boundary chains
        for (int side = 0; side < 2; ++side) {
            const int L = static_cast<int>(cyc.size());
            std::vector<Pt> E(L), X(L);
            for (int c = 0; c < L; ++c) {
                int id = cyc[c];
                int p = strip_poly[id], li = strip_idx[id] + side;
                E[c] = boundary_point(p, entry_edge[id], li);
                X[c] = boundary_point(p, exit_edge[id], li);
                if (side == 0)
                    S += dot(d, X[c].p - E[c].p);
            }
            std::vector<int> marks;
            for (int c = 0; c < L; ++c)
                if (E[c].vertex >= 0)
                    marks.push_back(c);
            if (marks.empty()) {
                out.status = DecompStatus::NotJS;
                out.message = "cylinder boundary without a cone point";
                return out;
            }
            auto& list = side == 0 ? cy.bottom : cy.top;
            for (std::size_t mi = 0; mi < marks.size(); ++mi) {
                int m1 = marks[mi];
                int m2 = mi + 1 < marks.size() ? marks[mi + 1] : marks[0] + L;
                Vec2 hol{0L, 0L};
                SaddleConnection sc;
                for (int c = m1; c < m2; ++c) {
                    int cc = c % L;
                    hol += X[cc].p - E[cc].p;
                    if (c + 1 < m2)
                        sc.crossings.push_back({strip_poly[cyc[cc]], exit_edge[cyc[cc]]});
                }
                if (hol.is_zero())
                    continue;
                int last = (m2 - 1) % L;
                sc.start = {strip_poly[cyc[m1]], E[m1].vertex};
                sc.end = {strip_poly[cyc[last]], X[last].vertex};
                if (sc.end.vertex < 0) {
                    out.status = DecompStatus::NotJS;
                    out.message = "boundary chain ends off a vertex";
                    return out;
                }
                sc.start_class = s.vertex_class(sc.start.poly, sc.start.vertex);
                sc.end_class = s.vertex_class(sc.end.poly, sc.end.vertex);
                sc.holonomy = hol.to_complex().reduced();
                list.push_back(std::move(sc));
            }
        }
        for (int id : cyc) {
            cy.core.push_back({strip_poly[id], exit_edge[id]});
            cy.strips.push_back({strip_poly[id], strip_idx[id]});
            const auto& lv = info[strip_poly[id]].lv;
            cy.strip_levels.push_back({lv[strip_idx[id]].v, lv[strip_idx[id] + 1].v});
        }
        cy.scaled_circumference = S.reduced();
        cy.modulus = (S / cy.scaled_width).reduced();
        cy.area = (S * cy.scaled_width / n2).reduced();
        if (root) {
            cy.circumference = (S * RealCyc(Rational(1) / *root)).reduced();
            cy.width = (cy.scaled_width * RealCyc(Rational(1) / *root)).reduced();
        }
        cy.circumference_d = S.to_double() / dnorm;
        cy.width_d = cy.scaled_width.to_double() / dnorm;
        cy.modulus_d = cy.modulus.to_double();
        out.cylinders.push_back(std::move(cy));
    }
    return out;
}

namespace {

// intersection of the ray p + s h with edge u -> w: parameter r along the edge
struct Hit {
    RealCyc s, r;
};

std::optional<Hit> ray_edge(const Vec2& p, const Vec2& h, const Vec2& u, const Vec2& w)
{
    Vec2 e = w - u;
    RealCyc den = cross(h, e);
    if (den.is_zero())
        return std::nullopt;
    RealCyc s = cross(u - p, e) / den;
    RealCyc r = cross(p - u, h) / cross(e, h);
    return Hit{s, r};
}

}  // namespace

TraceOutcome trace_ray(const TranslationSurface& s, const TraceStart& from, const Vec2& d, int cap)
{
    if (d.is_zero())
        throw Error("ZeroDirection", "direction vector is zero");
    TraceOutcome out;
    int P = from.poly;
    Vec2 p;
    Vec2 disp{0L, 0L};
    if (from.at_corner) {
        P = from.corner.poly;
        const int j = from.corner.vertex;
        p = s.vertex(P, j);
        Vec2 outv = s.edge_vector({P, j});
        Vec2 back = s.vertex(P, j - 1) - p;
        int co = orient(outv, d);
        if (co == 0 && dot(outv, d).sign() > 0) {
            out.kind = TraceKind::HitsCone;
            out.displacement = outv.to_complex().reduced();
            out.end = {P, (j + 1) % s.size(P)};
            out.end_class = s.vertex_class(P, out.end.vertex);
            return out;
        }
        if (co <= 0 || orient(d, back) <= 0)
            throw Error("BadStart", "direction does not enter the polygon from this corner");
    } else {
        p = from.point;
        for (int e = 0; e < s.size(P); ++e)
            if (orient(s.edge_vector({P, e}), p - s.vertex(P, e)) <= 0)
                throw Error("BadStart", "start point is not interior to its polygon");
    }
    const Vec2 p0 = p;
    const int P0 = P;
    for (int step = 0; step < cap; ++step) {
        const int k = s.size(P);
        int exit = -1;
        Vec2 X;
        int hit_vertex = -1;
        for (int e = 0; e < k; ++e) {
            const Vec2& u = s.vertex(P, e);
            const Vec2& w = s.vertex(P, e + 1);
            if (orient(w - u, d) >= 0)
                continue;
            auto hit = ray_edge(p, d, u, w);
            if (!hit || hit->s.sign() <= 0)
                continue;
            int r0 = hit->r.sign(), r1 = (hit->r - RealCyc(1L)).sign();
            if (r0 < 0 || r1 > 0)
                continue;
            exit = e;
            X = p + hit->s * d;
            hit_vertex = r0 == 0 ? e : (r1 == 0 ? (e + 1) % k : -1);
            break;
        }
        if (exit < 0)
            throw Error("BadStart", "ray does not leave the polygon");
        if (!from.at_corner && P == P0 && step > 0) {
            // re-entered the start polygon; check whether p0 lies on the segment p -> X
            Vec2 a = p0 - p, b = X - p0;
            if (orient(a, d) == 0 && dot(a, d).sign() >= 0 && dot(b, d).sign() >= 0) {
                disp += a;
                out.kind = TraceKind::Closes;
                out.displacement = disp.to_complex().reduced();
                return out;
            }
        }
        disp += X - p;
        if (hit_vertex >= 0) {
            out.kind = TraceKind::HitsCone;
            out.displacement = disp.to_complex().reduced();
            out.end = {P, hit_vertex};
            out.end_class = s.vertex_class(P, hit_vertex);
            return out;
        }
        out.crossings.push_back({P, exit});
        EdgeRef f = s.glued({P, exit});
        p = X + (s.vertex(f.poly, f.edge) - s.vertex(P, exit + 1));
        P = f.poly;
    }
    out.kind = TraceKind::Undetermined;
    out.displacement = disp.to_complex().reduced();
    return out;
}

std::vector<SaddleConnection> saddle_connections(const TranslationSurface& s, const RealCyc& bound)
{
    if (bound.sign() <= 0)
        throw Error("BadParameter", "bound must be positive");
    const RealCyc b2 = bound * bound;
    std::vector<SaddleConnection> out;
    struct Item {
        int poly;
        int entry;
        Vec2 offset;
        Vec2 lo, hi;
        std::vector<EdgeRef> crossings;
    };
    auto more_ccw = [](const Vec2& a, const Vec2& b) { return orient(a, b) > 0 ? b : a; };
    auto more_cw = [](const Vec2& a, const Vec2& b) { return orient(a, b) > 0 ? a : b; };
    auto far = [&](const Vec2& a, const Vec2& b) {
        Vec2 e = b - a;
        if (dot(a, e).sign() >= 0)
            return norm2(a) > b2;
        if (dot(b, e).sign() <= 0)
            return norm2(b) > b2;
        RealCyc c = cross(a, b);
        return c * c > b2 * norm2(e);
    };
    for (int P = 0; P < s.num_polygons(); ++P) {
        const int k = s.size(P);
        for (int j = 0; j < k; ++j) {
            const Vec2 v = s.vertex(P, j);
            const int cls = s.vertex_class(P, j);
            auto record = [&](int Q, int vq, const Vec2& rel, const std::vector<EdgeRef>& cr) {
                if (norm2(rel) > b2)
                    return;
                SaddleConnection sc;
                sc.start = {P, j};
                sc.end = {Q, vq};
                sc.start_class = cls;
                sc.end_class = s.vertex_class(Q, vq);
                sc.holonomy = rel.to_complex().reduced();
                sc.crossings = cr;
                out.push_back(std::move(sc));
            };
            for (int m = 1; m < k - 1; ++m)
                record(P, (j + m) % k, s.vertex(P, j + m) - v, {});
            std::vector<Item> stack;
            for (int m = k - 2; m >= 1; --m) {
                int e = (j + m) % k;
                Vec2 a = s.vertex(P, e) - v, b = s.vertex(P, e + 1) - v;
                if (far(a, b))
                    continue;
                EdgeRef f = s.glued({P, e});
                Vec2 off = s.vertex(P, e + 1) - s.vertex(f.poly, f.edge);
                stack.push_back({f.poly, f.edge, off, a, b, {{P, e}}});
            }
            while (!stack.empty()) {
                Item it = std::move(stack.back());
                stack.pop_back();
                const int kq = s.size(it.poly);
                std::vector<Item> children;
                for (int m = 0; m < kq; ++m) {
                    if (m == it.entry || m == (it.entry + 1) % kq)
                        continue;
                    Vec2 rel = s.vertex(it.poly, m) + it.offset - v;
                    if (orient(it.lo, rel) > 0 && orient(rel, it.hi) > 0)
                        record(it.poly, m, rel, it.crossings);
                }
                for (int m = 1; m < kq; ++m) {
                    int e = (it.entry + m) % kq;
                    Vec2 a = s.vertex(it.poly, e) + it.offset - v;
                    Vec2 b = s.vertex(it.poly, e + 1) + it.offset - v;
                    if (orient(a, b) <= 0)
                        continue;
                    Vec2 lo = more_ccw(it.lo, a), hi = more_cw(it.hi, b);
                    if (orient(lo, hi) <= 0 || far(a, b))
                        continue;
                    EdgeRef f = s.glued({it.poly, e});
                    Vec2 off = s.vertex(it.poly, e + 1) + it.offset - s.vertex(f.poly, f.edge);
                    Item child{f.poly, f.edge, off, lo, hi, it.crossings};
                    child.crossings.push_back({it.poly, e});
                    children.push_back(std::move(child));
                }
                for (auto c = children.rbegin(); c != children.rend(); ++c)
                    stack.push_back(std::move(*c));
            }
        }
    }
    return out;
}

std::optional<CycNum> retrace(const TranslationSurface& s, const SaddleConnection& sc)
{
    const int M = static_cast<int>(lcm_order(sc.holonomy.order(), s.coord_order()));
    Vec2 h = Vec2::from_complex(sc.holonomy.lift(M), M);
    if (h.is_zero())
        return std::nullopt;
    int P = sc.start.poly;
    Vec2 p = s.vertex(P, sc.start.vertex);
    Vec2 total{0L, 0L};
    for (const EdgeRef& e : sc.crossings) {
        if (e.poly != P)
            return std::nullopt;
        auto hit = ray_edge(p, h, s.vertex(P, e.edge), s.vertex(P, e.edge + 1));
        if (!hit || hit->s.sign() <= 0 || hit->r.sign() <= 0 ||
            (hit->r - RealCyc(1L)).sign() >= 0)
            return std::nullopt;
        Vec2 X = p + hit->s * h;
        total += X - p;
        EdgeRef f = s.glued(e);
        p = X + (s.vertex(f.poly, f.edge) - s.vertex(P, e.edge + 1));
        P = f.poly;
    }
    if (P != sc.end.poly)
        return std::nullopt;
    Vec2 last = s.vertex(P, sc.end.vertex) - p;
    if (orient(last, h) != 0 || dot(last, h).sign() <= 0)
        return std::nullopt;
    total += last;
    if (s.vertex_class(P, sc.end.vertex) != sc.end_class)
        return std::nullopt;
    return total.to_complex().reduced();
}

Commensurability commensurate_moduli(const std::vector<RealCyc>& moduli)
{
    if (moduli.empty())
        throw Error("BadParameter", "no moduli given");
    Commensurability c;
    std::vector<Rational> r;
    for (const auto& m : moduli) {
        RealCyc q = (m / moduli.front()).reduced();
        if (!q.is_rational()) {
            c.ratio = q;
            return c;
        }
        r.push_back(q.to_rational());
    }
    Integer L = 1, G = 0;
    for (const auto& q : r) {
        L = lcm(L, Integer(q.get_num()));
        G = gcd(G, Integer(q.get_den()));
    }
    Rational f(L, G);
    f.canonicalize();
    c.ok = true;
    c.mu = (RealCyc(f) * moduli.front()).reduced();
    for (const auto& q : r) {
        Rational mi = f / q;
        c.m.push_back(mpz_class(mi.get_num()).get_si());
    }
    return c;
}

Commensurability commensurate_moduli(const std::vector<Cylinder>& cyls)
{
    std::vector<RealCyc> m;
    for (const auto& c : cyls)
        m.push_back(c.modulus);
    return commensurate_moduli(m);
}

}  // namespace tsurf
