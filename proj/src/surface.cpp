#include "tsurf/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace tsurf {

namespace {

CycNum point(const Rational& x, const Rational& y)
{
    return CycNum(x) + CycNum(y) * CycNum::i();
}

// d in the half-open counter-clockwise arc (a, b], the arc being shorter than pi
bool in_arc(const Vec2& a, const Vec2& b, const Vec2& d)
{
    return cross(a, d).sign() > 0 && cross(d, b).sign() >= 0;
}

long gcd_l(long a, long b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string edge_str(const SurfaceData& d, EdgeRef e)
{
    std::string id = e.poly >= 0 && e.poly < static_cast<int>(d.polygons.size())
                         ? d.polygons[e.poly].id
                         : "#" + std::to_string(e.poly);
    return "(" + id + "," + std::to_string(e.edge) + ")";
}

struct Analysis {
    ValidationReport report;
    int coord_order = 4;
    std::vector<std::vector<EdgeRef>> glue;
    std::vector<std::vector<Vec2>> verts;
    std::vector<VertexClass> classes;
    std::vector<std::vector<int>> corner_class;
};

Analysis analyse(const SurfaceData& d)
{
    Analysis an;
    auto issue = [&](std::string code, std::string msg) {
        an.report.issues.push_back({std::move(code), std::move(msg)});
    };
    if (d.order < 1) {
        issue("BadOrder", "order must be positive");
        return an;
    }
    if (d.polygons.empty()) {
        issue("Empty", "surface has no polygons");
        return an;
    }
    an.coord_order = static_cast<int>(lcm_order(d.order, 4));
    const int np = static_cast<int>(d.polygons.size());
    std::set<std::string> ids;
    for (const auto& p : d.polygons) {
        if (!ids.insert(p.id).second)
            issue("DuplicateId", "polygon id '" + p.id + "' repeated");
        if (p.vertices.size() < 3)
            issue("DegeneratePolygon", "polygon '" + p.id + "' has fewer than 3 vertices");
    }
    if (!an.report.ok())
        return an;

    an.verts.resize(np);
    for (int p = 0; p < np; ++p)
        for (const auto& z : d.polygons[p].vertices) {
            try {
                an.verts[p].push_back(Vec2::from_complex(z.lift(d.order), an.coord_order));
            } catch (const Error& e) {
                issue("BadVertex", "polygon '" + d.polygons[p].id + "': " + e.what());
                return an;
            }
        }

    // convexity and orientation
    for (int p = 0; p < np; ++p) {
        const auto& v = an.verts[p];
        const int k = static_cast<int>(v.size());
        std::vector<Vec2> w(k);
        for (int j = 0; j < k; ++j)
            w[j] = v[(j + 1) % k] - v[j];
        bool convex = true;
        for (int j = 0; j < k && convex; ++j)
            if (w[j].is_zero() || cross(w[j], w[(j + 1) % k]).sign() <= 0)
                convex = false;
        if (convex) {
            int wraps = 0;
            for (int j = 0; j < k; ++j)
                if (in_arc(w[j], w[(j + 1) % k], w[0]))
                    ++wraps;
            convex = wraps == 1;
        }
        if (!convex)
            issue("NonConvexPolygon",
                  "polygon '" + d.polygons[p].id + "' is not strictly convex and counter-clockwise");
    }

    // gluing involution
    an.glue.assign(np, {});
    for (int p = 0; p < np; ++p)
        an.glue[p].assign(an.verts[p].size(), EdgeRef{-1, -1});
    auto in_range = [&](EdgeRef e) {
        return e.poly >= 0 && e.poly < np && e.edge >= 0 &&
               e.edge < static_cast<int>(an.verts[e.poly].size());
    };
    for (const auto& [e, f] : d.gluing) {
        if (!in_range(e) || !in_range(f)) {
            issue("BadEdgeRef", "gluing refers to " + edge_str(d, e) + " / " + edge_str(d, f));
            continue;
        }
        if (e == f) {
            issue("GluingNotInvolution", "edge " + edge_str(d, e) + " glued to itself");
            continue;
        }
        for (EdgeRef x : {e, f})
            if (an.glue[x.poly][x.edge].poly >= 0)
                issue("GluingNotInvolution", "edge " + edge_str(d, x) + " glued twice");
        an.glue[e.poly][e.edge] = f;
        an.glue[f.poly][f.edge] = e;
    }
    for (int p = 0; p < np; ++p)
        for (int j = 0; j < static_cast<int>(an.glue[p].size()); ++j)
            if (an.glue[p][j].poly < 0)
                issue("GluingNotInvolution", "edge " + edge_str(d, {p, j}) + " is unglued");
    if (!an.report.ok())
        return an;

    auto evec = [&](EdgeRef e) {
        const auto& v = an.verts[e.poly];
        return v[(e.edge + 1) % v.size()] - v[e.edge];
    };
    for (int p = 0; p < np; ++p)
        for (int j = 0; j < static_cast<int>(an.glue[p].size()); ++j) {
            EdgeRef e{p, j}, f = an.glue[p][j];
            if (e < f && !(evec(e) + evec(f)).is_zero())
                issue("GluingMismatch", "edges " + edge_str(d, e) + " and " + edge_str(d, f) +
                                            " are not opposite translates");
        }

    // connectivity
    std::vector<int> comp(np, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        for (const auto& f : an.glue[p])
            if (comp[f.poly] < 0) {
                comp[f.poly] = 0;
                stack.push_back(f.poly);
            }
    }
    if (std::count(comp.begin(), comp.end(), -1) > 0)
        issue("Disconnected", "edge-adjacency graph of the polygons is not connected");
    if (!an.report.ok())
        return an;

    // vertex classes by walking corners counter-clockwise
    an.corner_class.assign(np, {});
    for (int p = 0; p < np; ++p)
        an.corner_class[p].assign(an.verts[p].size(), -1);
    for (int p = 0; p < np; ++p)
        for (int j = 0; j < static_cast<int>(an.verts[p].size()); ++j) {
            if (an.corner_class[p][j] >= 0)
                continue;
            VertexClass vc;
            const int id = static_cast<int>(an.classes.size());
            Corner c{p, j};
            Vec2 d0 = evec({p, j});
            int wraps = 0;
            do {
                an.corner_class[c.poly][c.vertex] = id;
                vc.corners.push_back(c);
                const int k = static_cast<int>(an.verts[c.poly].size());
                EdgeRef in{c.poly, (c.vertex + k - 1) % k};
                Vec2 out = evec({c.poly, c.vertex});
                Vec2 back = -evec(in);
                if (in_arc(out, back, d0))
                    ++wraps;
                EdgeRef f = an.glue[in.poly][in.edge];
                c = Corner{f.poly, f.edge};
            } while (!(c == Corner{p, j}));
            vc.multiplicity = wraps;
            if (wraps < 1)
                issue("BadConeAngle", "vertex class " + std::to_string(id) +
                                          " has no full turn");
            an.classes.push_back(std::move(vc));
        }
    return an;
}

}  // namespace

Vec2 Vec2::from_complex(const CycNum& z, int order)
{
    return {RealCyc::unchecked(z.re().lift(order)), RealCyc::unchecked(z.im().lift(order))};
}

CycNum Vec2::to_complex() const { return x.value() + y.value() * CycNum::i(); }

int orient(const Vec2& a, const Vec2& b) { return cross(a, b).sign(); }

Mat2 Mat2::rotation(long p, long q)
{
    long g = gcd_l(p, q);
    p /= g;
    q /= g;
    p %= q;
    if (p < 0)
        p += q;
    if (q == 1)
        return identity();
    if (q == 2)
        return diag(-1L, -1L);
    RealCyc c = cos2pi(p, q), s = sin2pi(p, q);
    return {c, -s, s, c};
}

Mat2 Mat2::inverse() const
{
    RealCyc dt = det();
    if (dt.is_zero())
        throw Error("DivisionByZero", "singular matrix");
    RealCyc r = dt.inv();
    return {d * r, -b * r, -c * r, a * r};
}

std::pair<CycNum, CycNum> Mat2::complex_form() const
{
    const CycNum half(Rational(1, 2));
    CycNum i = CycNum::i();
    CycNum alpha = ((a + d).value() + i * (c - b).value()) * half;
    CycNum beta = ((a - d).value() + i * (c + b).value()) * half;
    return {alpha, beta};
}

std::string Mat2::to_string() const
{
    std::ostringstream os;
    os << "[[" << a << ", " << b << "], [" << c << ", " << d << "]]";
    return os.str();
}

ValidationReport validate(const SurfaceData& data) { return analyse(data).report; }

TranslationSurface TranslationSurface::make(SurfaceData data)
{
    Analysis an = analyse(data);
    if (!an.report.ok()) {
        std::string msg;
        for (const auto& is : an.report.issues)
            msg += (msg.empty() ? "" : "; ") + is.code + ": " + is.message;
        throw Error(an.report.issues.front().code, msg);
    }
    for (auto& p : data.polygons)
        for (auto& z : p.vertices)
            z = z.lift(data.order);
    auto cache = std::make_shared<Cache>();
    cache->coord_order = an.coord_order;
    cache->glue = std::move(an.glue);
    cache->verts = std::move(an.verts);
    cache->classes = std::move(an.classes);
    cache->corner_class = std::move(an.corner_class);

    SurfaceInvariants& inv = cache->inv;
    inv.faces = static_cast<int>(data.polygons.size());
    int halfedges = 0;
    for (const auto& p : data.polygons)
        halfedges += static_cast<int>(p.vertices.size());
    inv.edges = halfedges / 2;
    inv.vertices = static_cast<int>(cache->classes.size());
    inv.euler_characteristic = inv.vertices - inv.edges + inv.faces;
    inv.genus = (2 - inv.euler_characteristic) / 2;
    int excess = 0;
    for (int c = 0; c < inv.vertices; ++c) {
        int m = cache->classes[c].multiplicity;
        inv.cone_points.push_back({c, m});
        excess += m - 1;
        if (m >= 2)
            inv.zero_orders.push_back(m - 1);
    }
    std::sort(inv.zero_orders.begin(), inv.zero_orders.end());
    if (excess != 2 * inv.genus - 2)
        throw Error("BadConeAngle", "cone excess " + std::to_string(excess) +
                                        " inconsistent with Euler characteristic");
    RealCyc twice_area(0L);
    for (const auto& v : cache->verts)
        for (std::size_t j = 0; j < v.size(); ++j)
            twice_area += cross(v[j], v[(j + 1) % v.size()]);
    inv.area = (twice_area * RealCyc(Rational(1, 2))).reduced();

    TranslationSurface s;
    s.data_ = std::make_shared<const SurfaceData>(std::move(data));
    s.cache_ = std::move(cache);
    return s;
}

int TranslationSurface::polygon_index(const std::string& id) const
{
    for (int p = 0; p < num_polygons(); ++p)
        if (data_->polygons[p].id == id)
            return p;
    throw Error("UnknownPolygon", "no polygon with id '" + id + "'");
}

const Vec2& TranslationSurface::vertex(int p, int j) const
{
    const auto& v = cache_->verts[p];
    const int k = static_cast<int>(v.size());
    return v[((j % k) + k) % k];
}

Vec2 TranslationSurface::edge_vector(EdgeRef e) const
{
    return vertex(e.poly, e.edge + 1) - vertex(e.poly, e.edge);
}

CycNum TranslationSurface::edge_holonomy(EdgeRef e) const
{
    const auto& v = data_->polygons[e.poly].vertices;
    return v[(e.edge + 1) % v.size()] - v[e.edge];
}

std::vector<EdgeRef> TranslationSurface::edge_pairs() const
{
    std::vector<EdgeRef> out;
    for (int p = 0; p < num_polygons(); ++p)
        for (int j = 0; j < size(p); ++j)
            if (canonical({p, j}) == EdgeRef{p, j})
                out.push_back({p, j});
    return out;
}

Corner TranslationSurface::next_ccw(Corner c) const
{
    const int k = size(c.poly);
    EdgeRef f = glued({c.poly, (c.vertex + k - 1) % k});
    return {f.poly, f.edge};
}

SurfaceInvariants invariants(const TranslationSurface& s) { return s.invariants(); }

TranslationSurface build_origami(const std::vector<int>& h, const std::vector<int>& v)
{
    const int d = static_cast<int>(h.size());
    auto is_perm = [d](const std::vector<int>& p) {
        if (static_cast<int>(p.size()) != d)
            return false;
        std::vector<bool> seen(d, false);
        for (int x : p) {
            if (x < 0 || x >= d || seen[x])
                return false;
            seen[x] = true;
        }
        return true;
    };
    if (d == 0 || !is_perm(h) || !is_perm(v))
        throw Error("BadParameter", "origami needs two permutations of the same size");
    std::vector<bool> seen(d, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : {h[x], v[x]})
            if (!seen[y]) {
                seen[y] = true;
                stack.push_back(y);
            }
    }
    if (std::count(seen.begin(), seen.end(), false) > 0)
        throw Error("Disconnected", "permutations do not act transitively");
    SurfaceData sd;
    sd.order = 4;
    for (int i = 0; i < d; ++i) {
        Polygon p;
        p.id = "S" + std::to_string(i);
        Rational x(i);
        p.vertices = {point(x, 0), point(x + 1, 0), point(x + 1, 1), point(x, 1)};
        sd.polygons.push_back(std::move(p));
    }
    for (int i = 0; i < d; ++i) {
        sd.gluing.push_back({{i, 1}, {h[i], 3}});
        sd.gluing.push_back({{i, 2}, {v[i], 0}});
    }
    return TranslationSurface::make(std::move(sd));
}

TranslationSurface build_2ngon(int n)
{
    if (n < 3 || n % 2 == 0)
        throw Error("BadParameter", "2n-gon needs odd n >= 3");
    SurfaceData sd;
    sd.order = 2 * n;
    Polygon p;
    p.id = "P0";
    for (int j = 0; j < 2 * n; ++j)
        p.vertices.push_back(CycNum::zeta(2 * n, j));
    sd.polygons.push_back(std::move(p));
    for (int j = 0; j < n; ++j)
        sd.gluing.push_back({{0, j}, {0, j + n}});
    return TranslationSurface::make(std::move(sd));
}

TranslationSurface build_double_ngon(int n)
{
    if (n < 5 || n % 2 == 0)
        throw Error("BadParameter", "double n-gon needs odd n >= 5");
    SurfaceData sd;
    sd.order = n;
    Polygon a, b;
    a.id = "P0";
    b.id = "P1";
    for (int j = 0; j < n; ++j) {
        a.vertices.push_back(CycNum::zeta(n, j));
        b.vertices.push_back(-CycNum::zeta(n, j));
    }
    sd.polygons = {std::move(a), std::move(b)};
    for (int j = 0; j < n; ++j)
        sd.gluing.push_back({{0, j}, {1, j}});
    return TranslationSurface::make(std::move(sd));
}

TranslationSurface build_wiman(int g, int k)
{
    if (g < 2 || k < 1 || k > g)
        throw Error("BadParameter", "wiman surface needs g >= 2 and 1 <= k <= g");
    const int n = 2 * g + 1;
    SurfaceData sd;
    sd.order = 2 * n;
    // polygon index: 2m for eps = +1, 2m+1 for eps = -1
    for (int m = 0; m < n; ++m)
        for (int s = 0; s < 2; ++s) {
            CycNum eps(s == 0 ? 1L : -1L);
            Polygon p;
            p.id = "T" + std::to_string(m) + (s == 0 ? "+" : "-");
            p.vertices = {CycNum(0L), eps * CycNum::zeta(2 * n, static_cast<long>(k) * (2 * m - 1)),
                          eps * CycNum::zeta(2 * n, static_cast<long>(k) * (2 * m + 1))};
            sd.polygons.push_back(std::move(p));
        }
    for (int m = 0; m < n; ++m) {
        for (int s = 0; s < 2; ++s)
            sd.gluing.push_back({{2 * m + s, 2}, {2 * ((m + 1) % n) + s, 0}});
        sd.gluing.push_back({{2 * m, 1}, {2 * m + 1, 1}});
    }
    return TranslationSurface::make(std::move(sd));
}

Polygon wiman_triangle(int g, int k)
{
    const int n = 2 * g + 1;
    return {"T", {CycNum(0L), CycNum::zeta(2 * n, -k), CycNum::zeta(2 * n, k)}};
}

Polygon wiman_half_triangle(int g, int k)
{
    const int n = 2 * g + 1;
    CycNum top = CycNum::zeta(2 * n, k);
    return {"T+", {CycNum(0L), top.re(), top}};
}

namespace {

CycNum apply_elem(const BilliardGroupElement& t, const CycNum& z)
{
    return t.u * (t.flip ? z.conj() : z);
}

BilliardGroupElement compose(const BilliardGroupElement& x, const BilliardGroupElement& y)
{
    return {x.u * (x.flip ? y.u.conj() : y.u), x.flip != y.flip};
}

bool same_elem(const BilliardGroupElement& x, const BilliardGroupElement& y)
{
    return x.flip == y.flip && x.u == y.u;
}

}  // namespace

std::vector<BilliardGroupElement> billiard_group(const Polygon& p, int order)
{
    const int k = static_cast<int>(p.vertices.size());
    std::vector<BilliardGroupElement> gens;
    for (int e = 0; e < k; ++e) {
        CycNum w = (p.vertices[(e + 1) % k] - p.vertices[e]).lift(order);
        if (w.is_zero())
            throw Error("DegeneratePolygon", "zero-length side");
        gens.push_back({w / w.conj(), true});
    }
    std::vector<BilliardGroupElement> group{{CycNum(1L).lift(order), false}};
    const std::size_t bound = 2 * static_cast<std::size_t>(order);
    for (std::size_t i = 0; i < group.size(); ++i)
        for (const auto& s : gens) {
            BilliardGroupElement h = compose(group[i], s);
            bool known = std::any_of(group.begin(), group.end(),
                                     [&](const BilliardGroupElement& x) { return same_elem(x, h); });
            if (known)
                continue;
            group.push_back(h);
            if (group.size() > bound)
                throw Error("IrrationalPolygon", "reflection group exceeds " +
                                                     std::to_string(bound) + " elements");
        }
    return group;
}

TranslationSurface build_billiard(const Polygon& p, int order, BilliardMode mode)
{
    {
        SurfaceData probe;
        probe.order = order;
        probe.polygons = {p};
        // a single polygon glued to itself cannot validate; only convexity is checked here
        ValidationReport r = validate(probe);
        for (const auto& is : r.issues)
            if (is.code == "NonConvexPolygon" || is.code == "BadVertex" ||
                is.code == "DegeneratePolygon")
                throw Error(is.code, is.message);
    }
    const int k = static_cast<int>(p.vertices.size());
    std::vector<CycNum> v;
    for (const auto& z : p.vertices)
        v.push_back(z.lift(order));
    auto group = billiard_group(p, order);
    const int G = static_cast<int>(group.size());
    auto index_of = [&](const BilliardGroupElement& x) {
        for (int i = 0; i < G; ++i)
            if (same_elem(group[i], x))
                return i;
        throw Error("Internal", "group not closed");
    };
    std::vector<BilliardGroupElement> refl;
    for (int e = 0; e < k; ++e) {
        CycNum w = v[(e + 1) % k] - v[e];
        refl.push_back({w / w.conj(), true});
    }
    // vertex list of tau(P), counter-clockwise, and the side map P edge -> copy edge
    auto copy_vertices = [&](const BilliardGroupElement& t) {
        std::vector<CycNum> w(k);
        for (int i = 0; i < k; ++i)
            w[i] = apply_elem(t, v[t.flip ? (k - i) % k : i]);
        return w;
    };
    auto side = [&](const BilliardGroupElement& t, int e) {
        return t.flip ? ((-e - 1) % k + k) % k : e;
    };

    std::vector<int> rep_of(G, -1), h_of(G, -1);
    std::vector<int> reps;
    std::vector<std::vector<int>> hperm(G);  // for h in H: P side e -> P side hperm[e]
    if (mode == BilliardMode::Literal) {
        for (int i = 0; i < G; ++i) {
            rep_of[i] = i;
            h_of[i] = 0;
            reps.push_back(i);
        }
        hperm[0].resize(k);
        std::iota(hperm[0].begin(), hperm[0].end(), 0);
    } else {
        std::vector<int> H;
        for (int i = 0; i < G; ++i) {
            std::vector<CycNum> w = copy_vertices(group[i]);
            for (int r = 0; r < k; ++r) {
                CycNum t = w[0] - v[r];
                bool ok = true;
                for (int j = 1; j < k && ok; ++j)
                    ok = w[j] - v[(j + r) % k] == t;
                if (ok) {
                    H.push_back(i);
                    hperm[i].resize(k);
                    for (int e = 0; e < k; ++e)
                        hperm[i][e] = (side(group[i], e) + r) % k;
                    break;
                }
            }
        }
        for (int i = 0; i < G; ++i) {
            if (rep_of[i] >= 0)
                continue;
            reps.push_back(i);
            for (int h : H) {
                int x = index_of(compose(group[i], group[h]));
                rep_of[x] = i;
                h_of[x] = h;
            }
        }
    }
    std::vector<int> copy_index(G, -1);
    for (std::size_t c = 0; c < reps.size(); ++c)
        copy_index[reps[c]] = static_cast<int>(c);

    SurfaceData sd;
    sd.order = order;
    for (std::size_t c = 0; c < reps.size(); ++c)
        sd.polygons.push_back({"C" + std::to_string(c), copy_vertices(group[reps[c]])});
    std::map<std::pair<int, int>, std::pair<int, int>> glue;
    for (std::size_t c = 0; c < reps.size(); ++c) {
        const auto& tau = group[reps[c]];
        for (int e = 0; e < k; ++e) {
            int x = index_of(compose(tau, refl[e]));
            int rep = rep_of[x];
            int pe = hperm[h_of[x]][e];
            std::pair<int, int> a{static_cast<int>(c), side(tau, e)};
            std::pair<int, int> b{copy_index[rep], side(group[rep], pe)};
            auto ia = glue.find(a);
            if (ia != glue.end() && ia->second != b)
                throw Error("Internal", "inconsistent billiard gluing");
            glue[a] = b;
            glue[b] = a;
        }
    }
    for (const auto& [a, b] : glue)
        if (a < b)
            sd.gluing.push_back({{a.first, a.second}, {b.first, b.second}});
    return TranslationSurface::make(std::move(sd));
}

TranslationSurface act(const TranslationSurface& s, const Mat2& A)
{
    if (A.det().sign() <= 0)
        throw Error("NonPositiveDeterminant", "distortion needs det > 0");
    auto [alpha, beta] = A.complex_form();
    SurfaceData sd = s.data();
    long order = 1;
    for (auto& p : sd.polygons)
        for (auto& z : p.vertices) {
            z = (alpha * z + beta * z.conj()).reduced();
            order = lcm_order(order, z.order());
            if (order > join_cap())
                throw Error("FieldJoinOverflow", "distorted surface needs order " +
                                                     std::to_string(order));
        }
    sd.order = s.order() % order == 0 ? s.order() : static_cast<int>(lcm_order(s.order(), order));
    for (auto& p : sd.polygons)
        for (auto& z : p.vertices)
            z = z.lift(sd.order);
    return TranslationSurface::make(std::move(sd));
}

FloatSurface act_float(const TranslationSurface& s, double a, double b, double c, double d)
{
    if (a * d - b * c <= 0)
        throw Error("NonPositiveDeterminant", "distortion needs det > 0");
    FloatSurface f;
    for (int p = 0; p < s.num_polygons(); ++p) {
        f.ids.push_back(s.polygon(p).id);
        std::vector<std::complex<double>> vs;
        for (const auto& z : s.polygon(p).vertices) {
            auto w = z.to_complex();
            vs.push_back({a * w.real() + b * w.imag(), c * w.real() + d * w.imag()});
        }
        f.vertices.push_back(std::move(vs));
    }
    return f;
}

}  // namespace tsurf
