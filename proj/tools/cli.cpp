#include "cli.hpp"

#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tsurf/hodge.hpp"
#include "tsurf/json_io.hpp"
#include "tsurf/render.hpp"

namespace tsurf::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    std::string file, out, svg, dir, matrix, polygon, form = "omegag", from_poly, h, v;
    std::string bound = "3";
    int g = 0, k = 0, n = 0, cap = kDefaultCap, threads = 1, vertex = 0;
    long bits = 128;
    bool json = false, half = false, quotient = false;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        parts.push_back(item);
    return parts;
}

std::pair<long, long> parse_fraction(const std::string& s)
{
    Rational q;
    try {
        q = parse_rational(s);
    } catch (const Error&) {
        throw UsageError("bad fraction '" + s + "'");
    }
    return {q.get_num().get_si(), q.get_den().get_si()};
}

// rational, or cos2pi(p/q), sin2pi(p/q), cot(p/q) with optional leading '-'
RealCyc parse_scalar(std::string tok)
{
    bool neg = false;
    if (!tok.empty() && tok[0] == '-' && tok.find('(') != std::string::npos) {
        neg = true;
        tok = tok.substr(1);
    }
    RealCyc x;
    auto fn = [&](const std::string& name) {
        return tok.rfind(name + "(", 0) == 0 && tok.back() == ')';
    };
    auto arg = [&](std::size_t len) { return parse_fraction(tok.substr(len + 1, tok.size() - len - 2)); };
    if (fn("cos2pi")) {
        auto [p, q] = arg(6);
        x = cos2pi(p, q);
    } else if (fn("sin2pi")) {
        auto [p, q] = arg(6);
        x = sin2pi(p, q);
    } else if (fn("cot")) {
        auto [p, q] = arg(3);
        x = cot_pi(p, q);
    } else {
        try {
            x = RealCyc(parse_rational(tok));
        } catch (const Error&) {
            throw UsageError("bad number '" + tok + "'");
        }
    }
    return neg ? -x : x;
}

std::vector<RealCyc> parse_scalars(const std::string& s, std::size_t count, const char* what)
{
    auto parts = split(s, ',');
    if (parts.size() != count)
        throw UsageError(std::string(what) + " needs " + std::to_string(count) + " comma-separated entries");
    std::vector<RealCyc> xs;
    for (const auto& p : parts)
        xs.push_back(parse_scalar(p));
    return xs;
}

Vec2 parse_dir(const std::string& s)
{
    auto xs = parse_scalars(s, 2, "--dir");
    Vec2 d{xs[0], xs[1]};
    if (d.is_zero())
        throw UsageError("--dir must be nonzero");
    return d;
}

std::vector<int> parse_perm(const std::string& s, const char* what)
{
    std::vector<int> p;
    for (const auto& part : split(s, ',')) {
        try {
            p.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw UsageError(std::string("bad entry in ") + what);
        }
    }
    return p;
}

Json cyc_pair(const CycNum& z)
{
    Json j;
    j["exact"] = to_json(z.reduced());
    auto c = z.to_complex();
    j["double"] = Json::array({c.real(), c.imag()});
    return j;
}

Json edge_json(const TranslationSurface& s, EdgeRef e)
{
    return Json::array({s.polygon(e.poly).id, e.edge});
}

Json auto_json(const TranslationSurface& s, const AffineAuto& f)
{
    Json j;
    j["linear"] = to_json(f.linear);
    auto cl = classify(f.linear);
    j["kind"] = kind_name(cl.kind);
    j["trace"] = to_json(cl.trace);
    Json pm = Json::array();
    for (std::size_t p = 0; p < f.polygon_map.size(); ++p)
        pm.push_back(Json::array({s.polygon(static_cast<int>(p)).id, s.polygon(f.polygon_map[p]).id,
                                  f.shift[p]}));
    j["polygon_map"] = pm;
    return j;
}

std::string status_name(ParabolicStatus st)
{
    switch (st) {
    case ParabolicStatus::Ok: return "ok";
    case ParabolicStatus::NotJS: return "not_jenkins_strebel";
    case ParabolicStatus::Undetermined: return "undetermined";
    case ParabolicStatus::Incommensurable: return "incommensurable";
    }
    return "undetermined";
}

Json parabolic_json(const TranslationSurface& s, const ParabolicResult& r)
{
    Json j;
    j["status"] = status_name(r.status);
    j["direction"] = Json::array({to_json(r.twist.d.x), to_json(r.twist.d.y)});
    if (!r.message.empty())
        j["message"] = r.message;
    if (r.ok()) {
        j["matrix"] = to_json(r.matrix);
        j["mu"] = to_json(r.twist.mu);
        j["powers"] = r.twist.powers;
        Json ms = Json::array();
        for (const auto& c : r.twist.cylinders)
            ms.push_back(to_json(c.modulus));
        j["moduli"] = ms;
    }
    (void)s;
    return j;
}

Json spectral_json(const SpectralReport& r)
{
    Json j;
    j["char_poly"] = to_json(r.char_poly);
    j["palindromic"] = r.palindromic;
    j["quasi_unipotent"] = r.quasi_unipotent;
    j["finite_order"] = r.finite_order;
    j["cyclotomic_factors"] = r.cyclotomic_factors;
    Json roots = Json::array();
    for (const auto& z : r.roots)
        roots.push_back(Json::array({z.real(), z.imag()}));
    j["roots"] = roots;
    if (r.leading) {
        j["leading"] = *r.leading;
        j["leading_simple"] = r.leading_simple;
        j["leading_dominant"] = r.leading_dominant;
        j["dominance_margin"] = r.dominance_margin;
    } else {
        j["leading"] = nullptr;
    }
    return j;
}

struct Action {
    std::string label;
    Mat2 linear;
    IMat M;
};

// symmetries, parabolic twists in the given directions and their hyperbolic products
std::vector<Action> generated_actions(const TranslationSurface& s, const CellComplex& c,
                                      const SymplecticBasis& basis, const std::vector<Vec2>& dirs,
                                      int cap)
{
    std::vector<Action> acts;
    auto syms = symmetry_search(s);
    for (std::size_t i = 0; i < syms.size(); ++i)
        acts.push_back({"symmetry " + std::to_string(i), syms[i].linear,
                        auto_action(s, c, syms[i], basis)});
    std::vector<Action> twists;
    for (const auto& d : dirs) {
        auto r = parabolic_element(s, d, cap);
        if (!r.ok())
            continue;
        auto rec = multitwist_auto(s, r.twist);
        twists.push_back({"twist " + std::to_string(twists.size()), r.matrix,
                          twist_action(s, c, rec, basis)});
    }
    for (const auto& t : twists)
        acts.push_back(t);
    for (const auto& t : twists)
        for (std::size_t i = 0; i < syms.size(); ++i) {
            Mat2 L = (syms[i].linear * t.linear).reduced();
            if (classify(L).kind != MatrixKind::Hyperbolic)
                continue;
            acts.push_back({"symmetry " + std::to_string(i) + " * " + t.label, L,
                            IMat(acts[i].M * t.M)});
            break;
        }
    return acts;
}

std::vector<Vec2> dirs_or_axes(const Opts& o)
{
    if (!o.dir.empty())
        return {parse_dir(o.dir)};
    return {Vec2{0L, 1L}, Vec2{1L, 0L}};
}

TraceFieldReport wiman_trace_field(const TranslationSurface& s)
{
    std::vector<RealCyc> traces;
    for (const auto& f : symmetry_search(s))
        traces.push_back(f.linear.trace());
    auto v = parabolic_element(s, Vec2{0L, 1L});
    if (v.ok())
        traces.push_back(v.matrix.trace());
    return trace_field(traces);
}

class Runner {
public:
    Runner(std::ostream& out) : out_(out) {}

    void emit(const Json& j, const Opts& o) const { emit_text(j.dump(2) + "\n", o); }
    void emit_text(const std::string& text, const Opts& o) const
    {
        if (o.out.empty())
            out_ << text;
        else
            save_text(o.out, text);
    }

private:
    std::ostream& out_;
};

Json invariants_json(const TranslationSurface& s)
{
    const auto& inv = s.invariants();
    Json j;
    j["genus"] = inv.genus;
    j["euler_characteristic"] = inv.euler_characteristic;
    j["vertices"] = inv.vertices;
    j["edges"] = inv.edges;
    j["faces"] = inv.faces;
    j["zero_orders"] = inv.zero_orders;
    Json cp = Json::array();
    for (const auto& [cls, m] : inv.cone_points)
        cp.push_back(Json{{"class", cls}, {"multiplicity", m}});
    j["cone_points"] = cp;
    j["area"] = to_json(inv.area);
    return j;
}

std::pair<Polygon, int> load_polygon(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("IOError", "cannot read " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("ParseError", e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw Error("ParseError", "polygon needs \"vertices\"");
    Polygon p;
    p.id = j.value("id", std::string("P"));
    int order = 1;
    for (const auto& v : j["vertices"]) {
        p.vertices.push_back(cyc_from_json(v));
        order = std::lcm(order, p.vertices.back().order());
    }
    if (j.contains("order") && j["order"].is_number_integer())
        order = std::lcm(order, j["order"].get<int>());
    return {p, order};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact computations with translation surfaces", "tsurf"};
    app.require_subcommand(1);
    Opts o;
    Runner runner(out);
    std::function<int()> action;
    std::vector<CLI::App*> leaves;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                    std::function<int()> fn) {
        auto* sc = parent->add_subcommand(name, desc);
        sc->add_option("-o,--out", o.out, "write output to a file");
        sc->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
        sc->add_flag("--json", o.json, "JSON output (default)");
        sc->callback([&action, fn] { action = fn; });
        leaves.push_back(sc);
        return sc;
    };
    auto with_file = [&](CLI::App* sc) {
        sc->add_option("file", o.file, "surface JSON")->required();
        return sc;
    };
    auto gk = [&](CLI::App* sc) {
        sc->add_option("--g", o.g, "genus")->required()->check(CLI::Range(2, 1000));
        sc->add_option("--k", o.k, "differential index")->required()->check(CLI::PositiveNumber);
        return sc;
    };
    auto check_k = [&] {
        if (o.k < 1 || o.k > o.g)
            throw UsageError("--k must lie in 1..g");
    };
    auto surface_out = [&](const TranslationSurface& s) {
        runner.emit(surface_to_json(s), o);
        return 0;
    };

    auto* build = app.add_subcommand("build", "construct a surface");
    build->require_subcommand(1);
    gk(leaf(build, "wiman", "Wiman surface (W_g, omega_k)", [&] {
        check_k();
        return surface_out(build_wiman(o.g, o.k));
    }));
    leaf(build, "2ngon", "regular 2n-gon", [&] { return surface_out(build_2ngon(o.n)); })
        ->add_option("--n", o.n, "n")->required()->check(CLI::Range(2, 1000));
    leaf(build, "double-ngon", "two regular n-gons", [&] { return surface_out(build_double_ngon(o.n)); })
        ->add_option("--n", o.n, "n")->required()->check(CLI::Range(3, 1000));
    {
        auto* sc = leaf(build, "origami", "square-tiled surface", [&] {
            return surface_out(build_origami(parse_perm(o.h, "--right"), parse_perm(o.v, "--top")));
        });
        sc->add_option("--right", o.h, "right-neighbour permutation, 0-based, comma separated")->required();
        sc->add_option("--top", o.v, "top-neighbour permutation, 0-based, comma separated")->required();
    }
    {
        auto* sc = leaf(build, "billiard", "unfolding of a rational polygon", [&] {
            Polygon p;
            int order = 0;
            if (!o.polygon.empty()) {
                std::tie(p, order) = load_polygon(o.polygon);
            } else {
                if (o.g < 2)
                    throw UsageError("billiard needs --polygon or --g/--k");
                check_k();
                p = o.half ? wiman_half_triangle(o.g, o.k) : wiman_triangle(o.g, o.k);
                order = 2 * (2 * o.g + 1);
            }
            auto mode = o.quotient ? BilliardMode::Quotient : BilliardMode::Literal;
            return surface_out(build_billiard(p, order, mode));
        });
        sc->add_option("--polygon", o.polygon, "polygon JSON {\"vertices\": [...]}");
        sc->add_option("--g", o.g, "Wiman triangle genus");
        sc->add_option("--k", o.k, "Wiman triangle index");
        sc->add_flag("--half", o.half, "use the right half of the Wiman triangle");
        sc->add_flag("--quotient", o.quotient, "identify copies differing by a translation");
    }

    with_file(leaf(&app, "validate", "check a surface description", [&] {
        std::ifstream in(o.file);
        if (!in)
            throw Error("IOError", "cannot read " + o.file);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw Error("ParseError", e.what());
        }
        auto rep = validate(surface_from_json(j));
        Json r;
        r["ok"] = rep.ok();
        Json is = Json::array();
        for (const auto& i : rep.issues)
            is.push_back(Json{{"code", i.code}, {"message", i.message}});
        r["issues"] = is;
        runner.emit(r, o);
        return rep.ok() ? 0 : 2;
    }));

    with_file(leaf(&app, "invariants", "genus, cone points, area", [&] {
        runner.emit(invariants_json(load_surface(o.file)), o);
        return 0;
    }));

    with_file(leaf(&app, "act", "apply a matrix of positive determinant", [&] {
        auto xs = parse_scalars(o.matrix, 4, "--matrix");
        return surface_out(act(load_surface(o.file), Mat2{xs[0], xs[1], xs[2], xs[3]}));
    }))->add_option("--matrix", o.matrix, "a,b,c,d")->required();

    {
        auto* sc = with_file(leaf(&app, "trace", "follow a ray from a corner", [&] {
            auto s = load_surface(o.file);
            int p = s.polygon_index(o.from_poly);
            if (p < 0 || o.vertex < 0 || o.vertex >= s.size(p))
                throw UsageError("--poly/--vertex out of range");
            auto r = trace_ray(s, TraceStart::from_corner({p, o.vertex}), parse_dir(o.dir), o.cap);
            Json j;
            j["kind"] = r.kind == TraceKind::HitsCone ? "hits_cone"
                        : r.kind == TraceKind::Closes ? "closes"
                                                      : "undetermined";
            if (r.kind != TraceKind::Undetermined)
                j["displacement"] = cyc_pair(r.displacement);
            Json cr = Json::array();
            for (const auto& e : r.crossings)
                cr.push_back(edge_json(s, e));
            j["crossings"] = cr;
            if (r.kind == TraceKind::HitsCone) {
                j["end"] = Json::array({s.polygon(r.end.poly).id, r.end.vertex});
                j["end_class"] = r.end_class;
            }
            runner.emit(j, o);
            return r.kind == TraceKind::Undetermined ? 2 : 0;
        }));
        sc->add_option("--poly", o.from_poly, "start polygon id")->required();
        sc->add_option("--vertex", o.vertex, "start vertex index");
        sc->add_option("--dir", o.dir, "direction x,y")->required();
        sc->add_option("--cap", o.cap, "crossing cap")->check(CLI::PositiveNumber);
    }

    {
        auto* sc = with_file(leaf(&app, "cylinders", "cylinder decomposition", [&] {
            auto s = load_surface(o.file);
            auto dec = cylinder_decomposition(s, parse_dir(o.dir), o.cap);
            runner.emit(to_json(dec, s), o);
            return dec.ok() ? 0 : 2;
        }));
        sc->add_option("--dir", o.dir, "direction x,y")->required();
        sc->add_option("--cap", o.cap, "crossing cap")->check(CLI::PositiveNumber);
    }

    with_file(leaf(&app, "saddles", "saddle connections up to a length", [&] {
        auto s = load_surface(o.file);
        auto scs = saddle_connections(s, parse_scalar(o.bound));
        Json j;
        j["bound"] = o.bound;
        j["count"] = scs.size();
        Json a = Json::array();
        for (const auto& sc : scs)
            a.push_back(to_json(sc, s));
        j["saddle_connections"] = a;
        runner.emit(j, o);
        return 0;
    }))->add_option("--bound", o.bound, "length bound");

    auto* veech = app.add_subcommand("veech", "Veech group elements");
    veech->require_subcommand(1);
    {
        auto* sc = with_file(leaf(veech, "parabolic", "parabolic element fixing a direction", [&] {
            auto s = load_surface(o.file);
            auto r = parabolic_element(s, parse_dir(o.dir), o.cap);
            runner.emit(parabolic_json(s, r), o);
            return r.ok() ? 0 : 2;
        }));
        sc->add_option("--dir", o.dir, "direction x,y")->required();
        sc->add_option("--cap", o.cap, "crossing cap")->check(CLI::PositiveNumber);
    }
    with_file(leaf(veech, "symmetries", "affine automorphisms with rotation derivative", [&] {
        auto s = load_surface(o.file);
        Json a = Json::array();
        for (const auto& f : symmetry_search(s))
            a.push_back(auto_json(s, f));
        runner.emit(Json{{"symmetries", a}}, o);
        return 0;
    }));
    {
        auto* sc = leaf(veech, "generators", "triangle group generators of the Wiman surface", [&] {
            WimanForm w;
            if (o.form == "omega1")
                w = WimanForm::Omega1;
            else if (o.form == "omegag")
                w = WimanForm::OmegaG;
            else
                throw UsageError("--form must be omega1 or omegag");
            auto [G1, G2] = wiman_generators(o.g, w);
            Json j;
            j["G1"] = to_json(G1);
            j["G2"] = to_json(G2);
            Json kinds = Json::object();
            kinds["G1"] = kind_name(classify(G1).kind);
            kinds["G2"] = kind_name(classify(G2).kind);
            Mat2 H = (G1 * G2.inverse()).reduced();
            kinds["G1*G2^-1"] = kind_name(classify(H).kind);
            j["kinds"] = kinds;
            j["G1*G2^-1"] = to_json(H);
            runner.emit(j, o);
            return 0;
        });
        sc->add_option("--g", o.g, "genus")->required()->check(CLI::Range(2, 1000));
        sc->add_option("--form", o.form, "omega1 or omegag");
    }

    {
        auto* sc = with_file(leaf(&app, "trace-field", "trace field of generated Veech elements", [&] {
            auto s = load_surface(o.file);
            std::vector<RealCyc> traces;
            std::vector<Mat2> gens;
            for (const auto& f : symmetry_search(s))
                gens.push_back(f.linear);
            for (const auto& r : find_parabolics(s, parse_scalar(o.bound), 4, o.cap))
                gens.push_back(r.matrix);
            const std::size_t base = gens.size();
            for (std::size_t i = 0; i < base; ++i)
                for (std::size_t j = i + 1; j < base; ++j)
                    gens.push_back((gens[i] * gens[j]).reduced());
            for (const auto& A : gens)
                traces.push_back(A.trace());
            Json j = to_json(trace_field(traces));
            j["elements"] = gens.size();
            runner.emit(j, o);
            return 0;
        }));
        sc->add_option("--bound", o.bound, "saddle connection length bound for parabolic directions");
        sc->add_option("--cap", o.cap, "crossing cap")->check(CLI::PositiveNumber);
    }

    {
        auto* sc = with_file(leaf(&app, "cross-ratio-field", "field of cross-ratios of saddle slopes", [&] {
            auto s = load_surface(o.file);
            std::vector<Direction> slopes;
            for (const auto& c : saddle_connections(s, parse_scalar(o.bound)))
                slopes.push_back(Direction::of(Vec2::from_complex(c.holonomy, s.coord_order())));
            Json j = to_json(cross_ratio_field(slopes, o.cap));
            runner.emit(j, o);
            return 0;
        }));
        sc->add_option("--bound", o.bound, "saddle connection length bound");
        sc->add_option("--cap", o.cap, "cap on 4-subsets");
    }

    auto* hom = app.add_subcommand("homology", "first homology");
    hom->require_subcommand(1);
    with_file(leaf(hom, "basis", "symplectic basis of H_1", [&] {
        auto s = load_surface(o.file);
        auto c = build_complex(s);
        auto b = homology_basis(c);
        Json j;
        j["genus"] = b.genus;
        j["euler_characteristic"] = c.euler_characteristic();
        Json edges = Json::array();
        for (const auto& e : c.edges)
            edges.push_back(edge_json(s, e));
        j["edges"] = edges;
        Json cyc = Json::array();
        for (const auto& x : b.cycles)
            cyc.push_back(std::vector<long>(x.data(), x.data() + x.size()));
        j["cycles"] = cyc;
        j["intersection"] = to_json(b.J);
        runner.emit(j, o);
        return 0;
    }));
    auto homology_actions = [&](bool spectra) {
        auto s = load_surface(o.file);
        auto c = build_complex(s);
        auto b = homology_basis(c);
        auto J = standard_J(b.genus);
        Json a = Json::array();
        for (const auto& act : generated_actions(s, c, b, dirs_or_axes(o), o.cap)) {
            Json j;
            j["label"] = act.label;
            j["linear"] = to_json(act.linear);
            j["kind"] = kind_name(classify(act.linear).kind);
            j["symplectic"] = is_symplectic(act.M, J);
            if (spectra)
                j["spectrum"] = spectral_json(spectral_report(act.M));
            else
                j["matrix"] = to_json(act.M);
            a.push_back(j);
        }
        runner.emit(Json{{"genus", b.genus}, {"actions", a}}, o);
        return 0;
    };
    for (bool spectra : {false, true}) {
        auto* sc = with_file(leaf(hom, spectra ? "spectra" : "action",
                                  spectra ? "characteristic polynomials of the actions"
                                          : "integer matrices of generated automorphisms",
                                  [&, spectra] { return homology_actions(spectra); }));
        sc->add_option("--dir", o.dir, "twist direction x,y (default: both axes)");
        sc->add_option("--cap", o.cap, "crossing cap")->check(CLI::PositiveNumber);
    }

    with_file(leaf(&app, "periods", "exact periods of the symplectic basis", [&] {
        auto s = load_surface(o.file);
        auto c = build_complex(s);
        auto b = homology_basis(c);
        Json a = Json::array();
        for (const auto& z : periods(s, c, b))
            a.push_back(cyc_pair(z));
        runner.emit(Json{{"genus", b.genus}, {"periods", a}}, o);
        return 0;
    }));

    {
        auto* sc = leaf(&app, "period-matrix", "period matrix of the Wiman curve", [&] {
            auto pm = period_matrix(wiman_model(o.g), o.bits);
            Json j;
            Json rows = Json::array();
            for (Eigen::Index r = 0; r < pm.Pi.rows(); ++r) {
                Json row = Json::array();
                for (Eigen::Index c = 0; c < pm.Pi.cols(); ++c)
                    row.push_back(Json::array({pm.Pi(r, c).real(), pm.Pi(r, c).imag()}));
                rows.push_back(row);
            }
            j["Pi"] = rows;
            j["bits"] = pm.bits;
            j["error_bound"] = pm.err;
            j["symmetry_defect"] = pm.sym_defect;
            j["symmetric"] = pm.symmetric;
            j["im_min_eigenvalue_lower"] = pm.min_eig_lower;
            j["im_positive_definite"] = pm.im_positive;
            runner.emit(j, o);
            return 0;
        });
        sc->add_option("--g", o.g, "genus")->required()->check(CLI::Range(2, 1000));
        sc->add_option("--bits", o.bits, "working precision")->check(CLI::Range(53L, 100000L));
    }

    gk(leaf(&app, "rm-check", "real multiplication verdict for (W_g, omega_k)", [&] {
        check_k();
        auto v = rm_verdict(o.g, o.k);
        Json j;
        j["verdict"] = v.name();
        j["g"] = v.g;
        j["k"] = v.k;
        j["n"] = v.n;
        j["t"] = v.t;
        j["r"] = v.r;
        if (v.violated)
            j["witness"] = Json{{"ell", v.ell}, {"i", v.i}, {"j", v.j}};
        else
            j["witness"] = nullptr;
        j["area_exact"] = to_json(v.area.value().reduced());
        j["area_double"] = v.area.to_double();
        auto tf = wiman_trace_field(build_wiman(o.g, o.k));
        j["trace_field"] = Json{{"degree", tf.degree}, {"min_poly", to_json(tf.min_poly)}};
        runner.emit(j, o);
        return 0;
    }));

    {
        auto* sc = with_file(leaf(&app, "render", "SVG picture of the polygons", [&] {
            auto s = load_surface(o.file);
            std::optional<Decomposition> dec;
            if (!o.dir.empty())
                dec = cylinder_decomposition(s, parse_dir(o.dir), o.cap);
            const std::string svg = render_svg(s, dec ? &*dec : nullptr);
            if (!o.svg.empty())
                save_text(o.svg, svg);
            else
                runner.emit_text(svg, o);
            return dec && !dec->ok() ? 2 : 0;
        }));
        sc->add_option("--svg", o.svg, "SVG output path");
        sc->add_option("--dir", o.dir, "shade the cylinders in this direction");
        sc->add_option("--cap", o.cap, "crossing cap")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            for (auto* sc : leaves)
                if (sc->parsed()) {
                    out << sc->help();
                    return 0;
                }
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 1;
    }
    if (!action) {
        err << "missing subcommand\n";
        return 1;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == "IOError" ? 1 : 2;
    }
}

}  // namespace tsurf::cli
