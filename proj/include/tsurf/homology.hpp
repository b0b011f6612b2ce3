#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsurf/linalg.hpp"
#include "tsurf/surface.hpp"
#include "tsurf/veech.hpp"

namespace tsurf {

using Cycle = IVec;  // integer coefficients over the edges of a CellComplex

struct HalfEdge {
    int edge = 0;
    bool outgoing = true;  // the edge starts at this vertex
};

/*
 * CW model of a surface: vertex classes, one oriented edge per glued pair
 * (oriented like its lexicographically smaller occurrence), one face per
 * polygon.  rotation[v] lists the half-edges at v counter-clockwise.
 */
struct CellComplex {
    int V = 0, E = 0, F = 0;
    std::vector<EdgeRef> edges;
    std::map<EdgeRef, int> index;  // canonical occurrence -> edge
    std::vector<int> tail, head;   // vertex classes
    IMat d1, d2;
    std::vector<std::vector<HalfEdge>> rotation;

    int euler_characteristic() const { return V - E + F; }
    // edge index and sign of an occurrence relative to the edge orientation
    std::pair<int, int> occurrence(const TranslationSurface& s, EdgeRef e) const;
    Cycle zero() const { return Cycle::Zero(E); }
};

CellComplex build_complex(const TranslationSurface& s);
bool is_cycle(const CellComplex& c, const Cycle& x);

// algebraic intersection number, +1 for (horizontal, vertical) on the torus
long intersection(const CellComplex& c, const Cycle& a, const Cycle& b);
IMat gram(const CellComplex& c, const std::vector<Cycle>& cycles);
IMat standard_J(int g);

struct SymplecticBasis {
    int genus = 0;
    std::vector<Cycle> cycles;  // a_1..a_g, b_1..b_g
    IMat J;
};

SymplecticBasis homology_basis(const CellComplex& c);
// coordinates of a cycle in the basis, read off from intersection numbers
IVec coordinates(const CellComplex& c, const SymplecticBasis& basis, const Cycle& x);
Cycle from_coordinates(const SymplecticBasis& basis, const IVec& v);

CycNum period(const TranslationSurface& s, const CellComplex& c, const Cycle& x);
std::vector<CycNum> periods(const TranslationSurface& s, const CellComplex& c,
                            const SymplecticBasis& basis);

bool is_symplectic(const IMat& M, const IMat& J);

// push-forward of a cellular cycle along a polygon-level automorphism
Cycle push_forward(const TranslationSurface& s, const CellComplex& c, const AffineAuto& f,
                   const Cycle& x);
IMat auto_action(const TranslationSurface& s, const CellComplex& c, const AffineAuto& f,
                 const SymplecticBasis& basis);

// intersection <x, core> of a cellular cycle with a transverse closed curve
long crossing_functional(const TranslationSurface& s, const CellComplex& c,
                         const std::vector<EdgeRef>& core, const Cycle& x);
IVec core_class(const TranslationSurface& s, const CellComplex& c, const SymplecticBasis& basis,
                const std::vector<EdgeRef>& core);
// x -> x + sum m_i <c_i, x> c_i on coordinates
IMat twist_action(const TranslationSurface& s, const CellComplex& c, const MultitwistRecord& twist,
                  const SymplecticBasis& basis);

struct SpectralReport {
    IntPoly char_poly;
    bool palindromic = false;
    bool quasi_unipotent = false;
    bool finite_order = false;
    std::vector<int> cyclotomic_factors;  // m for each Phi_m dividing, with multiplicity
    std::vector<std::complex<double>> roots;
    std::optional<double> leading;  // real eigenvalue of largest modulus > 1
    bool leading_simple = false;    // certified by Sturm counts
    bool leading_dominant = false;  // real roots certified, complex ones by margin
    double dominance_margin = 0;
};

SpectralReport spectral_report(const IMat& M);

struct PeriodCheck {
    bool ok = true;
    std::vector<CycNum> discrepancy;  // period(M x) - A period(x) for each basis cycle
};

// period(M gamma) = A . period(gamma) for every basis cycle gamma, exactly
PeriodCheck canonical_subspace_check(const TranslationSurface& s, const CellComplex& c,
                                     const SymplecticBasis& basis, const IMat& M, const Mat2& A);

}  // namespace tsurf
