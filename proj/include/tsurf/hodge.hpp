#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tsurf/homology.hpp"

namespace tsurf {

/*
 * All Wiman differentials on one combinatorial surface.  The complex and the
 * symplectic basis come from build_wiman(g, 1); surfaces[k-1] is
 * build_wiman(g, k), which has the same gluing, so dev_k(e) is its edge
 * holonomy on the shared edges.  phi is T_{m,e} -> T_{m+1,e}.
 */
struct WimanModel {
    int g = 0, n = 0;
    std::vector<TranslationSurface> surfaces;
    CellComplex complex;
    SymplecticBasis basis;
    std::vector<AffineAuto> phi_auto;     // phi realised on surfaces[k-1], linear part rotation 2 pi k/n
    IMat phi;                             // action on H_1 in basis
    std::vector<std::vector<CycNum>> dev;      // dev[k-1][edge]
    std::vector<std::vector<CycNum>> periods;  // periods[k-1][basis cycle]

    const TranslationSurface& surface(int k) const { return surfaces[k - 1]; }
    CycNum dev_period(int k, const IVec& coords) const;
};

WimanModel wiman_model(int g);
IMat phi_homology(const WimanModel& m);
// multiplicative order of an integer matrix, 0 if larger than limit
long matrix_order(const IMat& M, long limit = 1000);

struct RMStructure {
    int n = 0;
    IMat psi;
    std::vector<RealCyc> eigenvalues;  // 2 cos(2 pi k / n), k = 1..g
    std::vector<Mat<CycNum>> blocks;   // columns: basis of ker(psi - eigenvalue) in coordinates
    std::vector<int> dims;
    bool orthogonal = false;
    std::vector<std::pair<int, std::vector<int>>> t_groups;  // t -> {k : gcd(k, n) = t}
};

RMStructure psi_blocks(const WimanModel& m);

struct EigenformCheck {
    bool shift_ok = false;  // period(phi gamma) = zeta_n^k period(gamma)
    bool psi_ok = false;    // period(phi gamma) + period(phi^-1 gamma) = (zeta^k + zeta^-k) period(gamma)
};
EigenformCheck eigenform_relation_check(const WimanModel& m, int k);

struct PeriodMatrixResult {
    Eigen::MatrixXcd Pi;
    double err = 0;           // entrywise bound on |Pi - computed|
    double sym_defect = 0;    // max |Pi_ij - Pi_ji| of the computed matrix
    double min_eig_lower = 0; // certified lower bound for the least eigenvalue of Im Pi
    bool symmetric = false;   // sym_defect <= 2 err
    bool im_positive = false;
    long bits = 0;
};

PeriodMatrixResult period_matrix(const WimanModel& m, long bits = 128);

struct AdaptedBlockCheck {
    int t = 1;
    std::vector<int> in_class, out_class;
    bool block_diagonal = false;   // off-diagonal entries of A', B' vanish exactly
    bool diag_upper_half = false;  // Im tau_k > 0, exact sign
    std::vector<std::complex<double>> tau;
    bool ok() const { return block_diagonal && diag_upper_half; }
};
AdaptedBlockCheck adapted_block_check(const WimanModel& m, int t);

RealCyc ahlfors_offblock_derivative(const WimanModel& m, int k, int i, int j);
// n sin(2 k pi / n)
RealCyc wiman_area(int g, int k);

struct RMVerdict {
    bool violated = false;
    int g = 0, k = 0, n = 0, t = 1, r = 1;
    int ell = 0, i = 0, j = 0;  // witness when violated
    RealCyc area;
    std::string name() const { return violated ? "violated" : "preserved_consistent"; }
};
RMVerdict rm_verdict(int g, int k);

}  // namespace tsurf
