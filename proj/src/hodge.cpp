#include "tsurf/hodge.hpp"

#include <cmath>
#include <numeric>

#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Eigenvalues>

namespace tsurf {

namespace {

using Real = boost::multiprecision::mpfr_float;

struct Cx {
    Real re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cx operator/(const Cx& a, const Cx& b)
{
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real cabs(const Cx& a) { return sqrt(a.re * a.re + a.im * a.im); }

Cx to_cx(const CycNum& z, long bits, double& rad)
{
    MpBall b = embed_mp(z, 1, bits);
    Cx c;
    mpfr_set(c.re.backend().data(), b.re(), MPFR_RNDN);
    mpfr_set(c.im.backend().data(), b.im(), MPFR_RNDN);
    rad = std::max(rad, b.radius());
    return c;
}

// rounds away from zero so the bound stays a bound
double up(const Real& x) { return std::nextafter(x.convert_to<double>() * (1 + 1e-12), 1e300); }

Rational to_q(const Real& x)
{
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x.backend().data());
    return q;
}

bool positive_definite(const QMat& m)
{
    // Sylvester: all leading principal minors positive
    QMat a = m;
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (sgn(a(k, k)) <= 0)
            return false;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            Rational f = a(i, k) / a(k, k);
            for (Eigen::Index j = k; j < n; ++j)
                a(i, j) -= f * a(k, j);
        }
    }
    return true;
}

}  // namespace

CycNum WimanModel::dev_period(int k, const IVec& coords) const
{
    CycNum p(0L);
    for (int i = 0; i < coords.size(); ++i)
        if (coords(i) != 0)
            p += CycNum(coords(i)) * periods[k - 1][i];
    return p.reduced();
}

WimanModel wiman_model(int g)
{
    if (g < 2)
        throw Error("BadParameter", "genus must be at least 2");
    WimanModel m;
    m.g = g;
    m.n = 2 * g + 1;
    for (int k = 1; k <= g; ++k)
        m.surfaces.push_back(build_wiman(g, k));
    m.complex = build_complex(m.surfaces[0]);
    m.basis = homology_basis(m.complex);
    const CellComplex& c = m.complex;
    const int np = m.surfaces[0].num_polygons();
    for (int k = 1; k <= g; ++k) {
        const TranslationSurface& s = m.surface(k);
        AffineAuto f;
        f.linear = Mat2::rotation(k, m.n);
        for (int p = 0; p < np; ++p) {
            f.polygon_map.push_back((p + 2) % np);
            f.shift.push_back(0);
        }
        for (int p = 0; p < np; ++p)
            f.offsets.push_back(s.vertex(f.polygon_map[p], 0) - f.linear.apply(s.vertex(p, 0)));
        std::string why;
        if (!verify_auto(s, f, &why))
            throw Error("InternalError", "phi is not an automorphism for k=" + std::to_string(k) +
                                             ": " + why);
        m.phi_auto.push_back(f);
        std::vector<CycNum> dev;
        for (int e = 0; e < c.E; ++e)
            dev.push_back(s.edge_holonomy(c.edges[e]));
        const CycNum z = CycNum::zeta(m.n, k);
        for (int e = 0; e < c.E; ++e) {
            auto [t, sg] = c.occurrence(s, f.edge_image(s, c.edges[e]));
            if (CycNum(static_cast<long>(sg)) * dev[t] != z * dev[e])
                throw Error("InternalError", "dev is not phi-equivariant");
        }
        for (int p = 0; p < c.F; ++p) {
            CycNum sum(0L);
            for (int e = 0; e < c.E; ++e)
                if (c.d2(e, p) != 0)
                    sum += CycNum(c.d2(e, p)) * dev[e];
            if (!sum.is_zero())
                throw Error("InternalError", "face boundary period is not zero");
        }
        m.dev.push_back(dev);
        m.periods.push_back(periods(s, c, m.basis));
    }
    m.phi = auto_action(m.surfaces[0], c, m.phi_auto[0], m.basis);
    return m;
}

IMat phi_homology(const WimanModel& m) { return m.phi; }

long matrix_order(const IMat& M, long limit)
{
    const IMat I = IMat::Identity(M.rows(), M.cols());
    IMat p = M;
    for (long k = 1; k <= limit; ++k) {
        if (p == I)
            return k;
        p = p * M;
    }
    return 0;
}

namespace {

IMat symplectic_inverse(const IMat& M, const IMat& J) { return -J * M.transpose() * J; }

}  // namespace

RMStructure psi_blocks(const WimanModel& m)
{
    RMStructure r;
    r.n = m.n;
    const IMat& J = m.basis.J;
    r.psi = m.phi + symplectic_inverse(m.phi, J);
    const Eigen::Index d = r.psi.rows();
    for (int k = 1; k <= m.g; ++k) {
        RealCyc c = (RealCyc(2L) * cos2pi(k, m.n)).reduced();
        r.eigenvalues.push_back(c);
        Mat<CycNum> a(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                a(i, j) = CycNum(r.psi(i, j)) - (i == j ? c.value() : CycNum(0L));
        Mat<CycNum> ker = kernel(a);
        r.dims.push_back(static_cast<int>(ker.cols()));
        if (ker.cols() != 2)
            throw Error("BlockDimensionUnexpected",
                        "k=" + std::to_string(k) + " block has dimension " + std::to_string(ker.cols()));
        r.blocks.push_back(ker);
    }
    r.orthogonal = true;
    for (int k = 0; k < m.g; ++k)
        for (int l = k + 1; l < m.g; ++l)
            for (Eigen::Index a = 0; a < 2; ++a)
                for (Eigen::Index b = 0; b < 2; ++b) {
                    CycNum s(0L);
                    for (Eigen::Index i = 0; i < d; ++i)
                        for (Eigen::Index j = 0; j < d; ++j)
                            if (J(i, j) != 0)
                                s += r.blocks[k](i, a) * CycNum(J(i, j)) * r.blocks[l](j, b);
                    if (!s.is_zero())
                        r.orthogonal = false;
                }
    for (int t = 1; t <= m.g; ++t) {
        if (m.n % t != 0)
            continue;
        std::vector<int> ks;
        for (int k = 1; k <= m.g; ++k)
            if (std::gcd(k, m.n) == t)
                ks.push_back(k);
        r.t_groups.push_back({t, ks});
    }
    return r;
}

EigenformCheck eigenform_relation_check(const WimanModel& m, int k)
{
    if (k < 1 || k > m.g)
        throw Error("BadParameter", "k out of range");
    EigenformCheck out{true, true};
    const CycNum z = CycNum::zeta(m.n, k);
    const CycNum c = z + z.inv();
    const IMat inv = symplectic_inverse(m.phi, m.basis.J);
    for (Eigen::Index i = 0; i < m.phi.cols(); ++i) {
        const CycNum p = m.periods[k - 1][i];
        const CycNum fwd = m.dev_period(k, m.phi.col(i));
        const CycNum bwd = m.dev_period(k, inv.col(i));
        if (fwd != z * p)
            out.shift_ok = false;
        if (fwd + bwd != c * p)
            out.psi_ok = false;
    }
    return out;
}

PeriodMatrixResult period_matrix(const WimanModel& m, long bits)
{
    const int g = m.g;
    const unsigned old = Real::default_precision();
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 4);
    PeriodMatrixResult res;
    res.bits = bits;
    // A_jk = int_{a_k} omega_j, B_jk = int_{b_k} omega_j
    std::vector<std::vector<Cx>> A(g, std::vector<Cx>(g)), B = A;
    double rad = 0;
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) {
            A[j][k] = to_cx(m.periods[j][k], bits, rad);
            B[j][k] = to_cx(m.periods[j][g + k], bits, rad);
        }
    // Gauss-Jordan on [A | B | I]
    std::vector<std::vector<Cx>> W(g, std::vector<Cx>(3 * g));
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            W[i][j] = A[i][j];
            W[i][g + j] = B[i][j];
            W[i][2 * g + j] = {Real(i == j ? 1 : 0), Real(0)};
        }
    for (int c = 0; c < g; ++c) {
        int piv = c;
        for (int r = c + 1; r < g; ++r)
            if (cabs(W[r][c]) > cabs(W[piv][c]))
                piv = r;
        if (cabs(W[piv][c]) == 0) {
            Real::default_precision(old);
            throw Error("SingularA", "a-period matrix is singular");
        }
        std::swap(W[piv], W[c]);
        Cx inv = Cx{Real(1), Real(0)} / W[c][c];
        for (auto& x : W[c])
            x = x * inv;
        for (int r = 0; r < g; ++r) {
            if (r == c)
                continue;
            Cx f = W[r][c];
            for (int j = 0; j < 3 * g; ++j)
                W[r][j] = W[r][j] - f * W[c][j];
        }
    }
    std::vector<std::vector<Cx>> X(g, std::vector<Cx>(g)), C = X;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            X[i][j] = W[i][g + j];
            C[i][j] = W[i][2 * g + j];
        }
    // a posteriori bound: |X - A^-1 B| <= |A^-1| (|A X - B| + rounding + input radii)
    const Real eps = pow(Real(2), -static_cast<long>(bits) + 2) * (g + 2);
    Real xmax = 0, cnorm = 0, amax = 0, bmax = 0;
    for (int i = 0; i < g; ++i) {
        Real row = 0;
        for (int j = 0; j < g; ++j) {
            xmax = std::max(xmax, cabs(X[i][j]));
            amax = std::max(amax, cabs(A[i][j]));
            bmax = std::max(bmax, cabs(B[i][j]));
            row += cabs(C[i][j]);
        }
        cnorm = std::max(cnorm, row);
    }
    Real resid = 0, defect = 0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            Cx s = Cx{Real(0), Real(0)} - B[i][j];
            Cx e{Real(i == j ? -1 : 0), Real(0)};
            for (int l = 0; l < g; ++l) {
                s = s + A[i][l] * X[l][j];
                e = e + C[i][l] * A[l][j];
            }
            resid = std::max(resid, cabs(s));
            defect = std::max(defect, cabs(e));
        }
    const Real r_in = Real(rad) * (g * xmax + 1);
    const Real rnd = eps * (g * amax * xmax + bmax);
    const Real ca_defect = g * (defect + cnorm * Real(rad) * g + eps * g * cnorm * amax);
    if (ca_defect >= 1) {
        Real::default_precision(old);
        throw Error("SingularA", "a-period matrix too ill-conditioned at this precision");
    }
    const Real inv_norm = cnorm / (1 - ca_defect);
    const Real err = inv_norm * g * (resid + r_in + rnd);
    res.err = up(err);
    Real sym = 0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            sym = std::max(sym, cabs(X[i][j] - X[j][i]));
    res.sym_defect = up(sym);
    res.symmetric = sym <= 2 * err;
    res.Pi.resize(g, g);
    QMat Y(g, g);
    const Real shift = (g * err + eps * xmax) * Real(1.0001);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            res.Pi(i, j) = {X[i][j].re.convert_to<double>(), X[i][j].im.convert_to<double>()};
            Real y = (X[i][j].im + X[j][i].im) / 2;
            if (i == j)
                y -= shift;
            Y(i, j) = to_q(y);
        }
    res.im_positive = positive_definite(Y);
    Eigen::MatrixXd yd = res.Pi.imag();
    yd = (yd + yd.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(yd);
    res.min_eig_lower = es.eigenvalues().minCoeff() - 1e-12 * yd.norm() - up(shift);
    Real::default_precision(old);
    return res;
}

AdaptedBlockCheck adapted_block_check(const WimanModel& m, int t)
{
    if (t < 1 || t > m.g || m.n % t != 0)
        throw Error("BadParameter", "t must divide n and lie in 1..g");
    AdaptedBlockCheck out;
    out.t = t;
    for (int k = 1; k <= m.g; ++k)
        (std::gcd(k, m.n) == t ? out.in_class : out.out_class).push_back(k);
    RMStructure rm = psi_blocks(m);
    const IMat& J = m.basis.J;
    const Eigen::Index d = J.rows();
    const int g = m.g;
    // a'_k = u_k, b'_k = v_k / <u_k, v_k>
    std::vector<std::vector<CycNum>> a(g), b(g);
    for (int k = 0; k < g; ++k) {
        CycNum w(0L);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                if (J(i, j) != 0)
                    w += rm.blocks[k](i, 0) * CycNum(J(i, j)) * rm.blocks[k](j, 1);
        if (w.is_zero())
            throw Error("CheckFailed", "block is isotropic");
        const CycNum wi = w.inv();
        for (Eigen::Index i = 0; i < d; ++i) {
            a[k].push_back(rm.blocks[k](i, 0));
            b[k].push_back((rm.blocks[k](i, 1) * wi).reduced());
        }
    }
    auto pair = [&](int j, const std::vector<CycNum>& x) {
        CycNum s(0L);
        for (Eigen::Index i = 0; i < d; ++i)
            if (!x[i].is_zero())
                s += x[i] * m.periods[j][i];
        return s.reduced();
    };
    out.block_diagonal = true;
    out.diag_upper_half = true;
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) {
            CycNum ajk = pair(j, a[k]), bjk = pair(j, b[k]);
            if (j != k) {
                if (!ajk.is_zero() || !bjk.is_zero())
                    out.block_diagonal = false;
                continue;
            }
            if (ajk.is_zero()) {
                out.diag_upper_half = false;
                out.tau.push_back({0, 0});
                continue;
            }
            CycNum tau = (bjk / ajk).reduced();
            if (sign_im(tau) <= 0)
                out.diag_upper_half = false;
            out.tau.push_back(tau.to_complex());
        }
    return out;
}

RealCyc wiman_area(int g, int k)
{
    const int n = 2 * g + 1;
    return (RealCyc(static_cast<long>(n)) * sin2pi(k, n)).reduced();
}

RealCyc ahlfors_offblock_derivative(const WimanModel& m, int k, int i, int j)
{
    if (k < 1 || k > m.g || i < 1 || j < 1 || i > m.g || j > m.g)
        throw Error("BadParameter", "indices out of range");
    if (i + j != 2 * k)
        throw Error("NotDiagonalCase", "i + j must equal 2k");
    return m.surface(k).area().reduced();
}

RMVerdict rm_verdict(int g, int k)
{
    if (g < 2 || k < 1 || k > g)
        throw Error("BadParameter", "need g >= 2 and 1 <= k <= g");
    RMVerdict v;
    v.g = g;
    v.k = k;
    v.n = 2 * g + 1;
    v.t = std::gcd(k, v.n);
    v.r = g / v.t;
    v.area = build_wiman(g, k).area().reduced();
    for (int ell = 1; k - ell * v.t >= 1 && k + ell * v.t <= g; ++ell) {
        int i = k - ell * v.t, j = k + ell * v.t;
        if (std::gcd(i, v.n) == v.t || std::gcd(j, v.n) == v.t) {
            v.violated = true;
            v.ell = ell;
            v.i = i;
            v.j = j;
            break;
        }
    }
    return v;
}

}  // namespace tsurf
