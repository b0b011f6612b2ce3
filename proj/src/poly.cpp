#include "tsurf/poly.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace tsurf {

void trim(QPoly& p)
{
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
}

int degree(const QPoly& p)
{
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (sgn(p[i]) != 0)
            return i;
    return -1;
}

int degree(const IntPoly& p)
{
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0)
            return i;
    return -1;
}

QPoly to_qpoly(const IntPoly& p)
{
    QPoly q(p.begin(), p.end());
    trim(q);
    return q;
}

IntPoly primitive_part(const QPoly& p0)
{
    QPoly p = p0;
    trim(p);
    if (p.empty())
        return {0};
    Integer l = 1;
    for (const auto& c : p)
        l = lcm(l, Integer(c.get_den()));
    IntPoly out(p.size());
    Integer g = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational s = p[i] * l;
        out[i] = s.get_num();
        g = gcd(g, out[i]);
    }
    if (sgn(out.back()) < 0)
        g = -g;
    for (auto& c : out)
        c /= g;
    return out;
}

QPoly poly_add(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    trim(r);
    return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    trim(r);
    return r;
}

QPoly poly_mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b)
{
    IntPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b0)
{
    QPoly b = b0;
    trim(b);
    if (b.empty())
        throw Error("DivisionByZero", "polynomial division by zero");
    QPoly r = a;
    trim(r);
    const int db = degree(b);
    if (degree(r) < db)
        return {{}, r};
    QPoly q(degree(r) - db + 1, 0);
    while (degree(r) >= db) {
        int dr = degree(r);
        Rational c = r[dr] / b[db];
        q[dr - db] = c;
        for (int i = 0; i <= db; ++i)
            r[dr - db + i] -= c * b[i];
        trim(r);
    }
    trim(q);
    return {q, r};
}

QPoly poly_gcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lc = a.back();
        for (auto& c : a)
            c /= lc;
    }
    return a;
}

QPoly derivative(const QPoly& p)
{
    QPoly r;
    for (std::size_t i = 1; i < p.size(); ++i)
        r.push_back(p[i] * static_cast<long>(i));
    trim(r);
    return r;
}

bool divides(const IntPoly& d, const IntPoly& p)
{
    return poly_divmod(to_qpoly(p), to_qpoly(d)).second.empty();
}

IntPoly exact_quotient(const IntPoly& p, const IntPoly& d)
{
    auto [q, r] = poly_divmod(to_qpoly(p), to_qpoly(d));
    if (!r.empty())
        throw Error("NotDivisible", "polynomial does not divide");
    IntPoly out;
    for (const auto& c : q) {
        if (c.get_den() != 1)
            throw Error("NotDivisible", "quotient is not integral");
        out.push_back(c.get_num());
    }
    if (out.empty())
        out.push_back(0);
    return out;
}

Rational eval(const QPoly& p, const Rational& x)
{
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        r = r * x + p[i];
    return r;
}

IntPoly cyclotomic_poly(int n)
{
    QPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0)
            p = poly_divmod(p, to_qpoly(cyclotomic_poly(d))).first;
    IntPoly out;
    for (const auto& c : p)
        out.push_back(c.get_num());
    return out;
}

IntPoly char_poly(const QMat& a)
{
    const Eigen::Index n = a.rows();
    if (a.cols() != n)
        throw Error("BadParameter", "char_poly needs a square matrix");
    // c[n] = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
    std::vector<Rational> c(n + 1, 0);
    c[n] = 1;
    QMat m = QMat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        QMat next(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                Rational s = 0;
                for (Eigen::Index l = 0; l < n; ++l)
                    if (sgn(a(i, l)) != 0 && sgn(m(l, j)) != 0)
                        s += a(i, l) * m(l, j);
                if (i == j)
                    s += c[n - k + 1];
                next(i, j) = s;
            }
        m = next;
        Rational tr = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index l = 0; l < n; ++l)
                tr += a(i, l) * m(l, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    IntPoly out;
    for (const auto& x : c) {
        if (x.get_den() != 1)
            return primitive_part(c);
        out.push_back(x.get_num());
    }
    return out;
}

IntPoly char_poly(const IMat& m)
{
    QMat q(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            q(i, j) = Rational(m(i, j));
    return char_poly(q);
}

bool is_palindromic(const IntPoly& p)
{
    const int d = degree(p);
    for (int i = 0; i <= d; ++i)
        if (p[i] != p[d - i])
            return false;
    return true;
}

IntPoly reciprocal_lift(const IntPoly& m)
{
    const int d = degree(m);
    // sum m_i (x + 1/x)^i x^d = sum m_i (x^2 + 1)^i x^(d - i)
    IntPoly out(2 * d + 1, 0);
    IntPoly pw{1};
    for (int i = 0; i <= d; ++i) {
        for (std::size_t j = 0; j < pw.size(); ++j)
            out[j + d - i] += m[i] * pw[j];
        pw = poly_mul(pw, IntPoly{1, 0, 1});
    }
    return out;
}

int sturm_count(const QPoly& p0, const Rational& a, const Rational& b)
{
    QPoly p = p0;
    trim(p);
    if (degree(p) <= 0)
        return 0;
    std::vector<QPoly> seq{p, derivative(p)};
    while (degree(seq.back()) > 0) {
        QPoly r = poly_divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.empty())
            break;
        for (auto& c : r)
            c = -c;
        seq.push_back(r);
    }
    auto variations = [&](const Rational& x) {
        int v = 0, last = 0;
        for (const auto& q : seq) {
            int s = sgn(eval(q, x));
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++v;
            last = s;
        }
        return v;
    };
    // with a non-squarefree input the sequence ends in the gcd; counts stay correct
    return variations(a) - variations(b);
}

std::vector<std::complex<double>> numeric_roots(const IntPoly& p)
{
    const int d = degree(p);
    std::vector<std::complex<double>> out;
    if (d <= 0)
        return out;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    double lc = p[d].get_d();
    for (int i = 1; i < d; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i)
        comp(i, d - 1) = -p[i].get_d() / lc;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < d; ++i)
        out.push_back(es.eigenvalues()[i]);
    return out;
}

Rational to_rational(double x)
{
    Rational q(x);
    q.canonicalize();
    return q;
}

std::string poly_string(const IntPoly& p)
{
    std::ostringstream os;
    bool first = true;
    for (int i = degree(p); i >= 0; --i) {
        if (p[i] == 0)
            continue;
        Integer c = p[i];
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        Integer a = abs(c);
        if (i == 0 || a != 1)
            os << a.get_str();
        if (i >= 1)
            os << "x";
        if (i >= 2)
            os << "^" << i;
    }
    if (first)
        os << "0";
    return os.str();
}

}  // namespace tsurf
