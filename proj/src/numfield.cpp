#include "tsurf/numfield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "tsurf/linalg.hpp"

namespace tsurf {

namespace {

std::atomic<int> g_join_cap{kDefaultJoinCap};

struct Cyclo {
    int n = 1;
    int phi = 1;
    std::vector<Integer> poly;             // monic, low degree first
    std::vector<std::vector<Integer>> red; // x^e mod poly, e in [0, n)
    std::vector<double> cosd, sind;        // correctly rounded cos/sin(2 pi e / n)
};

std::vector<Integer> poly_divide_monic(std::vector<Integer> a, const std::vector<Integer>& b)
{
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size())
        return {0};
    std::vector<Integer> q(a.size() - db);
    for (std::size_t i = a.size(); i-- > db;) {
        Integer c = a[i];
        q[i - db] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            a[i - db + j] -= c * b[j];
    }
    return q;
}

const Cyclo& cyclo(int n);

std::unique_ptr<Cyclo> make_cyclo(int n)
{
    auto c = std::make_unique<Cyclo>();
    c->n = n;
    std::vector<Integer> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0)
            p = poly_divide_monic(p, cyclo(d).poly);
    c->poly = p;
    c->phi = static_cast<int>(p.size()) - 1;
    const int phi = c->phi;
    c->red.assign(n, std::vector<Integer>(phi, 0));
    std::vector<Integer> cur(phi, 0);
    cur[0] = 1;
    for (int e = 0; e < n; ++e) {
        c->red[e] = cur;
        // multiply by x and reduce the overflow coefficient
        Integer top = cur[phi - 1];
        for (int i = phi - 1; i > 0; --i)
            cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (int i = 0; i < phi; ++i)
                cur[i] -= top * p[i];
    }
    c->cosd.resize(n);
    c->sind.resize(n);
    mpfr_t pi, x, y;
    mpfr_inits2(96, pi, x, y, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    for (int e = 0; e < n; ++e) {
        mpfr_mul_ui(x, pi, 2UL * static_cast<unsigned long>(e), MPFR_RNDN);
        mpfr_div_ui(x, x, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_cos(y, x, MPFR_RNDN);
        c->cosd[e] = mpfr_get_d(y, MPFR_RNDN);
        mpfr_sin(y, x, MPFR_RNDN);
        c->sind[e] = mpfr_get_d(y, MPFR_RNDN);
    }
    mpfr_clears(pi, x, y, static_cast<mpfr_ptr>(nullptr));
    return c;
}

std::shared_mutex g_cyclo_mu;
std::unordered_map<int, std::unique_ptr<Cyclo>> g_cyclo;

const Cyclo& cyclo(int n)
{
    if (n < 1)
        throw Error("BadOrder", "cyclotomic order must be positive, got " + std::to_string(n));
    {
        std::shared_lock lk(g_cyclo_mu);
        auto it = g_cyclo.find(n);
        if (it != g_cyclo.end())
            return *it->second;
    }
    auto c = make_cyclo(n);
    std::unique_lock lk(g_cyclo_mu);
    auto [it, inserted] = g_cyclo.emplace(n, std::move(c));
    return *it->second;
}

// cos/sin(2 pi e / n) at a given precision, absolute error below 2^-prec
struct MpTable {
    long prec;
    std::vector<mpfr_t> cosv, sinv;
    MpTable(int n, long p) : prec(p), cosv(n), sinv(n)
    {
        const long w = p + 32;
        mpfr_t pi, x;
        mpfr_inits2(w, pi, x, static_cast<mpfr_ptr>(nullptr));
        mpfr_const_pi(pi, MPFR_RNDN);
        for (int e = 0; e < n; ++e) {
            mpfr_init2(cosv[e], p);
            mpfr_init2(sinv[e], p);
            mpfr_mul_ui(x, pi, 2UL * static_cast<unsigned long>(e), MPFR_RNDN);
            mpfr_div_ui(x, x, static_cast<unsigned long>(n), MPFR_RNDN);
            mpfr_cos(cosv[e], x, MPFR_RNDN);
            mpfr_sin(sinv[e], x, MPFR_RNDN);
        }
        mpfr_clears(pi, x, static_cast<mpfr_ptr>(nullptr));
    }
    ~MpTable()
    {
        for (auto& v : cosv)
            mpfr_clear(v);
        for (auto& v : sinv)
            mpfr_clear(v);
    }
    MpTable(const MpTable&) = delete;
    MpTable& operator=(const MpTable&) = delete;
};

std::mutex g_table_mu;
std::map<std::pair<int, long>, std::unique_ptr<MpTable>> g_tables;

const MpTable& mp_table(int n, long prec)
{
    std::lock_guard lk(g_table_mu);
    auto& slot = g_tables[{n, prec}];
    if (!slot)
        slot = std::make_unique<MpTable>(n, prec);
    return *slot;
}

long gcd_long(long a, long b)
{
    a = std::labs(a);
    b = std::labs(b);
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long mod_pos(long a, long n)
{
    long r = a % n;
    return r < 0 ? r + n : r;
}

int join(int a, int b)
{
    long l = lcm_order(a, b);
    if (l > join_cap())
        throw Error("FieldJoinOverflow", "joined order " + std::to_string(l) + " exceeds cap " +
                                             std::to_string(join_cap()));
    return static_cast<int>(l);
}

// kind 0: sum num_e cos(2 pi e k / n), kind 1: the sine sum
int sign_of_sum(int n, const std::vector<Integer>& num, long k, int kind)
{
    const Cyclo& c = cyclo(n);
    bool all_zero = true;
    long emax = 0;
    for (const auto& v : num)
        if (v != 0) {
            all_zero = false;
            emax = std::max<long>(emax, static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)));
        }
    if (all_zero)
        return 0;
    {
        double s = 0.0, mag = 0.0;
        for (std::size_t e = 0; e < num.size(); ++e) {
            if (num[e] == 0)
                continue;
            long ex;
            double d = mpz_get_d_2exp(&ex, num[e].get_mpz_t());
            double sc = std::ldexp(d, static_cast<int>(ex - emax));
            long idx = mod_pos(static_cast<long>(e) * k, n);
            double t = kind == 0 ? c.cosd[idx] : c.sind[idx];
            s += sc * t;
            mag += std::fabs(sc);
        }
        double err = (static_cast<double>(num.size()) + 4.0) * std::ldexp(mag, -50) + 1e-290;
        if (std::fabs(s) > err)
            return s > 0 ? 1 : -1;
    }
    Integer l1 = 0;
    for (const auto& v : num)
        l1 += abs(v);
    for (long prec = 128; prec <= (1L << 22); prec *= 2) {
        const MpTable& tab = mp_table(n, prec);
        mpfr_t s, t, err;
        mpfr_inits2(prec, s, t, static_cast<mpfr_ptr>(nullptr));
        mpfr_init2(err, 64);
        mpfr_set_zero(s, 1);
        for (std::size_t e = 0; e < num.size(); ++e) {
            if (num[e] == 0)
                continue;
            long idx = mod_pos(static_cast<long>(e) * k, n);
            mpfr_mul_z(t, kind == 0 ? tab.cosv[idx] : tab.sinv[idx], num[e].get_mpz_t(), MPFR_RNDN);
            mpfr_add(s, s, t, MPFR_RNDN);
        }
        mpfr_set_z(err, l1.get_mpz_t(), MPFR_RNDU);
        mpfr_mul_ui(err, err, num.size() + 4, MPFR_RNDU);
        mpfr_mul_2si(err, err, -prec, MPFR_RNDU);
        mpfr_abs(t, s, MPFR_RNDN);
        int res = 0;
        if (mpfr_cmp(t, err) > 0)
            res = mpfr_sgn(s) > 0 ? 1 : -1;
        mpfr_clears(s, t, err, static_cast<mpfr_ptr>(nullptr));
        if (res != 0)
            return res;
    }
    throw Error("SignUndecided", "interval refinement did not separate a nonzero value from 0");
}

}  // namespace

int euler_phi(int n)
{
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            r -= r / p;
        }
    if (n > 1)
        r -= r / n;
    return r;
}

long lcm_order(long a, long b)
{
    return a / gcd_long(a, b) * b;
}

int join_cap() { return g_join_cap.load(); }
void set_join_cap(int cap) { g_join_cap.store(cap); }

CycNum::CycNum() : n_(1), num_(1, 0), den_(1) {}

CycNum::CycNum(long v) : n_(1), num_(1, v), den_(1) {}

CycNum::CycNum(const Rational& q) : n_(1), num_(1, q.get_num()), den_(q.get_den()) {}

CycNum::CycNum(int order, const std::vector<Rational>& coeffs) : n_(order)
{
    const Cyclo& c = cyclo(order);
    if (static_cast<int>(coeffs.size()) != c.phi)
        throw Error("BadCoefficients", "order " + std::to_string(order) + " needs " +
                                           std::to_string(c.phi) + " coefficients, got " +
                                           std::to_string(coeffs.size()));
    den_ = 1;
    for (const auto& q : coeffs)
        den_ = lcm(den_, Integer(q.get_den()));
    num_.resize(c.phi);
    for (int i = 0; i < c.phi; ++i)
        num_[i] = coeffs[i].get_num() * (den_ / coeffs[i].get_den());
    normalize();
}

CycNum::CycNum(int order, std::vector<Integer> num, Integer den)
    : n_(order), num_(std::move(num)), den_(std::move(den))
{
    normalize();
}

CycNum CycNum::zeta(int order, long power)
{
    const Cyclo& c = cyclo(order);
    return CycNum(order, c.red[mod_pos(power, order)], 1);
}

CycNum CycNum::from_terms(int order, const std::vector<std::pair<long, Rational>>& terms)
{
    const Cyclo& c = cyclo(order);
    Integer den = 1;
    for (const auto& t : terms)
        den = lcm(den, Integer(t.second.get_den()));
    std::vector<Integer> num(c.phi, 0);
    for (const auto& [e, q] : terms) {
        Integer f = q.get_num() * (den / q.get_den());
        const auto& r = c.red[mod_pos(e, order)];
        for (int i = 0; i < c.phi; ++i)
            if (r[i] != 0)
                num[i] += f * r[i];
    }
    return CycNum(order, std::move(num), std::move(den));
}

CycNum CycNum::i() { return zeta(4, 1); }

void CycNum::normalize()
{
    if (sgn(den_) < 0) {
        den_ = -den_;
        for (auto& v : num_)
            v = -v;
    }
    Integer g = den_;
    for (const auto& v : num_) {
        if (g == 1)
            break;
        if (v != 0)
            g = gcd(g, v);
    }
    bool zero = std::all_of(num_.begin(), num_.end(), [](const Integer& v) { return v == 0; });
    if (zero) {
        den_ = 1;
        return;
    }
    if (g != 1) {
        den_ /= g;
        for (auto& v : num_)
            if (v != 0)
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

Rational CycNum::coeff(int k) const
{
    Rational q(num_.at(k), den_);
    q.canonicalize();
    return q;
}

std::vector<Rational> CycNum::coeffs() const
{
    std::vector<Rational> r;
    r.reserve(num_.size());
    for (int k = 0; k < degree(); ++k)
        r.push_back(coeff(k));
    return r;
}

bool CycNum::is_zero() const
{
    return std::all_of(num_.begin(), num_.end(), [](const Integer& v) { return v == 0; });
}

bool CycNum::is_rational() const
{
    return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& v) { return v == 0; });
}

bool CycNum::is_real() const { return *this == conj(); }

Rational CycNum::to_rational() const
{
    if (!is_rational())
        throw Error("NotRational", "element " + to_string() + " is irrational");
    return coeff(0);
}

CycNum CycNum::lift(int M) const
{
    if (M % n_ != 0)
        throw Error("NotDivisible", "cannot embed order " + std::to_string(n_) + " into order " +
                                        std::to_string(M));
    if (M == n_)
        return *this;
    const Cyclo& c = cyclo(M);
    const long step = M / n_;
    std::vector<Integer> out(c.phi, 0);
    for (int e = 0; e < degree(); ++e) {
        if (num_[e] == 0)
            continue;
        const auto& r = c.red[mod_pos(e * step, M)];
        for (int i = 0; i < c.phi; ++i)
            if (r[i] != 0)
                out[i] += num_[e] * r[i];
    }
    return CycNum(M, std::move(out), den_);
}

CycNum CycNum::galois(long k) const
{
    if (gcd_long(k, n_) != 1)
        throw Error("BadEmbedding", "exponent " + std::to_string(k) + " not coprime to order " +
                                        std::to_string(n_));
    const Cyclo& c = cyclo(n_);
    std::vector<Integer> out(c.phi, 0);
    for (int e = 0; e < degree(); ++e) {
        if (num_[e] == 0)
            continue;
        const auto& r = c.red[mod_pos(static_cast<long>(e) * k, n_)];
        for (int i = 0; i < c.phi; ++i)
            if (r[i] != 0)
                out[i] += num_[e] * r[i];
    }
    return CycNum(n_, std::move(out), den_);
}

CycNum CycNum::conj() const { return galois(n_ - 1 == 0 ? 1 : n_ - 1); }

int CycNum::minimal_order() const
{
    if (is_rational())
        return 1;
    for (int d = 1; d < n_; ++d) {
        if (n_ % d != 0)
            continue;
        bool fixed = true;
        for (long a = 1 + d; a < n_ && fixed; a += d)
            if (gcd_long(a, n_) == 1 && galois(a) != *this)
                fixed = false;
        if (fixed)
            return d;
    }
    return n_;
}

CycNum CycNum::reduced() const
{
    int d = minimal_order();
    if (d == n_)
        return *this;
    if (d == 1)
        return CycNum(coeff(0));
    const int pd = euler_phi(d);
    QMat a(degree(), pd);
    for (int j = 0; j < pd; ++j) {
        CycNum b = zeta(d, j).lift(n_);
        for (int i = 0; i < degree(); ++i)
            a(i, j) = b.coeff(i);
    }
    QMat rhs(degree(), 1);
    for (int i = 0; i < degree(); ++i)
        rhs(i, 0) = coeff(i);
    auto sol = solve<Rational>(a, rhs);
    if (!sol)
        throw Error("Internal", "subfield descent failed for " + to_string());
    std::vector<Rational> cs(pd);
    for (int j = 0; j < pd; ++j)
        cs[j] = (*sol)(j, 0);
    return CycNum(d, cs);
}

CycNum CycNum::inv() const
{
    if (is_zero())
        throw Error("DivisionByZero", "inverse of zero");
    if (is_rational())
        return CycNum(Rational(1) / coeff(0));
    const int phi = degree();
    // columns: this * x^j reduced; solve M y = e_0
    QMat m(phi, phi);
    for (int j = 0; j < phi; ++j) {
        CycNum col = *this * zeta(n_, j);
        for (int i = 0; i < phi; ++i)
            m(i, j) = col.coeff(i);
    }
    QMat rhs = QMat::Zero(phi, 1);
    for (int i = 0; i < phi; ++i)
        rhs(i, 0) = i == 0 ? 1 : 0;
    auto sol = solve<Rational>(m, rhs);
    if (!sol)
        throw Error("Internal", "singular multiplication matrix");
    std::vector<Rational> cs(phi);
    for (int i = 0; i < phi; ++i)
        cs[i] = (*sol)(i, 0);
    return CycNum(n_, cs);
}

CycNum CycNum::re() const { return (*this + conj()) * CycNum(Rational(1, 2)); }

CycNum CycNum::im() const
{
    return (*this - conj()) * CycNum::i() * CycNum(Rational(-1, 2));
}

CycNum CycNum::operator-() const
{
    CycNum r = *this;
    for (auto& v : r.num_)
        v = -v;
    return r;
}

CycNum& CycNum::operator+=(const CycNum& o)
{
    if (n_ != o.n_) {
        int m = join(n_, o.n_);
        *this = lift(m);
        return *this += o.lift(m);
    }
    if (den_ == o.den_) {
        for (int i = 0; i < degree(); ++i)
            num_[i] += o.num_[i];
    } else {
        Integer g = gcd(den_, o.den_);
        Integer fa = o.den_ / g, fb = den_ / g;
        for (int i = 0; i < degree(); ++i)
            num_[i] = num_[i] * fa + o.num_[i] * fb;
        den_ *= fa;
    }
    normalize();
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

void CycNum::mul_same(const CycNum& o)
{
    const Cyclo& c = cyclo(n_);
    const int phi = c.phi;
    std::vector<Integer> prod(2 * phi - 1, 0);
    for (int i = 0; i < phi; ++i) {
        if (num_[i] == 0)
            continue;
        for (int j = 0; j < phi; ++j)
            if (o.num_[j] != 0)
                mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
    }
    std::vector<Integer> out(prod.begin(), prod.begin() + phi);
    for (int e = phi; e < 2 * phi - 1; ++e) {
        if (prod[e] == 0)
            continue;
        const auto& r = c.red[e % n_];
        for (int i = 0; i < phi; ++i)
            if (r[i] != 0)
                mpz_addmul(out[i].get_mpz_t(), prod[e].get_mpz_t(), r[i].get_mpz_t());
    }
    num_ = std::move(out);
    den_ *= o.den_;
    normalize();
}

CycNum& CycNum::operator*=(const CycNum& o)
{
    if (o.n_ == 1 || o.is_rational()) {
        // scalar multiple: avoid the convolution
        Rational q = o.coeff(0);
        for (auto& v : num_)
            v *= q.get_num();
        den_ *= q.get_den();
        normalize();
        return *this;
    }
    if (n_ != o.n_) {
        if (is_rational()) {
            CycNum r = o;
            r *= *this;
            return *this = r;
        }
        int m = join(n_, o.n_);
        *this = lift(m);
        mul_same(o.lift(m));
        return *this;
    }
    mul_same(o);
    return *this;
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inv(); }

bool operator==(const CycNum& a, const CycNum& b)
{
    if (a.n_ == b.n_)
        return a.den_ == b.den_ && a.num_ == b.num_;
    if (a.is_rational() && b.is_rational())
        return a.coeff(0) == b.coeff(0);
    int m = join(a.n_, b.n_);
    return a.lift(m) == b.lift(m);
}

std::complex<double> CycNum::to_complex(long k) const
{
    const Cyclo& c = cyclo(n_);
    double dd = den_.get_d();
    std::complex<double> s = 0.0;
    for (int e = 0; e < degree(); ++e) {
        if (num_[e] == 0)
            continue;
        long idx = mod_pos(static_cast<long>(e) * k, n_);
        s += num_[e].get_d() * std::complex<double>(c.cosd[idx], c.sind[idx]);
    }
    return s / dd;
}

std::string CycNum::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (int e = 0; e < degree(); ++e) {
        if (num_[e] == 0)
            continue;
        Rational q = coeff(e);
        if (!first)
            os << (sgn(q) < 0 ? " - " : " + ");
        else if (sgn(q) < 0)
            os << "-";
        first = false;
        Rational a = abs(q);
        if (e == 0)
            os << a.get_str();
        else {
            if (a != 1)
                os << a.get_str() << "*";
            os << "z" << n_;
            if (e > 1)
                os << "^" << e;
        }
    }
    if (first)
        os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

RealCyc::RealCyc(const CycNum& v) : v_(v)
{
    if (!v.is_real())
        throw Error("NotReal", "element " + v.to_string() + " is not fixed by conjugation");
}

RealCyc RealCyc::unchecked(const CycNum& v)
{
    RealCyc r;
    r.v_ = v;
    return r;
}

int RealCyc::sign() const { return real_sign(*this); }

std::ostream& operator<<(std::ostream& os, const RealCyc& x) { return os << x.value(); }

MpBall::MpBall(long bits) : bits_(bits)
{
    mpfr_init2(re_, bits);
    mpfr_init2(im_, bits);
    mpfr_set_zero(re_, 1);
    mpfr_set_zero(im_, 1);
}

MpBall::MpBall(const MpBall& o) : bits_(o.bits_), rad_(o.rad_)
{
    mpfr_init2(re_, bits_);
    mpfr_init2(im_, bits_);
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
}

MpBall& MpBall::operator=(const MpBall& o)
{
    if (this != &o) {
        bits_ = o.bits_;
        rad_ = o.rad_;
        mpfr_set_prec(re_, bits_);
        mpfr_set_prec(im_, bits_);
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
    }
    return *this;
}

MpBall::~MpBall()
{
    mpfr_clear(re_);
    mpfr_clear(im_);
}

std::complex<double> MpBall::center() const
{
    return {mpfr_get_d(re_, MPFR_RNDN), mpfr_get_d(im_, MPFR_RNDN)};
}

CycNum cyc_arith(CycOp op, const CycNum& a, const CycNum* b)
{
    auto need_b = [&]() -> const CycNum& {
        if (!b)
            throw Error("MissingOperand", "binary operation needs a second operand");
        if (b->order() != a.order())
            throw Error("OrderMismatch", "orders " + std::to_string(a.order()) + " and " +
                                             std::to_string(b->order()) + " differ");
        return *b;
    };
    switch (op) {
    case CycOp::Add: return a + need_b();
    case CycOp::Sub: return a - need_b();
    case CycOp::Mul: return a * need_b();
    case CycOp::Inv: return a.inv();
    case CycOp::Neg: return -a;
    case CycOp::Conj: return a.conj();
    }
    return a;
}

CycNum embed_order(const CycNum& a, int M) { return a.lift(M); }

int real_sign(const RealCyc& x)
{
    const CycNum& v = x.value();
    if (v.is_zero())
        return 0;
    if (v.is_rational())
        return sgn(v.coeff(0));
    return sign_of_sum(v.order(), v.numerators(), 1, 0);
}

int sign_re(const CycNum& z)
{
    if (z.is_rational())
        return sgn(z.coeff(0));
    if ((z + z.conj()).is_zero())
        return 0;
    return sign_of_sum(z.order(), z.numerators(), 1, 0);
}

int sign_im(const CycNum& z)
{
    if (z.is_rational() || z == z.conj())
        return 0;
    return sign_of_sum(z.order(), z.numerators(), 1, 1);
}

MpBall embed_mp(const CycNum& a, long k, long bits)
{
    if (gcd_long(k, a.order()) != 1)
        throw Error("BadEmbedding", "k=" + std::to_string(k) + " not coprime to order " +
                                        std::to_string(a.order()));
    const auto& num = a.numerators();
    Integer l1 = 0;
    for (const auto& v : num)
        l1 += abs(v);
    MpBall out(bits);
    if (a.is_zero())
        return out;
    for (long prec = bits + 16; prec <= (1L << 22); prec *= 2) {
        const MpTable& tab = mp_table(a.order(), prec);
        mpfr_t re, im, t, err, mag;
        mpfr_inits2(prec, re, im, t, static_cast<mpfr_ptr>(nullptr));
        mpfr_inits2(64, err, mag, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_zero(re, 1);
        mpfr_set_zero(im, 1);
        for (std::size_t e = 0; e < num.size(); ++e) {
            if (num[e] == 0)
                continue;
            long idx = mod_pos(static_cast<long>(e) * k, a.order());
            mpfr_mul_z(t, tab.cosv[idx], num[e].get_mpz_t(), MPFR_RNDN);
            mpfr_add(re, re, t, MPFR_RNDN);
            mpfr_mul_z(t, tab.sinv[idx], num[e].get_mpz_t(), MPFR_RNDN);
            mpfr_add(im, im, t, MPFR_RNDN);
        }
        mpfr_div_z(re, re, a.denominator().get_mpz_t(), MPFR_RNDN);
        mpfr_div_z(im, im, a.denominator().get_mpz_t(), MPFR_RNDN);
        // per component: (terms + 4) 2^-prec l1 / den, plus the division rounding
        mpfr_set_z(err, l1.get_mpz_t(), MPFR_RNDU);
        mpfr_div_z(err, err, a.denominator().get_mpz_t(), MPFR_RNDU);
        mpfr_mul_ui(err, err, num.size() + 6, MPFR_RNDU);
        mpfr_mul_2si(err, err, -prec, MPFR_RNDU);
        mpfr_mul_ui(err, err, 2, MPFR_RNDU);
        mpfr_hypot(mag, re, im, MPFR_RNDD);
        double r = mpfr_get_d(err, MPFR_RNDU);
        mpfr_mul_2si(mag, mag, 1 - bits, MPFR_RNDD);
        bool ok = mpfr_cmp(err, mag) <= 0;
        out = MpBall(bits);
        mpfr_set(out.re(), re, MPFR_RNDN);
        mpfr_set(out.im(), im, MPFR_RNDN);
        // rounding the centers to the output precision
        mpfr_t rr;
        mpfr_init2(rr, 64);
        mpfr_hypot(rr, re, im, MPFR_RNDU);
        mpfr_mul_2si(rr, rr, -bits, MPFR_RNDU);
        r += mpfr_get_d(rr, MPFR_RNDU);
        mpfr_clear(rr);
        out.set_radius(r);
        mpfr_clears(re, im, t, static_cast<mpfr_ptr>(nullptr));
        mpfr_clears(err, mag, static_cast<mpfr_ptr>(nullptr));
        if (ok)
            break;
    }
    return out;
}

ComplexBall embed(const CycNum& a, long k, long bits)
{
    MpBall b = embed_mp(a, k, std::max<long>(bits, 53));
    ComplexBall out;
    out.center = b.center();
    double eps = std::ldexp(std::abs(out.center), -52);
    out.radius = b.radius() + eps;
    return out;
}

namespace {

QVec coeff_vector(const CycNum& x, int order)
{
    CycNum y = x.lift(order);
    QVec v(y.degree());
    for (int i = 0; i < y.degree(); ++i)
        v(i) = y.coeff(i);
    return v;
}

}  // namespace

IntPoly min_poly(const CycNum& x0)
{
    CycNum x = x0.reduced();
    const int n = x.order();
    const int phi = x.degree();
    std::vector<QVec> powers;
    CycNum p(1L);
    for (int k = 0; k <= phi; ++k) {
        QVec v = coeff_vector(p, n);
        if (k > 0) {
            QMat a(phi, k);
            for (int j = 0; j < k; ++j)
                a.col(j) = powers[j];
            QMat b(phi, 1);
            b.col(0) = v;
            auto sol = solve<Rational>(a, b);
            if (sol) {
                // x^k = sum sol_j x^j
                std::vector<Rational> q(k + 1);
                for (int j = 0; j < k; ++j)
                    q[j] = -(*sol)(j, 0);
                q[k] = 1;
                Integer l = 1;
                for (const auto& c : q)
                    l = lcm(l, Integer(c.get_den()));
                IntPoly out(k + 1);
                Integer g = 0;
                for (int j = 0; j <= k; ++j) {
                    Rational s = q[j] * l;
                    out[j] = s.get_num();
                    g = gcd(g, out[j]);
                }
                for (auto& c : out)
                    c /= g;
                return out;
            }
        }
        powers.push_back(v);
        p *= x;
    }
    throw Error("Internal", "no linear dependency among powers of " + x.to_string());
}

int algebraic_degree(const CycNum& x) { return static_cast<int>(min_poly(x).size()) - 1; }

std::vector<Rational> subfield_coords(const CycNum& x, const CycNum& gen)
{
    if (x.is_rational())
        return {x.coeff(0)};
    const int d = algebraic_degree(gen);
    int order = join(x.order(), gen.order());
    const int phi = euler_phi(order);
    QMat a(phi, d);
    CycNum p(1L);
    for (int j = 0; j < d; ++j) {
        a.col(j) = coeff_vector(p, order);
        p *= gen;
    }
    QMat b(phi, 1);
    b.col(0) = coeff_vector(x, order);
    auto sol = solve<Rational>(a, b);
    if (!sol)
        return {};
    std::vector<Rational> out(d);
    for (int j = 0; j < d; ++j)
        out[j] = (*sol)(j, 0);
    return out;
}

bool in_subfield(const CycNum& x, const CycNum& gen) { return !subfield_coords(x, gen).empty(); }

RealCyc cos2pi(long p, long q)
{
    if (q < 3)
        throw Error("DegenerateField", "cos2pi needs q >= 3, got " + std::to_string(q));
    int n = static_cast<int>(q);
    return RealCyc::unchecked(CycNum::from_terms(n, {{p, Rational(1, 2)}, {-p, Rational(1, 2)}}));
}

RealCyc sin2pi(long p, long q)
{
    if (q < 3)
        throw Error("DegenerateField", "sin2pi needs q >= 3, got " + std::to_string(q));
    int n = static_cast<int>(q);
    CycNum d = CycNum::zeta(n, p) - CycNum::zeta(n, -p);
    return RealCyc::unchecked(d * CycNum::i() * CycNum(Rational(-1, 2)));
}

RealCyc sin_ratio(long p, long q)
{
    if (q < 3)
        throw Error("DegenerateField", "sin_ratio needs q >= 3, got " + std::to_string(q));
    int n = static_cast<int>(q);
    CycNum num = CycNum::zeta(n, p) - CycNum::zeta(n, -p);
    CycNum den = CycNum::zeta(n, 1) - CycNum::zeta(n, -1);
    return RealCyc::unchecked(num / den);
}

RealCyc cot_pi(long p, long q)
{
    int n = static_cast<int>(q);
    CycNum z = CycNum::zeta(n, p);
    if (z == CycNum(1L))
        throw Error("DivisionByZero", "cot of a multiple of pi");
    return RealCyc::unchecked(CycNum::i() * (z + CycNum(1L)) / (z - CycNum(1L)));
}

std::string rational_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& s)
{
    Rational q;
    auto slash = s.find('/');
    auto dot = s.find('.');
    try {
        if (dot != std::string::npos && slash == std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::size_t frac = s.size() - dot - 1;
            Integer den = 1;
            for (std::size_t i = 0; i < frac; ++i)
                den *= 10;
            q = Rational(Integer(digits, 10), den);
        } else {
            q = Rational(s, 10);
        }
    } catch (const std::invalid_argument&) {
        throw Error("ParseError", "not a rational number: '" + s + "'");
    }
    if (q.get_den() == 0)
        throw Error("ParseError", "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace tsurf
