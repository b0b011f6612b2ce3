#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace tsurf {

using Integer = mpz_class;
using Rational = mpq_class;

// Every failure carries a short machine-readable code ("DivisionByZero",
// "NotJS", ...) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

int euler_phi(int n);
long lcm_order(long a, long b);

// Largest cyclotomic order a field join may produce.
constexpr int kDefaultJoinCap = 10000;
int join_cap();
void set_join_cap(int cap);

/*
 * Element of Q(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1), reduced
 * modulo the N-th cyclotomic polynomial.  Stored as integer numerators over
 * one positive common denominator with gcd(all numerators, den) = 1, which
 * makes the representation unique.
 */
class CycNum {
public:
    CycNum();
    CycNum(long v);
    CycNum(const Rational& q);
    CycNum(int order, const std::vector<Rational>& coeffs);

    static CycNum zeta(int order, long power = 1);
    // sum of c * zeta_N^e for arbitrary integer exponents e
    static CycNum from_terms(int order, const std::vector<std::pair<long, Rational>>& terms);
    // the imaginary unit, in order 4
    static CycNum i();

    int order() const { return n_; }
    int degree() const { return static_cast<int>(num_.size()); }
    Rational coeff(int k) const;
    std::vector<Rational> coeffs() const;
    const std::vector<Integer>& numerators() const { return num_; }
    const Integer& denominator() const { return den_; }

    bool is_zero() const;
    bool is_rational() const;
    bool is_real() const;
    Rational to_rational() const;

    // same element of Q(zeta_M), N | M
    CycNum lift(int M) const;
    // smallest order in which this element is representable, and the element there
    int minimal_order() const;
    CycNum reduced() const;

    CycNum conj() const;
    // automorphism zeta -> zeta^k, gcd(k, N) = 1
    CycNum galois(long k) const;
    CycNum inv() const;
    // real and imaginary parts; im() lives in order lcm(N, 4)
    CycNum re() const;
    CycNum im() const;

    CycNum operator-() const;
    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator/=(const CycNum& o);

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
    friend bool operator==(const CycNum& a, const CycNum& b);
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    // double evaluation under zeta_N -> exp(2 pi i k / N)
    std::complex<double> to_complex(long k = 1) const;
    double to_double() const { return to_complex().real(); }

    std::string to_string() const;

private:
    CycNum(int order, std::vector<Integer> num, Integer den);
    void normalize();
    void mul_same(const CycNum& o);

    int n_;
    std::vector<Integer> num_;
    Integer den_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& x);

// Element of a cyclotomic field fixed by complex conjugation.
class RealCyc {
public:
    RealCyc() = default;
    RealCyc(long v) : v_(v) {}
    RealCyc(const Rational& q) : v_(q) {}
    explicit RealCyc(const CycNum& v);
    static RealCyc unchecked(const CycNum& v);

    const CycNum& value() const { return v_; }
    int order() const { return v_.order(); }
    bool is_zero() const { return v_.is_zero(); }
    bool is_rational() const { return v_.is_rational(); }
    Rational to_rational() const { return v_.to_rational(); }
    double to_double() const { return v_.to_double(); }
    int sign() const;
    RealCyc abs() const { return sign() < 0 ? -*this : *this; }
    RealCyc inv() const { return unchecked(v_.inv()); }
    RealCyc reduced() const { return unchecked(v_.reduced()); }

    RealCyc operator-() const { return unchecked(-v_); }
    RealCyc& operator+=(const RealCyc& o) { v_ += o.v_; return *this; }
    RealCyc& operator-=(const RealCyc& o) { v_ -= o.v_; return *this; }
    RealCyc& operator*=(const RealCyc& o) { v_ *= o.v_; return *this; }
    RealCyc& operator/=(const RealCyc& o) { v_ /= o.v_; return *this; }
    friend RealCyc operator+(RealCyc a, const RealCyc& b) { return a += b; }
    friend RealCyc operator-(RealCyc a, const RealCyc& b) { return a -= b; }
    friend RealCyc operator*(RealCyc a, const RealCyc& b) { return a *= b; }
    friend RealCyc operator/(RealCyc a, const RealCyc& b) { return a /= b; }
    friend bool operator==(const RealCyc& a, const RealCyc& b) { return a.v_ == b.v_; }
    friend bool operator!=(const RealCyc& a, const RealCyc& b) { return !(a.v_ == b.v_); }
    friend bool operator<(const RealCyc& a, const RealCyc& b) { return (a - b).sign() < 0; }
    friend bool operator>(const RealCyc& a, const RealCyc& b) { return b < a; }
    friend bool operator<=(const RealCyc& a, const RealCyc& b) { return !(b < a); }
    friend bool operator>=(const RealCyc& a, const RealCyc& b) { return !(a < b); }

private:
    CycNum v_;
};

std::ostream& operator<<(std::ostream& os, const RealCyc& x);

struct ComplexBall {
    std::complex<double> center;
    double radius = 0.0;
    bool contains(std::complex<double> z) const { return std::abs(z - center) <= radius; }
};

// MPFR ball: real and imaginary centers at working precision, one radius.
class MpBall {
public:
    explicit MpBall(long bits = 128);
    MpBall(const MpBall& o);
    MpBall& operator=(const MpBall& o);
    ~MpBall();

    long bits() const { return bits_; }
    mpfr_ptr re() { return re_; }
    mpfr_ptr im() { return im_; }
    mpfr_srcptr re() const { return re_; }
    mpfr_srcptr im() const { return im_; }
    double radius() const { return rad_; }
    void set_radius(double r) { rad_ = r; }
    std::complex<double> center() const;

private:
    long bits_;
    mpfr_t re_, im_;
    double rad_ = 0.0;
};

enum class CycOp { Add, Sub, Mul, Inv, Neg, Conj };

// strict variant: operands must already share an order
CycNum cyc_arith(CycOp op, const CycNum& a, const CycNum* b = nullptr);
CycNum embed_order(const CycNum& a, int M);

int real_sign(const RealCyc& x);
// sign of the real part / imaginary part of a complex element
int sign_re(const CycNum& z);
int sign_im(const CycNum& z);

ComplexBall embed(const CycNum& a, long k, long bits);
MpBall embed_mp(const CycNum& a, long k, long bits);

// primitive integer polynomial, coefficients low degree first, leading > 0
using IntPoly = std::vector<Integer>;
IntPoly min_poly(const CycNum& x);
int algebraic_degree(const CycNum& x);
bool in_subfield(const CycNum& x, const CycNum& gen);
// coordinates of x in the basis 1, gen, gen^2, ...; empty when x is not in Q(gen)
std::vector<Rational> subfield_coords(const CycNum& x, const CycNum& gen);

RealCyc cos2pi(long p, long q);
RealCyc sin2pi(long p, long q);
RealCyc sin_ratio(long p, long q);
// cot(pi p / q)
RealCyc cot_pi(long p, long q);

std::string rational_string(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace tsurf
