#pragma once

#include <complex>
#include <vector>

#include "tsurf/linalg.hpp"
#include "tsurf/numfield.hpp"

namespace tsurf {

// dense rational polynomial, low degree first, no trailing zeros
using QPoly = std::vector<Rational>;

QPoly to_qpoly(const IntPoly& p);
IntPoly primitive_part(const QPoly& p);
void trim(QPoly& p);
int degree(const QPoly& p);  // -1 for the zero polynomial
int degree(const IntPoly& p);

QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b);
QPoly poly_gcd(QPoly a, QPoly b);  // monic
QPoly derivative(const QPoly& p);
bool divides(const IntPoly& d, const IntPoly& p);
IntPoly exact_quotient(const IntPoly& p, const IntPoly& d);
Rational eval(const QPoly& p, const Rational& x);

IntPoly cyclotomic_poly(int n);
// characteristic polynomial det(x I - M), Faddeev-LeVerrier over Q
IntPoly char_poly(const IMat& m);
IntPoly char_poly(const QMat& m);
// x^(2d) p(1/x) = p(x)
bool is_palindromic(const IntPoly& p);
// x^d m(x + 1/x) for m of degree d: the polynomial satisfied by both roots of x^2 - t x + 1
IntPoly reciprocal_lift(const IntPoly& m);

// number of distinct real roots in the half-open interval (a, b]
int sturm_count(const QPoly& p, const Rational& a, const Rational& b);
std::vector<std::complex<double>> numeric_roots(const IntPoly& p);
Rational to_rational(double x);

std::string poly_string(const IntPoly& p);

}  // namespace tsurf
