#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tsurf/numfield.hpp"

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    typedef mpq_class Literal;
    enum { IsInteger = 0, IsSigned = 1, IsComplex = 0, RequireInitialization = 1,
           ReadCost = 6, AddCost = 150, MulCost = 100 };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<tsurf::CycNum> : GenericNumTraits<tsurf::CycNum> {
    typedef tsurf::CycNum Real;
    typedef tsurf::CycNum NonInteger;
    typedef tsurf::CycNum Nested;
    typedef tsurf::CycNum Literal;
    enum { IsInteger = 0, IsSigned = 1, IsComplex = 0, RequireInitialization = 1,
           ReadCost = 20, AddCost = 400, MulCost = 2000 };
    static inline Real epsilon() { return 0L; }
    static inline Real dummy_precision() { return 0L; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace tsurf {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using QMat = Mat<Rational>;
using QVec = Vec<Rational>;
using IMat = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<long, Eigen::Dynamic, 1>;

inline bool exact_zero(const Rational& q) { return sgn(q) == 0; }
inline bool exact_zero(const CycNum& x) { return x.is_zero(); }
inline Rational exact_inv(const Rational& q) { return 1 / q; }
inline CycNum exact_inv(const CycNum& x) { return x.inv(); }

// In-place reduced row echelon form; returns the pivot columns.
// Pivots are taken at the first nonzero entry, so the result is deterministic.
template <class T>
std::vector<Eigen::Index> row_reduce(Mat<T>& m)
{
    std::vector<Eigen::Index> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Eigen::Index p = r;
        while (p < m.rows() && exact_zero(m(p, c)))
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            m.row(p).swap(m.row(r));
        T s = exact_inv(m(r, c));
        for (Eigen::Index j = c; j < m.cols(); ++j)
            m(r, j) = m(r, j) * s;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == r || exact_zero(m(i, c)))
                continue;
            T f = m(i, c);
            for (Eigen::Index j = c; j < m.cols(); ++j)
                if (!exact_zero(m(r, j)))
                    m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
Eigen::Index exact_rank(Mat<T> m)
{
    return static_cast<Eigen::Index>(row_reduce(m).size());
}

// Columns form a basis of the right kernel.
template <class T>
Mat<T> kernel(const Mat<T>& a)
{
    Mat<T> m = a;
    auto piv = row_reduce(m);
    std::vector<bool> is_piv(a.cols(), false);
    for (auto c : piv)
        is_piv[c] = true;
    std::vector<Eigen::Index> free;
    for (Eigen::Index c = 0; c < a.cols(); ++c)
        if (!is_piv[c])
            free.push_back(c);
    Mat<T> k(a.cols(), static_cast<Eigen::Index>(free.size()));
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j)
            k(i, j) = T(0L);
    for (std::size_t j = 0; j < free.size(); ++j) {
        k(free[j], j) = T(1L);
        for (std::size_t r = 0; r < piv.size(); ++r)
            k(piv[r], j) = -m(r, free[j]);
    }
    return k;
}

template <class T>
std::optional<Mat<T>> solve(const Mat<T>& a, const Mat<T>& b)
{
    Mat<T> m(a.rows(), a.cols() + b.cols());
    m << a, b;
    auto piv = row_reduce(m);
    for (auto c : piv)
        if (c >= a.cols())
            return std::nullopt;
    Mat<T> x(a.cols(), b.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            x(i, j) = T(0L);
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            x(piv[r], j) = m(r, a.cols() + j);
    return x;
}

template <class T>
std::optional<Mat<T>> inverse(const Mat<T>& a)
{
    if (a.rows() != a.cols())
        return std::nullopt;
    Mat<T> id(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            id(i, j) = T(i == j ? 1L : 0L);
    if (exact_rank(a) < a.rows())
        return std::nullopt;
    return solve(a, id);
}

template <class T>
bool is_zero_matrix(const Mat<T>& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!exact_zero(m(i, j)))
                return false;
    return true;
}

template <class T, class U>
Mat<T> cast_exact(const U& m)
{
    Mat<T> r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r(i, j) = T(m(i, j));
    return r;
}

}  // namespace tsurf
