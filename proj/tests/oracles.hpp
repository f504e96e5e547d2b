#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library: exact rational complex arithmetic and plain long-double
// formulas written out by hand.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational a + b i.
struct QComplex
{
    Rational re;
    Rational im;

    friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend QComplex operator*(const QComplex& a, const QComplex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend QComplex operator/(const QComplex& a, const QComplex& b)
    {
        const Rational den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
    QComplex conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }
};

inline QComplex q(long long re, long long im = 0) { return {Rational(re), Rational(im)}; }

/// (z_j - z_i)/(z_k - z_j) * (z_l - z_k)/(z_i - z_l), exactly.
inline QComplex cross_ratio(const QComplex& zi, const QComplex& zj, const QComplex& zk, const QComplex& zl)
{
    return ((zj - zi) / (zk - zj)) * ((zl - zk) / (zi - zl));
}

using LC = std::complex<long double>;
using LMat = std::array<std::array<LC, 2>, 2>;

inline LMat mul(const LMat& a, const LMat& b)
{
    LMat out{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
    return out;
}

inline LC det(const LMat& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

/// [[1, dg], [t a / dg, 1]] / sqrt(1 - t a), written out for real 1 - t a > 0.
inline LMat weierstrass(LC dg, long double a, long double t)
{
    const long double s = std::sqrt(1.0L - t * a);
    return {{{LC(1) / s, dg / s}, {LC(t * a) / (dg * s), LC(1) / s}}};
}

/// Pauli coordinates of the Hermitian matrix h: x0 = tr/2, x3 = (h00 - h11)/2,
/// x1 = Re h10, x2 = Im h10.
inline std::array<long double, 4> pauli(const LMat& h)
{
    return {std::real(h[0][0] + h[1][1]) / 2, std::real(h[1][0]), std::imag(h[1][0]), std::real(h[0][0] - h[1][1]) / 2};
}

inline LMat adjoint(const LMat& a)
{
    return {{{std::conj(a[0][0]), std::conj(a[1][0])}, {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

/// G diag(c0 + c3, c0 - c3) G*, i.e. G (c0 E0 + c3 E3) G*.
inline std::array<long double, 4> act_diagonal(const LMat& G, long double c0, long double c3)
{
    const LMat D{{{LC(c0 + c3), LC(0)}, {LC(0), LC(c0 - c3)}}};
    return pauli(mul(mul(G, D), adjoint(G)));
}

inline long double minkowski(const std::array<long double, 4>& a, const std::array<long double, 4>& b)
{
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

}  // namespace oracle

namespace oracle {

/// Exact homogeneous lift and 2x2 matrix over the Gaussian rationals.
using QLift = std::array<QComplex, 2>;
using QMat = std::array<std::array<QComplex, 2>, 2>;

inline QComplex bracket(const QLift& P, const QLift& Q) { return P[0] * Q[1] - P[1] * Q[0]; }

/// Solution h-_j of cr(h+_i, h+_j, h-_j, h-_i) = tb, the edge condition being
/// linear in h-_j.
inline QLift darboux_step(const QLift& hp_i, const QLift& hp_j, const QLift& hm_i, const Rational& tb)
{
    const QComplex c1 = bracket(hp_j, hp_i);
    const QComplex c2 = QComplex{tb, 0} * bracket(hp_i, hm_i);
    return {c1 * hm_i[0] + c2 * hp_j[0], c1 * hm_i[1] + c2 * hp_j[1]};
}

/// Columns (h+, h-).
inline QMat columns(const QLift& hp, const QLift& hm) { return {{{hp[0], hm[0]}, {hp[1], hm[1]}}}; }

inline QComplex det(const QMat& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

/// a^{-1} b.
inline QMat left_divide(const QMat& a, const QMat& b)
{
    const QComplex d = det(a);
    const QMat inv{{{a[1][1] / d, (q(0) - a[0][1]) / d}, {(q(0) - a[1][0]) / d, a[0][0] / d}}};
    QMat out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out[r][c] = inv[r][0] * b[0][c] + inv[r][1] * b[1][c];
    return out;
}

}  // namespace oracle
