#pragma once

// Scalar types, small matrix aliases, error type and residual reports shared
// by every module of the library.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>
#include <Eigen/LU>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#ifndef FLATFRONT_DIGITS
#define FLATFRONT_DIGITS 50
#endif

namespace flatfront {

/// Library-wide real scalar. Fronts built from the Weierstrass data grow
/// exponentially across the grid, so Minkowski products of far-out points
/// cancel catastrophically in double precision.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<FLATFRONT_DIGITS>,
    boost::multiprecision::et_off>;
using Complex = boost::multiprecision::cpp_complex<FLATFRONT_DIGITS>;

/// 2x2 complex matrix (frames, connection matrices).
using Mat2 = Eigen::Matrix<Complex, 2, 2>;
/// Homogeneous coordinates of a point of the complex projective line.
using Lift = Eigen::Matrix<Complex, 2, 1>;

inline double to_double(const Real& x) { return static_cast<double>(x); }

inline Complex make_complex(double re, double im) { return Complex(Real(re), Real(im)); }

inline const Complex& imag_unit()
{
    static const Complex i(Real(0), Real(1));
    return i;
}

inline Real max_abs(const Mat2& m)
{
    Real out = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out = std::max(out, Real(abs(m(r, c))));
    return out;
}

inline Real max_abs_diff(const Mat2& a, const Mat2& b) { return max_abs(a - b); }

inline Real quiet_nan() { return std::numeric_limits<Real>::quiet_NaN(); }

enum class ErrorKind : std::uint8_t {
    InvalidArgument,
    NotClosed,
    DegenerateQuad,
    PoleOnVertex,
    RegularityViolation,
    Inconsistent,
    InvalidParameter,
    NegativeBranch,
    NotFlat,
    NotHermitian,
    SingularEdge,
    NotUnitSpacelike,
    NoIntersection,
    DegenerateStep,
    CoincidentPoints,
    EntryMismatch,
    NotIntegrable,
    WrongSheet,
    NotUnitTimelike,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure of a library operation is reported as an Error carrying the
/// failure kind, and where meaningful the offending cell (vertex, edge or
/// face index, per the grid's numbering) and the residual that tripped.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> cell = {},
          double residual = std::numeric_limits<double>::quiet_NaN());

    ErrorKind kind() const noexcept { return m_kind; }
    /// The message without the kind, cell and residual decoration of what().
    const std::string& message() const noexcept { return m_message; }
    std::optional<std::size_t> cell() const noexcept { return m_cell; }
    double residual() const noexcept { return m_residual; }

private:
    ErrorKind m_kind;
    std::string m_message;
    std::optional<std::size_t> m_cell;
    double m_residual;
};

/// Per-cell residuals of a report-style check. NaN entries mark cells that
/// were not evaluated (e.g. singular faces) and are ignored by max().
struct Residuals
{
    std::vector<Real> values;

    Real max() const;
    /// Index of the largest residual, or nullopt if there is none.
    std::optional<std::size_t> worst() const;
    /// Cells whose residual exceeds tol.
    std::vector<std::size_t> above(const Real& tol) const;
    bool within(const Real& tol) const { return !(max() > tol); }
};

/// Default tolerances; every check accepts an override.
struct Tolerances
{
    Real degenerate = Real("1e-12");   // regularity of cross ratios and edges
    Real closed = Real("1e-10");       // face circulation of edge forms, x max(|w|, 1)
    Real cross_ratio = Real("1e-10");  // holomorphicity and Darboux conditions
    Real flat = Real("1e-10");         // flatness of the connection, x max entry
    Real det = Real("1e-10");          // unimodularity of frames
    Real hermitian = Real("1e-10");
    Real geo = Real("1e-9");           // front geometry, relative to local scale
    Real area = Real("1e-10");         // |A(H+, H-)| relative to the squared face scale
    Real singular = Real("1e-8");      // singular edges and faces, relative
    Real projective = Real("1e-30");   // coincidence of two points of CP^1, near working precision
};

const Tolerances& default_tolerances();

}  // namespace flatfront
