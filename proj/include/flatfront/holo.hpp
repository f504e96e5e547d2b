#pragma once

// Discrete holomorphic maps: face cross ratios factorizing over a real
// edge-labelling, generators, validation, the Christoffel dual and the
// factorizing function r with r_i r_j = |dg_ij|^2 / a_ij.

#include <flatfront/grid.hpp>

namespace flatfront {

struct HolomorphicMap
{
    QuadGrid grid;
    EdgeLabelling labels;
    VertexField<Complex> g;
};

/// cr(z_i, z_j, z_k, z_l) = (dz_ij / dz_jk) (dz_kl / dz_li).
/// Throws DegenerateQuad if dz_jk or dz_li vanishes relative to the quad size.
Complex cross_ratio(const Complex& zi, const Complex& zj, const Complex& zk, const Complex& zl,
                    const Real& eps = default_tolerances().degenerate);

/// Cross ratio of f on a face, corners in (i, j, k, l) order.
Complex face_cross_ratio(const VertexField<Complex>& f, Face face,
                         const Real& eps = default_tolerances().degenerate);

/// g(m, n) = m alpha + i n beta with labels alpha^2 (m steps), -beta^2 (n steps).
HolomorphicMap make_linear(const QuadGrid& grid, const Real& alpha, const Real& beta);

/// Fractional linear image (A g + B) / (C g + D), same labelling.
/// Throws InvalidArgument if AD - BC = 0, PoleOnVertex if C g + D vanishes at
/// a vertex, RegularityViolation if the image is not regular.
HolomorphicMap make_moebius(const HolomorphicMap& h, const Complex& A, const Complex& B,
                            const Complex& C, const Complex& D);

struct HolomorphicReport
{
    /// |cr * a_jk - a_ij| / |a_ij| per face; +inf on degenerate faces.
    Residuals faces;
    std::vector<std::size_t> offending_faces;
    /// Faces with a vanishing denominator or cr within eps of 0 or 1.
    std::vector<std::size_t> degenerate_faces;
    /// Edges (by edge index) with dg = 0 within eps relative to the largest
    /// dg on the faces containing the edge.
    std::vector<std::size_t> degenerate_edges;

    bool ok() const { return offending_faces.empty() && degenerate_edges.empty(); }
};

HolomorphicReport validate_holomorphic(const VertexField<Complex>& g, const EdgeLabelling& a,
                                       const Real& tol = default_tolerances().cross_ratio,
                                       const Real& eps = default_tolerances().degenerate);
HolomorphicReport validate_holomorphic(const HolomorphicMap& h,
                                       const Real& tol = default_tolerances().cross_ratio);

/// Throws RegularityViolation unless validate_holomorphic passes.
void require_holomorphic(const HolomorphicMap& h, const Real& tol = default_tolerances().cross_ratio);

/// Christoffel edge form a_ij / conj(dg_ij).
EdgeForm<Complex> christoffel_form(const HolomorphicMap& h);

struct ChristoffelDual
{
    VertexField<Complex> gstar;
    /// Largest face circulation of the dual edge form, relative to its size.
    Real closure_residual = 0;
};

/// Dual net with dg*_ij = a_ij / conj(dg_ij) and g*(root) = root_value.
/// Throws NotClosed when h is not holomorphic.
ChristoffelDual christoffel_dual(const HolomorphicMap& h, Vertex root = {}, const Complex& root_value = {});

/// Real vertex function with r_i r_j = |dg_ij|^2 / a_ij on every edge,
/// propagated from r(root) = r_root along the grid's spanning tree. Both
/// r_i r_j a_ij = |dg_ij|^2 and a_ij / conj(dg_ij) = dg_ij / (r_i r_j) are
/// checked on every edge; throws Inconsistent(face, residual) if either fails.
VertexField<Real> factorize_r(const HolomorphicMap& h, const Real& r_root, Vertex root = {},
                              const Real& tol = default_tolerances().cross_ratio);

/// Per-face residual of the Koenigs relation between the face diagonals,
/// d g*_ik d r_jl + d g_jl d(1/r)_ik, relative to the size of both terms.
Residuals koenigs_diagonal_check(const HolomorphicMap& h, const VertexField<Complex>& gstar,
                                 const VertexField<Real>& r);

}  // namespace flatfront
