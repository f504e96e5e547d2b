#pragma once

// Recovery of Weierstrass data from a Darboux pair: unimodular frames from
// the lifts, the raw connection between them, its compatibility conditions,
// the diagonal gauge and the holomorphic potential.

#include <flatfront/gauss.hpp>

namespace flatfront {

/// F' = (h+, h-) / sqrt(det (h+, h-)), principal root. Throws
/// CoincidentPoints(vertex) if h+ and h- are projectively equal within eps.
VertexField<Mat2> normalize_lifts(const DarbouxPair& pair, const Real& eps = default_tolerances().projective);

/// Entries of W'_ij = F'_i^{-1} F'_j on one oriented edge.
struct RawEntries
{
    Complex u, v, x, y;
};

struct RawConnection
{
    QuadGrid grid;
    VertexField<Mat2> frame;  // F'
    EdgeField<RawEntries> W;
    /// Per edge, the larger of |x + t b / v| / |x| and |y - (1 - t b) / u| / |y|.
    Residuals entry_mismatch;
};

/// Reads off W'_ij for both orientations of every edge and verifies
/// x = -t b / v and y = (1 - t b) / u. Throws EntryMismatch(edge, residual)
/// above tol.
RawConnection connection_entries(const VertexField<Mat2>& Fprime, const EdgeLabelling& b, const Real& t,
                                 const Real& tol = default_tolerances().cross_ratio);

struct CompatibilityReport
{
    Residuals cross_ratio;   // b_jk v_ij / v_jk - b_ij v_il / v_lk
    Residuals diagonal;      // u_ij u_jk - u_il u_lk
    Residuals off_diagonal;  // upper right entry of W'_ij W'_jk - W'_il W'_lk, with y eliminated

    bool within(const Real& tol) const
    {
        return cross_ratio.within(tol) && diagonal.within(tol) && off_diagonal.within(tol);
    }
};

/// Face residuals, each relative to the largest term entering it.
CompatibilityReport check_compatibility(const RawConnection& raw, const EdgeLabelling& b, const Real& t);

struct Gauge
{
    VertexField<Complex> w;
    /// |w_j - sqrt(1 - t b) w_i / u_ij| / |w_j| over edges outside the tree.
    Real closure_residual = 0;
    /// Edge indices with 1 - t b < 0, where the principal root is used.
    std::vector<std::size_t> negative_edges;
};

/// w_j = sqrt(1 - t b_ij) / u_ij * w_i from w(root) = w_root. Throws
/// NotIntegrable(edge, residual) if the closure residual exceeds tol.
Gauge solve_gauge(const RawConnection& raw, const EdgeLabelling& b, const Real& t, const Complex& w_root,
                  Vertex root = {}, const Real& tol = default_tolerances().cross_ratio);

struct WeierstrassData
{
    HolomorphicMap holo;  // recovered g with labelling a = -b / (1 - t b)
    Real t = 0;
    VertexField<Complex> w;
    /// Unimodular frame at the root reproducing the pair: F'(root) diag(w, 1/w).
    Mat2 frame_root = Mat2::Identity();
    Vertex root;
    /// Largest face circulation of the recovered dg, relative.
    Real closure_residual = 0;
};

/// Integrates dg_ij = v_ij / (w_i w_j sqrt(1 - t b_ij)) from g(root) = g_root.
/// Throws NotClosed, or RegularityViolation if g is not holomorphic with a.
WeierstrassData recover_potential(const RawConnection& raw, const Gauge& gauge, const EdgeLabelling& b,
                                  const Real& t, const Complex& g_root, Vertex root = {},
                                  const Real& tol = default_tolerances().cross_ratio);

/// normalize_lifts, connection_entries, solve_gauge and recover_potential
/// in sequence.
WeierstrassData invert_pair(const DarbouxPair& pair, const Complex& w_root = Complex(1),
                            const Complex& g_root = Complex(0), Vertex root = {});

/// Per edge, |W_ij - G_i^{-1} W'_ij G_j| relative to |W_ij|, G = diag(w, 1/w).
Residuals gauge_relation(const EdgeConnection& W, const RawConnection& raw, const VertexField<Complex>& w);

}  // namespace flatfront
