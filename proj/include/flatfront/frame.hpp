#pragma once

// The Weierstrass connection on the edges of a holomorphic map, its flatness,
// the integrated Sl(2,C) frame, and the Pauli-matrix dictionary between
// Hermitian 2x2 matrices and Minkowski space R^{3,1} with quadratic form -det.

#include <flatfront/holo.hpp>

#include <array>

namespace flatfront {

/// Hermitian 2x2 matrix X = x0 E0 + x1 E1 + x2 E2 + x3 E3, stored by its
/// Pauli coordinates. Doubles as a Minkowski vector with (X, X) = -det X.
struct HermitianMat
{
    std::array<Real, 4> x{};

    const Real& operator[](std::size_t k) const { return x[k]; }
    Real& operator[](std::size_t k) { return x[k]; }

    Mat2 matrix() const;

    HermitianMat& operator+=(const HermitianMat& o);
    HermitianMat& operator-=(const HermitianMat& o);
    HermitianMat& operator*=(const Real& s);
    friend HermitianMat operator+(HermitianMat a, const HermitianMat& b) { return a += b; }
    friend HermitianMat operator-(HermitianMat a, const HermitianMat& b) { return a -= b; }
    friend HermitianMat operator*(const Real& s, HermitianMat a) { return a *= s; }
    friend HermitianMat operator-(HermitianMat a) { return a *= Real(-1); }
    friend bool operator==(const HermitianMat&, const HermitianMat&) = default;
};

/// E0 (identity) and the Pauli matrices E1, E2, E3.
HermitianMat pauli_basis(int k);

HermitianMat pauli_pack(const Real& x0, const Real& x1, const Real& x2, const Real& x3);
/// Pauli coordinates of a Hermitian matrix; throws NotHermitian if m differs
/// from its adjoint by more than tol (relative to its largest entry).
HermitianMat pauli_unpack(const Mat2& m, const Real& tol = default_tolerances().hermitian);
/// Pauli coordinates of the Hermitian part (m + m*) / 2.
HermitianMat hermitian_part(const Mat2& m);

/// Minkowski product, the polarization of -det: -x0 y0 + x1 y1 + x2 y2 + x3 y3.
Real minkowski(const HermitianMat& a, const HermitianMat& b);
/// Euclidean norm of the Pauli coordinates.
Real euclidean_norm(const HermitianMat& a);
Real euclidean_dot(const HermitianMat& a, const HermitianMat& b);

/// G . X = G X G*.
HermitianMat sl2_act(const Mat2& G, const HermitianMat& X);

/// Square root branch used for sqrt(1 - t a). The real branch demands
/// 1 - t a > 0; the complex branch takes the principal square root.
enum class Branch : std::uint8_t { real, complex };

/// W_ij = [[1, dg], [t a / dg, 1]] / sqrt(1 - t a) for a single edge.
/// Throws InvalidParameter if t = 0 or t a = 1 (within eps), NegativeBranch
/// if 1 - t a < 0 on the real branch, SingularEdge if dg = 0.
Mat2 weierstrass_matrix(const Complex& dg, const Real& a, const Real& t, Branch branch = Branch::real,
                        const Real& eps = default_tolerances().degenerate);

struct EdgeConnection
{
    QuadGrid grid;
    EdgeLabelling labels;
    Real t = 0;
    Branch branch = Branch::real;
    /// Both orientations, each from the closed formula (so W_ij W_ji = I is a check).
    EdgeField<Mat2> W;
};

EdgeConnection build_connection(const HolomorphicMap& h, const Real& t, Branch branch = Branch::real);

/// max |W_ij W_jk - W_il W_lk| per face, relative to the largest entry of the two products.
Residuals check_flat(const EdgeConnection& W);
/// |W_ij W_ji - I| per edge.
Residuals check_inverse_pairs(const EdgeConnection& W);

struct SL2Frame
{
    QuadGrid grid;
    VertexField<Mat2> F;
    Vertex root;
    /// |F_i W_ij - F_j| / |F_j| over edges outside the spanning tree.
    Real closure_residual = 0;
    /// Row-first vs column-first products to the corner opposite the root, relative.
    Real path_residual = 0;
};

/// Integrates F_j = F_i W_ij from F(root) = F_root along the spanning tree.
/// Throws NotFlat if check_flat exceeds flat_tol, InvalidArgument if
/// det F_root differs from 1.
SL2Frame integrate_frame(const EdgeConnection& W, Vertex root = {}, const Mat2& F_root = Mat2::Identity(),
                         const Real& flat_tol = default_tolerances().flat);

/// max |det F - 1| over the frame.
Real det_drift(const SL2Frame& frame);

}  // namespace flatfront
