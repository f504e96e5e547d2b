#pragma once

// The parallel family of discrete flat fronts (X, N) built from a Weierstrass
// frame, and the geometric checks on it: unit-length invariants, reflection
// propagation, the Rodrigues equation, concircular faces, mixed-area Gauss
// curvature, and the Lie sphere lifts with their curvature spheres.

#include <flatfront/frame.hpp>

#include <array>

namespace flatfront {

struct FlatFrontFamily
{
    HolomorphicMap holo;
    EdgeConnection connection;
    SL2Frame frame;

    const Real& t() const { return connection.t; }
    const QuadGrid& grid() const { return holo.grid; }
};

/// Builds the connection and integrates the frame. Throws whatever
/// build_connection and integrate_frame throw.
FlatFrontFamily make_front_family(const HolomorphicMap& h, const Real& t, Vertex root = {},
                                  const Mat2& F_root = Mat2::Identity(), Branch branch = Branch::real);

struct FrontSample
{
    Real s = 0;
    VertexField<HermitianMat> X;
    VertexField<HermitianMat> N;
};

/// X = F (E0 cosh s + E3 sinh s) F*, N = F (E0 sinh s + E3 cosh s) F*.
FrontSample eval_front(const SL2Frame& frame, const Real& s);
inline FrontSample eval_front(const FlatFrontFamily& family, const Real& s) { return eval_front(family.frame, s); }

struct FrontInvariants
{
    Real det_x = 0;   // max |det X - 1|
    Real det_n = 0;   // max |det N + 1|
    Real xn = 0;      // max |(X, N)|
    Real min_trace_x = 0;
};

FrontInvariants front_invariants(const FrontSample& sample);

/// max over vertices of the deviation of (X(s), N(s)) from
/// (X cosh s + N sinh s, X sinh s + N cosh s) computed from base (s = 0),
/// relative to |X(s)| resp. |N(s)|.
Real parallel_family_residual(const FrontSample& base, const FrontSample& sample);

// --- reflections --------------------------------------------------------

/// Y_ij = [[|dg|^2, dg], [conj dg, t a]] / (|dg| sqrt(1 - t a)).
/// Throws SingularEdge if dg = 0 or 1 - t a = 0, NegativeBranch if 1 - t a < 0.
HermitianMat reflection_generator(const Complex& dg, const Real& a, const Real& t);

/// R_ij = F_i Y_ij F_i*.
HermitianMat reflection_vector(const FlatFrontFamily& family, const Edge& e);

/// Largest |R_ij + R_ji| relative to |R_ij| over all edges.
Real reflection_antisymmetry(const FlatFrontFamily& family);

/// X - 2 R (R, X). Throws NotUnitSpacelike unless (R, R) = 1 within tol
/// (relative to max(1, |R|^2)).
HermitianMat reflect(const HermitianMat& X, const HermitianMat& R, const Real& tol = default_tolerances().geo);

/// X + R (det(X + R) - det(X - R)) / 2, with matrix determinants.
HermitianMat reflect_by_determinants(const HermitianMat& X, const HermitianMat& R);

struct PropagationReport
{
    Residuals x;  // |X_j - rho_ji(X_i)| / |X_j| per edge
    Residuals n;  // |N_j - rho_ji(N_i)| / |N_j| per edge
};

PropagationReport propagation_check(const FlatFrontFamily& family, const FrontSample& sample);

/// Both dH+_ij and dH-_ij are multiples of R_ij: largest normalized
/// rejection from the line through R per edge.
Residuals reflection_collinearity(const FlatFrontFamily& family, const FrontSample& sample);

// --- Rodrigues equation -------------------------------------------------

struct RodriguesEdge
{
    Real k = quiet_nan();          // least-squares k with dN + k dX ~ 0
    Real k_reverse = quiet_nan();  // same for the reversed edge
    Real k_closed = quiet_nan();   // -(dN, R) / (dX, R)
    Real residual = quiet_nan();   // |dN + k dX| / |dX|
    bool singular = false;
};

/// Throws SingularEdge if the Minkowski length sqrt|(dX, dX)| of the edge is
/// below tol_singular. Euclidean lengths are useless here: far from the
/// origin, edges of fixed hyperbolic length look short next to |X|.
RodriguesEdge rodrigues_edge(const HermitianMat& Xi, const HermitianMat& Xj, const HermitianMat& Ni,
                             const HermitianMat& Nj, const HermitianMat& R,
                             const Real& tol_singular = default_tolerances().singular);

struct RodriguesReport
{
    std::vector<RodriguesEdge> edges;  // by edge index; singular edges carry NaNs
    Residuals residual;
    Residuals symmetry;   // |k_ij - k_ji| / max(1, |k|)
    Residuals agreement;  // |k - k_closed| / max(1, |k|)
    std::size_t singular_count = 0;
};

RodriguesReport rodrigues_check(const FlatFrontFamily& family, const FrontSample& sample);

// --- circularity ----------------------------------------------------------

/// Cross ratio of four coplanar points in R^d, read as complex numbers in an
/// orthonormal basis of their affine plane.
Complex planar_cross_ratio(const std::array<Eigen::Matrix<Real, Eigen::Dynamic, 1>, 4>& points);

/// sigma_3 / sigma_1 of the difference vectors X_j - X_i, X_k - X_i, X_l - X_i.
Real planarity_defect(const std::array<HermitianMat, 4>& X);

struct CircularityFace
{
    Real planarity = quiet_nan();
    Complex cross_ratio;
    Real imag_cross_ratio = quiet_nan();  // |Im cr| / |cr|
};

/// Planarity in R^{3,1} plus the cross ratio of the Poincare ball images
/// (where hyperbolic circles are round) being real.
CircularityFace circularity(const std::array<HermitianMat, 4>& X);

struct CircularityReport
{
    Residuals planarity;
    Residuals imag_cross_ratio;
};

CircularityReport circularity_check(const VertexField<HermitianMat>& X);

// --- mixed area and curvature ---------------------------------------------

/// Element of Lambda^2 R^{3,1}, components 01, 02, 03, 12, 13, 23.
struct Bivector
{
    std::array<Real, 6> c{};

    Real norm() const;
    Bivector& operator+=(const Bivector& o);
    Bivector& operator*=(const Real& s);
    friend Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
    friend Bivector operator-(Bivector a, const Bivector& b)
    {
        for (std::size_t k = 0; k < 6; ++k) a.c[k] -= b.c[k];
        return a;
    }
    friend Bivector operator*(const Real& s, Bivector a) { return a *= s; }
};

Bivector wedge(const HermitianMat& u, const HermitianMat& v);
/// Euclidean pairing of bivector components.
Real bivector_dot(const Bivector& a, const Bivector& b);

using FaceQuad = std::array<HermitianMat, 4>;

FaceQuad face_values(const VertexField<HermitianMat>& field, Face face);

/// A(P, Q) = (dP_ik ^ dQ_jl + dQ_ik ^ dP_jl) / 4, so A(P, P) = dP_ik ^ dP_jl / 2.
Bivector mixed_area(const FaceQuad& P, const FaceQuad& Q);

struct FaceCurvature
{
    Bivector area_x;  // A(X, X)
    Bivector area_n;  // A(N, N)
    Bivector area_h;  // A(H+, H-)
    Real K = quiet_nan();
    bool singular = false;
    Real scale = 0;               // largest diagonal of X and N on the face
    Real area_h_relative = 0;     // |A(H+, H-)| / scale^2
    Real diagonal_wedge = 0;      // |dH+_ik ^ dH-_jl| / (|dH+_ik| |dH-_jl|)
    Real proportionality = 0;     // |A(H+,H-) - A(X,X)(1-K)| / scale^2
    Real diagonal_sine = 0;       // Minkowski sine of the angle between the diagonals of X
};

struct CurvatureReport
{
    std::vector<FaceCurvature> faces;
    Residuals area_h;          // area_h_relative per face
    Residuals k_deviation;     // |K - 1|, NaN on singular faces
    Residuals diagonal_wedge;
    Residuals proportionality;
    std::size_t singular_count = 0;
};

/// Mixed-area Gauss curvature from A(H+, H-) = A(X, X)(1 - K), H+- = X +- N.
/// A face is flagged singular, and K left undefined, when the diagonals of X
/// are parallel in the Minkowski metric to within tol_singular (sine of their
/// angle). This is a Lorentz-invariant version of |A(X, X)| being small.
CurvatureReport gauss_curvature(const VertexField<HermitianMat>& X, const VertexField<HermitianMat>& N,
                                const Real& tol_singular = default_tolerances().singular);

// --- Lie sphere lifts -----------------------------------------------------

/// Vector of R^{4,2} = R^{3,1} + <p, q>, (p, p) = -1, (q, q) = 1.
struct LieVec
{
    std::array<Real, 6> c{};  // x0, x1, x2, x3, p, q

    LieVec& operator+=(const LieVec& o);
    LieVec& operator*=(const Real& s);
    friend LieVec operator+(LieVec a, const LieVec& b) { return a += b; }
    friend LieVec operator-(LieVec a, const LieVec& b)
    {
        for (std::size_t k = 0; k < 6; ++k) a.c[k] -= b.c[k];
        return a;
    }
    friend LieVec operator*(const Real& s, LieVec a) { return a *= s; }
};

Real lie_product(const LieVec& a, const LieVec& b);
Real lie_euclidean_norm(const LieVec& a);
LieVec lie_embed(const HermitianMat& X, const Real& p = 0, const Real& q = 0);

struct LieLifts
{
    VertexField<LieVec> x;  // X - q, point spheres
    VertexField<LieVec> n;  // N + p, tangent planes
};

LieLifts lie_lift(const FrontSample& sample);

struct LiftReport
{
    Real xx = 0;  // max |(x, x)|
    Real nn = 0;
    Real xn = 0;
};

LiftReport lift_check(const LieLifts& lifts);

struct CurvatureSphere
{
    LieVec kappa;
    Real rank_residual = 0;   // sigma_4 / sigma_1 of [x_i n_i x_j n_j]
    // Both residuals are measured after the conditioning isometry.
    Real null_residual = 0;   // |(kappa, kappa)| / |kappa|^2
    Real span_residual = 0;   // mismatch of the two span representations
};

/// Common sphere of the contact elements <x_i, n_i> and <x_j, n_j>,
/// normalized to x-coefficient 1 where possible. Throws NoIntersection
/// unless the four lifts span exactly three dimensions. The rank is read off
/// after an isometry moving x_i near the origin, where the Euclidean
/// singular values are meaningful.
CurvatureSphere curvature_sphere(const LieVec& xi, const LieVec& ni, const LieVec& xj, const LieVec& nj,
                                 const Real& tol = default_tolerances().geo);

struct CurvatureSphereReport
{
    Residuals rank;  // +inf where no sphere exists
    Residuals null;
    Residuals span;
};

CurvatureSphereReport curvature_spheres(const LieLifts& lifts);

/// (X(s) - q, N(s) + p) against the boosted lifts cosh s a + sinh s b and
/// sinh s a + cosh s b with a = X - (p sinh s + q cosh s),
/// b = N + (p cosh s + q sinh s) taken at s = 0; max relative deviation.
Real parallel_lift_residual(const FrontSample& base, const FrontSample& sample);

}  // namespace flatfront
