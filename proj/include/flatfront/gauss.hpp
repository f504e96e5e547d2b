#pragma once

// Hyperbolic Gauss maps of a front, Darboux pairs of projective nets and
// their cross-ratio laws, and the edgewise generator of Darboux pairs.

#include <flatfront/front.hpp>

namespace flatfront {

/// det[P, Q], the determinant of the matrix with columns P and Q.
Complex bracket(const Lift& P, const Lift& Q);

/// |det[P, Q]| / (|P| |Q|): zero iff P and Q are the same projective point.
Real projective_distance(const Lift& P, const Lift& Q);

/// (det[B,A] det[D,C]) / (det[C,B] det[A,D]). Agrees with cross_ratio on the
/// lifts (z, 1). Throws DegenerateQuad if B ~ C or D ~ A within eps times the
/// largest projective distance among the four points.
Complex projective_cross_ratio(const Lift& A, const Lift& B, const Lift& C, const Lift& D,
                               const Real& eps = default_tolerances().degenerate);

struct GaussMaps
{
    VertexField<Lift> hplus;   // first column of F
    VertexField<Lift> hminus;  // second column of F
    VertexField<HermitianMat> Hplus;   // X + N at s = 0
    VertexField<HermitianMat> Hminus;  // X - N at s = 0
    Real dyadic_residual = 0;  // max |h h* - H/2| over both maps
    Real null_residual = 0;    // max |det H| over both maps
};

GaussMaps gauss_maps(const SL2Frame& frame);

/// b = -a / (1 - t a). Throws InvalidParameter if 1 - t a vanishes.
Real pair_label(const Real& a, const Real& t);
/// Inverse relation a = -b / (1 - t b).
Real weierstrass_label(const Real& b, const Real& t);
EdgeLabelling pair_labelling(const EdgeLabelling& a, const Real& t);
EdgeLabelling weierstrass_labelling(const EdgeLabelling& b, const Real& t);

/// Two projective nets with cr(h+_i, h+_j, h-_j, h-_i) = t b_ij on edges,
/// each holomorphic with labelling b.
struct DarbouxPair
{
    QuadGrid grid;
    EdgeLabelling b;
    Real t = 0;
    VertexField<Lift> hplus;
    VertexField<Lift> hminus;
};

/// Pair of Gauss maps of the front built from a with parameter t.
DarbouxPair pair_from_frame(const SL2Frame& frame, const EdgeLabelling& a, const Real& t);

struct PairCrossRatioReport
{
    Residuals face_plus;   // per face, relative to the expected value
    Residuals face_minus;
    Residuals edge;        // per edge
};

/// Compares the cross ratios of a front's Gauss maps with their closed forms
/// in terms of the Weierstrass labelling a: on faces
/// (a_ij / (1 - t a_ij)) ((1 - t a_jk) / a_jk), on edges -t a_ij / (1 - t a_ij).
PairCrossRatioReport verify_pair_cross_ratios(const DarbouxPair& pair, const EdgeLabelling& a, const Real& t);

struct DarbouxReport
{
    Residuals face_plus;  // |cr - b_ij / b_jk| / |b_ij / b_jk|
    Residuals face_minus;
    Residuals edge;       // |cr - t b| / |t b|
    Real min_separation = 0;  // smallest projective distance of h+ and h- at a vertex

    bool ok(const Real& tol, const Real& separation = default_tolerances().projective) const
    {
        return face_plus.within(tol) && face_minus.within(tol) && edge.within(tol) && min_separation > separation;
    }
};

/// Checks the defining conditions of a Darboux pair with its own labelling b.
DarbouxReport verify_darboux_pair(const DarbouxPair& pair);

/// Lifts (z, 1) of a complex vertex function.
VertexField<Lift> affine_lifts(const VertexField<Complex>& g);

/// Rescales so the largest component has modulus 1.
Lift normalize_lift(const Lift& h);

/// h-_j solving cr(h+_i, h+_j, h-_j, h-_i) = tb. Throws DegenerateStep if
/// tb is within eps of 0 or 1, or the solution coincides with h+_j (relative
/// to the spread of the given points).
Lift darboux_step(const Lift& hplus_i, const Lift& hplus_j, const Lift& hminus_i, const Real& tb,
                  const Real& eps = default_tolerances().degenerate);

struct DarbouxPropagation
{
    DarbouxPair pair;
    /// Per face: projective distance of h-_k reached via j and via l, and of
    /// both from the propagated value.
    Residuals consistency;
};

/// Propagates h- from h-(root) = seed along the spanning tree. Throws
/// InvalidArgument if the seed equals h+(root), DegenerateStep from a single
/// step, and Inconsistent(face, residual) if the face consistency exceeds tol.
DarbouxPropagation darboux_propagate(const VertexField<Lift>& hplus, const EdgeLabelling& b, const Real& t,
                                     const Lift& seed, Vertex root = {},
                                     const Real& tol = default_tolerances().geo);

}  // namespace flatfront
