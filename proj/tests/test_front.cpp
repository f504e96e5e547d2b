#include <flatfront/front.hpp>
#include <flatfront/poincare.hpp>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace flatfront;
using namespace testing_support;

namespace {

const FlatFrontFamily& standard_family()
{
    static const FlatFrontFamily family = make_front_family(make_linear(QuadGrid(10, 10), 1, 1), Real(0.5));
    return family;
}

SL2Frame identity_frame(const QuadGrid& grid)
{
    return SL2Frame{grid, VertexField<Mat2>(grid, Mat2::Identity()), {}, 0, 0};
}

Real coord_gap(const HermitianMat& a, const HermitianMat& b) { return euclidean_norm(a - b); }

HermitianMat random_vector(std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(-2, 2);
    return pauli_pack(u(rng), u(rng), u(rng), u(rng));
}

HermitianMat random_unit_spacelike(std::mt19937& rng)
{
    for (;;) {
        const HermitianMat v = random_vector(rng);
        const Real q = minkowski(v, v);
        if (q > Real(0.1)) return Real(1 / sqrt(q)) * v;
    }
}

LieVec random_lie(std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(-1, 1);
    LieVec v;
    for (auto& c : v.c) c = u(rng);
    return v;
}

}  // namespace

TEST(EvalFront, IdentityFrame)
{
    const auto sample = eval_front(identity_frame(QuadGrid(2, 2)), 0);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(sample.X.at(k), pauli_basis(0));
        EXPECT_EQ(sample.N.at(k), pauli_basis(3));
    }
}

TEST(EvalFront, UnitInvariantsOnStandardExample)
{
    const auto& family = standard_family();
    for (double s : {0.0, 0.5, -0.5, 1.3}) {
        const auto sample = eval_front(family, s);
        const auto inv = front_invariants(sample);
        EXPECT_LT(to_double(inv.det_x), 1e-11);
        EXPECT_LT(to_double(inv.det_n), 1e-11);
        EXPECT_LT(to_double(inv.xn), 1e-11);
        EXPECT_GT(inv.min_trace_x, Real(0));
    }
}

TEST(EvalFront, ParallelFamilyIsLinearInCoshSinh)
{
    const auto& family = standard_family();
    const auto base = eval_front(family, 0);
    for (double s : {0.25, -0.7}) {
        const auto sample = eval_front(family, s);
        EXPECT_LT(to_double(parallel_family_residual(base, sample)), 1e-13);
        // Independent recomputation at one vertex.
        const Vertex v{3, 7};
        const HermitianMat expected = cosh(Real(s)) * base.X[v] + sinh(Real(s)) * base.N[v];
        EXPECT_LT(to_double(coord_gap(sample.X[v], expected) / euclidean_norm(expected)), 1e-40);
        EXPECT_LT(to_double(parallel_lift_residual(base, sample)), 1e-12);
    }
}

TEST(Reflection, GeneratorExample)
{
    const HermitianMat Y = reflection_generator(C(1), 1, Real(0.5));
    const Real r2 = sqrt(Real(2));
    Mat2 expected;
    expected << Complex(r2), Complex(r2), Complex(r2), Complex(r2 / 2);
    EXPECT_LT(to_double(max_abs_diff(Y.matrix(), expected)), 1e-45);
    EXPECT_LT(to_double(abs(Y.matrix().determinant().real() + 1)), 1e-45);
    EXPECT_THROW(reflection_generator(C(0), 1, Real(0.5)), Error);
}

TEST(Reflection, UnitSpacelikeAndAntisymmetricOnStandardExample)
{
    const auto& family = standard_family();
    for (const auto& e : family.grid().edges()) {
        const HermitianMat R = reflection_vector(family, e);
        EXPECT_LT(to_double(abs(minkowski(R, R) - 1)), 1e-11);
        const HermitianMat back = reflection_vector(family, e.reversed());
        EXPECT_LT(to_double(euclidean_norm(R + back) / euclidean_norm(R)), 1e-10);
    }
    EXPECT_LT(to_double(reflection_antisymmetry(family)), 1e-10);
}

TEST(Reflection, FixedPlaneAndMirror)
{
    const HermitianMat R = pauli_basis(1);
    const HermitianMat X = pauli_pack(2, 0, 3, -1);
    EXPECT_EQ(reflect(X, R), X);
    EXPECT_EQ(reflect(R, R), -R);
    EXPECT_THROW(reflect(X, pauli_basis(0)), Error);
    EXPECT_THROW(reflect(X, Real(2) * pauli_basis(1)), Error);
}

TEST(Reflection, DeterminantFormAgrees)
{
    std::mt19937 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const HermitianMat R = random_unit_spacelike(rng);
        const HermitianMat X = random_vector(rng);
        const HermitianMat a = reflect(X, R);
        const HermitianMat b = reflect_by_determinants(X, R);
        EXPECT_LT(to_double(coord_gap(a, b)), 1e-12);
        // reflections are involutive isometries
        EXPECT_LT(to_double(coord_gap(reflect(a, R), X)), 1e-40);
        EXPECT_LT(to_double(abs(minkowski(a, a) - minkowski(X, X))), 1e-40);
    }
}

TEST(Reflection, MatchesConnectionActionOnIdentityFrame)
{
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex dg = random_complex(rng);
        const double a = std::uniform_real_distribution<double>(-2, 1.5)(rng);
        const HermitianMat Y = reflection_generator(dg, a, Real(0.5));
        const Mat2 W = weierstrass_matrix(dg, a, Real(0.5));
        const auto Wl = oracle::weierstrass(lc(dg), a, 0.5L);
        for (int k : {0, 3}) {
            const HermitianMat Ek = pauli_basis(k);
            const HermitianMat lhs = Ek - Real(2) * minkowski(Y, Ek) * Y;
            EXPECT_LT(to_double(coord_gap(lhs, sl2_act(W, Ek))), 1e-40);
            const auto o = oracle::act_diagonal(Wl, k == 0 ? 1 : 0, k == 3 ? 1 : 0);
            for (int c = 0; c < 4; ++c) EXPECT_NEAR(to_double(lhs[c]), double(o[c]), 1e-12 * (1 + std::abs(double(o[c]))));
        }
    }
}

TEST(Propagation, StandardExampleAtSeveralOffsets)
{
    const auto& family = standard_family();
    for (double s : {0.0, 0.5, -0.5}) {
        const auto report = propagation_check(family, eval_front(family, s));
        EXPECT_LT(to_double(report.x.max()), 1e-9);
        EXPECT_LT(to_double(report.n.max()), 1e-9);
        EXPECT_LT(to_double(reflection_collinearity(family, eval_front(family, s)).max()), 1e-9);
    }
}

TEST(Propagation, CorruptedFrameFlagsIncidentEdges)
{
    auto family = make_front_family(make_linear(QuadGrid(5, 5), 1, 1), Real(0.5));
    const Vertex v{2, 3};
    Mat2 twist = Mat2::Identity();
    twist(0, 1) = C(0.01);
    family.frame.F[v] = family.frame.F[v] * twist;
    const auto report = propagation_check(family, eval_front(family.frame, 0));
    std::vector<std::size_t> expected;
    for (const auto& e : family.grid().edges())
        if (e.from == v || e.to == v) expected.push_back(family.grid().edge_index(e));
    EXPECT_EQ(report.x.above(default_tolerances().geo), expected);
}

TEST(Rodrigues, StandardExample)
{
    const auto& family = standard_family();
    const auto report = rodrigues_check(family, eval_front(family, 0));
    EXPECT_EQ(report.singular_count, 0u);
    EXPECT_LT(to_double(report.residual.max()), 1e-10);
    EXPECT_LT(to_double(report.symmetry.max()), 1e-10);
    EXPECT_LT(to_double(report.agreement.max()), 1e-9);
}

TEST(Rodrigues, LeastSquaresOracleAtOneEdge)
{
    const auto& family = standard_family();
    const auto sample = eval_front(family, 0.3);
    const Edge e{{4, 5}, {4, 6}};
    const auto report = rodrigues_check(family, sample);
    const auto& got = report.edges[family.grid().edge_index(e)];
    const HermitianMat dX = sample.X[e.to] - sample.X[e.from];
    const HermitianMat dN = sample.N[e.to] - sample.N[e.from];
    const Real k = -euclidean_dot(dN, dX) / euclidean_dot(dX, dX);
    EXPECT_LT(to_double(abs(got.k - k) / abs(k)), 1e-30);
}

TEST(Rodrigues, ConstantEdgeIsSingular)
{
    const HermitianMat X = pauli_basis(0);
    try {
        rodrigues_edge(X, X, pauli_basis(3), pauli_basis(3), pauli_basis(1));
        FAIL() << "expected SingularEdge";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularEdge);
    }
}

TEST(MixedArea, UnitSquare)
{
    const FaceQuad P{pauli_pack(0, 0, 0, 0), pauli_pack(0, 1, 0, 0), pauli_pack(0, 1, 1, 0), pauli_pack(0, 0, 1, 0)};
    const Bivector A = mixed_area(P, P);
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(A.c[k], Real(k == 3 ? 1 : 0));  // component 12
    EXPECT_EQ(A.norm(), Real(1));

    const FaceQuad Q{pauli_pack(1, 0, 2, 0), pauli_pack(0, 3, 1, 1), pauli_pack(2, -1, 0, 0), pauli_pack(0, 0, 1, 5)};
    const Bivector pq = mixed_area(P, Q);
    const Bivector qp = mixed_area(Q, P);
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(pq.c[k], qp.c[k]);

    const FaceQuad D{P[0], P[1], P[0], P[3]};
    EXPECT_EQ(mixed_area(D, D).norm(), Real(0));

    const Bivector w = wedge(pauli_basis(1), pauli_basis(2));
    const Bivector wr = wedge(pauli_basis(2), pauli_basis(1));
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(w.c[k], -wr.c[k]);
}

TEST(GaussCurvature, StandardExampleIsFlat)
{
    const auto& family = standard_family();
    const auto sample = eval_front(family, 0);
    const auto report = gauss_curvature(sample.X, sample.N);
    EXPECT_LT(to_double(report.area_h.max()), 1e-10);
    EXPECT_LT(to_double(report.k_deviation.max()), 1e-9);
    EXPECT_LT(to_double(report.diagonal_wedge.max()), 1e-10);
    EXPECT_LT(report.singular_count, family.grid().face_count());

    // Parallel surface: swapping X and N gives A(N,N)(1 - K') = A(H+', H-').
    const auto swapped = gauss_curvature(sample.N, sample.X);
    EXPECT_LT(to_double(swapped.proportionality.max()), 1e-9);
    for (std::size_t f = 0; f < report.faces.size(); ++f) {
        const auto& c = swapped.faces[f];
        if (c.singular) continue;
        const Bivector lhs = (Real(1) - c.K) * c.area_x;
        EXPECT_LT(to_double((lhs - c.area_h).norm() / (c.scale * c.scale)), 1e-9);
    }
}

TEST(LieLift, NullAndOrthogonal)
{
    const auto& family = standard_family();
    const auto lifts = lie_lift(eval_front(family, 0.2));
    const auto check = lift_check(lifts);
    EXPECT_LT(to_double(check.xx), 1e-9);
    EXPECT_LT(to_double(check.nn), 1e-9);
    EXPECT_LT(to_double(check.xn), 1e-9);

    const LieVec x = lie_embed(pauli_basis(0), 0, -1);
    const LieVec n = lie_embed(pauli_basis(3), 1, 0);
    EXPECT_EQ(lie_product(x, x), Real(0));
    EXPECT_EQ(lie_product(n, n), Real(0));
    EXPECT_EQ(lie_product(x, n), Real(0));
}

TEST(CurvatureSphere, ValidEdgesAndRejections)
{
    const auto& family = standard_family();
    const auto lifts = lie_lift(eval_front(family, 0));
    const auto report = curvature_spheres(lifts);
    EXPECT_LT(to_double(report.rank.max()), 1e-9);
    EXPECT_LT(to_double(report.null.max()), 1e-9);
    EXPECT_LT(to_double(report.span.max()), 1e-9);

    const Vertex a{0, 0};
    const Vertex b{1, 0};
    const auto sphere = curvature_sphere(lifts.x[a], lifts.n[a], lifts.x[b], lifts.n[b]);
    EXPECT_LT(to_double(abs(lie_product(sphere.kappa, sphere.kappa)) /
                        (lie_euclidean_norm(sphere.kappa) * lie_euclidean_norm(sphere.kappa))),
              1e-9);

    EXPECT_THROW(curvature_sphere(lifts.x[a], lifts.n[a], lifts.x[a], lifts.n[a]), Error);
    std::mt19937 rng(37);
    for (int trial = 0; trial < 5; ++trial) {
        try {
            curvature_sphere(random_lie(rng), random_lie(rng), random_lie(rng), random_lie(rng));
            FAIL() << "expected NoIntersection";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::NoIntersection);
        }
    }
}

TEST(Circularity, StandardExampleFacesAreConcircular)
{
    const auto& family = standard_family();
    const auto report = circularity_check(eval_front(family, 0).X);
    EXPECT_LT(to_double(report.planarity.max()), 1e-9);
    EXPECT_LT(to_double(report.imag_cross_ratio.max()), 1e-9);
}

TEST(Circularity, NonCoplanarPointsFlagged)
{
    // Unit-distance boosts of the base point along three axes.
    const Real ch = cosh(Real(1));
    const Real sh = sinh(Real(1));
    const QuadGrid grid(2, 2);
    VertexField<HermitianMat> X(grid);
    const auto corners = grid.corners({0, 0});
    X[corners[0]] = pauli_pack(1, 0, 0, 0);
    X[corners[1]] = pauli_pack(ch, sh, 0, 0);
    X[corners[2]] = pauli_pack(ch, 0, sh, 0);
    X[corners[3]] = pauli_pack(ch, 0, 0, sh);
    EXPECT_GT(to_double(circularity_check(X).planarity.max()), 0.1);
}

TEST(Circularity, SquareHasCrossRatioMinusOne)
{
    using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    std::array<Vec, 4> pts;
    const double xy[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int k = 0; k < 4; ++k) {
        pts[k] = Vec::Zero(4);
        pts[k](1) = xy[k][0];
        pts[k](3) = xy[k][1];
    }
    EXPECT_LT(gap(planar_cross_ratio(pts), C(-1)), 1e-40);
}

TEST(Poincare, ProjectionAndErrors)
{
    const auto origin = poincare_project(pauli_basis(0));
    EXPECT_EQ(origin.norm(), Real(0));
    const Real u = 1.5;
    const auto p = poincare_project(pauli_pack(cosh(u), sinh(u), 0, 0));
    EXPECT_LT(to_double(abs(p.y[0] - tanh(u / 2))), 1e-40);
    EXPECT_LT(p.norm(), Real(1));
    try {
        poincare_project(-pauli_basis(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WrongSheet);
    }
    try {
        poincare_project(pauli_pack(2, 0, 0, 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotUnitTimelike);
    }
}
