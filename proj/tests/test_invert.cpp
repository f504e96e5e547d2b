#include <flatfront/invert.hpp>

#include <gtest/gtest.h>

#include "support.hpp"

#include <set>

using namespace flatfront;
using namespace testing_support;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Io;
}

struct Forward
{
    FlatFrontFamily family;
    DarbouxPair pair;
};

Forward forward(int size, const HolomorphicMap& h, const Real& t)
{
    (void)size;
    auto family = make_front_family(h, t);
    auto pair = pair_from_frame(family.frame, h.labels, t);
    return {std::move(family), std::move(pair)};
}

const Forward& standard()
{
    static const Forward fw = forward(10, make_linear(QuadGrid(10, 10), 1, 1), Real(0.5));
    return fw;
}

const Forward& moebius()
{
    static const Forward fw =
        forward(8, make_moebius(make_linear(QuadGrid(8, 8), 1, 2), C(1), C(0.4, 0.3), C(0.15, -0.05), C(1)),
                Real(-0.15));
    return fw;
}

}  // namespace

TEST(NormalizeLifts, RescalesToUnitDeterminant)
{
    const QuadGrid grid(2, 2);
    DarbouxPair pair{grid, EdgeLabelling::constant(grid, 1, -1), Real(0.5), VertexField<Lift>(grid),
                     VertexField<Lift>(grid)};
    for (std::size_t k = 0; k < 4; ++k) {
        pair.hplus.at(k) = Lift(C(1), C(0));
        pair.hminus.at(k) = Lift(C(0), C(2));
    }
    const auto F = normalize_lifts(pair);
    const Real r2 = sqrt(Real(2));
    EXPECT_LT(gap(F.at(0)(0, 0), Complex(1 / r2)), 1e-45);
    EXPECT_LT(gap(F.at(0)(1, 1), Complex(r2)), 1e-45);
    EXPECT_EQ(F.at(0)(0, 1), C(0));
    EXPECT_LT(gap(F.at(0).determinant(), C(1)), 1e-45);

    const auto& fw = standard();
    const auto same = normalize_lifts(fw.pair);
    for (std::size_t k = 0; k < same.size(); ++k)
        EXPECT_LT(to_double(max_abs_diff(same.at(k), fw.family.frame.F.at(k)) / max_abs(same.at(k))), 1e-40);

    pair.hminus.at(3) = pair.hplus.at(3) * C(0, 2);
    try {
        normalize_lifts(pair);
        FAIL() << "expected CoincidentPoints";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CoincidentPoints);
        EXPECT_EQ(e.cell(), std::optional<std::size_t>(3));
    }
}

TEST(ConnectionEntries, ForwardPairIdentities)
{
    for (const Forward* fw : {&standard(), &moebius()}) {
        const auto& pair = fw->pair;
        const auto raw = connection_entries(normalize_lifts(pair), pair.b, pair.t);
        EXPECT_LT(to_double(raw.entry_mismatch.max()), 1e-10);
        for (const auto& e : pair.grid.edges()) {
            const RawEntries& f = raw.W[e];
            const RawEntries& r = raw.W[e.reversed()];
            const Real tb = pair.t * pair.b(e);
            EXPECT_LT(gap(r.v, -f.v) / to_double(abs(f.v)), 1e-12);
            EXPECT_LT(gap(f.u * r.u, Complex(1 - tb)), 1e-12);
            EXPECT_LT(gap(f.u * f.y - f.v * f.x, C(1)), 1e-12);
            EXPECT_LT(gap(f.v * f.x, Complex(-tb)), 1e-12);
        }
    }
}

TEST(ConnectionEntries, MismatchOnFakePair)
{
    auto pair = standard().pair;
    pair.hminus[Vertex{4, 4}] = pair.hminus[Vertex{4, 4}] + pair.hplus[Vertex{4, 4}] * C(0.01);
    try {
        connection_entries(normalize_lifts(pair), pair.b, pair.t);
        FAIL() << "expected EntryMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EntryMismatch);
        ASSERT_TRUE(e.cell());
        const Edge bad = pair.grid.edge(*e.cell());
        EXPECT_TRUE(bad.from == (Vertex{4, 4}) || bad.to == (Vertex{4, 4}));
    }
}

TEST(Compatibility, GenuinePairs)
{
    for (const Forward* fw : {&standard(), &moebius()}) {
        const auto& pair = fw->pair;
        const auto report = check_compatibility(connection_entries(normalize_lifts(pair), pair.b, pair.t), pair.b,
                                                pair.t);
        EXPECT_LT(to_double(report.cross_ratio.max()), 1e-10);
        EXPECT_LT(to_double(report.diagonal.max()), 1e-10);
        EXPECT_LT(to_double(report.off_diagonal.max()), 1e-10);
    }
}

TEST(Compatibility, PerturbedSecondLegFlagsIncidentFaces)
{
    auto pair = standard().pair;
    const Vertex v{3, 5};
    const Complex size(std::max(abs(pair.hminus[v](0)), abs(pair.hminus[v](1))));
    pair.hminus[v] = pair.hminus[v] + Lift(C(0.01), C(-0.02, 0.01)) * size;
    const auto raw = connection_entries(normalize_lifts(pair), pair.b, pair.t, Real(1e30));
    const auto report = check_compatibility(raw, pair.b, pair.t);
    std::vector<std::size_t> expected{pair.grid.face_index({2, 4}), pair.grid.face_index({3, 4}),
                                      pair.grid.face_index({2, 5}), pair.grid.face_index({3, 5})};
    std::sort(expected.begin(), expected.end());
    const Real tol = default_tolerances().cross_ratio;
    EXPECT_EQ(report.cross_ratio.above(tol), expected);
    // Changing h- alone changes F' at v by an upper triangular factor: u on
    // edges into v is untouched, so the diagonal relation cannot see the face
    // where v is the far corner k. Flagged faces stay among the incident ones
    // and together the checks see all of them.
    std::set<std::size_t> seen;
    for (const auto* r : {&report.cross_ratio, &report.diagonal, &report.off_diagonal}) {
        const auto bad = r->above(tol);
        EXPECT_FALSE(bad.empty());
        for (auto f : bad) {
            EXPECT_TRUE(std::binary_search(expected.begin(), expected.end(), f)) << f;
            seen.insert(f);
        }
    }
    EXPECT_EQ(seen.size(), expected.size());
    EXPECT_EQ(report.diagonal.above(tol),
              (std::vector<std::size_t>{pair.grid.face_index({3, 4}), pair.grid.face_index({2, 5}),
                                        pair.grid.face_index({3, 5})}));
}

TEST(Compatibility, ExactRationalSingleFace)
{
    using oracle::QComplex;
    using oracle::QLift;
    using oracle::q;
    using oracle::Rational;
    // h+ from the unit square, labels b = 1 (horizontal), -1 (vertical), t = 1/2.
    const Rational t(1, 2);
    const Rational bh(1), bv(-1);
    const std::array<QComplex, 4> z{q(0), q(1), q(1, 1), q(0, 1)};
    std::array<QLift, 4> hp, hm;
    for (int c = 0; c < 4; ++c) hp[c] = {z[c], q(1)};
    hm[0] = {q(2), q(1, 1)};
    hm[1] = oracle::darboux_step(hp[0], hp[1], hm[0], t * bh);
    hm[3] = oracle::darboux_step(hp[0], hp[3], hm[0], t * bv);
    hm[2] = oracle::darboux_step(hp[1], hp[2], hm[1], t * bv);
    const QLift via_l = oracle::darboux_step(hp[3], hp[2], hm[3], t * bh);
    ASSERT_EQ(oracle::bracket(hm[2], via_l), q(0));  // face consistency, exactly

    auto affine = [](const QLift& h) { return h[0] / h[1]; };
    // Edge condition and holomorphicity of the second leg, exactly.
    EXPECT_EQ(oracle::cross_ratio(affine(hp[0]), affine(hp[1]), affine(hm[1]), affine(hm[0])), (QComplex{t * bh, 0}));
    EXPECT_EQ(oracle::cross_ratio(affine(hm[0]), affine(hm[1]), affine(hm[2]), affine(hm[3])),
              (QComplex{bh / bv, 0}));

    // Unnormalized W'_ab = H_a^{-1} H_b; normalization multiplies it by sqrt(d_a / d_b).
    std::array<oracle::QMat, 4> H;
    std::array<QComplex, 4> d;
    for (int c = 0; c < 4; ++c) {
        H[c] = oracle::columns(hp[c], hm[c]);
        d[c] = oracle::det(H[c]);
    }
    const auto M_ij = oracle::left_divide(H[0], H[1]);
    const auto M_jk = oracle::left_divide(H[1], H[2]);
    const auto M_il = oracle::left_divide(H[0], H[3]);
    const auto M_lk = oracle::left_divide(H[3], H[2]);
    // cross-ratio relation of v, scale factors sqrt(d_i d_k) / d_j resp. / d_l
    const QComplex lhs = QComplex{bv, 0} * M_ij[0][1] / M_jk[0][1] / d[1];
    const QComplex rhs = QComplex{bh, 0} * M_il[0][1] / M_lk[0][1] / d[3];
    EXPECT_EQ(lhs, rhs);
    // u y - v x = 1 and v x = -t b on edge ij after normalization
    EXPECT_EQ(M_ij[0][0] * M_ij[1][1] * d[0] / d[1], (QComplex{1 - t * bh, 0}));
    EXPECT_EQ(M_ij[0][1] * M_ij[1][0] * d[0] / d[1], (QComplex{-t * bh, 0}));

    const QuadGrid grid(2, 2);
    DarbouxPair pair{grid, EdgeLabelling{{Real(bh)}, {Real(bv)}}, Real(t), VertexField<Lift>(grid),
                     VertexField<Lift>(grid)};
    const auto corners = grid.corners({0, 0});
    for (int c = 0; c < 4; ++c) {
        pair.hplus[corners[c]] = Lift(from_q(hp[c][0]), from_q(hp[c][1]));
        pair.hminus[corners[c]] = Lift(from_q(hm[c][0]), from_q(hm[c][1]));
    }
    const auto report = check_compatibility(connection_entries(normalize_lifts(pair), pair.b, pair.t), pair.b, pair.t);
    EXPECT_LT(to_double(report.cross_ratio.max()), 1e-40);
    EXPECT_LT(to_double(report.diagonal.max()), 1e-40);
    EXPECT_LT(to_double(report.off_diagonal.max()), 1e-40);
}

TEST(Gauge, RecoversLiftRescalingUpToGlobalFactor)
{
    auto pair = standard().pair;
    std::mt19937 rng(53);
    std::vector<Complex> mu, nu;
    for (std::size_t k = 0; k < pair.hplus.size(); ++k) {
        mu.push_back(random_complex(rng, 0.5, 2));
        nu.push_back(random_complex(rng, 0.5, 2));
        pair.hplus.at(k) = pair.hplus.at(k) * mu.back();
        pair.hminus.at(k) = pair.hminus.at(k) * nu.back();
    }
    const auto raw = connection_entries(normalize_lifts(pair), pair.b, pair.t);
    const auto gauge = solve_gauge(raw, pair.b, pair.t, C(1));
    EXPECT_LT(to_double(gauge.closure_residual), 1e-10);
    EXPECT_TRUE(gauge.negative_edges.empty());
    // F' = F diag(c, 1/c) with c^2 = mu / nu, so w^2 mu / nu is constant.
    const Complex ref = gauge.w.at(0) * gauge.w.at(0) * mu[0] / nu[0];
    for (std::size_t k = 0; k < mu.size(); ++k)
        EXPECT_LT(gap(gauge.w.at(k) * gauge.w.at(k) * mu[k] / nu[k], ref) / to_double(abs(ref)), 1e-12);

    const auto scaled = solve_gauge(raw, pair.b, pair.t, C(2, -1));
    for (std::size_t k = 0; k < mu.size(); ++k)
        EXPECT_LT(gap(scaled.w.at(k), gauge.w.at(k) * C(2, -1)) / to_double(abs(scaled.w.at(k))), 1e-40);
}

TEST(Gauge, NonIntegrableRejected)
{
    const auto& pair = standard().pair;
    auto raw = connection_entries(normalize_lifts(pair), pair.b, pair.t);
    const Edge e{{5, 5}, {6, 5}};
    raw.W[e].u *= C(1.01);
    EXPECT_EQ(kind_of([&] { solve_gauge(raw, pair.b, pair.t, C(1)); }), ErrorKind::NotIntegrable);
}

TEST(RecoverPotential, RoundTripOnLinearLattice)
{
    const auto& fw = standard();
    const auto data = invert_pair(fw.pair);
    EXPECT_EQ((data.holo.g[Vertex{0, 0}]), C(0));
    EXPECT_LT(to_double(data.closure_residual), 1e-10);
    for (const auto& f : data.holo.grid.faces()) EXPECT_LT(gap(face_cross_ratio(data.holo.g, f), C(-1)), 1e-8);
    for (std::size_t k = 0; k < data.holo.labels.alpha.size(); ++k)
        EXPECT_LT(to_double(abs(data.holo.labels.alpha[k] - fw.family.holo.labels.alpha[k])), 1e-45);
    for (std::size_t k = 0; k < data.holo.labels.beta.size(); ++k)
        EXPECT_LT(to_double(abs(data.holo.labels.beta[k] - fw.family.holo.labels.beta[k])), 1e-45);
}

TEST(RecoverPotential, RoundTripContract)
{
    const auto& fw = moebius();
    const auto& g0 = fw.family.holo;
    const auto data = invert_pair(fw.pair, C(0.7, 0.2), C(3, 1));
    EXPECT_EQ((data.holo.g[Vertex{0, 0}]), C(3, 1));
    // (a) same face cross ratios
    for (const auto& f : g0.grid.faces())
        EXPECT_LT(gap(face_cross_ratio(data.holo.g, f), face_cross_ratio(g0.g, f)), 1e-8);
    // (b) dg / dg0 constant
    const Edge first = g0.grid.edge(0);
    const Complex ratio = derivative(data.holo.g, first) / derivative(g0.g, first);
    for (const auto& e : g0.grid.edges())
        EXPECT_LT(gap(derivative(data.holo.g, e) / derivative(g0.g, e), ratio) / to_double(abs(ratio)), 1e-8);
    // (c) rebuilt front reproduces the pair projectively
    const auto rebuilt = make_front_family(data.holo, data.t, data.root, data.frame_root);
    for (std::size_t k = 0; k < g0.grid.vertex_count(); ++k) {
        EXPECT_LT(to_double(projective_distance(rebuilt.frame.F.at(k).col(0), fw.pair.hplus.at(k))), 1e-8);
        EXPECT_LT(to_double(projective_distance(rebuilt.frame.F.at(k).col(1), fw.pair.hminus.at(k))), 1e-8);
    }
    // gauge relation between rebuilt and raw connection
    const auto raw = connection_entries(normalize_lifts(fw.pair), fw.pair.b, fw.pair.t);
    EXPECT_LT(to_double(gauge_relation(rebuilt.connection, raw, data.w).max()), 1e-10);
}

TEST(RecoverPotential, GaugeCovariance)
{
    const auto& fw = moebius();
    const auto one = invert_pair(fw.pair, C(1));
    const auto other = invert_pair(fw.pair, C(-0.4, 1.1));
    const Edge first = fw.pair.grid.edge(0);
    const Complex factor = derivative(other.holo.g, first) / derivative(one.holo.g, first);
    for (const auto& e : fw.pair.grid.edges())
        EXPECT_LT(gap(derivative(other.holo.g, e), factor * derivative(one.holo.g, e)) /
                      to_double(abs(derivative(other.holo.g, e))),
                  1e-12);
    for (const auto& f : fw.pair.grid.faces())
        EXPECT_LT(gap(face_cross_ratio(one.holo.g, f), face_cross_ratio(other.holo.g, f)), 1e-12);
}
