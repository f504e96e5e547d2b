#include <flatfront/gauss.hpp>

#include <algorithm>
#include <array>

namespace flatfront {

namespace {

Real lift_norm(const Lift& h) { return sqrt(Real(norm(h(0)) + norm(h(1)))); }

Real relative_gap(const Complex& value, const Complex& expected)
{
    const Real scale = abs(expected);
    const Real diff = abs(value - expected);
    return scale == 0 ? diff : Real(diff / scale);
}

Complex face_cross_ratio(const VertexField<Lift>& h, Face face)
{
    const auto [i, j, k, l] = h.grid().corners(face);
    return projective_cross_ratio(h[i], h[j], h[k], h[l]);
}

Complex edge_cross_ratio(const VertexField<Lift>& hplus, const VertexField<Lift>& hminus, const Edge& e)
{
    return projective_cross_ratio(hplus[e.from], hplus[e.to], hminus[e.to], hminus[e.from]);
}

// Residual of a cross ratio against its expected value; +inf if degenerate.
template <class F>
Real guarded(F&& measure, const Complex& expected)
{
    try {
        return relative_gap(measure(), expected);
    } catch (const Error&) {
        return std::numeric_limits<Real>::infinity();
    }
}

}  // namespace

Complex bracket(const Lift& P, const Lift& Q) { return P(0) * Q(1) - P(1) * Q(0); }

Real projective_distance(const Lift& P, const Lift& Q)
{
    const Real scale = lift_norm(P) * lift_norm(Q);
    if (scale == 0) return 0;
    return abs(bracket(P, Q)) / scale;
}

Complex projective_cross_ratio(const Lift& A, const Lift& B, const Lift& C, const Lift& D, const Real& eps)
{
    // Relative to the spread of the quad: seen from a fixed chart, points of a
    // far-out front cluster without degenerating.
    const std::array<const Lift*, 4> pts{&A, &B, &C, &D};
    Real spread = 0;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) spread = std::max(spread, projective_distance(*pts[a], *pts[b]));
    if (spread == 0 || projective_distance(C, B) <= eps * spread || projective_distance(A, D) <= eps * spread)
        throw Error(ErrorKind::DegenerateQuad, "cross ratio denominator vanishes");
    return (bracket(B, A) * bracket(D, C)) / (bracket(C, B) * bracket(A, D));
}

GaussMaps gauss_maps(const SL2Frame& frame)
{
    const auto& grid = frame.grid;
    GaussMaps out{VertexField<Lift>(grid), VertexField<Lift>(grid), VertexField<HermitianMat>(grid),
                  VertexField<HermitianMat>(grid)};
    const HermitianMat plus = pauli_pack(1, 0, 0, 1);
    const HermitianMat minus = pauli_pack(1, 0, 0, -1);
    for (std::size_t k = 0; k < grid.vertex_count(); ++k) {
        const Mat2& F = frame.F.at(k);
        out.hplus.at(k) = F.col(0);
        out.hminus.at(k) = F.col(1);
        out.Hplus.at(k) = sl2_act(F, plus);
        out.Hminus.at(k) = sl2_act(F, minus);
        const Mat2 dyad_plus = out.hplus.at(k) * out.hplus.at(k).adjoint();
        const Mat2 dyad_minus = out.hminus.at(k) * out.hminus.at(k).adjoint();
        const Mat2 half_plus = out.Hplus.at(k).matrix() / Complex(2);
        const Mat2 half_minus = out.Hminus.at(k).matrix() / Complex(2);
        out.dyadic_residual = std::max({out.dyadic_residual, max_abs_diff(dyad_plus, half_plus),
                                        max_abs_diff(dyad_minus, half_minus)});
        out.null_residual = std::max({out.null_residual, Real(abs(minkowski(out.Hplus.at(k), out.Hplus.at(k)))),
                                      Real(abs(minkowski(out.Hminus.at(k), out.Hminus.at(k))))});
    }
    return out;
}

Real pair_label(const Real& a, const Real& t)
{
    const Real den = 1 - t * a;
    if (abs(den) <= default_tolerances().degenerate) throw Error(ErrorKind::InvalidParameter, "1 - t a vanishes");
    return -a / den;
}

Real weierstrass_label(const Real& b, const Real& t)
{
    const Real den = 1 - t * b;
    if (abs(den) <= default_tolerances().degenerate) throw Error(ErrorKind::InvalidParameter, "1 - t b vanishes");
    return -b / den;
}

EdgeLabelling pair_labelling(const EdgeLabelling& a, const Real& t)
{
    EdgeLabelling out;
    for (const auto& v : a.alpha) out.alpha.push_back(pair_label(v, t));
    for (const auto& v : a.beta) out.beta.push_back(pair_label(v, t));
    return out;
}

EdgeLabelling weierstrass_labelling(const EdgeLabelling& b, const Real& t)
{
    EdgeLabelling out;
    for (const auto& v : b.alpha) out.alpha.push_back(weierstrass_label(v, t));
    for (const auto& v : b.beta) out.beta.push_back(weierstrass_label(v, t));
    return out;
}

DarbouxPair pair_from_frame(const SL2Frame& frame, const EdgeLabelling& a, const Real& t)
{
    a.validate(frame.grid);
    DarbouxPair out{frame.grid, pair_labelling(a, t), t, VertexField<Lift>(frame.grid),
                    VertexField<Lift>(frame.grid)};
    for (std::size_t k = 0; k < frame.grid.vertex_count(); ++k) {
        out.hplus.at(k) = frame.F.at(k).col(0);
        out.hminus.at(k) = frame.F.at(k).col(1);
    }
    return out;
}

PairCrossRatioReport verify_pair_cross_ratios(const DarbouxPair& pair, const EdgeLabelling& a, const Real& t)
{
    const auto& grid = pair.grid;
    a.validate(grid);
    PairCrossRatioReport out;
    for (const auto& f : grid.faces()) {
        const auto b = grid.boundary(f);
        const Real a_ij = a(b[0]);
        const Real a_jk = a(b[1]);
        const Complex expected((a_ij / (1 - t * a_ij)) * ((1 - t * a_jk) / a_jk));
        out.face_plus.values.push_back(guarded([&] { return face_cross_ratio(pair.hplus, f); }, expected));
        out.face_minus.values.push_back(guarded([&] { return face_cross_ratio(pair.hminus, f); }, expected));
    }
    for (const auto& e : grid.edges()) {
        const Real a_ij = a(e);
        const Complex expected(-t * a_ij / (1 - t * a_ij));
        out.edge.values.push_back(guarded([&] { return edge_cross_ratio(pair.hplus, pair.hminus, e); }, expected));
    }
    return out;
}

DarbouxReport verify_darboux_pair(const DarbouxPair& pair)
{
    const auto& grid = pair.grid;
    pair.b.validate(grid);
    DarbouxReport out;
    for (const auto& f : grid.faces()) {
        const auto bd = grid.boundary(f);
        const Complex expected(pair.b(bd[0]) / pair.b(bd[1]));
        out.face_plus.values.push_back(guarded([&] { return face_cross_ratio(pair.hplus, f); }, expected));
        out.face_minus.values.push_back(guarded([&] { return face_cross_ratio(pair.hminus, f); }, expected));
    }
    for (const auto& e : grid.edges()) {
        const Complex expected(pair.t * pair.b(e));
        out.edge.values.push_back(guarded([&] { return edge_cross_ratio(pair.hplus, pair.hminus, e); }, expected));
    }
    bool first = true;
    for (std::size_t k = 0; k < grid.vertex_count(); ++k) {
        const Real sep = projective_distance(pair.hplus.at(k), pair.hminus.at(k));
        out.min_separation = first ? sep : std::min(out.min_separation, sep);
        first = false;
    }
    return out;
}

VertexField<Lift> affine_lifts(const VertexField<Complex>& g)
{
    VertexField<Lift> out(g.grid());
    for (std::size_t k = 0; k < g.size(); ++k) out.at(k) = Lift(g.at(k), Complex(1));
    return out;
}

Lift normalize_lift(const Lift& h)
{
    const Real scale = std::max(Real(abs(h(0))), Real(abs(h(1))));
    if (scale == 0) throw Error(ErrorKind::InvalidArgument, "zero lift");
    return h / Complex(scale);
}

Lift darboux_step(const Lift& hplus_i, const Lift& hplus_j, const Lift& hminus_i, const Real& tb, const Real& eps)
{
    if (abs(tb) <= eps || abs(tb - 1) <= eps)
        throw Error(ErrorKind::DegenerateStep, "edge cross ratio t b must avoid 0 and 1");
    // The edge condition is linear in h-_j; this is its solution.
    const Lift out = bracket(hplus_j, hplus_i) * hminus_i + Complex(tb) * bracket(hplus_i, hminus_i) * hplus_j;
    const Real spread = std::max(projective_distance(hplus_i, hplus_j), projective_distance(hplus_i, hminus_i));
    if (lift_norm(out) == 0 || projective_distance(out, hplus_j) <= eps * spread)
        throw Error(ErrorKind::DegenerateStep, "propagated point collides with h+");
    return normalize_lift(out);
}

DarbouxPropagation darboux_propagate(const VertexField<Lift>& hplus, const EdgeLabelling& b, const Real& t,
                                     const Lift& seed, Vertex root, const Real& tol)
{
    const auto& grid = hplus.grid();
    b.validate(grid);
    if (!grid.contains(root)) throw Error(ErrorKind::InvalidArgument, "root vertex outside grid");
    if (projective_distance(seed, hplus[root]) <= default_tolerances().projective)
        throw Error(ErrorKind::InvalidArgument, "seed coincides with h+ at the root", grid.index(root));

    DarbouxPropagation out{DarbouxPair{grid, b, t, VertexField<Lift>(grid), VertexField<Lift>(grid)}, {}};
    auto& pair = out.pair;
    for (std::size_t k = 0; k < grid.vertex_count(); ++k) pair.hplus.at(k) = normalize_lift(hplus.at(k));
    pair.hminus[root] = normalize_lift(seed);
    for (const auto& e : grid.spanning_tree(root)) {
        try {
            pair.hminus[e.to] = darboux_step(pair.hplus[e.from], pair.hplus[e.to], pair.hminus[e.from], t * b(e));
        } catch (const Error& err) {
            throw Error(err.kind(), err.message(), grid.edge_index(e));
        }
    }

    for (const auto& f : grid.faces()) {
        const auto [i, j, k, l] = grid.corners(f);
        const auto& hp = pair.hplus;
        Real residual;
        try {
            const Lift via_j = darboux_step(hp[j], hp[k], darboux_step(hp[i], hp[j], pair.hminus[i], t * b(Edge{i, j})),
                                            t * b(Edge{j, k}));
            const Lift via_l = darboux_step(hp[l], hp[k], darboux_step(hp[i], hp[l], pair.hminus[i], t * b(Edge{i, l})),
                                            t * b(Edge{l, k}));
            residual = std::max({projective_distance(via_j, via_l), projective_distance(via_j, pair.hminus[k]),
                                 projective_distance(via_l, pair.hminus[k])});
        } catch (const Error&) {
            residual = std::numeric_limits<Real>::infinity();
        }
        out.consistency.values.push_back(residual);
    }
    if (auto worst = out.consistency.worst(); worst && !(out.consistency.values[*worst] <= tol))
        throw Error(ErrorKind::Inconsistent, "Darboux propagation is not face consistent", *worst,
                    to_double(out.consistency.values[*worst]));
    return out;
}

}  // namespace flatfront
