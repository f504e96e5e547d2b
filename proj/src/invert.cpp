#include <flatfront/invert.hpp>

#include <algorithm>

namespace flatfront {

namespace {

Real relative(const Complex& diff, const Real& scale)
{
    return scale == 0 ? Real(abs(diff)) : Real(abs(diff) / scale);
}

// |first - second| relative to the larger of the two.
Real balance(const Complex& first, const Complex& second)
{
    return relative(first - second, std::max(Real(abs(first)), Real(abs(second))));
}

}  // namespace

VertexField<Mat2> normalize_lifts(const DarbouxPair& pair, const Real& eps)
{
    const auto& grid = pair.grid;
    VertexField<Mat2> out(grid);
    for (std::size_t k = 0; k < grid.vertex_count(); ++k) {
        const Lift& hp = pair.hplus.at(k);
        const Lift& hm = pair.hminus.at(k);
        if (projective_distance(hp, hm) <= eps)
            throw Error(ErrorKind::CoincidentPoints, "h+ and h- coincide", k);
        Mat2 F;
        F.col(0) = hp;
        F.col(1) = hm;
        out.at(k) = F / sqrt(F.determinant());
    }
    return out;
}

RawConnection connection_entries(const VertexField<Mat2>& Fprime, const EdgeLabelling& b, const Real& t,
                                 const Real& tol)
{
    const auto& grid = Fprime.grid();
    b.validate(grid);
    RawConnection out{grid, Fprime, EdgeField<RawEntries>(grid), {}};
    for (const auto& e : grid.edges()) {
        const Complex tb(t * b(e));
        const Complex one_minus = Complex(1) - tb;
        Real mismatch = 0;
        for (const Edge& oriented : {e, e.reversed()}) {
            const Mat2 W = Fprime[oriented.from].inverse() * Fprime[oriented.to];
            const RawEntries entries{W(0, 0), W(0, 1), W(1, 0), W(1, 1)};
            out.W[oriented] = entries;
            if (entries.u == Complex(0) || entries.v == Complex(0)) {
                mismatch = std::numeric_limits<Real>::infinity();
                continue;
            }
            mismatch = std::max({mismatch, relative(entries.x + tb / entries.v, abs(entries.x)),
                                 relative(entries.y - one_minus / entries.u, abs(entries.y))});
        }
        out.entry_mismatch.values.push_back(mismatch);
        if (!(mismatch <= tol))
            throw Error(ErrorKind::EntryMismatch, "raw connection does not match a Darboux pair",
                        grid.edge_index(e), to_double(mismatch));
    }
    return out;
}

CompatibilityReport check_compatibility(const RawConnection& raw, const EdgeLabelling& b, const Real& t)
{
    const auto& grid = raw.grid;
    b.validate(grid);
    CompatibilityReport out;
    for (const auto& f : grid.faces()) {
        const auto [i, j, k, l] = grid.corners(f);
        const RawEntries& ij = raw.W[Edge{i, j}];
        const RawEntries& jk = raw.W[Edge{j, k}];
        const RawEntries& il = raw.W[Edge{i, l}];
        const RawEntries& lk = raw.W[Edge{l, k}];
        const Real b_ij = b(Edge{i, j});
        const Real b_jk = b(Edge{j, k});

        out.cross_ratio.values.push_back(balance(Complex(b_jk) * ij.v / jk.v, Complex(b_ij) * il.v / lk.v));
        out.diagonal.values.push_back(balance(ij.u * jk.u, il.u * lk.u));

        const Complex terms[4] = {ij.v * Complex(1 - t * b_jk) / jk.u, jk.v * ij.u,
                                  il.v * Complex(1 - t * b_ij) / lk.u, lk.v * il.u};
        Real scale = 0;
        for (const auto& term : terms) scale = std::max(scale, Real(abs(term)));
        out.off_diagonal.values.push_back(relative(terms[0] + terms[1] - terms[2] - terms[3], scale));
    }
    return out;
}

Gauge solve_gauge(const RawConnection& raw, const EdgeLabelling& b, const Real& t, const Complex& w_root,
                  Vertex root, const Real& tol)
{
    const auto& grid = raw.grid;
    b.validate(grid);
    if (w_root == Complex(0)) throw Error(ErrorKind::InvalidArgument, "gauge must be nonzero at the root");
    if (!grid.contains(root)) throw Error(ErrorKind::InvalidArgument, "root vertex outside grid");

    Gauge out{VertexField<Complex>(grid), 0, {}};
    for (const auto& e : grid.edges())
        if (1 - t * b(e) < 0) out.negative_edges.push_back(grid.edge_index(e));

    const auto step = [&](const Edge& e) {
        return sqrt(Complex(1 - t * b(e))) / raw.W[e].u;
    };
    out.w[root] = w_root;
    for (const auto& e : grid.spanning_tree(root)) out.w[e.to] = step(e) * out.w[e.from];

    std::optional<std::size_t> worst;
    for (const auto& e : grid.non_tree_edges(root)) {
        const Complex& wj = out.w[e.to];
        const Real residual = abs(wj - step(e) * out.w[e.from]) / abs(wj);
        if (residual > out.closure_residual || !worst) {
            out.closure_residual = std::max(out.closure_residual, residual);
            worst = grid.edge_index(e);
        }
    }
    if (out.closure_residual > tol)
        throw Error(ErrorKind::NotIntegrable, "gauge recursion does not close", worst,
                    to_double(out.closure_residual));
    return out;
}

WeierstrassData recover_potential(const RawConnection& raw, const Gauge& gauge, const EdgeLabelling& b,
                                  const Real& t, const Complex& g_root, Vertex root, const Real& tol)
{
    const auto& grid = raw.grid;
    EdgeForm<Complex> dg(grid);
    for (const auto& e : grid.edges()) {
        const Real one_minus = 1 - t * b(e);
        if (abs(one_minus) <= default_tolerances().degenerate)
            throw Error(ErrorKind::InvalidParameter, "1 - t b vanishes", grid.edge_index(e));
        dg.set(e, raw.W[e].v / (gauge.w[e.from] * gauge.w[e.to] * sqrt(Complex(one_minus))));
    }

    WeierstrassData out;
    out.holo = HolomorphicMap{grid, weierstrass_labelling(b, t), integrate_edge_form(dg, root, g_root)};
    out.closure_residual = closedness(dg).max();
    out.t = t;
    out.w = gauge.w;
    out.root = root;
    const Complex& w0 = gauge.w[root];
    Mat2 G = Mat2::Zero();
    G(0, 0) = w0;
    G(1, 1) = Complex(1) / w0;
    out.frame_root = raw.frame[root] * G;
    require_holomorphic(out.holo, tol);
    return out;
}

WeierstrassData invert_pair(const DarbouxPair& pair, const Complex& w_root, const Complex& g_root, Vertex root)
{
    const RawConnection raw = connection_entries(normalize_lifts(pair), pair.b, pair.t);
    const Gauge gauge = solve_gauge(raw, pair.b, pair.t, w_root, root);
    return recover_potential(raw, gauge, pair.b, pair.t, g_root, root);
}

Residuals gauge_relation(const EdgeConnection& W, const RawConnection& raw, const VertexField<Complex>& w)
{
    Residuals out;
    for (const auto& e : W.grid.edges()) {
        const RawEntries& r = raw.W[e];
        const Complex& wi = w[e.from];
        const Complex& wj = w[e.to];
        Mat2 gauged;
        gauged(0, 0) = r.u * wj / wi;
        gauged(0, 1) = r.v / (wi * wj);
        gauged(1, 0) = r.x * wi * wj;
        gauged(1, 1) = r.y * wi / wj;
        out.values.push_back(max_abs_diff(W.W[e], gauged) / max_abs(W.W[e]));
    }
    return out;
}

}  // namespace flatfront
