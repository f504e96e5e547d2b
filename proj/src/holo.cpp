#include <flatfront/holo.hpp>

#include <algorithm>

namespace flatfront {

Complex cross_ratio(const Complex& zi, const Complex& zj, const Complex& zk, const Complex& zl, const Real& eps)
{
    const Complex dij = zj - zi;
    const Complex djk = zk - zj;
    const Complex dkl = zl - zk;
    const Complex dli = zi - zl;
    const Real scale = std::max({Real(abs(dij)), Real(abs(djk)), Real(abs(dkl)), Real(abs(dli))});
    if (scale == 0 || abs(djk) <= eps * scale || abs(dli) <= eps * scale)
        throw Error(ErrorKind::DegenerateQuad, "cross ratio denominator vanishes");
    return (dij / djk) * (dkl / dli);
}

Complex face_cross_ratio(const VertexField<Complex>& f, Face face, const Real& eps)
{
    const auto [i, j, k, l] = f.grid().corners(face);
    return cross_ratio(f[i], f[j], f[k], f[l], eps);
}

HolomorphicMap make_linear(const QuadGrid& grid, const Real& alpha, const Real& beta)
{
    if (alpha == 0 || beta == 0) throw Error(ErrorKind::InvalidArgument, "make_linear needs nonzero steps");
    HolomorphicMap h{grid, EdgeLabelling::constant(grid, alpha * alpha, -beta * beta), VertexField<Complex>(grid)};
    for (std::size_t k = 0; k < grid.vertex_count(); ++k) {
        const Vertex v = grid.vertex(k);
        h.g.at(k) = Complex(alpha * v.m, beta * v.n);
    }
    return h;
}

HolomorphicMap make_moebius(const HolomorphicMap& h, const Complex& A, const Complex& B, const Complex& C,
                            const Complex& D)
{
    if (A * D - B * C == Complex(0)) throw Error(ErrorKind::InvalidArgument, "Moebius coefficients are singular");
    const Real eps = default_tolerances().degenerate;
    HolomorphicMap out{h.grid, h.labels, VertexField<Complex>(h.grid)};
    for (std::size_t k = 0; k < h.grid.vertex_count(); ++k) {
        const Complex& z = h.g.at(k);
        const Complex den = C * z + D;
        if (abs(den) <= eps * (abs(C) * abs(z) + abs(D)))
            throw Error(ErrorKind::PoleOnVertex, "vertex is mapped to infinity", k);
        out.g.at(k) = (A * z + B) / den;
    }
    const auto report = validate_holomorphic(out);
    if (!report.degenerate_edges.empty() || !report.degenerate_faces.empty())
        throw Error(ErrorKind::RegularityViolation, "Moebius image is not regular");
    return out;
}

HolomorphicReport validate_holomorphic(const VertexField<Complex>& g, const EdgeLabelling& a, const Real& tol,
                                       const Real& eps)
{
    const auto& grid = g.grid();
    a.validate(grid);
    HolomorphicReport report;

    // Edges are compared with their neighbours only: holomorphic maps may
    // grow exponentially across the grid.
    std::vector<Real> local(grid.edge_count(), Real(0));
    for (const auto& f : grid.faces()) {
        Real face_scale = 0;
        for (const auto& e : grid.boundary(f)) face_scale = std::max(face_scale, Real(abs(derivative(g, e))));
        for (const auto& e : grid.boundary(f)) {
            auto& s = local[grid.edge_index(e)];
            s = std::max(s, face_scale);
        }
    }
    for (const auto& e : grid.edges()) {
        const std::size_t idx = grid.edge_index(e);
        if (local[idx] == 0 || abs(derivative(g, e)) <= eps * local[idx]) report.degenerate_edges.push_back(idx);
    }

    const Real inf = std::numeric_limits<Real>::infinity();
    for (const auto& f : grid.faces()) {
        const auto b = grid.boundary(f);
        const std::size_t idx = grid.face_index(f);
        Real residual = inf;
        try {
            const Complex cr = face_cross_ratio(g, f, eps);
            if (abs(cr) <= eps || abs(cr - Complex(1)) <= eps) {
                report.degenerate_faces.push_back(idx);
            } else {
                residual = Real(abs(cr * a(b[1]) - a(b[0]))) / abs(a(b[0]));
            }
        } catch (const Error&) {
            report.degenerate_faces.push_back(idx);
        }
        report.faces.values.push_back(residual);
        if (!(residual <= tol)) report.offending_faces.push_back(idx);
    }
    return report;
}

HolomorphicReport validate_holomorphic(const HolomorphicMap& h, const Real& tol)
{
    return validate_holomorphic(h.g, h.labels, tol);
}

void require_holomorphic(const HolomorphicMap& h, const Real& tol)
{
    const auto report = validate_holomorphic(h, tol);
    if (!report.degenerate_edges.empty())
        throw Error(ErrorKind::RegularityViolation, "vanishing edge derivative", report.degenerate_edges.front());
    if (!report.offending_faces.empty()) {
        const auto f = report.offending_faces.front();
        throw Error(ErrorKind::RegularityViolation, "face cross ratio does not factorize", f,
                    to_double(report.faces.values[f]));
    }
}

EdgeForm<Complex> christoffel_form(const HolomorphicMap& h)
{
    EdgeForm<Complex> w(h.grid);
    for (const auto& e : h.grid.edges()) w.set(e, Complex(h.labels(e)) / conj(derivative(h.g, e)));
    return w;
}

ChristoffelDual christoffel_dual(const HolomorphicMap& h, Vertex root, const Complex& root_value)
{
    const auto w = christoffel_form(h);
    ChristoffelDual out;
    out.gstar = integrate_edge_form(w, root, root_value);
    out.closure_residual = closedness(w).max();
    return out;
}

VertexField<Real> factorize_r(const HolomorphicMap& h, const Real& r_root, Vertex root, const Real& tol)
{
    if (r_root == 0) throw Error(ErrorKind::InvalidArgument, "r must be nonzero at the root");
    const auto& grid = h.grid;
    VertexField<Real> r(grid);
    r[root] = r_root;
    for (const auto& e : grid.spanning_tree(root)) {
        const Real q = Real(norm(derivative(h.g, e))) / h.labels(e);
        r[e.to] = q / r[e.from];
    }
    for (const auto& e : grid.edges()) {
        const Complex dg = derivative(h.g, e);
        const Real a = h.labels(e);
        const Real rr = r[e.from] * r[e.to];
        const Real product = abs(rr * a - Real(norm(dg))) / Real(norm(dg));
        const Complex dual = Complex(a) / conj(dg);
        const Real quotient = Real(abs(dual - dg / rr)) / abs(dual);
        const Real residual = std::max(product, quotient);
        if (!(residual <= tol))
            throw Error(ErrorKind::Inconsistent, "r does not factorize |dg|^2/a",
                        grid.face_index(grid.adjacent_face(e)), to_double(residual));
    }
    return r;
}

Residuals koenigs_diagonal_check(const HolomorphicMap& h, const VertexField<Complex>& gstar,
                                 const VertexField<Real>& r)
{
    const auto& grid = h.grid;
    Residuals out;
    for (const auto& f : grid.faces()) {
        const auto [i, j, k, l] = grid.corners(f);
        const Complex dgs_ik = gstar[k] - gstar[i];
        const Real dr_jl = r[l] - r[j];
        const Complex dg_jl = h.g[l] - h.g[j];
        const Real dinv_ik = Real(1) / r[k] - Real(1) / r[i];
        const Complex first = dgs_ik * dr_jl;
        const Complex second = dg_jl * dinv_ik;
        const Real scale = std::max(Real(abs(first)), Real(abs(second)));
        const Real diff = abs(first + second);
        out.values.push_back(scale == 0 ? diff : Real(diff / scale));
    }
    return out;
}

}  // namespace flatfront
