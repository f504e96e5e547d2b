#include <flatfront/frame.hpp>

#include <algorithm>

namespace flatfront {

Mat2 HermitianMat::matrix() const
{
    const Complex& i = imag_unit();
    Mat2 m;
    m(0, 0) = Complex(x[0] + x[3]);
    m(0, 1) = Complex(x[1]) - i * x[2];
    m(1, 0) = Complex(x[1]) + i * x[2];
    m(1, 1) = Complex(x[0] - x[3]);
    return m;
}

HermitianMat& HermitianMat::operator+=(const HermitianMat& o)
{
    for (std::size_t k = 0; k < 4; ++k) x[k] += o.x[k];
    return *this;
}

HermitianMat& HermitianMat::operator-=(const HermitianMat& o)
{
    for (std::size_t k = 0; k < 4; ++k) x[k] -= o.x[k];
    return *this;
}

HermitianMat& HermitianMat::operator*=(const Real& s)
{
    for (auto& v : x) v *= s;
    return *this;
}

HermitianMat pauli_basis(int k)
{
    if (k < 0 || k > 3) throw Error(ErrorKind::InvalidArgument, "Pauli basis index must be 0..3");
    HermitianMat out;
    out.x[std::size_t(k)] = 1;
    return out;
}

HermitianMat pauli_pack(const Real& x0, const Real& x1, const Real& x2, const Real& x3)
{
    return HermitianMat{{x0, x1, x2, x3}};
}

HermitianMat hermitian_part(const Mat2& m)
{
    HermitianMat out;
    out.x[0] = real(m(0, 0) + m(1, 1)) / 2;
    out.x[3] = real(m(0, 0) - m(1, 1)) / 2;
    out.x[1] = real(m(0, 1) + m(1, 0)) / 2;
    out.x[2] = imag(m(1, 0) - m(0, 1)) / 2;
    return out;
}

HermitianMat pauli_unpack(const Mat2& m, const Real& tol)
{
    const Real scale = std::max(Real(1), max_abs(m));
    const Real skew = max_abs_diff(m, m.adjoint());
    if (skew > tol * scale) throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian", {}, to_double(skew / scale));
    return hermitian_part(m);
}

Real minkowski(const HermitianMat& a, const HermitianMat& b)
{
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Real euclidean_dot(const HermitianMat& a, const HermitianMat& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Real euclidean_norm(const HermitianMat& a) { return sqrt(euclidean_dot(a, a)); }

HermitianMat sl2_act(const Mat2& G, const HermitianMat& X)
{
    return hermitian_part(G * X.matrix() * G.adjoint());
}

Mat2 weierstrass_matrix(const Complex& dg, const Real& a, const Real& t, Branch branch, const Real& eps)
{
    if (t == 0) throw Error(ErrorKind::InvalidParameter, "t must be nonzero");
    const Real one_minus = 1 - t * a;
    if (abs(one_minus) <= eps) throw Error(ErrorKind::InvalidParameter, "t hits 1/a on an edge");
    if (branch == Branch::real && one_minus < 0)
        throw Error(ErrorKind::NegativeBranch, "1 - t a < 0 on the real branch");
    if (dg == Complex(0)) throw Error(ErrorKind::SingularEdge, "dg vanishes");
    const Complex root = sqrt(Complex(one_minus));
    Mat2 W;
    W(0, 0) = Complex(1) / root;
    W(0, 1) = dg / root;
    W(1, 0) = Complex(t * a) / (dg * root);
    W(1, 1) = Complex(1) / root;
    return W;
}

EdgeConnection build_connection(const HolomorphicMap& h, const Real& t, Branch branch)
{
    h.labels.validate(h.grid);
    EdgeConnection out{h.grid, h.labels, t, branch, EdgeField<Mat2>(h.grid)};
    for (const auto& e : h.grid.edges()) {
        for (const Edge& oriented : {e, e.reversed()}) {
            try {
                out.W[oriented] = weierstrass_matrix(derivative(h.g, oriented), h.labels(e), t, branch);
            } catch (const Error& err) {
                throw Error(err.kind(), err.message(), h.grid.edge_index(e));
            }
        }
    }
    return out;
}

Residuals check_flat(const EdgeConnection& W)
{
    Residuals out;
    for (const auto& f : W.grid.faces()) {
        const auto [i, j, k, l] = W.grid.corners(f);
        const Mat2 via_j = W.W[Edge{i, j}] * W.W[Edge{j, k}];
        const Mat2 via_l = W.W[Edge{i, l}] * W.W[Edge{l, k}];
        const Real scale = std::max(max_abs(via_j), max_abs(via_l));
        out.values.push_back(max_abs_diff(via_j, via_l) / scale);
    }
    return out;
}

Residuals check_inverse_pairs(const EdgeConnection& W)
{
    Residuals out;
    for (const auto& e : W.grid.edges())
        out.values.push_back(max_abs_diff(W.W[e] * W.W[e.reversed()], Mat2::Identity()));
    return out;
}

SL2Frame integrate_frame(const EdgeConnection& W, Vertex root, const Mat2& F_root, const Real& flat_tol)
{
    const auto& grid = W.grid;
    if (!grid.contains(root)) throw Error(ErrorKind::InvalidArgument, "root vertex outside grid");
    if (abs(F_root.determinant() - Complex(1)) > default_tolerances().det)
        throw Error(ErrorKind::InvalidArgument, "initial frame must be unimodular");
    const Residuals flat = check_flat(W);
    if (auto worst = flat.worst(); worst && flat.values[*worst] > flat_tol)
        throw Error(ErrorKind::NotFlat, "connection is not flat", *worst, to_double(flat.values[*worst]));

    SL2Frame out{grid, VertexField<Mat2>(grid, Mat2::Zero()), root};
    out.F[root] = F_root;
    for (const auto& e : grid.spanning_tree(root)) out.F[e.to] = out.F[e.from] * W.W[e];

    for (const auto& e : grid.non_tree_edges(root)) {
        const Mat2& Fj = out.F[e.to];
        out.closure_residual =
            std::max(out.closure_residual, Real(max_abs_diff(out.F[e.from] * W.W[e], Fj) / max_abs(Fj)));
    }

    // Two monotone lattice paths to the opposite corner.
    const Vertex far{root.m == 0 ? grid.rows() - 1 : 0, root.n == 0 ? grid.cols() - 1 : 0};
    const int dm = far.m > root.m ? 1 : -1;
    const int dn = far.n > root.n ? 1 : -1;
    Mat2 row_first = F_root;
    Mat2 col_first = F_root;
    Vertex a = root;
    Vertex b = root;
    for (; a.m != far.m; a.m += dm) row_first = row_first * W.W[Edge{a, {a.m + dm, a.n}}];
    for (; a.n != far.n; a.n += dn) row_first = row_first * W.W[Edge{a, {a.m, a.n + dn}}];
    for (; b.n != far.n; b.n += dn) col_first = col_first * W.W[Edge{b, {b.m, b.n + dn}}];
    for (; b.m != far.m; b.m += dm) col_first = col_first * W.W[Edge{b, {b.m + dm, b.n}}];
    out.path_residual = max_abs_diff(row_first, col_first) / std::max(max_abs(row_first), max_abs(col_first));
    return out;
}

Real det_drift(const SL2Frame& frame)
{
    Real out = 0;
    for (const auto& F : frame.F.values()) out = std::max(out, Real(abs(F.determinant() - Complex(1))));
    return out;
}

}  // namespace flatfront
