#include <flatfront/front.hpp>
#include <flatfront/poincare.hpp>

#include <Eigen/SVD>

#include <algorithm>

namespace flatfront {

namespace {

using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

Real hermitian_det(const HermitianMat& X) { return real(X.matrix().determinant()); }

// Distance of u from the line through d, relative to |u|.
Real rejection(const HermitianMat& u, const HermitianMat& d)
{
    const Real uu = euclidean_norm(u);
    if (uu == 0) return 0;
    const Real dd = euclidean_dot(d, d);
    if (dd == 0) return 1;
    const HermitianMat rest = u - (euclidean_dot(u, d) / dd) * d;
    return euclidean_norm(rest) / uu;
}

// |u ^ v| / (|u| |v|) in the Minkowski metric, for spacelike u and v.
Real lorentz_sine(const HermitianMat& u, const HermitianMat& v)
{
    const Real uu = abs(minkowski(u, u));
    const Real vv = abs(minkowski(v, v));
    if (uu == 0 || vv == 0) return 0;
    const Real uv = minkowski(u, v);
    return sqrt(abs(uu * vv - uv * uv) / (uu * vv));
}

// Reflection of R^{4,2} in the R^{3,1} part moving the timelike direction of
// a given vector to E0. It is an involutive isometry; far-out contact
// elements become well conditioned after it.
class Recentering
{
public:
    explicit Recentering(const LieVec& anchor)
    {
        HermitianMat u = pauli_pack(anchor.c[0], anchor.c[1], anchor.c[2], anchor.c[3]);
        const Real uu = minkowski(u, u);
        if (!(uu < 0)) return;
        u = (1 / sqrt(-uu)) * u;
        if (u[0] < 0) u = -u;
        m_w = u - pauli_basis(0);
        m_ww = minkowski(m_w, m_w);
    }

    LieVec operator()(LieVec y) const
    {
        if (!(m_ww > 0)) return y;
        const HermitianMat v = pauli_pack(y.c[0], y.c[1], y.c[2], y.c[3]);
        const HermitianMat r = v - (2 * minkowski(m_w, v) / m_ww) * m_w;
        for (std::size_t k = 0; k < 4; ++k) y.c[k] = r[k];
        return y;
    }

private:
    HermitianMat m_w;
    Real m_ww = 0;
};

}  // namespace

FlatFrontFamily make_front_family(const HolomorphicMap& h, const Real& t, Vertex root, const Mat2& F_root,
                                  Branch branch)
{
    FlatFrontFamily out{h, build_connection(h, t, branch), {}};
    out.frame = integrate_frame(out.connection, root, F_root);
    return out;
}

FrontSample eval_front(const SL2Frame& frame, const Real& s)
{
    const Real c = cosh(s);
    const Real sh = sinh(s);
    const HermitianMat x0 = pauli_pack(c, 0, 0, sh);
    const HermitianMat n0 = pauli_pack(sh, 0, 0, c);
    FrontSample out{s, VertexField<HermitianMat>(frame.grid), VertexField<HermitianMat>(frame.grid)};
    for (std::size_t k = 0; k < frame.grid.vertex_count(); ++k) {
        out.X.at(k) = sl2_act(frame.F.at(k), x0);
        out.N.at(k) = sl2_act(frame.F.at(k), n0);
    }
    return out;
}

FrontInvariants front_invariants(const FrontSample& sample)
{
    FrontInvariants out;
    bool first = true;
    for (std::size_t k = 0; k < sample.X.size(); ++k) {
        const auto& X = sample.X.at(k);
        const auto& N = sample.N.at(k);
        out.det_x = std::max(out.det_x, Real(abs(-minkowski(X, X) - 1)));
        out.det_n = std::max(out.det_n, Real(abs(-minkowski(N, N) + 1)));
        out.xn = std::max(out.xn, Real(abs(minkowski(X, N))));
        const Real trace = 2 * X[0];
        out.min_trace_x = first ? trace : std::min(out.min_trace_x, trace);
        first = false;
    }
    return out;
}

Real parallel_family_residual(const FrontSample& base, const FrontSample& sample)
{
    const Real c = cosh(sample.s);
    const Real sh = sinh(sample.s);
    Real out = 0;
    for (std::size_t k = 0; k < sample.X.size(); ++k) {
        const HermitianMat X = c * base.X.at(k) + sh * base.N.at(k);
        const HermitianMat N = sh * base.X.at(k) + c * base.N.at(k);
        out = std::max(out, Real(euclidean_norm(sample.X.at(k) - X) / euclidean_norm(X)));
        out = std::max(out, Real(euclidean_norm(sample.N.at(k) - N) / euclidean_norm(N)));
    }
    return out;
}

HermitianMat reflection_generator(const Complex& dg, const Real& a, const Real& t)
{
    const Real one_minus = 1 - t * a;
    const Real len = abs(dg);
    if (len == 0 || one_minus == 0) throw Error(ErrorKind::SingularEdge, "reflection undefined on this edge");
    if (one_minus < 0) throw Error(ErrorKind::NegativeBranch, "reflection needs 1 - t a > 0");
    const Real den = len * sqrt(one_minus);
    Mat2 Y;
    Y(0, 0) = Complex(len * len / den);
    Y(0, 1) = dg / den;
    Y(1, 0) = conj(dg) / den;
    Y(1, 1) = Complex(t * a / den);
    return hermitian_part(Y);
}

HermitianMat reflection_vector(const FlatFrontFamily& family, const Edge& e)
{
    const auto& h = family.holo;
    const HermitianMat Y = reflection_generator(derivative(h.g, e), h.labels(e), family.t());
    return sl2_act(family.frame.F[e.from], Y);
}

Real reflection_antisymmetry(const FlatFrontFamily& family)
{
    Real out = 0;
    for (const auto& e : family.grid().edges()) {
        const HermitianMat Rij = reflection_vector(family, e);
        const HermitianMat Rji = reflection_vector(family, e.reversed());
        out = std::max(out, Real(euclidean_norm(Rij + Rji) / euclidean_norm(Rij)));
    }
    return out;
}

HermitianMat reflect(const HermitianMat& X, const HermitianMat& R, const Real& tol)
{
    const Real scale = std::max(Real(1), euclidean_dot(R, R));
    const Real defect = abs(minkowski(R, R) - 1) / scale;
    if (defect > tol) throw Error(ErrorKind::NotUnitSpacelike, "mirror is not unit spacelike", {}, to_double(defect));
    return X - (2 * minkowski(R, X)) * R;
}

HermitianMat reflect_by_determinants(const HermitianMat& X, const HermitianMat& R)
{
    return X + ((hermitian_det(X + R) - hermitian_det(X - R)) / 2) * R;
}

PropagationReport propagation_check(const FlatFrontFamily& family, const FrontSample& sample)
{
    PropagationReport out;
    for (const auto& e : family.grid().edges()) {
        const HermitianMat R = reflection_vector(family, e);
        const HermitianMat& Xj = sample.X[e.to];
        const HermitianMat& Nj = sample.N[e.to];
        out.x.values.push_back(euclidean_norm(Xj - reflect(sample.X[e.from], R)) / euclidean_norm(Xj));
        out.n.values.push_back(euclidean_norm(Nj - reflect(sample.N[e.from], R)) / euclidean_norm(Nj));
    }
    return out;
}

Residuals reflection_collinearity(const FlatFrontFamily& family, const FrontSample& sample)
{
    Residuals out;
    for (const auto& e : family.grid().edges()) {
        const HermitianMat R = reflection_vector(family, e);
        const HermitianMat dX = sample.X[e.to] - sample.X[e.from];
        const HermitianMat dN = sample.N[e.to] - sample.N[e.from];
        out.values.push_back(std::max(rejection(dX + dN, R), rejection(dX - dN, R)));
    }
    return out;
}

RodriguesEdge rodrigues_edge(const HermitianMat& Xi, const HermitianMat& Xj, const HermitianMat& Ni,
                             const HermitianMat& Nj, const HermitianMat& R, const Real& tol_singular)
{
    const HermitianMat dX = Xj - Xi;
    const HermitianMat dN = Nj - Ni;
    const Real len = euclidean_norm(dX);
    if (len == 0 || sqrt(abs(minkowski(dX, dX))) < tol_singular)
        throw Error(ErrorKind::SingularEdge, "dX vanishes on this edge");
    RodriguesEdge out;
    out.k = -euclidean_dot(dN, dX) / euclidean_dot(dX, dX);
    const HermitianMat dX_rev = Xi - Xj;
    const HermitianMat dN_rev = Ni - Nj;
    out.k_reverse = -euclidean_dot(dN_rev, dX_rev) / euclidean_dot(dX_rev, dX_rev);
    out.k_closed = -minkowski(dN, R) / minkowski(dX, R);
    out.residual = euclidean_norm(dN + out.k * dX) / len;
    return out;
}

RodriguesReport rodrigues_check(const FlatFrontFamily& family, const FrontSample& sample)
{
    RodriguesReport out;
    for (const auto& e : family.grid().edges()) {
        RodriguesEdge edge;
        try {
            edge = rodrigues_edge(sample.X[e.from], sample.X[e.to], sample.N[e.from], sample.N[e.to],
                                  reflection_vector(family, e));
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::SingularEdge) throw;
            edge.singular = true;
            ++out.singular_count;
        }
        const Real scale = std::max(Real(1), Real(abs(edge.k)));
        out.residual.values.push_back(edge.residual);
        out.symmetry.values.push_back(edge.singular ? quiet_nan() : Real(abs(edge.k - edge.k_reverse) / scale));
        out.agreement.values.push_back(edge.singular ? quiet_nan() : Real(abs(edge.k - edge.k_closed) / scale));
        out.edges.push_back(edge);
    }
    return out;
}

Complex planar_cross_ratio(const std::array<RealVector, 4>& points)
{
    const Eigen::Index dim = points[0].size();
    RealMatrix D(dim, 3);
    for (int c = 0; c < 3; ++c) D.col(c) = points[std::size_t(c + 1)] - points[0];
    Eigen::JacobiSVD<RealMatrix> svd(D, Eigen::ComputeThinU);
    const RealVector u1 = svd.matrixU().col(0);
    const RealVector u2 = svd.matrixU().col(1);
    std::array<Complex, 4> z;
    for (std::size_t k = 0; k < 4; ++k) {
        const RealVector d = points[k] - points[0];
        z[k] = Complex(Real(d.dot(u1)), Real(d.dot(u2)));
    }
    return cross_ratio(z[0], z[1], z[2], z[3]);
}

Real planarity_defect(const std::array<HermitianMat, 4>& X)
{
    RealMatrix D(4, 3);
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 4; ++r) D(r, c) = X[std::size_t(c + 1)][std::size_t(r)] - X[0][std::size_t(r)];
    Eigen::JacobiSVD<RealMatrix> svd(D);
    const auto& sigma = svd.singularValues();
    if (sigma(0) == 0) return 0;
    return sigma(2) / sigma(0);
}

CircularityFace circularity(const std::array<HermitianMat, 4>& X)
{
    CircularityFace out;
    out.planarity = planarity_defect(X);
    std::array<RealVector, 4> ball;
    for (std::size_t k = 0; k < 4; ++k) {
        const PoincarePoint p = poincare_project(X[k]);
        ball[k] = RealVector(3);
        ball[k] << p.y[0], p.y[1], p.y[2];
    }
    out.cross_ratio = planar_cross_ratio(ball);
    out.imag_cross_ratio = abs(imag(out.cross_ratio)) / abs(out.cross_ratio);
    return out;
}

CircularityReport circularity_check(const VertexField<HermitianMat>& X)
{
    CircularityReport out;
    const Real inf = std::numeric_limits<Real>::infinity();
    for (const auto& f : X.grid().faces()) {
        try {
            const CircularityFace face = circularity(face_values(X, f));
            out.planarity.values.push_back(face.planarity);
            out.imag_cross_ratio.values.push_back(face.imag_cross_ratio);
        } catch (const Error&) {
            out.planarity.values.push_back(planarity_defect(face_values(X, f)));
            out.imag_cross_ratio.values.push_back(inf);
        }
    }
    return out;
}

Real Bivector::norm() const { return sqrt(bivector_dot(*this, *this)); }

Bivector& Bivector::operator+=(const Bivector& o)
{
    for (std::size_t k = 0; k < 6; ++k) c[k] += o.c[k];
    return *this;
}

Bivector& Bivector::operator*=(const Real& s)
{
    for (auto& v : c) v *= s;
    return *this;
}

Bivector wedge(const HermitianMat& u, const HermitianMat& v)
{
    static constexpr std::array<std::array<std::size_t, 2>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    Bivector out;
    for (std::size_t k = 0; k < 6; ++k) {
        const auto [a, b] = pairs[k];
        out.c[k] = u[a] * v[b] - u[b] * v[a];
    }
    return out;
}

Real bivector_dot(const Bivector& a, const Bivector& b)
{
    Real out = 0;
    for (std::size_t k = 0; k < 6; ++k) out += a.c[k] * b.c[k];
    return out;
}

FaceQuad face_values(const VertexField<HermitianMat>& field, Face face)
{
    const auto [i, j, k, l] = field.grid().corners(face);
    return {field[i], field[j], field[k], field[l]};
}

Bivector mixed_area(const FaceQuad& P, const FaceQuad& Q)
{
    const HermitianMat dP_ik = P[2] - P[0];
    const HermitianMat dP_jl = P[3] - P[1];
    const HermitianMat dQ_ik = Q[2] - Q[0];
    const HermitianMat dQ_jl = Q[3] - Q[1];
    return Real(1) / 4 * (wedge(dP_ik, dQ_jl) + wedge(dQ_ik, dP_jl));
}

CurvatureReport gauss_curvature(const VertexField<HermitianMat>& X, const VertexField<HermitianMat>& N,
                                const Real& tol_singular)
{
    CurvatureReport out;
    for (const auto& f : X.grid().faces()) {
        const FaceQuad x = face_values(X, f);
        const FaceQuad n = face_values(N, f);
        FaceQuad hp;
        FaceQuad hm;
        for (std::size_t k = 0; k < 4; ++k) {
            hp[k] = x[k] + n[k];
            hm[k] = x[k] - n[k];
        }
        FaceCurvature face;
        face.area_x = mixed_area(x, x);
        face.area_n = mixed_area(n, n);
        face.area_h = mixed_area(hp, hm);
        face.scale = std::max({euclidean_norm(x[2] - x[0]), euclidean_norm(x[3] - x[1]),
                               euclidean_norm(n[2] - n[0]), euclidean_norm(n[3] - n[1])});
        const Real scale2 = face.scale * face.scale;
        face.area_h_relative = scale2 == 0 ? Real(0) : Real(face.area_h.norm() / scale2);

        const HermitianMat dhp_ik = hp[2] - hp[0];
        const HermitianMat dhm_jl = hm[3] - hm[1];
        const Real lengths = euclidean_norm(dhp_ik) * euclidean_norm(dhm_jl);
        face.diagonal_wedge = lengths == 0 ? Real(0) : Real(wedge(dhp_ik, dhm_jl).norm() / lengths);

        const Real ax2 = bivector_dot(face.area_x, face.area_x);
        face.diagonal_sine = lorentz_sine(x[2] - x[0], x[3] - x[1]);
        face.singular = ax2 == 0 || !(face.diagonal_sine >= tol_singular);
        if (!face.singular) {
            face.K = 1 - bivector_dot(face.area_h, face.area_x) / ax2;
            face.proportionality = (face.area_h - (1 - face.K) * face.area_x).norm() / scale2;
        } else {
            ++out.singular_count;
        }
        out.area_h.values.push_back(face.area_h_relative);
        out.k_deviation.values.push_back(face.singular ? quiet_nan() : Real(abs(face.K - 1)));
        out.diagonal_wedge.values.push_back(face.diagonal_wedge);
        out.proportionality.values.push_back(face.singular ? quiet_nan() : face.proportionality);
        out.faces.push_back(face);
    }
    return out;
}

LieVec& LieVec::operator+=(const LieVec& o)
{
    for (std::size_t k = 0; k < 6; ++k) c[k] += o.c[k];
    return *this;
}

LieVec& LieVec::operator*=(const Real& s)
{
    for (auto& v : c) v *= s;
    return *this;
}

Real lie_product(const LieVec& a, const LieVec& b)
{
    return -a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3] - a.c[4] * b.c[4] +
           a.c[5] * b.c[5];
}

Real lie_euclidean_norm(const LieVec& a)
{
    Real out = 0;
    for (const auto& v : a.c) out += v * v;
    return sqrt(out);
}

LieVec lie_embed(const HermitianMat& X, const Real& p, const Real& q)
{
    return LieVec{{X[0], X[1], X[2], X[3], p, q}};
}

LieLifts lie_lift(const FrontSample& sample)
{
    LieLifts out{VertexField<LieVec>(sample.X.grid()), VertexField<LieVec>(sample.X.grid())};
    for (std::size_t k = 0; k < sample.X.size(); ++k) {
        out.x.at(k) = lie_embed(sample.X.at(k), 0, -1);
        out.n.at(k) = lie_embed(sample.N.at(k), 1, 0);
    }
    return out;
}

LiftReport lift_check(const LieLifts& lifts)
{
    LiftReport out;
    for (std::size_t k = 0; k < lifts.x.size(); ++k) {
        const auto& x = lifts.x.at(k);
        const auto& n = lifts.n.at(k);
        out.xx = std::max(out.xx, Real(abs(lie_product(x, x))));
        out.nn = std::max(out.nn, Real(abs(lie_product(n, n))));
        out.xn = std::max(out.xn, Real(abs(lie_product(x, n))));
    }
    return out;
}

CurvatureSphere curvature_sphere(const LieVec& xi, const LieVec& ni, const LieVec& xj, const LieVec& nj,
                                 const Real& tol)
{
    const Recentering move(xi);
    const std::array<LieVec, 4> cols{move(xi), move(ni), move(xj), move(nj)};
    std::array<Real, 4> lengths;
    RealMatrix A(6, 4);
    for (std::size_t c = 0; c < 4; ++c) {
        lengths[c] = lie_euclidean_norm(cols[c]);
        if (lengths[c] == 0) throw Error(ErrorKind::NoIntersection, "zero lift");
        for (std::size_t r = 0; r < 6; ++r) A(Eigen::Index(r), Eigen::Index(c)) = cols[c].c[r] / lengths[c];
    }
    Eigen::JacobiSVD<RealMatrix> svd(A, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    CurvatureSphere out;
    out.rank_residual = sigma(3) / sigma(0);
    if (out.rank_residual > tol)
        throw Error(ErrorKind::NoIntersection, "contact elements do not intersect", {}, to_double(out.rank_residual));
    if (sigma(2) / sigma(0) <= tol)
        throw Error(ErrorKind::NoIntersection, "contact elements coincide", {}, to_double(sigma(2) / sigma(0)));

    const auto v = svd.matrixV().col(3);
    Real cx = v(0) / lengths[0];
    Real cn = v(1) / lengths[1];
    Real dx = -v(2) / lengths[2];
    Real dn = -v(3) / lengths[3];
    // Normalize to x-coefficient 1 unless that coefficient is negligible.
    const Real pivot = abs(v(0)) >= abs(v(1)) * tol ? cx : cn;
    cx /= pivot;
    cn /= pivot;
    dx /= pivot;
    dn /= pivot;
    const LieVec kappa = cx * cols[0] + cn * cols[1];
    const LieVec other = dx * cols[2] + dn * cols[3];
    const Real len = lie_euclidean_norm(kappa);
    out.null_residual = abs(lie_product(kappa, kappa)) / (len * len);
    out.span_residual = lie_euclidean_norm(kappa - other) / len;
    out.kappa = move(kappa);
    return out;
}

CurvatureSphereReport curvature_spheres(const LieLifts& lifts)
{
    CurvatureSphereReport out;
    const auto& grid = lifts.x.grid();
    const Real inf = std::numeric_limits<Real>::infinity();
    for (const auto& e : grid.edges()) {
        try {
            const CurvatureSphere k = curvature_sphere(lifts.x[e.from], lifts.n[e.from], lifts.x[e.to], lifts.n[e.to]);
            out.rank.values.push_back(k.rank_residual);
            out.null.values.push_back(k.null_residual);
            out.span.values.push_back(k.span_residual);
        } catch (const Error&) {
            out.rank.values.push_back(inf);
            out.null.values.push_back(inf);
            out.span.values.push_back(inf);
        }
    }
    return out;
}

Real parallel_lift_residual(const FrontSample& base, const FrontSample& sample)
{
    const Real c = cosh(sample.s);
    const Real sh = sinh(sample.s);
    Real out = 0;
    for (std::size_t k = 0; k < sample.X.size(); ++k) {
        const LieVec a = lie_embed(base.X.at(k), -sh, -c);
        const LieVec b = lie_embed(base.N.at(k), c, sh);
        const LieVec x = lie_embed(sample.X.at(k), 0, -1);
        const LieVec n = lie_embed(sample.N.at(k), 1, 0);
        out = std::max(out, Real(lie_euclidean_norm(x - (c * a + sh * b)) / lie_euclidean_norm(x)));
        out = std::max(out, Real(lie_euclidean_norm(n - (sh * a + c * b)) / lie_euclidean_norm(n)));
    }
    return out;
}

}  // namespace flatfront
