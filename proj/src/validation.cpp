#include <flatfront/validation.hpp>

#include <algorithm>
#include <functional>

namespace flatfront {

std::string_view to_string(CheckStatus status)
{
    switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    }
    return "unknown";
}

bool ValidationReport::passed() const
{
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
}

std::vector<const CheckResult*> ValidationReport::failures() const
{
    std::vector<const CheckResult*> out;
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) out.push_back(&c);
    return out;
}

const CheckResult* ValidationReport::find(std::string_view name, std::optional<double> s) const
{
    for (const auto& c : checks)
        if (c.name == name && c.s == s) return &c;
    return nullptr;
}

Json ValidationReport::to_json() const
{
    Json list = Json::array();
    for (const auto& c : checks) {
        Json j{{"name", c.name},
               {"status", std::string(flatfront::to_string(c.status))},
               {"max", c.max},
               {"tolerance", c.tolerance}};
        if (!c.cell.empty()) j["cell"] = c.cell;
        j["worst"] = c.worst ? Json(*c.worst) : Json(nullptr);
        if (c.s) j["s"] = *c.s;
        if (!c.message.empty()) j["message"] = c.message;
        list.push_back(j);
    }
    return Json{{"type", "validation_report"}, {"passed", passed()}, {"checks", list}};
}

namespace {

class Recorder
{
public:
    explicit Recorder(ValidationReport& report)
        : m_report(report)
    {}

    void residuals(std::string name, std::string cell, std::optional<double> s, const Residuals& r, const Real& tol,
                   std::string message = {})
    {
        CheckResult c{std::move(name), std::move(cell), s, to_double(r.max()), to_double(tol), CheckStatus::pass,
                      {}, std::move(message)};
        if (auto worst = r.worst()) {
            c.worst = *worst;
            c.max = to_double(r.values[*worst]);
        }
        if (!r.within(tol)) c.status = CheckStatus::fail;
        m_report.checks.push_back(std::move(c));
    }

    void scalar(std::string name, std::optional<double> s, const Real& value, const Real& tol)
    {
        CheckResult c{std::move(name), "", s, to_double(value), to_double(tol), CheckStatus::pass, {}, {}};
        if (!(value <= tol)) c.status = CheckStatus::fail;
        m_report.checks.push_back(std::move(c));
    }

    void failed(std::string name, std::optional<double> s, const Real& tol, const std::exception& e)
    {
        CheckResult c{std::move(name), "", s, std::numeric_limits<double>::infinity(), to_double(tol),
                      CheckStatus::fail, {}, e.what()};
        if (const auto* err = dynamic_cast<const Error*>(&e)) c.worst = err->cell();
        m_report.checks.push_back(std::move(c));
    }

    void skipped(std::string name, std::optional<double> s, const Real& tol, const std::string& reason)
    {
        m_report.checks.push_back(
            CheckResult{std::move(name), "", s, 0, to_double(tol), CheckStatus::skipped, {}, reason});
    }

    // Runs body; on an exception records name as failed.
    void attempt(const std::string& name, std::optional<double> s, const Real& tol, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            failed(name, s, tol, e);
        }
    }

private:
    ValidationReport& m_report;
};

struct Planned
{
    const char* name;
    Real Tolerances::*tol;
    bool per_s;
};

// Every check after the holomorphicity test, in report order.
const std::vector<Planned>& downstream()
{
    static const std::vector<Planned> list{
        {"weierstrass", &Tolerances::flat, false},
        {"flatW", &Tolerances::flat, false},
        {"connection_inverse", &Tolerances::flat, false},
        {"frame_closure", &Tolerances::flat, false},
        {"det_F", &Tolerances::det, false},
        {"gauss_dyadic", &Tolerances::det, false},
        {"gauss_null", &Tolerances::det, false},
        {"crH_face_plus", &Tolerances::cross_ratio, false},
        {"crH_face_minus", &Tolerances::cross_ratio, false},
        {"crH_edge", &Tolerances::cross_ratio, false},
        {"reflection_antisymmetry", &Tolerances::geo, false},
        {"det_X", &Tolerances::det, true},
        {"det_N", &Tolerances::det, true},
        {"XN", &Tolerances::det, true},
        {"trace_X", &Tolerances::det, true},
        {"parallel_family", &Tolerances::geo, true},
        {"rodrigues", &Tolerances::geo, true},
        {"rodrigues_symmetry", &Tolerances::geo, true},
        {"rodrigues_agreement", &Tolerances::geo, true},
        {"circularity_planarity", &Tolerances::geo, true},
        {"circularity_cross_ratio", &Tolerances::geo, true},
        {"propagation_X", &Tolerances::geo, true},
        {"propagation_N", &Tolerances::geo, true},
        {"reflection_collinearity", &Tolerances::geo, true},
        {"mixed_area", &Tolerances::area, true},
        {"curvature", &Tolerances::geo, true},
        {"diagonal_wedge", &Tolerances::geo, true},
        {"lifts", &Tolerances::det, true},
        {"curvature_sphere", &Tolerances::geo, true},
        {"curvature_sphere_null", &Tolerances::geo, true},
        {"curvature_sphere_span", &Tolerances::geo, true},
        {"parallel_lifts", &Tolerances::geo, true},
    };
    return list;
}

void skip_from(Recorder& rec, const Tolerances& tol, const std::vector<Real>& s_list, std::string_view first,
               const std::string& reason)
{
    bool active = false;
    for (const auto& p : downstream()) {
        active = active || p.name == first;
        if (!active) continue;
        if (p.per_s)
            for (const auto& s : s_list) rec.skipped(p.name, to_double(s), tol.*p.tol, reason);
        else
            rec.skipped(p.name, {}, tol.*p.tol, reason);
    }
}

}  // namespace

ValidationReport run_validation(const ValidationInput& input)
{
    ValidationReport report;
    Recorder rec(report);
    const Tolerances& tol = input.tol;
    std::vector<Real> s_list = input.s;
    if (s_list.empty()) s_list.push_back(0);

    bool holomorphic = false;
    rec.attempt("holom", {}, tol.cross_ratio, [&] {
        const HolomorphicReport h = validate_holomorphic(input.holo, tol.cross_ratio);
        std::string message;
        if (!h.degenerate_edges.empty())
            message = std::to_string(h.degenerate_edges.size()) + " degenerate edge(s), first " +
                      std::to_string(h.degenerate_edges.front());
        rec.residuals("holom", "face", {}, h.faces, tol.cross_ratio, message);
        if (!h.degenerate_edges.empty()) report.checks.back().status = CheckStatus::fail;
        holomorphic = report.checks.back().status == CheckStatus::pass;
    });
    if (!holomorphic) {
        skip_from(rec, tol, s_list, "weierstrass", "holomorphicity check failed");
        return report;
    }

    std::optional<FlatFrontFamily> family;
    try {
        family = FlatFrontFamily{input.holo, build_connection(input.holo, input.t, input.branch), {}};
        rec.scalar("weierstrass", {}, 0, tol.flat);
    } catch (const std::exception& e) {
        rec.failed("weierstrass", {}, tol.flat, e);
        skip_from(rec, tol, s_list, "flatW", "connection could not be built");
        return report;
    }
    rec.residuals("flatW", "face", {}, check_flat(family->connection), tol.flat);
    rec.residuals("connection_inverse", "edge", {}, check_inverse_pairs(family->connection), tol.flat);
    if (report.checks[report.checks.size() - 2].status == CheckStatus::fail) {
        skip_from(rec, tol, s_list, "frame_closure", "connection is not flat");
        return report;
    }
    try {
        family->frame = integrate_frame(family->connection, input.root, input.frame_root, tol.flat);
    } catch (const std::exception& e) {
        rec.failed("frame_closure", {}, tol.flat, e);
        skip_from(rec, tol, s_list, "det_F", "frame integration failed");
        return report;
    }
    rec.scalar("frame_closure", {}, std::max(family->frame.closure_residual, family->frame.path_residual), tol.flat);
    rec.scalar("det_F", {}, det_drift(family->frame), tol.det);

    const GaussMaps maps = gauss_maps(family->frame);
    rec.scalar("gauss_dyadic", {}, maps.dyadic_residual, tol.det);
    rec.scalar("gauss_null", {}, maps.null_residual, tol.det);
    rec.attempt("crH_face_plus", {}, tol.cross_ratio, [&] {
        const DarbouxPair pair = pair_from_frame(family->frame, input.holo.labels, input.t);
        const PairCrossRatioReport cr = verify_pair_cross_ratios(pair, input.holo.labels, input.t);
        rec.residuals("crH_face_plus", "face", {}, cr.face_plus, tol.cross_ratio);
        rec.residuals("crH_face_minus", "face", {}, cr.face_minus, tol.cross_ratio);
        rec.residuals("crH_edge", "edge", {}, cr.edge, tol.cross_ratio);
    });
    rec.attempt("reflection_antisymmetry", {}, tol.geo,
                [&] { rec.scalar("reflection_antisymmetry", {}, reflection_antisymmetry(*family), tol.geo); });

    const FrontSample base = eval_front(*family, 0);
    for (const auto& s_value : s_list) {
        const double s = to_double(s_value);
        const FrontSample sample = eval_front(*family, s_value);

        const FrontInvariants inv = front_invariants(sample);
        rec.scalar("det_X", s, inv.det_x, tol.det);
        rec.scalar("det_N", s, inv.det_n, tol.det);
        rec.scalar("XN", s, inv.xn, tol.det);
        {
            CheckResult trace{"trace_X", "", s, to_double(inv.min_trace_x), 0, CheckStatus::pass, {},
                              "smallest tr X, must be positive"};
            if (!(inv.min_trace_x > 0)) trace.status = CheckStatus::fail;
            report.checks.push_back(trace);
        }
        rec.scalar("parallel_family", s, parallel_family_residual(base, sample), tol.geo);

        rec.attempt("rodrigues", s, tol.geo, [&] {
            const RodriguesReport r = rodrigues_check(*family, sample);
            const std::string note =
                r.singular_count ? std::to_string(r.singular_count) + " singular edge(s) excluded" : std::string();
            rec.residuals("rodrigues", "edge", s, r.residual, tol.geo, note);
            rec.residuals("rodrigues_symmetry", "edge", s, r.symmetry, tol.geo, note);
            rec.residuals("rodrigues_agreement", "edge", s, r.agreement, tol.geo, note);
        });

        const CircularityReport circ = circularity_check(sample.X);
        rec.residuals("circularity_planarity", "face", s, circ.planarity, tol.geo);
        rec.residuals("circularity_cross_ratio", "face", s, circ.imag_cross_ratio, tol.geo);

        rec.attempt("propagation_X", s, tol.geo, [&] {
            const PropagationReport p = propagation_check(*family, sample);
            rec.residuals("propagation_X", "edge", s, p.x, tol.geo);
            rec.residuals("propagation_N", "edge", s, p.n, tol.geo);
        });
        rec.attempt("reflection_collinearity", s, tol.geo, [&] {
            rec.residuals("reflection_collinearity", "edge", s, reflection_collinearity(*family, sample), tol.geo);
        });

        const CurvatureReport curvature = gauss_curvature(sample.X, sample.N, tol.singular);
        const std::string singular_note = curvature.singular_count
                                              ? std::to_string(curvature.singular_count) + " singular face(s)"
                                              : std::string();
        rec.residuals("mixed_area", "face", s, curvature.area_h, tol.area);
        rec.residuals("curvature", "face", s, curvature.k_deviation, tol.geo, singular_note);
        rec.residuals("diagonal_wedge", "face", s, curvature.diagonal_wedge, tol.geo);

        const LieLifts lifts = lie_lift(sample);
        const LiftReport lr = lift_check(lifts);
        rec.scalar("lifts", s, std::max({lr.xx, lr.nn, lr.xn}), tol.det);
        const CurvatureSphereReport spheres = curvature_spheres(lifts);
        rec.residuals("curvature_sphere", "edge", s, spheres.rank, tol.geo);
        rec.residuals("curvature_sphere_null", "edge", s, spheres.null, tol.geo);
        rec.residuals("curvature_sphere_span", "edge", s, spheres.span, tol.geo);
        rec.scalar("parallel_lifts", s, parallel_lift_residual(base, sample), tol.geo);
    }
    return report;
}

}  // namespace flatfront
