// Command line driver: one subcommand per pipeline stage, JSON documents in
// and out. Exit status 0 on success, 1 when a check or a geometric condition
// fails, 2 on bad input.

#include <flatfront/validation.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace flatfront;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

struct InputError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string input;
    std::string output;
    std::string report;
    std::optional<double> t;
    std::vector<double> s;
    double alpha = 1;
    double beta = 1;
    int rows = 10;
    int cols = 10;
    std::vector<double> moebius;
    double seed_re = 0;
    double seed_im = 1;
    std::vector<int> root{0, 0};
    double r_root = 1;
    std::vector<std::string> tol;
};

Tolerances tolerances(const Options& opt)
{
    Tolerances tol = default_tolerances();
    const std::map<std::string, Real Tolerances::*> fields{
        {"degenerate", &Tolerances::degenerate}, {"closed", &Tolerances::closed},
        {"cross_ratio", &Tolerances::cross_ratio}, {"flat", &Tolerances::flat},
        {"det", &Tolerances::det}, {"hermitian", &Tolerances::hermitian},
        {"geo", &Tolerances::geo}, {"area", &Tolerances::area},
        {"singular", &Tolerances::singular}, {"projective", &Tolerances::projective},
    };
    for (const auto& item : opt.tol) {
        const auto eq = item.find('=');
        const auto field = fields.find(item.substr(0, eq));
        if (eq == std::string::npos || field == fields.end())
            throw InputError("--tol expects NAME=VALUE with NAME one of degenerate, closed, cross_ratio, flat, det, "
                             "hermitian, geo, area, singular, projective; got '" + item + "'");
        double value = 0;
        try {
            value = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("--tol " + item + ": not a number");
        }
        if (!(value > 0)) throw InputError("--tol " + item + ": must be positive");
        tol.*(field->second) = Real(value);
    }
    return tol;
}

Real require_t(const Options& opt)
{
    if (!opt.t) throw InputError("--t is required");
    return Real(*opt.t);
}

std::vector<Real> s_list(const Options& opt)
{
    std::vector<Real> out;
    for (double s : opt.s) out.emplace_back(s);
    return out;
}

Vertex root(const Options& opt) { return {opt.root[0], opt.root[1]}; }

Json load(const Options& opt, std::initializer_list<std::string_view> accepted)
{
    if (opt.input.empty()) throw InputError("--input is required");
    Json j = read_json(opt.input);
    const std::string type = document_type(j);
    for (const auto& a : accepted)
        if (type == a) return j;
    std::string names;
    for (const auto& a : accepted) names += (names.empty() ? "" : ", ") + std::string(a);
    throw InputError(opt.input + ": document type '" + type + "', expected " + names);
}

void emit(const Options& opt, const Json& j)
{
    if (opt.output.empty())
        std::cout << dump_json(j) << '\n';
    else
        write_json(opt.output, j);
}

// Rebuilds the front family described by a holomorphic map (with --t), a
// front document or Weierstrass data, in working precision.
FlatFrontFamily family_from(const Options& opt, const Json& j)
{
    const std::string type = document_type(j);
    if (type == "front") {
        const auto doc = front_from_json(j);
        return make_front_family(doc.holo, doc.t, doc.frame.root, doc.frame.F.at(doc.frame.grid.index(doc.frame.root)));
    }
    if (type == "weierstrass_data") {
        const auto data = weierstrass_from_json(j);
        return make_front_family(data.holo, data.t, data.root, data.frame_root);
    }
    return make_front_family(holomorphic_from_json(j).holo, require_t(opt), root(opt));
}

int cmd_generate(const Options& opt)
{
    if (opt.rows < 2 || opt.cols < 2) throw InputError("--rows and --cols must be at least 2");
    HolomorphicMap h = make_linear(QuadGrid(opt.rows, opt.cols), opt.alpha, opt.beta);
    if (!opt.moebius.empty()) {
        const auto& c = opt.moebius;
        h = make_moebius(h, Complex(c[0], c[1]), Complex(c[2], c[3]), Complex(c[4], c[5]), Complex(c[6], c[7]));
    }
    emit(opt, holomorphic_to_json(h));
    return exit_ok;
}

int cmd_dual(const Options& opt)
{
    const auto h = holomorphic_from_json(load(opt, {"holomorphic_map"})).holo;
    const Tolerances tol = tolerances(opt);
    require_holomorphic(h, tol.cross_ratio);
    const auto dual = christoffel_dual(h, root(opt));
    const auto r = factorize_r(h, opt.r_root, root(opt), tol.cross_ratio);
    emit(opt, holomorphic_to_json(h, &r, &dual.gstar));
    return exit_ok;
}

int cmd_weierstrass(const Options& opt)
{
    const auto h = holomorphic_from_json(load(opt, {"holomorphic_map"})).holo;
    require_holomorphic(h, tolerances(opt).cross_ratio);
    const auto family = make_front_family(h, require_t(opt), root(opt));
    std::vector<Real> s = s_list(opt);
    if (s.empty()) s.emplace_back(0);
    std::vector<FrontSample> samples;
    for (const auto& value : s) samples.push_back(eval_front(family, value));
    emit(opt, front_to_json(family, samples));
    return exit_ok;
}

int cmd_gauss(const Options& opt)
{
    const auto family = family_from(opt, load(opt, {"front", "weierstrass_data", "holomorphic_map"}));
    emit(opt, pair_to_json(pair_from_frame(family.frame, family.holo.labels, family.t())));
    return exit_ok;
}

int cmd_darboux(const Options& opt)
{
    // The input map is the first leg; its labelling is the pair labelling.
    const auto h = holomorphic_from_json(load(opt, {"holomorphic_map"})).holo;
    const Tolerances tol = tolerances(opt);
    require_holomorphic(h, tol.cross_ratio);
    const Lift seed(Complex(opt.seed_re, opt.seed_im), Complex(1));
    const auto out = darboux_propagate(affine_lifts(h.g), h.labels, require_t(opt), seed, root(opt), tol.geo);
    emit(opt, pair_to_json(out.pair));
    return exit_ok;
}

int cmd_invert(const Options& opt)
{
    const auto pair = pair_from_json(load(opt, {"darboux_pair"}));
    const Tolerances tol = tolerances(opt);
    const auto raw = connection_entries(normalize_lifts(pair, tol.projective), pair.b, pair.t, tol.cross_ratio);
    const auto gauge = solve_gauge(raw, pair.b, pair.t, Complex(1), root(opt), tol.cross_ratio);
    emit(opt, weierstrass_to_json(recover_potential(raw, gauge, pair.b, pair.t, Complex(0), root(opt), tol.cross_ratio)));
    return exit_ok;
}

int cmd_validate(const Options& opt)
{
    const Json j = load(opt, {"holomorphic_map", "front", "weierstrass_data"});
    ValidationInput in;
    const std::string type = document_type(j);
    if (type == "front") {
        const auto doc = front_from_json(j);
        in.holo = doc.holo;
        in.t = doc.t;
        in.root = doc.frame.root;
        in.frame_root = doc.frame.F.at(doc.frame.grid.index(doc.frame.root));
    } else if (type == "weierstrass_data") {
        const auto data = weierstrass_from_json(j);
        in.holo = data.holo;
        in.t = data.t;
        in.root = data.root;
        in.frame_root = data.frame_root;
    } else {
        in.holo = holomorphic_from_json(j).holo;
        in.t = require_t(opt);
        in.root = root(opt);
    }
    if (opt.t && type != "holomorphic_map") in.t = Real(*opt.t);
    in.s = s_list(opt);
    in.tol = tolerances(opt);

    const ValidationReport report = run_validation(in);
    for (const auto& c : report.checks) {
        std::cout << std::left << std::setw(26) << c.name << std::setw(8)
                  << (c.s ? "s=" + std::to_string(*c.s).substr(0, 5) : "") << std::setw(14) << c.max << std::setw(10)
                  << to_string(c.status) << c.message << '\n';
    }
    std::cout << (report.passed() ? "all checks passed" : std::to_string(report.failures().size()) + " check(s) failed")
              << '\n';
    if (!opt.report.empty()) write_json(opt.report, report.to_json());
    return report.passed() ? exit_ok : exit_failed;
}

int cmd_export(const Options& opt)
{
    const Json j = load(opt, {"front", "weierstrass_data", "holomorphic_map"});
    const Real s = opt.s.empty() ? Real(0) : Real(opt.s.front());
    if (opt.s.size() > 1) throw InputError("export takes a single --s");
    const auto X = eval_front(family_from(opt, j), s).X;
    const Real geo = tolerances(opt).geo;
    if (opt.output.empty())
        write_obj(std::cout, X, geo);
    else
        export_obj(opt.output, X, geo);
    return exit_ok;
}

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidParameter:
        return exit_input;
    default:
        return exit_failed;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete flat fronts in hyperbolic space: construction, Gauss maps, inversion and export"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--input,-i", opt.input, "Input JSON document");
        sub->add_option("--output,-o", opt.output, "Output file (stdout if omitted)");
        sub->add_option("--tol", opt.tol, "Tolerance override NAME=VALUE (repeatable)");
        sub->add_option("--root", opt.root, "Root vertex M N")->expected(2);
    };
    auto with_t = [&](CLI::App* sub) { sub->add_option("--t", opt.t, "Spectral parameter"); };
    auto with_s = [&](CLI::App* sub) { sub->add_option("--s", opt.s, "Parallel family parameter (repeatable)"); };

    std::map<std::string, std::function<int(const Options&)>> handlers;
    auto add = [&](const std::string& name, const std::string& help, std::function<int(const Options&)> handler) {
        handlers[name] = std::move(handler);
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        return sub;
    };

    auto* generate = add("generate", "Write a discrete holomorphic map", cmd_generate);
    generate->add_option("--rows", opt.rows, "Vertices per row")->capture_default_str();
    generate->add_option("--cols", opt.cols, "Vertices per column")->capture_default_str();
    generate->add_option("--alpha", opt.alpha, "Horizontal step")->capture_default_str();
    generate->add_option("--beta", opt.beta, "Vertical step")->capture_default_str();
    generate->add_option("--moebius", opt.moebius, "Apply (A g + B)/(C g + D); A B C D as re im pairs")->expected(8);

    auto* dual = add("dual", "Add the Christoffel dual and r factorization to a holomorphic map", cmd_dual);
    dual->add_option("--r-root", opt.r_root, "Value of r at the root")->capture_default_str();

    auto* weierstrass = add("weierstrass", "Build the front family and evaluate it at each --s", cmd_weierstrass);
    with_t(weierstrass);
    with_s(weierstrass);

    auto* gauss = add("gauss", "Extract the hyperbolic Gauss maps as a Darboux pair", cmd_gauss);
    with_t(gauss);

    auto* darboux = add("darboux", "Propagate a Darboux pair from a seed", cmd_darboux);
    with_t(darboux);
    darboux->add_option("--seed-re", opt.seed_re, "Seed point at the root, real part")->capture_default_str();
    darboux->add_option("--seed-im", opt.seed_im, "Seed point at the root, imaginary part")->capture_default_str();

    add("invert", "Recover Weierstrass data from a Darboux pair", cmd_invert);

    auto* validate = add("validate", "Run every check and report", cmd_validate);
    with_t(validate);
    with_s(validate);
    validate->add_option("--report", opt.report, "Write the JSON report here");

    auto* exporter = add("export", "Write the front at --s as an OBJ mesh in the Poincare ball", cmd_export);
    with_t(exporter);
    with_s(exporter);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (opt.root.size() != 2 || opt.root[0] < 0 || opt.root[1] < 0)
            throw InputError("--root expects two nonnegative indices");
        return handlers.at(name)(opt);
    } catch (const InputError& e) {
        std::cerr << "flatfront " << name << ": " << e.what() << '\n';
        return exit_input;
    } catch (const Error& e) {
        std::cerr << "flatfront " << name << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const Json::exception& e) {
        std::cerr << "flatfront " << name << ": " << e.what() << '\n';
        return exit_input;
    }
}
