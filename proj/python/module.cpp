// Python bindings. Documents cross the boundary as JSON strings; the
// package wrapper turns them into dicts.

#include <flatfront/validation.hpp>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace flatfront;

namespace {

Json parse(const std::string& text) { return Json::parse(text); }

std::string dump(const Json& j) { return dump_json(j); }

Complex to_complex(std::complex<double> z) { return Complex(z.real(), z.imag()); }

std::vector<Real> reals(const std::vector<double>& values) { return {values.begin(), values.end()}; }

FlatFrontFamily family_from(const Json& j, std::optional<double> t)
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
    if (!t) throw Error(ErrorKind::InvalidArgument, "t is required for a holomorphic map");
    return make_front_family(holomorphic_from_json(j).holo, *t);
}

std::string generate(int rows, int cols, double alpha, double beta)
{
    return dump(holomorphic_to_json(make_linear(QuadGrid(rows, cols), alpha, beta)));
}

std::string moebius(const std::string& holo, std::complex<double> A, std::complex<double> B, std::complex<double> C,
                    std::complex<double> D)
{
    const auto h = holomorphic_from_json(parse(holo)).holo;
    return dump(holomorphic_to_json(make_moebius(h, to_complex(A), to_complex(B), to_complex(C), to_complex(D))));
}

std::string dual(const std::string& holo, double r_root)
{
    const auto h = holomorphic_from_json(parse(holo)).holo;
    require_holomorphic(h);
    const auto d = christoffel_dual(h);
    const auto r = factorize_r(h, r_root);
    return dump(holomorphic_to_json(h, &r, &d.gstar));
}

std::string weierstrass(const std::string& holo, double t, const std::vector<double>& s)
{
    const auto h = holomorphic_from_json(parse(holo)).holo;
    require_holomorphic(h);
    const auto family = make_front_family(h, t);
    std::vector<FrontSample> samples;
    for (const auto& value : s.empty() ? std::vector<double>{0.0} : s) samples.push_back(eval_front(family, value));
    return dump(front_to_json(family, samples));
}

std::string gauss(const std::string& doc, std::optional<double> t)
{
    const auto family = family_from(parse(doc), t);
    return dump(pair_to_json(pair_from_frame(family.frame, family.holo.labels, family.t())));
}

std::string darboux(const std::string& holo, double t, std::complex<double> seed)
{
    const auto h = holomorphic_from_json(parse(holo)).holo;
    require_holomorphic(h);
    const Lift start(to_complex(seed), Complex(1));
    return dump(pair_to_json(darboux_propagate(affine_lifts(h.g), h.labels, t, start).pair));
}

std::string invert(const std::string& pair) { return dump(weierstrass_to_json(invert_pair(pair_from_json(parse(pair))))); }

std::string validate(const std::string& doc, std::optional<double> t, const std::vector<double>& s)
{
    const Json j = parse(doc);
    ValidationInput in;
    const std::string type = document_type(j);
    if (type == "holomorphic_map") {
        if (!t) throw Error(ErrorKind::InvalidArgument, "t is required for a holomorphic map");
        in.holo = holomorphic_from_json(j).holo;
        in.t = *t;
    } else {
        const auto family = family_from(j, t);
        in.holo = family.holo;
        in.t = family.t();
        in.root = family.frame.root;
        in.frame_root = family.frame.F.at(family.grid().index(family.frame.root));
    }
    in.s = reals(s);
    return dump(run_validation(in).to_json());
}

std::string export_obj_text(const std::string& doc, double s, std::optional<double> t)
{
    std::ostringstream os;
    write_obj(os, eval_front(family_from(parse(doc), t), s).X);
    return os.str();
}

std::array<double, 3> project(double x0, double x1, double x2, double x3)
{
    const auto p = poincare_project(pauli_pack(x0, x1, x2, x3));
    return {to_double(p.y[0]), to_double(p.y[1]), to_double(p.y[2])};
}

std::complex<double> cross_ratio_of(std::complex<double> zi, std::complex<double> zj, std::complex<double> zk,
                                    std::complex<double> zl)
{
    const Complex cr = cross_ratio(to_complex(zi), to_complex(zj), to_complex(zk), to_complex(zl));
    return {to_double(cr.real()), to_double(cr.imag())};
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Discrete flat fronts in hyperbolic space (JSON string interface)";
    m.attr("digits") = FLATFRONT_DIGITS;

    static py::exception<Error> error(m, "FlatFrontError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        } catch (const Json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("generate", &generate, py::arg("rows"), py::arg("cols"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0);
    m.def("moebius", &moebius, py::arg("holo"), py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"));
    m.def("dual", &dual, py::arg("holo"), py::arg("r_root") = 1.0);
    m.def("weierstrass", &weierstrass, py::arg("holo"), py::arg("t"), py::arg("s") = std::vector<double>{});
    m.def("gauss", &gauss, py::arg("doc"), py::arg("t") = py::none());
    m.def("darboux", &darboux, py::arg("holo"), py::arg("t"), py::arg("seed"));
    m.def("invert", &invert, py::arg("pair"));
    m.def("validate", &validate, py::arg("doc"), py::arg("t") = py::none(), py::arg("s") = std::vector<double>{});
    m.def("export_obj", &export_obj_text, py::arg("doc"), py::arg("s") = 0.0, py::arg("t") = py::none());
    m.def("poincare_project", &project, py::arg("x0"), py::arg("x1"), py::arg("x2"), py::arg("x3"));
    m.def("cross_ratio", &cross_ratio_of);
}
