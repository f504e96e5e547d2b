#include <flatfront/io.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace flatfront {

namespace {

Json real_to_json(const Real& x) { return to_double(x); }
Real real_from_json(const Json& j) { return Real(j.get<double>()); }

Json reals_to_json(const std::vector<Real>& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(real_to_json(x));
    return out;
}

std::vector<Real> reals_from_json(const Json& j)
{
    std::vector<Real> out;
    for (const auto& x : j) out.push_back(real_from_json(x));
    return out;
}

Json mat_to_json(const Mat2& m)
{
    return Json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1)), complex_to_json(m(1, 0)),
                        complex_to_json(m(1, 1))});
}

Mat2 mat_from_json(const Json& j)
{
    if (j.size() != 4) throw Error(ErrorKind::Io, "a 2x2 matrix needs four entries");
    Mat2 m;
    m(0, 0) = complex_from_json(j[0]);
    m(0, 1) = complex_from_json(j[1]);
    m(1, 0) = complex_from_json(j[2]);
    m(1, 1) = complex_from_json(j[3]);
    return m;
}

Json lift_to_json(const Lift& h) { return Json::array({complex_to_json(h(0)), complex_to_json(h(1))}); }

Lift lift_from_json(const Json& j)
{
    if (j.size() != 2) throw Error(ErrorKind::Io, "a lift needs two entries");
    return Lift(complex_from_json(j[0]), complex_from_json(j[1]));
}

Json vertex_to_json(Vertex v) { return Json::array({v.m, v.n}); }
Vertex vertex_from_json(const Json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

Json hermitian_to_json(const HermitianMat& X)
{
    return Json::array({real_to_json(X[0]), real_to_json(X[1]), real_to_json(X[2]), real_to_json(X[3])});
}

HermitianMat hermitian_from_json(const Json& j)
{
    if (j.size() != 4) throw Error(ErrorKind::Io, "a Minkowski vector needs four coordinates");
    return pauli_pack(real_from_json(j[0]), real_from_json(j[1]), real_from_json(j[2]), real_from_json(j[3]));
}

template <class V, class ToJson>
Json field_to_json(const VertexField<V>& f, ToJson&& to_json)
{
    Json out = Json::array();
    for (const auto& v : f.values()) out.push_back(to_json(v));
    return out;
}

template <class V, class FromJson>
VertexField<V> field_from_json(const QuadGrid& grid, const Json& j, FromJson&& from_json)
{
    if (!j.is_array() || j.size() != grid.vertex_count())
        throw Error(ErrorKind::Io, "vertex array does not match the grid size");
    VertexField<V> out(grid);
    for (std::size_t k = 0; k < grid.vertex_count(); ++k) out.at(k) = from_json(j[k]);
    return out;
}

void expect_type(const Json& j, const char* type)
{
    const std::string found = document_type(j);
    if (!found.empty() && found != type)
        throw Error(ErrorKind::Io, std::string("expected a ") + type + " document, found " + found);
}

// Turns JSON access errors into Io errors.
template <class F>
auto guarded(F&& parse) -> decltype(parse())
{
    try {
        return parse();
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Io, std::string("malformed document: ") + e.what());
    }
}

}  // namespace

Json complex_to_json(const Complex& z) { return Json::array({to_double(real(z)), to_double(imag(z))}); }

Complex complex_from_json(const Json& j)
{
    return guarded([&] {
        if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Io, "a complex number is a [re, im] pair");
        return Complex(real_from_json(j[0]), real_from_json(j[1]));
    });
}

Json labelling_to_json(const EdgeLabelling& labels)
{
    return Json{{"alpha", reals_to_json(labels.alpha)}, {"beta", reals_to_json(labels.beta)}};
}

EdgeLabelling labelling_from_json(const Json& j)
{
    return guarded([&] { return EdgeLabelling{reals_from_json(j.at("alpha")), reals_from_json(j.at("beta"))}; });
}

Json grid_to_json(const QuadGrid& grid, const EdgeLabelling& labels)
{
    return Json{{"rows", grid.rows()}, {"cols", grid.cols()}, {"labels", labelling_to_json(labels)}};
}

QuadGrid grid_from_json(const Json& j)
{
    return guarded([&] {
        try {
            return QuadGrid(j.at("rows").get<int>(), j.at("cols").get<int>());
        } catch (const Error& e) {
            throw Error(ErrorKind::Io, e.what());
        }
    });
}

Json holomorphic_to_json(const HolomorphicMap& h, const VertexField<Real>* r, const VertexField<Complex>* gstar)
{
    Json out = grid_to_json(h.grid, h.labels);
    out["type"] = "holomorphic_map";
    out["g"] = field_to_json(h.g, complex_to_json);
    if (r) out["r"] = field_to_json(*r, real_to_json);
    if (gstar) out["gstar"] = field_to_json(*gstar, complex_to_json);
    return out;
}

HolomorphicDocument holomorphic_from_json(const Json& j)
{
    return guarded([&] {
        HolomorphicDocument doc;
        const QuadGrid grid = grid_from_json(j);
        doc.holo = HolomorphicMap{grid, labelling_from_json(j.at("labels")),
                                  field_from_json<Complex>(grid, j.at("g"), complex_from_json)};
        try {
            doc.holo.labels.validate(grid);
        } catch (const Error& e) {
            throw Error(ErrorKind::Io, e.what());
        }
        if (j.contains("r")) doc.r = field_from_json<Real>(grid, j["r"], real_from_json);
        if (j.contains("gstar")) doc.gstar = field_from_json<Complex>(grid, j["gstar"], complex_from_json);
        return doc;
    });
}

Json frame_to_json(const SL2Frame& frame)
{
    return Json{{"type", "frame"},
                {"rows", frame.grid.rows()},
                {"cols", frame.grid.cols()},
                {"root", vertex_to_json(frame.root)},
                {"F", field_to_json(frame.F, mat_to_json)}};
}

SL2Frame frame_from_json(const Json& j)
{
    return guarded([&] {
        expect_type(j, "frame");
        const QuadGrid grid = grid_from_json(j);
        SL2Frame out{grid, field_from_json<Mat2>(grid, j.at("F"), mat_from_json), vertex_from_json(j.at("root"))};
        if (!grid.contains(out.root)) throw Error(ErrorKind::Io, "frame root outside grid");
        return out;
    });
}

Json connection_to_json(const EdgeConnection& W)
{
    Json forward = Json::array();
    Json backward = Json::array();
    for (const auto& e : W.grid.edges()) {
        forward.push_back(mat_to_json(W.W[e]));
        backward.push_back(mat_to_json(W.W[e.reversed()]));
    }
    Json out = grid_to_json(W.grid, W.labels);
    out["type"] = "connection";
    out["t"] = real_to_json(W.t);
    out["branch"] = W.branch == Branch::real ? "real" : "complex";
    out["W"] = Json{{"forward", forward}, {"backward", backward}};
    return out;
}

EdgeConnection connection_from_json(const Json& j)
{
    return guarded([&] {
        expect_type(j, "connection");
        const QuadGrid grid = grid_from_json(j);
        EdgeConnection out{grid, labelling_from_json(j.at("labels")), real_from_json(j.at("t")),
                           j.at("branch").get<std::string>() == "complex" ? Branch::complex : Branch::real,
                           EdgeField<Mat2>(grid)};
        const auto& forward = j.at("W").at("forward");
        const auto& backward = j.at("W").at("backward");
        if (forward.size() != grid.edge_count() || backward.size() != grid.edge_count())
            throw Error(ErrorKind::Io, "edge array does not match the grid size");
        for (std::size_t k = 0; k < grid.edge_count(); ++k) {
            const Edge e = grid.edge(k);
            out.W[e] = mat_from_json(forward[k]);
            out.W[e.reversed()] = mat_from_json(backward[k]);
        }
        return out;
    });
}

Json front_to_json(const FlatFrontFamily& family, const std::vector<FrontSample>& samples)
{
    Json list = Json::array();
    for (const auto& sample : samples)
        list.push_back(Json{{"s", real_to_json(sample.s)},
                            {"X", field_to_json(sample.X, hermitian_to_json)},
                            {"N", field_to_json(sample.N, hermitian_to_json)}});
    return Json{{"type", "front"},
                {"map", holomorphic_to_json(family.holo)},
                {"t", real_to_json(family.t())},
                {"frame", frame_to_json(family.frame)},
                {"samples", list}};
}

FrontDocument front_from_json(const Json& j)
{
    return guarded([&] {
        expect_type(j, "front");
        FrontDocument out;
        out.holo = holomorphic_from_json(j.at("map")).holo;
        out.t = real_from_json(j.at("t"));
        out.frame = frame_from_json(j.at("frame"));
        if (!(out.frame.grid == out.holo.grid)) throw Error(ErrorKind::Io, "frame and map grids differ");
        for (const auto& s : j.at("samples")) {
            out.samples.push_back(FrontSample{real_from_json(s.at("s")),
                                              field_from_json<HermitianMat>(out.holo.grid, s.at("X"), hermitian_from_json),
                                              field_from_json<HermitianMat>(out.holo.grid, s.at("N"), hermitian_from_json)});
        }
        return out;
    });
}

Json pair_to_json(const DarbouxPair& pair)
{
    Json out{{"type", "darboux_pair"},
             {"rows", pair.grid.rows()},
             {"cols", pair.grid.cols()},
             {"t", real_to_json(pair.t)},
             {"b", labelling_to_json(pair.b)},
             {"hplus", field_to_json(pair.hplus, lift_to_json)},
             {"hminus", field_to_json(pair.hminus, lift_to_json)}};
    return out;
}

DarbouxPair pair_from_json(const Json& j)
{
    return guarded([&] {
        expect_type(j, "darboux_pair");
        const QuadGrid grid = grid_from_json(j);
        DarbouxPair out{grid, labelling_from_json(j.at("b")), real_from_json(j.at("t")),
                        field_from_json<Lift>(grid, j.at("hplus"), lift_from_json),
                        field_from_json<Lift>(grid, j.at("hminus"), lift_from_json)};
        try {
            out.b.validate(grid);
        } catch (const Error& e) {
            throw Error(ErrorKind::Io, e.what());
        }
        return out;
    });
}

Json weierstrass_to_json(const WeierstrassData& data)
{
    Json out = holomorphic_to_json(data.holo);
    out["type"] = "weierstrass_data";
    out["t"] = real_to_json(data.t);
    out["w"] = field_to_json(data.w, complex_to_json);
    out["frame_root"] = mat_to_json(data.frame_root);
    out["root"] = vertex_to_json(data.root);
    return out;
}

WeierstrassData weierstrass_from_json(const Json& j)
{
    return guarded([&] {
        expect_type(j, "weierstrass_data");
        WeierstrassData out;
        out.holo = holomorphic_from_json(j).holo;
        out.t = real_from_json(j.at("t"));
        out.w = field_from_json<Complex>(out.holo.grid, j.at("w"), complex_from_json);
        out.frame_root = mat_from_json(j.at("frame_root"));
        out.root = vertex_from_json(j.at("root"));
        if (!out.holo.grid.contains(out.root)) throw Error(ErrorKind::Io, "root outside grid");
        return out;
    });
}

std::string document_type(const Json& j)
{
    if (j.is_object() && j.contains("type") && j["type"].is_string()) return j["type"].get<std::string>();
    return {};
}

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Io, "cannot parse " + path + ": " + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2); }

void write_json(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
    out << dump_json(j) << '\n';
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

void write_obj(std::ostream& os, const VertexField<HermitianMat>& X, const Real& tol)
{
    const auto& grid = X.grid();
    char buf[128];
    for (std::size_t k = 0; k < grid.vertex_count(); ++k) {
        PoincarePoint p;
        try {
            p = poincare_project(X.at(k), tol);
        } catch (const Error& e) {
            throw Error(e.kind(), e.message(), k, e.residual());
        }
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", to_double(p.y[0]), to_double(p.y[1]),
                      to_double(p.y[2]));
        os << buf;
    }
    for (const auto& f : grid.faces()) {
        os << 'f';
        for (const auto& v : grid.corners(f)) os << ' ' << grid.index(v) + 1;
        os << '\n';
    }
}

void export_obj(const std::string& path, const VertexField<HermitianMat>& X, const Real& tol)
{
    std::ostringstream buffer;
    write_obj(buffer, X, tol);
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
    out << buffer.str();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

ObjMesh read_obj(std::istream& is)
{
    ObjMesh mesh;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream fields(line);
        std::string tag;
        fields >> tag;
        if (tag == "v") {
            std::array<std::string, 3> text;
            fields >> text[0] >> text[1] >> text[2];
            if (!fields) throw Error(ErrorKind::Io, "malformed vertex line: " + line);
            std::array<double, 3> v{};
            for (std::size_t k = 0; k < 3; ++k) v[k] = std::strtod(text[k].c_str(), nullptr);
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::array<std::size_t, 4> f{};
            fields >> f[0] >> f[1] >> f[2] >> f[3];
            if (!fields) throw Error(ErrorKind::Io, "malformed face line: " + line);
            mesh.faces.push_back(f);
        }
    }
    return mesh;
}

ObjMesh import_obj(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    return read_obj(in);
}

}  // namespace flatfront
