#pragma once

// JSON documents for every data type of the library and OBJ export of fronts
// in the Poincare ball. JSON numbers are IEEE doubles written in shortest
// round-trip form, so save/load/save is bit-exact; values held in extended
// precision are rounded to double on save.

#include <flatfront/invert.hpp>
#include <flatfront/poincare.hpp>

#include <json.hpp>

#include <array>
#include <iosfwd>
#include <string>

namespace flatfront {

using Json = nlohmann::json;

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json labelling_to_json(const EdgeLabelling& labels);
EdgeLabelling labelling_from_json(const Json& j);

/// Grid dimensions plus labelling.
Json grid_to_json(const QuadGrid& grid, const EdgeLabelling& labels);
QuadGrid grid_from_json(const Json& j);

struct HolomorphicDocument
{
    HolomorphicMap holo;
    std::optional<VertexField<Real>> r;
    std::optional<VertexField<Complex>> gstar;
};

Json holomorphic_to_json(const HolomorphicMap& h, const VertexField<Real>* r = nullptr,
                         const VertexField<Complex>* gstar = nullptr);
HolomorphicDocument holomorphic_from_json(const Json& j);

Json frame_to_json(const SL2Frame& frame);
SL2Frame frame_from_json(const Json& j);

Json connection_to_json(const EdgeConnection& W);
EdgeConnection connection_from_json(const Json& j);

struct FrontDocument
{
    HolomorphicMap holo;
    Real t = 0;
    SL2Frame frame;
    std::vector<FrontSample> samples;
};

Json front_to_json(const FlatFrontFamily& family, const std::vector<FrontSample>& samples);
FrontDocument front_from_json(const Json& j);

Json pair_to_json(const DarbouxPair& pair);
DarbouxPair pair_from_json(const Json& j);

Json weierstrass_to_json(const WeierstrassData& data);
WeierstrassData weierstrass_from_json(const Json& j);

/// Document type tag ("holomorphic_map", "frame", ...), empty if absent.
std::string document_type(const Json& j);

/// Throw Error(Io) on file or parse failures.
Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);
std::string dump_json(const Json& j);

/// OBJ mesh of the Poincare ball images: one "v x y z" line per vertex in
/// vertex index order, one "f i j k l" per face with 1-based,
/// counterclockwise corner indices. Coordinates use 17 significant digits.
void write_obj(std::ostream& os, const VertexField<HermitianMat>& X, const Real& tol = default_tolerances().geo);
void export_obj(const std::string& path, const VertexField<HermitianMat>& X,
                const Real& tol = default_tolerances().geo);

struct ObjMesh
{
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<std::size_t, 4>> faces;  // 1-based
};

ObjMesh read_obj(std::istream& is);
ObjMesh import_obj(const std::string& path);

}  // namespace flatfront
