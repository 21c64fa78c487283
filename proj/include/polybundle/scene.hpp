#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "polybundle/bundle.hpp"
#include "polybundle/complex.hpp"
#include "polybundle/field.hpp"

namespace polybundle {

// Printed by every report; bump whenever a sign rule in docs/conventions.md
// changes.
inline constexpr std::string_view kConventionsVersion = "polybundle-conventions/1";

struct SurfaceSpec {
  std::vector<VertexId> vertices;
  std::vector<std::vector<VertexId>> faces;
  std::map<VertexId, Point3> positions;

  bool operator==(const SurfaceSpec&) const = default;
};

struct ConnectionSpec {
  // size 0 with kind Refined means "lcm of degrees".
  FiberMode mode;
  std::vector<TransportSpec> transports;

  bool operator==(const ConnectionSpec&) const = default;
};

// An edge value is a signed step count or a label path in the head fiber.
struct FieldEdgeSpec {
  DirectedEdge edge;
  std::variant<std::int64_t, std::vector<Label>> value;

  bool operator==(const FieldEdgeSpec&) const = default;
};

struct FieldSpec {
  std::map<VertexId, Label> at;
  std::vector<FieldEdgeSpec> edges;

  bool operator==(const FieldSpec&) const = default;
};

// The raw content of a scene file, before validation.
struct SceneFile {
  SurfaceSpec surface;
  std::optional<ConnectionSpec> connection;
  std::optional<std::map<std::string, std::int64_t>> flatness;
  std::optional<FieldSpec> field;

  bool operator==(const SceneFile&) const = default;
};

// Throw Error(ParseError) on malformed JSON, wrong types, or unknown keys.
SceneFile parse_scene_text(std::string_view text);
SceneFile parse_scene(const std::filesystem::path& path);

nlohmann::json to_json(const SceneFile& scene);
std::string serialize_scene(const SceneFile& scene);

// Faces as least rotations; transports and edge values sorted by edge.
SceneFile canonicalize(SceneFile scene);

// Validated structures. Flatness is canonical when the file has none.
struct Scene {
  OrientedSurface surface;
  std::optional<DiscreteConnection> connection;
  std::optional<FlatnessStructure> flatness;
  std::optional<VectorField> field;
};

// Throws ValidationError (also for faces with the wrong arity).
Scene load_scene(const SceneFile& file);
ValidationReport validate_scene(const SceneFile& file);

// Scene content for already-built structures.
SceneFile to_scene_file(const OrientedSurface& surface, const DiscreteConnection* conn = nullptr,
                        const FlatnessStructure* flatness = nullptr,
                        const VectorField* field = nullptr);

// "octahedron", "icosahedron", "tetrahedron", "torus". Throws
// Error(ParseError) for any other name.
SceneFile fixture_scene(std::string_view name);
std::vector<std::string> fixture_names();

// OFF text: header "OFF", then "|V| |F| |E|", vertex lines, "3 i j k" faces
// in orientation order. Throws Error(MissingPositions).
std::string export_off(const OrientedSurface& surface);

} // namespace polybundle
