#include "doctest.h"

#include "polybundle/scene.hpp"
#include "support/random_instances.hpp"

using namespace polybundle;

namespace {

Errc parse_error_code(const std::string& text) {
  try {
    parse_scene_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return Errc::ParseError;
}

const char* const kSimplex = R"({
  "surface": {
    "vertices": ["0", "1", "2", "3"],
    "faces": [["0", "1", "2"], ["0", "2", "3"], ["0", "3", "1"], ["1", "3", "2"]],
    "positions": {"0": [1, 1, 1], "1": [1, -1, -1], "2": [-1, 1, -1], "3": ["-1", "-1", "-3/3"]}
  }
})";

} // namespace

TEST_CASE("a bare surface parses and loads") {
  SceneFile file = parse_scene_text(kSimplex);
  CHECK(file.surface.vertices.size() == 4);
  CHECK(file.surface.positions.at("3")[2] == Turns(-1));
  CHECK_FALSE(file.connection);
  Scene scene = load_scene(file);
  CHECK(scene.surface.faces().size() == 4);
  CHECK_FALSE(scene.connection);
}

TEST_CASE("malformed scenes are parse errors") {
  CHECK(parse_error_code("{") == Errc::ParseError);
  CHECK(parse_error_code(R"({"surface": {"vertices": [], "faces": []}, "extra": 1})") == Errc::ParseError);
  CHECK(parse_error_code(R"({"surface": {"vertices": [1], "faces": []}})") == Errc::ParseError);
  CHECK(parse_error_code(R"({"surface": {"vertices": [], "faces": [], "color": 1}})") ==
        Errc::ParseError);
  CHECK(parse_error_code(R"({"surface": {"vertices": ["a"], "faces": [],
                             "positions": {"a": [0, "1/0", 0]}}})") == Errc::ParseError);
  CHECK(parse_error_code(R"({"conventions": "other", "surface": {"vertices": [], "faces": []}})") ==
        Errc::ParseError);
  CHECK(parse_error_code(R"({"surface": {"vertices": [], "faces": []},
                             "connection": {"fiber_mode": "link",
                                            "transports": [{"edge": ["a", "b"]}]}})") ==
        Errc::ParseError);
}

TEST_CASE("validation problems surface as a report") {
  SceneFile file = parse_scene_text(kSimplex);
  file.surface.faces.pop_back();
  ValidationReport r = validate_scene(file);
  CHECK(r.has(Errc::BoundaryEdge));
  CHECK_THROWS_AS(load_scene(file), ValidationError);

  file.surface.faces.push_back({"1", "3"});
  CHECK(validate_scene(file).has(Errc::BadArity));
}

TEST_CASE("octahedron fixture loads with its field") {
  SceneFile file = fixture_scene("octahedron");
  CHECK(file.connection->transports.size() == 12);
  Scene scene = load_scene(file);
  REQUIRE(scene.field);
  CHECK(scene.field->step("w", "r") == 1);
  IndexReport r = totals(*scene.field, *scene.flatness);
  CHECK(r.total_index == 2);
}

TEST_CASE("every fixture survives a text round trip") {
  for (const std::string& name : fixture_names()) {
    SceneFile file = canonicalize(fixture_scene(name));
    SceneFile again = parse_scene_text(serialize_scene(file));
    CHECK(canonicalize(again) == file);
    Scene scene = load_scene(again);
    CHECK(scene.connection);
    CHECK(scene.field);
  }
  CHECK_THROWS_AS(fixture_scene("cube"), Error);
}

TEST_CASE("round trip of random scenes") {
  testing::Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    DiscreteConnection conn = testing::random_connection(icosahedron(), FiberMode::link(), rng);
    FlatnessStructure flat = testing::random_flatness(conn, rng);
    VectorField field = testing::random_field(conn, rng);
    SceneFile file = canonicalize(to_scene_file(conn.surface(), &conn, &flat, &field));
    SceneFile again = canonicalize(parse_scene_text(serialize_scene(file)));
    CHECK(again == file);
    Scene scene = load_scene(again);
    CHECK(scene.flatness->lifts() == flat.lifts());
    CHECK(scene.field->steps() == field.steps());
    for (const auto& [d, t] : conn.transports()) CHECK(scene.connection->transport(d.from, d.to) == t);
  }
}

TEST_CASE("canonical face order and sorted keys") {
  SceneFile file = parse_scene_text(kSimplex);
  file.surface.faces[0] = {"2", "0", "1"};
  CHECK(canonicalize(file).surface.faces[0] == std::vector<VertexId>{"0", "1", "2"});
  std::string text = serialize_scene(file);
  CHECK(text.find("\"conventions\"") < text.find("\"surface\""));
}

TEST_CASE("refined mode without a size uses the lcm of degrees") {
  SceneFile file = fixture_scene("octahedron");
  file.connection->mode = FiberMode::refined(0);
  Scene scene = load_scene(file);
  CHECK(scene.connection->mode() == FiberMode::refined(4));
  CHECK(scene.connection->fiber("w") == Polygon({"b", "r", "g", "o"}));

  file = fixture_scene("torus");
  file.connection->mode = FiberMode::refined(0);
  CHECK(validate_scene(file).has(Errc::EndpointIncongruent));
}

TEST_CASE("OFF export") {
  std::string off = export_off(octahedron());
  CHECK(off.rfind("OFF\n6 8 12\n", 0) == 0);
  CHECK(off.find("\n3 ") != std::string::npos);
  Scene simplex = load_scene(parse_scene_text(kSimplex));
  std::string text = export_off(simplex.surface);
  CHECK(text.find("3 0 1 2\n") != std::string::npos);
  CHECK(text.find("3 1 3 2\n") != std::string::npos);
  try {
    export_off(seven_vertex_torus());
    FAIL("expected MissingPositions");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingPositions);
  }
}
