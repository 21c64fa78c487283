#include "doctest.h"

#include "polybundle/bundle.hpp"
#include "support/random_instances.hpp"

using namespace polybundle;

namespace {

std::vector<Label> chars(const std::string& s) {
  std::vector<Label> out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

// Each row: edge, source fiber order, image of that order.
const char* const kTables[][3] = {
    {"wr", "brgo", "bygw"}, {"wg", "brgo", "wryo"}, {"wb", "brgo", "yrwo"}, {"wo", "brgo", "bwgy"},
    {"yb", "bogr", "woyr"}, {"yr", "bogr", "bygw"}, {"yg", "bogr", "yowr"}, {"yo", "bogr", "bwgy"},
    {"br", "woyr", "wbyg"}, {"rg", "wbyg", "wryo"}, {"go", "wryo", "wgyb"}, {"ob", "wgyb", "woyr"},
};

Errc first_rule(const ValidationReport& r) {
  REQUIRE_FALSE(r.ok());
  return r.violations.front().rule;
}

} // namespace

TEST_CASE("octahedron transports reproduce the tables") {
  DiscreteConnection conn = octahedron_connection();
  for (const auto& row : kTables) {
    std::string e = row[0];
    auto src = chars(row[1]);
    auto img = chars(row[2]);
    const PolyIso& t = conn.transport(e.substr(0, 1), e.substr(1, 1));
    for (std::size_t i = 0; i < src.size(); ++i) CHECK(t(src[i]) == img[i]);
    const PolyIso& back = conn.transport(e.substr(1, 1), e.substr(0, 1));
    for (std::size_t i = 0; i < src.size(); ++i) CHECK(back(img[i]) == src[i]);
  }
}

TEST_CASE("octahedron connection is the link-derived one") {
  DiscreteConnection a = octahedron_connection();
  DiscreteConnection b = link_derived_connection(octahedron(), FiberMode::link());
  for (const auto& [d, t] : a.transports()) CHECK(t == b.transport(d.from, d.to));
}

TEST_CASE("octahedron curvature") {
  DiscreteConnection conn = octahedron_connection();
  for (const OrientedFace& f : conn.surface().faces()) {
    CHECK(holonomy_steps(conn, f) == 1);
    CHECK(curvature_turns(conn, f) == Turns(1, 4));
    for (const VertexId& v : f.vertices()) CHECK(holonomy_steps(conn, f, v) == 1);
  }
  CHECK(net_holonomy_steps(conn) == 8);
  CHECK(net_holonomy(conn) == Turns(0));
  FlatnessStructure flat = canonical_flatness(conn);
  CHECK(total_flatness(conn, flat) == Turns(2));
  CHECK(total_flatness_winding(conn, flat) == 2);
}

TEST_CASE("holonomy around w -> r -> g is a quarter turn of w's fiber") {
  DiscreteConnection conn = octahedron_connection();
  const OrientedFace& f = conn.surface().face("g,w,r");
  PolyIso hol = holonomy(conn, f, "w");
  CHECK(hol("b") == "r");
  CHECK(iso_to_rotation(hol) == 1);
  auto edges = boundary(f, "w");
  CHECK(edges[0] == DirectedEdge{"w", "r"});
  CHECK(edges[2] == DirectedEdge{"g", "w"});
  CHECK_THROWS_AS(boundary(f, "y"), Error);
}

TEST_CASE("flatness lifts") {
  DiscreteConnection conn = octahedron_connection();
  std::map<std::string, std::int64_t> lifts;
  for (const OrientedFace& f : conn.surface().faces()) lifts[f.key()] = 1;
  lifts["g,w,r"] = 5;
  FlatnessStructure flat = attach_flatness(conn, lifts);
  CHECK(total_flatness_winding(conn, flat) == 3);

  lifts["g,w,r"] = 2;
  try {
    attach_flatness(conn, lifts);
    FAIL("expected LiftIncongruent");
  } catch (const ValidationError& e) {
    CHECK(e.report().has(Errc::LiftIncongruent));
  }
  lifts.erase("g,w,r");
  lifts["w,r,g"] = 1;
  try {
    attach_flatness(conn, lifts);
    FAIL("expected key errors");
  } catch (const ValidationError& e) {
    CHECK(e.report().has(Errc::UnknownFace));
    CHECK(e.report().has(Errc::MissingFace));
  }
}

TEST_CASE("connection validation") {
  OrientedSurface s = octahedron();
  std::vector<TransportSpec> specs = octahedron_transport_specs();
  CHECK(validate_connection(s, FiberMode::link(), specs).ok());

  auto missing = specs;
  missing.pop_back();
  CHECK(first_rule(validate_connection(s, FiberMode::link(), missing)) == Errc::MissingEdge);

  auto reversing = specs;
  reversing[0].mapping = Anchor{"b", "b", Orientation::Reversing};
  CHECK(validate_connection(s, FiberMode::link(), reversing).has(Errc::OrientationReversing));

  auto not_inverse = specs;
  not_inverse.push_back(TransportSpec{DirectedEdge{"r", "w"}, Anchor{"b", "r"}});
  CHECK(validate_connection(s, FiberMode::link(), not_inverse).has(Errc::NotInverse));

  auto twice = specs;
  twice.push_back(specs[0]);
  CHECK(validate_connection(s, FiberMode::link(), twice).has(Errc::DuplicateEntry));

  auto stray = specs;
  stray.push_back(TransportSpec{DirectedEdge{"w", "y"}, Anchor{"b", "b"}});
  CHECK(validate_connection(s, FiberMode::link(), stray).has(Errc::UnknownEdge));

  CHECK(validate_connection(s, FiberMode::refined(6), specs).has(Errc::BadFiberSize));
}

TEST_CASE("link mode needs equal degrees") {
  std::vector<VertexId> v{"a", "b", "c", "d", "e"};
  // Double pyramid over a triangle: apexes have degree 3, equator degree 4.
  std::vector<OrientedFace> faces{{"d", "a", "b"}, {"d", "b", "c"}, {"d", "c", "a"},
                                  {"e", "b", "a"}, {"e", "c", "b"}, {"e", "a", "c"}};
  OrientedSurface s = build_surface(v, faces);
  CHECK(lcm_of_degrees(s) == 12);
  CHECK(validate_connection(s, FiberMode::link(), {}).has(Errc::SizeMismatch));
  DiscreteConnection conn = link_derived_connection(s, FiberMode::refined(12));
  CHECK(conn.uniform_fiber_size() == 12);
  CHECK(total_flatness_winding(conn, canonical_flatness(conn)) == 2);
  CHECK_THROWS_AS(link_derived_connection(s, FiberMode::refined(6)), Error);
}

TEST_CASE("refined fibers place link labels evenly") {
  DiscreteConnection conn = link_derived_connection(boundary_delta3(), FiberMode::refined(6));
  const Polygon& f = conn.fiber("0");
  CHECK(f.size() == 6);
  CHECK(f.at(0) == "1");
  CHECK(f.at(1) == "1#1");
  CHECK(f.at(2) == conn.surface().link("0").at(1));
  for (const OrientedFace& face : conn.surface().faces()) CHECK(holonomy_steps(conn, face) == 3);
}

TEST_CASE("link-derived curvature sums to the Euler characteristic") {
  struct Case {
    OrientedSurface surface;
    FiberMode mode;
    std::int64_t per_face;
  };
  for (const Case& c : {Case{icosahedron(), FiberMode::refined(10), 1},
                        Case{seven_vertex_torus(), FiberMode::refined(6), 0},
                        Case{seven_vertex_torus(), FiberMode::link(), 0}}) {
    DiscreteConnection conn = link_derived_connection(c.surface, c.mode);
    for (const OrientedFace& f : c.surface.faces()) CHECK(holonomy_steps(conn, f) == c.per_face);
    CHECK(total_flatness_winding(conn, canonical_flatness(conn)) == euler_characteristic(c.surface));
  }
}

TEST_CASE("coordinate connection is flat") {
  DiscreteConnection conn = coordinate_connection(seven_vertex_torus(), FiberMode::refined(6));
  for (const OrientedFace& f : conn.surface().faces()) CHECK(holonomy_steps(conn, f) == 0);
  CHECK(total_flatness_winding(conn, canonical_flatness(conn)) == 0);
}

TEST_CASE("basepoint overrides") {
  DiscreteConnection conn = octahedron_connection();
  const OrientedFace& f = conn.surface().face("g,w,r");
  CHECK(basepoint(f) == "g");
  CHECK(basepoint(f, {{"g,w,r", "w"}}) == "w");
  CHECK_THROWS_AS(basepoint(f, {{"g,w,r", "y"}}), Error);
  auto rows = face_reports(conn, canonical_flatness(conn), {{"g,w,r", "r"}});
  for (const FaceReport& r : rows) {
    if (r.face == "g,w,r") CHECK(r.basepoint == "r");
    CHECK(r.holonomy_steps == 1);
    CHECK(r.curvature == Turns(1, 4));
  }
}

TEST_CASE("gauge transformations conjugate holonomy") {
  DiscreteConnection conn = octahedron_connection();
  GaugeTransformation g{{{"w", 1}, {"r", -2}, {"y", 3}}};
  DiscreteConnection h = gauge_transform(conn, g);
  CHECK(h.transport("w", "r")("r") == PolyIso::rotation(h.fiber("r"), -2)(conn.transport("w", "r")("b")));
  for (const OrientedFace& f : conn.surface().faces()) {
    CHECK(holonomy_steps(h, f) == holonomy_steps(conn, f));
  }
  GaugeTransformation inverse{{{"w", -1}, {"r", 2}, {"y", -3}}};
  DiscreteConnection back = gauge_transform(h, inverse);
  for (const auto& [d, t] : conn.transports()) CHECK(back.transport(d.from, d.to) == t);
  CHECK((g + inverse).at("w") == 0);
  CHECK(g.at("b") == 0);
}

TEST_CASE("local trivialization closes up to the lift") {
  DiscreteConnection conn = octahedron_connection();
  FlatnessStructure flat = canonical_flatness(conn);
  for (const OrientedFace& f : conn.surface().faces()) {
    LocalTrivialization lt = trivialize_face(conn, flat, f);
    REQUIRE(lt.transitions.size() == 3);
    CHECK(lt.transitions[0] == PolyIso::identity(conn.fiber(lt.basepoint)));
    CHECK(lt.transitions[1] == PolyIso::identity(conn.fiber(lt.basepoint)));
    CHECK(iso_to_rotation(lt.transitions[2]) == 1);
    CHECK(lt.closes());
  }
}

TEST_CASE("random connections keep curvature totals integral") {
  testing::Rng rng(7);
  OrientedSurface s = octahedron();
  for (int i = 0; i < 50; ++i) {
    DiscreteConnection conn = testing::random_connection(s, FiberMode::link(), rng);
    CHECK(net_holonomy(conn) == Turns(0));
    FlatnessStructure flat = testing::random_flatness(conn, rng);
    CHECK(total_flatness(conn, flat).is_integer());
    GaugeTransformation g = testing::random_gauge(conn, rng);
    DiscreteConnection h = gauge_transform(conn, g);
    for (const OrientedFace& f : s.faces()) CHECK(holonomy_steps(h, f) == holonomy_steps(conn, f));
  }
}
