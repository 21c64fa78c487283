#include "doctest.h"

#include "polybundle/field.hpp"
#include "support/random_instances.hpp"

using namespace polybundle;

namespace {

struct Octahedron {
  DiscreteConnection conn = octahedron_connection();
  FlatnessStructure flat = canonical_flatness(conn);
  VectorField field = octahedron_spin_field(conn);

  const OrientedFace& face(const std::string& key) const { return conn.surface().face(key); }
};

} // namespace

TEST_CASE("spin field values and edge steps") {
  Octahedron o;
  CHECK(o.field.at("w") == "r");
  CHECK(o.field.at("y") == "o");
  CHECK(o.field.step("w", "r") == 1);
  CHECK(o.field.step("r", "w") == -1);
  for (const auto& [d, s] : o.field.steps()) CHECK(o.field.step(d.to, d.from) == -s);
  PolyPath p = o.field.edge_path("w", "r");
  CHECK(p.start == "y");
  CHECK(p.end() == "g");
}

TEST_CASE("swirl of the northern faces") {
  Octahedron o;
  CHECK(swirl(o.field, o.face("g,w,r"), "w") == 3);
  CHECK(swirl(o.field, o.face("g,o,w"), "w") == -1);
  CHECK(swirl(o.field, o.face("b,w,o"), "w") == -1);
  CHECK(swirl(o.field, o.face("b,r,w"), "w") == -1);
  PolyPath t = transported_swirl(o.field, o.face("g,w,r"), "w");
  CHECK(t.start == "g");
  CHECK(t.steps == 3);
  CHECK(t.end() == "r");
  CHECK(t.polygon == Polygon({"b", "r", "g", "o"}));
  PolyPath gr = transported_swirl(o.field, o.face("g,o,w"), "w");
  CHECK(gr.start == "g");
  CHECK(gr.steps == -1);
}

TEST_CASE("indices on the octahedron") {
  Octahedron o;
  CHECK(index(o.field, o.flat, o.face("g,w,r")) == 1);
  CHECK(index(o.field, o.flat, o.face("g,o,w")) == 0);
  CHECK(index(o.field, o.flat, o.face("b,w,o")) == 0);
  CHECK(index(o.field, o.flat, o.face("b,r,w")) == 0);

  std::multiset<std::int64_t> south;
  for (const std::string key : {"b,y,r", "g,r,y", "g,y,o", "b,o,y"}) {
    south.insert(index(o.field, o.flat, o.face(key)));
  }
  CHECK(south == std::multiset<std::int64_t>{0, 0, 0, 1});

  IndexReport r = totals(o.field, o.flat);
  CHECK(r.total_swirl == Turns(0));
  CHECK(r.total_index == 2);
  CHECK(r.total_flatness_winding == 2);
  CHECK(r.holds());
}

TEST_CASE("raising a lift by the fiber size raises the index by one") {
  Octahedron o;
  std::map<std::string, std::int64_t> lifts = o.flat.lifts();
  lifts["g,w,r"] += 4;
  FlatnessStructure raised = attach_flatness(o.conn, lifts);
  CHECK(index(o.field, raised, o.face("g,w,r")) == 2);
  IndexReport r = totals(o.field, raised);
  CHECK(r.total_index == 3);
  CHECK(r.total_flatness_winding == 3);
}

TEST_CASE("field validation") {
  Octahedron o;
  std::vector<EdgeStep> steps;
  for (const auto& [d, s] : o.field.steps()) {
    if (d.from < d.to) steps.push_back(EdgeStep{d, s});
  }
  CHECK(validate_field(o.conn, o.field.values(), steps).ok());

  auto bad = steps;
  for (EdgeStep& e : bad) {
    if (e.edge == DirectedEdge{"r", "w"}) e.steps = -2;
  }
  CHECK(validate_field(o.conn, o.field.values(), bad).has(Errc::EndpointIncongruent));

  auto both = steps;
  both.push_back(EdgeStep{DirectedEdge{"w", "r"}, 1});
  CHECK(validate_field(o.conn, o.field.values(), both).ok());
  both.back().steps = 5;
  CHECK(validate_field(o.conn, o.field.values(), both).has(Errc::AntisymmetryViolation));

  auto missing = steps;
  missing.pop_back();
  CHECK(validate_field(o.conn, o.field.values(), missing).has(Errc::MissingEdge));

  auto values = o.field.values();
  values["w"] = "y";
  CHECK(validate_field(o.conn, values, steps).has(Errc::UnknownLabel));

  auto paths = octahedron_spin_paths();
  paths[0].path = {"g", "y"};
  CHECK_THROWS_AS(build_field_from_paths(o.conn, octahedron_spin_values(), paths), ValidationError);
}

TEST_CASE("minimal fields") {
  Octahedron o;
  VectorField m = minimal_field(o.conn);
  for (const auto& [d, s] : m.steps()) CHECK(std::abs(s) <= 2);
  CHECK(totals(m, o.flat).total_index == 2);
}

TEST_CASE("index does not depend on the basepoint") {
  testing::Rng rng(11);
  Octahedron o;
  for (int i = 0; i < 20; ++i) {
    DiscreteConnection conn = testing::random_connection(o.conn.surface(), FiberMode::link(), rng);
    FlatnessStructure flat = testing::random_flatness(conn, rng);
    VectorField field = testing::random_field(conn, rng);
    for (const OrientedFace& f : conn.surface().faces()) {
      std::int64_t expected = index(field, flat, f);
      for (const VertexId& v : f.vertices()) {
        CHECK(index(field, flat, f, v) == expected);
        CHECK(swirl(field, f, v) == swirl(field, f));
      }
    }
  }
}

TEST_CASE("carrying a field through a gauge keeps every index") {
  testing::Rng rng(3);
  Octahedron o;
  for (int i = 0; i < 20; ++i) {
    GaugeTransformation g = testing::random_gauge(o.conn, rng);
    DiscreteConnection h = gauge_transform(o.conn, g);
    VectorField carried = carry_field(o.field, h, g);
    FlatnessStructure flat = attach_flatness(h, o.flat.lifts());
    for (const OrientedFace& f : o.conn.surface().faces()) {
      CHECK(swirl(carried, f) == swirl(o.field, f));
      CHECK(index(carried, flat, f) == index(o.field, o.flat, f));
    }
  }
}

TEST_CASE("independent fields give the same total index") {
  testing::Rng rng(5);
  DiscreteConnection conn =
      testing::random_connection(seven_vertex_torus(), FiberMode::refined(12), rng);
  FlatnessStructure flat = testing::random_flatness(conn, rng);
  std::int64_t first = totals(testing::random_field(conn, rng), flat).total_index;
  for (int i = 0; i < 10; ++i) {
    IndexReport r = totals(testing::random_field(conn, rng), flat);
    CHECK(r.total_index == first);
    CHECK(r.holds());
  }
}
