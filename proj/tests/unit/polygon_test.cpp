#include "doctest.h"

#include "polybundle/errors.hpp"
#include "polybundle/polygon.hpp"
#include "support/oracles.hpp"

using namespace polybundle;

namespace {

Polygon ngon(std::int64_t n) {
  std::vector<Label> labels;
  for (std::int64_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return Polygon(labels);
}

const Polygon brgo{{"b", "r", "g", "o"}};

} // namespace

TEST_CASE("polygon construction and cyclic equality") {
  CHECK(brgo.size() == 4);
  CHECK(brgo.next("o") == "b");
  CHECK(brgo.prev("b") == "o");
  CHECK(brgo.at(-1) == "o");
  CHECK(Polygon({"g", "o", "b", "r"}) == brgo);
  CHECK_FALSE(Polygon({"b", "o", "g", "r"}) == brgo);
  CHECK(Polygon({"g", "o", "b", "r"}).canonical().same_storage(brgo));
  CHECK(brgo.str() == "<b r g o>");
  CHECK_THROWS_AS(Polygon({"a", "a"}), Error);
  CHECK_THROWS_AS(Polygon(std::vector<Label>{}), Error);
  CHECK_THROWS_AS(brgo.position("y"), Error);
}

TEST_CASE("endpoint walks forward and backward") {
  CHECK(endpoint(PolyPath(brgo, "g", 3)) == "r");
  CHECK(endpoint(PolyPath(brgo, "b", -1)) == "o");
  CHECK(endpoint(PolyPath(brgo, "b", 8)) == "b");
}

TEST_CASE("subtract gives the forward rotation in turns") {
  CHECK(subtract(brgo, "b", "g") == Turns(2, 4));
  CHECK(subtract(Polygon({"w", "b", "y", "g"}), "y", "g") == Turns(1, 4));
  CHECK(subtract(brgo, "g", "b") == Turns(1, 2));
  CHECK(subtract(brgo, "r", "r") == Turns(0));
}

TEST_CASE("concat checks endpoints and adds steps") {
  PolyPath p(brgo, "b", 2);
  PolyPath q(brgo, "g", -5);
  CHECK(concat(p, q) == PolyPath(brgo, "b", -3));
  CHECK_THROWS_AS(concat(p, PolyPath(brgo, "b", 1)), Error);
  CHECK_THROWS_AS(concat(p, PolyPath(ngon(4), "p0", 1)), Error);
  CHECK(reverse(p) == PolyPath(brgo, "g", -2));
}

TEST_CASE("winding of loops") {
  CHECK(winding(PolyPath(brgo, "r", 8)) == 2);
  CHECK(winding(PolyPath(brgo, "r", -4)) == -1);
  CHECK(winding(PolyPath(brgo, "r", 0)) == 0);
  try {
    winding(PolyPath(brgo, "r", 3));
    FAIL("expected NotALoop");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotALoop);
  }
}

TEST_CASE("label paths") {
  CHECK(path_from_labels(brgo, {"g", "o", "b", "r"}).steps == 3);
  CHECK(path_from_labels(brgo, {"g", "r"}).steps == -1);
  CHECK(path_from_labels(brgo, {"g", "g", "o"}).steps == 1);
  CHECK_THROWS_AS(path_from_labels(brgo, {"b", "g"}), Error);
  CHECK_THROWS_AS(path_from_labels(Polygon({"a", "b"}), {"a", "b"}), Error);
}

TEST_CASE("shortest representatives break ties forward") {
  CHECK(shortest_steps(2, 4) == 2);
  CHECK(shortest_steps(-2, 4) == 2);
  CHECK(shortest_steps(3, 4) == -1);
  CHECK(shortest_steps(7, 5) == 2);
  CHECK(shortest_path(brgo, "o", "r").steps == 2);
  CHECK(shortest_path(brgo, "o", "g").steps == -1);
}

TEST_CASE("isomorphisms from an anchor or a full map") {
  Polygon bygw{{"b", "y", "g", "w"}};
  PolyIso t = PolyIso::from_map(brgo, bygw, {{"b", "b"}, {"r", "y"}, {"g", "g"}, {"o", "w"}});
  CHECK(t == PolyIso(brgo, bygw, "r", "y"));
  CHECK(t("o") == "w");
  CHECK(t.offset() == 0);
  CHECK_THROWS_AS(PolyIso::from_map(brgo, bygw, {{"b", "b"}, {"r", "g"}, {"g", "y"}, {"o", "w"}}),
                  Error);
  PolyIso rev(brgo, bygw, "b", "b", Orientation::Reversing);
  CHECK(rev("r") == "w");
  CHECK_THROWS_AS(iso_to_rotation(compose(invert(t), rev)), Error);
  CHECK(iso_to_rotation(PolyIso::rotation(brgo, -1)) == 3);
  CHECK_THROWS_AS(iso_to_rotation(t), Error);
  CHECK(compose(invert(t), t) == PolyIso::identity(brgo));
}

TEST_CASE("rotation paths and evaluation") {
  RotationPath r = rotation_path_from(PolyPath(brgo, "r", 3), "g");
  CHECK(r.start == 3);
  CHECK(r.steps == 3);
  CHECK(r.end() == 2);
  CHECK(winding(concat(RotationPath{brgo, 0, 1}, rotation_path_from(PolyPath(brgo, "o", 3), "g"))) ==
        1);
  CHECK_THROWS_AS(concat(RotationPath{brgo, 0, 1}, RotationPath{brgo, 2, 1}), Error);
}

TEST_CASE("collapsing a vertex") {
  VertexCollapse c(brgo, "r");
  CHECK(c.target() == Polygon({"b", "g", "o"}));
  CHECK(c.map_label("r") == "g");
  CHECK(c.map_label("o") == "o");
  CHECK(c.transfer(PolyPath(brgo, "b", 4)).steps == 3);
  CHECK(c.transfer(PolyPath(brgo, "b", 1)).steps == 1);
  CHECK(c.transfer(PolyPath(brgo, "r", 1)).steps == 0);
  CHECK(c.transfer(PolyPath(brgo, "g", -2)).steps == -1);
}

TEST_CASE("subdividing multiplies steps") {
  Subdivision s(brgo, 3);
  CHECK(s.target().size() == 12);
  CHECK(s.map_label("r") == "r");
  CHECK(s.target().position("r") == 3);
  CHECK(s.target().at(4) == "r#1");
  CHECK(s.transfer(PolyPath(brgo, "o", -5)).steps == -15);
  CHECK_THROWS_AS(Subdivision(Polygon({"a", "a#1"}), 2), Error);
}

TEST_CASE("collapse and subdivide agree with step-by-step walks") {
  for (std::int64_t n = 2; n <= 6; ++n) {
    Polygon p = ngon(n);
    for (std::int64_t k = 1; k <= 3; ++k) {
      Subdivision s(p, k);
      for (const Label& x : p.labels()) {
        for (std::int64_t steps = -2 * n; steps <= 2 * n; ++steps) {
          PolyPath path(p, x, steps);
          CHECK(s.transfer(path).steps ==
                testing::refined_steps(path, s.target(), k, [&](const Label& l) { return s.map_label(l); }));
        }
      }
    }
    if (n < 3) continue;
    for (const Label& removed : p.labels()) {
      VertexCollapse c(p, removed);
      for (const Label& x : p.labels()) {
        for (std::int64_t steps = -2 * n; steps <= 2 * n; ++steps) {
          PolyPath path(p, x, steps);
          PolyPath image = c.transfer(path);
          CHECK(image.start == c.map_label(x));
          CHECK(image.steps ==
                testing::collapsed_steps(path, c.target(), [&](const Label& l) { return c.map_label(l); }));
        }
      }
    }
  }
}
