#include "polybundle/complex.hpp"

#include <algorithm>

namespace polybundle {

Edge::Edge(VertexId x, VertexId y) : a(std::move(x)), b(std::move(y)) {
  if (b < a) std::swap(a, b);
}

// ==========================================================
// ================         Faces          ==================
// ==========================================================

OrientedFace::OrientedFace(VertexId a, VertexId b, VertexId c) {
  if (a == b || b == c || a == c) {
    throw Error(Errc::BadArity, "face (" + a + "," + b + "," + c + ") repeats a vertex");
  }
  std::array<VertexId, 3> v{std::move(a), std::move(b), std::move(c)};
  auto least = std::min_element(v.begin(), v.end()) - v.begin();
  for (std::size_t i = 0; i < 3; ++i) v_[i] = v[(least + i) % 3];
}

OrientedFace OrientedFace::from_list(const std::vector<VertexId>& vertices) {
  if (vertices.size() != 3) {
    throw Error(Errc::BadArity, "a face needs exactly 3 vertices, got " + std::to_string(vertices.size()));
  }
  return OrientedFace(vertices[0], vertices[1], vertices[2]);
}

bool OrientedFace::contains(const VertexId& v) const {
  return v_[0] == v || v_[1] == v || v_[2] == v;
}

std::array<Edge, 3> OrientedFace::edges() const {
  return {Edge(v_[0], v_[1]), Edge(v_[1], v_[2]), Edge(v_[2], v_[0])};
}

std::string OrientedFace::key() const { return v_[0] + "," + v_[1] + "," + v_[2]; }

DirectedEdge induced_edge_order(const OrientedFace& face, const Edge& edge) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (Edge(face[i], face[i + 1]) == edge) return {face[i], face[i + 1]};
  }
  throw Error(Errc::NotIncident, "edge {" + edge.str() + "} is not in face " + face.key());
}

// ==========================================================
// ================       Validation       ==================
// ==========================================================

namespace {

// Arcs a -> b of the link of each vertex, one per incident face.
std::map<VertexId, std::vector<std::pair<VertexId, VertexId>>>
link_arcs(const std::vector<OrientedFace>& faces) {
  std::map<VertexId, std::vector<std::pair<VertexId, VertexId>>> arcs;
  for (const OrientedFace& f : faces) {
    for (std::size_t i = 0; i < 3; ++i) arcs[f[i]].emplace_back(f[i + 1], f[i + 2]);
  }
  return arcs;
}

// Chains arcs into one cycle, or returns nullopt.
std::optional<Polygon> chain_arcs(const std::vector<std::pair<VertexId, VertexId>>& arcs) {
  if (arcs.size() < 3) return std::nullopt;
  std::map<VertexId, VertexId> succ;
  std::set<VertexId> heads;
  for (const auto& [a, b] : arcs) {
    if (!succ.emplace(a, b).second) return std::nullopt;
    if (!heads.insert(b).second) return std::nullopt;
  }
  std::vector<VertexId> cycle;
  VertexId start = succ.begin()->first;
  VertexId cur = start;
  do {
    cycle.push_back(cur);
    auto it = succ.find(cur);
    if (it == succ.end()) return std::nullopt;
    cur = it->second;
  } while (cur != start && cycle.size() <= arcs.size());
  if (cur != start || cycle.size() != arcs.size()) return std::nullopt;
  return Polygon(std::move(cycle)).canonical();
}

} // namespace

ValidationReport validate_surface(const std::vector<VertexId>& vertices,
                                  const std::vector<OrientedFace>& faces,
                                  const std::map<VertexId, Point3>& positions) {
  ValidationReport report;
  std::set<VertexId> declared;
  for (const VertexId& v : vertices) {
    if (v.empty()) {
      report.add(Errc::EmptyLabel, v, "vertex labels must be nonempty");
      continue;
    }
    if (v.find_first_of(kReservedLabelChars) != std::string::npos) {
      report.add(Errc::ReservedCharacter, v, "vertex labels may not contain ',' or '#'");
    }
    if (!declared.insert(v).second) report.add(Errc::DuplicateVertex, v, "vertex declared twice");
  }

  std::set<std::set<VertexId>> seen;
  std::vector<OrientedFace> known_faces;
  for (const OrientedFace& f : faces) {
    bool ok = true;
    for (const VertexId& v : f.vertices()) {
      if (!declared.count(v)) {
        report.add(Errc::UnknownVertex, f.key(), "face uses undeclared vertex '" + v + "'");
        ok = false;
      }
    }
    if (!seen.insert(f.vertex_set()).second) {
      report.add(Errc::DuplicateFace, f.key(), "two faces span the same vertex set");
      ok = false;
    }
    if (ok) known_faces.push_back(f);
  }

  std::map<Edge, std::vector<DirectedEdge>> incidence;
  for (const OrientedFace& f : known_faces) {
    for (const Edge& e : f.edges()) incidence[e].push_back(induced_edge_order(f, e));
  }
  for (const auto& [e, orders] : incidence) {
    if (orders.size() != 2) {
      report.add(Errc::BoundaryEdge, e.str(),
                 "edge lies in " + std::to_string(orders.size()) + " faces, expected 2");
    } else if (orders[0] == orders[1]) {
      report.add(Errc::OrientationClash, e.str(),
                 "both faces induce the order " + orders[0].str());
    }
  }

  auto arcs = link_arcs(known_faces);
  for (const VertexId& v : vertices) {
    if (!declared.count(v) || v.empty()) continue;
    auto it = arcs.find(v);
    if (it == arcs.end() || !chain_arcs(it->second)) {
      report.add(Errc::NonPolygonLink, v, "link arcs do not form a single cycle of length >= 3");
    }
  }

  for (const auto& [v, p] : positions) {
    if (!declared.count(v)) report.add(Errc::UnknownVertex, v, "position given for undeclared vertex");
  }
  return report;
}

OrientedSurface build_surface(std::vector<VertexId> vertices, std::vector<OrientedFace> faces,
                              std::map<VertexId, Point3> positions) {
  ValidationReport report = validate_surface(vertices, faces, positions);
  if (!report.ok()) throw ValidationError(std::move(report));

  OrientedSurface s;
  auto arcs = link_arcs(faces);
  for (const VertexId& v : vertices) s.links_.emplace(v, *chain_arcs(arcs.at(v)));
  for (std::size_t i = 0; i < faces.size(); ++i) {
    s.face_index_.emplace(faces[i].key(), i);
    for (const Edge& e : faces[i].edges()) s.edges_.insert(e);
  }
  s.vertices_ = std::move(vertices);
  s.faces_ = std::move(faces);
  s.positions_ = std::move(positions);
  return s;
}

// ==========================================================
// ================        Queries         ==================
// ==========================================================

bool OrientedSurface::has_edge(const VertexId& a, const VertexId& b) const {
  return a != b && edges_.count(Edge(a, b)) > 0;
}

std::size_t OrientedSurface::vertex_index(const VertexId& v) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end()) throw Error(Errc::UnknownVertex, "no vertex '" + v + "'");
  return static_cast<std::size_t>(it - vertices_.begin());
}

const Polygon& OrientedSurface::link(const VertexId& v) const {
  auto it = links_.find(v);
  if (it == links_.end()) throw Error(Errc::UnknownVertex, "no vertex '" + v + "'");
  return it->second;
}

const OrientedFace& OrientedSurface::face(const std::string& key) const {
  auto it = face_index_.find(key);
  if (it == face_index_.end()) throw Error(Errc::UnknownFace, "no face '" + key + "'");
  return faces_[it->second];
}

const Polygon& link(const OrientedSurface& surface, const VertexId& v) { return surface.link(v); }

std::int64_t euler_characteristic(const OrientedSurface& surface) {
  return static_cast<std::int64_t>(surface.vertices().size()) -
         static_cast<std::int64_t>(surface.edges().size()) +
         static_cast<std::int64_t>(surface.faces().size());
}

OrientedSurface reverse_orientation(const OrientedSurface& surface) {
  std::vector<OrientedFace> faces;
  for (const OrientedFace& f : surface.faces()) faces.push_back(f.reversed());
  return build_surface(surface.vertices(), std::move(faces), surface.positions());
}

// ==========================================================
// ================        Fixtures        ==================
// ==========================================================

OrientedSurface octahedron() {
  std::vector<OrientedFace> faces{
      {"w", "b", "r"}, {"w", "r", "g"}, {"w", "g", "o"}, {"w", "o", "b"},
      {"y", "r", "b"}, {"y", "g", "r"}, {"y", "o", "g"}, {"y", "b", "o"},
  };
  std::map<VertexId, Point3> positions{
      {"w", {0, 0, 1}}, {"y", {0, 0, -1}}, {"b", {-1, 1, 0}},
      {"r", {1, 1, 0}}, {"g", {1, -1, 0}}, {"o", {-1, -1, 0}},
  };
  return build_surface({"w", "y", "b", "r", "g", "o"}, std::move(faces), std::move(positions));
}

OrientedSurface boundary_delta3() {
  std::vector<OrientedFace> faces{{"0", "1", "2"}, {"0", "2", "3"}, {"0", "3", "1"}, {"1", "3", "2"}};
  std::map<VertexId, Point3> positions{
      {"0", {1, 1, 1}}, {"1", {1, -1, -1}}, {"2", {-1, 1, -1}}, {"3", {-1, -1, 1}}};
  return build_surface({"0", "1", "2", "3"}, std::move(faces), std::move(positions));
}

OrientedSurface icosahedron() {
  auto u = [](int i) { return "u" + std::to_string(((i % 5) + 5) % 5); };
  auto l = [](int i) { return "l" + std::to_string(((i % 5) + 5) % 5); };
  std::vector<VertexId> vertices{"n", "s"};
  for (int i = 0; i < 5; ++i) vertices.push_back(u(i));
  for (int i = 0; i < 5; ++i) vertices.push_back(l(i));

  std::vector<OrientedFace> faces;
  for (int i = 0; i < 5; ++i) {
    faces.emplace_back("n", u(i), u(i + 1));
    faces.emplace_back(u(i), l(i), u(i + 1));
    faces.emplace_back(u(i + 1), l(i), l(i + 1));
    faces.emplace_back("s", l(i + 1), l(i));
  }

  // Rings at heights +-1/2 (times the golden ratio scale, approximated).
  std::map<VertexId, Point3> positions;
  positions.emplace("n", Point3{0, 0, Turns(1118, 1000)});
  positions.emplace("s", Point3{0, 0, Turns(-1118, 1000)});
  const std::array<std::array<std::int64_t, 2>, 10> ring{{{1000, 0}, {309, 951}, {-809, 588},
                                                          {-809, -588}, {309, -951}, {809, 588},
                                                          {-309, 951}, {-1000, 0}, {-309, -951},
                                                          {809, -588}}};
  for (int i = 0; i < 5; ++i) {
    positions.emplace(u(i), Point3{Turns(ring[i][0], 1000), Turns(ring[i][1], 1000), Turns(1, 2)});
    positions.emplace(l(i), Point3{Turns(ring[5 + i][0], 1000), Turns(ring[5 + i][1], 1000),
                                   Turns(-1, 2)});
  }
  return build_surface(std::move(vertices), std::move(faces), std::move(positions));
}

OrientedSurface seven_vertex_torus() {
  auto v = [](int i) { return std::to_string(i % 7); };
  std::vector<VertexId> vertices;
  std::vector<OrientedFace> faces;
  for (int i = 0; i < 7; ++i) {
    vertices.push_back(v(i));
    faces.emplace_back(v(i), v(i + 1), v(i + 3));
    faces.emplace_back(v(i), v(i + 3), v(i + 2));
  }
  return build_surface(std::move(vertices), std::move(faces));
}

CycleComplex cycle_complex(std::int64_t n) {
  if (n < 3) throw Error(Errc::BadArity, "a polygon complex needs n >= 3, got " + std::to_string(n));
  CycleComplex c;
  for (std::int64_t i = 1; i <= n; ++i) c.vertices.push_back("v" + std::to_string(i));
  for (std::int64_t i = 0; i < n; ++i) {
    c.edges.emplace_back(c.vertices[i], c.vertices[(i + 1) % n]);
  }
  return c;
}

} // namespace polybundle
