#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polybundle/errors.hpp"
#include "polybundle/polygon.hpp"
#include "polybundle/turns.hpp"

namespace polybundle {

using VertexId = Label;

// Characters that may not appear in vertex labels: ',' joins face keys and
// '#' marks fresh labels in refined fibers.
inline constexpr std::string_view kReservedLabelChars = ",#";

struct DirectedEdge {
  VertexId from;
  VertexId to;

  DirectedEdge reversed() const { return {to, from}; }
  std::string str() const { return from + "->" + to; }

  auto operator<=>(const DirectedEdge&) const = default;
};

// Unordered pair, stored sorted.
struct Edge {
  VertexId a;
  VertexId b;

  Edge(VertexId x, VertexId y);
  bool contains(const VertexId& v) const { return a == v || b == v; }
  std::string str() const { return a + "," + b; }

  auto operator<=>(const Edge&) const = default;
};

// A triangle with a cyclic vertex order. Two faces compare equal when they
// differ by a cyclic permutation.
class OrientedFace {
public:
  // Throws BadArity unless the three labels are distinct.
  OrientedFace(VertexId a, VertexId b, VertexId c);
  // Throws BadArity unless exactly three distinct labels.
  static OrientedFace from_list(const std::vector<VertexId>& vertices);

  // Stored as the least rotation.
  const std::array<VertexId, 3>& vertices() const { return v_; }
  const VertexId& operator[](std::size_t i) const { return v_[i % 3]; }

  bool contains(const VertexId& v) const;
  std::set<VertexId> vertex_set() const { return {v_[0], v_[1], v_[2]}; }
  std::array<Edge, 3> edges() const;
  OrientedFace reversed() const { return OrientedFace(v_[0], v_[2], v_[1]); }

  // Comma-joined least rotation, e.g. "b,r,w".
  std::string key() const;

  auto operator<=>(const OrientedFace&) const = default;

private:
  std::array<VertexId, 3> v_;
};

// The pair of an edge in the cyclic order of the face. Throws NotIncident.
DirectedEdge induced_edge_order(const OrientedFace& face, const Edge& edge);

using Point3 = std::array<Turns, 3>;

// A closed oriented triangulated surface: every edge in exactly two faces with
// opposite induced orders, and every vertex link a single cycle.
class OrientedSurface {
public:
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<OrientedFace>& faces() const { return faces_; }
  const std::set<Edge>& edges() const { return edges_; }
  const std::map<VertexId, Point3>& positions() const { return positions_; }
  bool has_positions() const { return !positions_.empty(); }

  bool has_vertex(const VertexId& v) const { return links_.count(v) > 0; }
  bool has_edge(const VertexId& a, const VertexId& b) const;
  std::int64_t degree(const VertexId& v) const { return link(v).size(); }
  // Index of v in vertices(). Throws UnknownVertex.
  std::size_t vertex_index(const VertexId& v) const;

  // Canonical link polygon (see link()).
  const Polygon& link(const VertexId& v) const;
  // Throws UnknownFace.
  const OrientedFace& face(const std::string& key) const;

  friend OrientedSurface build_surface(std::vector<VertexId>, std::vector<OrientedFace>,
                                       std::map<VertexId, Point3>);

private:
  std::vector<VertexId> vertices_;
  std::vector<OrientedFace> faces_;
  std::set<Edge> edges_;
  std::map<VertexId, Point3> positions_;
  std::map<VertexId, Polygon> links_;
  std::map<std::string, std::size_t> face_index_;
};

// Every rule build_surface enforces, as a report.
ValidationReport validate_surface(const std::vector<VertexId>& vertices,
                                  const std::vector<OrientedFace>& faces,
                                  const std::map<VertexId, Point3>& positions = {});

// Throws ValidationError.
OrientedSurface build_surface(std::vector<VertexId> vertices, std::vector<OrientedFace> faces,
                              std::map<VertexId, Point3> positions = {});

// The neighbors of v in the cyclic order the orientation induces: a face with
// induced order (v, a, b) contributes the arc a -> b. Stored from the
// lexicographically least label.
const Polygon& link(const OrientedSurface& surface, const VertexId& v);

std::int64_t euler_characteristic(const OrientedSurface& surface);

// Same surface with every face order reversed.
OrientedSurface reverse_orientation(const OrientedSurface& surface);

// ==========================================================
// ================        Fixtures        ==================
// ==========================================================

// Vertices w (top), y (bottom) and the equator b, r, g, o. Links, up to
// rotation: w <brgo>, r <wbyg>, y <bogr>, g <wryo>, b <woyr>, o <wgyb>.
OrientedSurface octahedron();
// Boundary of the 3-simplex on vertices 0..3.
OrientedSurface boundary_delta3();
// Vertices n, s, u0..u4, l0..l4; every link is a 5-gon.
OrientedSurface icosahedron();
// The 7-vertex torus: faces (i, i+1, i+3) and (i, i+3, i+2) mod 7.
OrientedSurface seven_vertex_torus();

// The 1-dimensional polygon complex C(n) on v1..vn.
struct CycleComplex {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;

  Polygon polygon() const { return Polygon(vertices); }
};

// Throws BadArity for n < 3.
CycleComplex cycle_complex(std::int64_t n);

} // namespace polybundle
