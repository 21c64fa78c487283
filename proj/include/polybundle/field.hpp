#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polybundle/bundle.hpp"
#include "polybundle/complex.hpp"
#include "polybundle/errors.hpp"
#include "polybundle/polygon.hpp"
#include "polybundle/turns.hpp"

namespace polybundle {

struct EdgeStep {
  DirectedEdge edge;
  std::int64_t steps = 0;

  bool operator==(const EdgeStep&) const = default;
};

// An edge value written as a label path in the head fiber, e.g. {"y","g"}.
struct EdgeLabelPath {
  DirectedEdge edge;
  std::vector<Label> path;
};

// A section over the 1-skeleton: a fiber point at each vertex and, for each
// directed edge (i,j), the signed step count of the path from transport(i,j)
// of the tail value to the head value, in fiber(j).
class VectorField {
public:
  const DiscreteConnection& connection() const { return conn_; }
  const Label& at(const VertexId& v) const;
  const std::map<VertexId, Label>& values() const { return at_; }
  // Throws UnknownEdge.
  std::int64_t step(const VertexId& from, const VertexId& to) const;
  const std::map<DirectedEdge, std::int64_t>& steps() const { return steps_; }
  // The edge value as a path in fiber(to).
  PolyPath edge_path(const VertexId& from, const VertexId& to) const;

  friend std::optional<VectorField> assemble_field(const DiscreteConnection&,
                                                   std::map<VertexId, Label>,
                                                   const std::vector<EdgeStep>&,
                                                   ValidationReport&);

private:
  DiscreteConnection conn_;
  std::map<VertexId, Label> at_;
  std::map<DirectedEdge, std::int64_t> steps_;
};

std::optional<VectorField> assemble_field(const DiscreteConnection& conn,
                                          std::map<VertexId, Label> at,
                                          const std::vector<EdgeStep>& steps,
                                          ValidationReport& report);

ValidationReport validate_field(const DiscreteConnection& conn, const std::map<VertexId, Label>& at,
                                const std::vector<EdgeStep>& steps);
// One step count per undirected edge (reverse negated) or both directions
// (checked antisymmetric). Throws ValidationError.
VectorField build_field(const DiscreteConnection& conn, std::map<VertexId, Label> at,
                        const std::vector<EdgeStep>& steps);
// Same, with edge values given as label paths. A path must start at the
// transported tail value (EndpointIncongruent otherwise).
VectorField build_field_from_paths(const DiscreteConnection& conn, std::map<VertexId, Label> at,
                                   const std::vector<EdgeLabelPath>& paths);

// Given values (the first fiber label where absent) with the shortest
// congruent step on every edge.
VectorField minimal_field(const DiscreteConnection& conn, std::map<VertexId, Label> at = {});

// The spin field on the octahedron connection: vertex values and all 24
// directed edge paths from its tables.
std::map<VertexId, Label> octahedron_spin_values();
std::vector<EdgeLabelPath> octahedron_spin_paths();
VectorField octahedron_spin_field(const DiscreteConnection& conn);

// Rotates each value by the gauge, keeping edge steps. `gauged` must be
// gauge_transform(field.connection(), g).
VectorField carry_field(const VectorField& field, const DiscreteConnection& gauged,
                        const GaugeTransformation& g);

// ==========================================================
// ================    Swirl and index     ==================
// ==========================================================

// Sum of edge steps around the boundary.
std::int64_t swirl(const VectorField& field, const OrientedFace& face,
                   const std::optional<VertexId>& base = std::nullopt);

// The same quantity built path by path in fiber(base): the first edge value
// transported twice, then the second transported once, then the third,
// concatenated with endpoint checks.
PolyPath transported_swirl(const VectorField& field, const OrientedFace& face,
                           const std::optional<VertexId>& base = std::nullopt);

// Winding of the loop (flatness path) . (swirl as a rotation path), i.e.
// (f_F + s_F) / n_F. Throws NonIntegralIndex.
std::int64_t index(const VectorField& field, const FlatnessStructure& flatness,
                   const OrientedFace& face, const std::optional<VertexId>& base = std::nullopt);

struct FaceIndex {
  std::string face;
  VertexId basepoint;
  std::int64_t fiber_size = 0;
  std::int64_t holonomy_steps = 0;
  std::int64_t lift = 0;
  std::int64_t swirl = 0;
  std::int64_t index = 0;
};

struct IndexReport {
  std::vector<FaceIndex> faces;
  Turns total_swirl;
  std::int64_t total_index = 0;
  std::int64_t total_flatness_winding = 0;

  // total index equals the winding of total flatness
  bool holds() const { return total_index == total_flatness_winding && total_swirl == Turns(0); }
};

// Throws NonUniformFiber.
IndexReport totals(const VectorField& field, const FlatnessStructure& flatness,
                   const Basepoints& overrides = {});

} // namespace polybundle
