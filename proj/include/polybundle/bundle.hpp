#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polybundle/complex.hpp"
#include "polybundle/errors.hpp"
#include "polybundle/polygon.hpp"
#include "polybundle/turns.hpp"

namespace polybundle {

// Fibers are either the vertex links themselves, or links subdivided to a
// common N-gon with link label k at position k*N/deg.
struct FiberMode {
  enum class Kind { Link, Refined };

  Kind kind = Kind::Link;
  std::int64_t size = 0;

  static FiberMode link() { return {}; }
  static FiberMode refined(std::int64_t n) { return {Kind::Refined, n}; }
  bool is_refined() const { return kind == Kind::Refined; }
  std::string str() const;

  bool operator==(const FiberMode&) const = default;
};

// lcm of all vertex degrees.
std::int64_t lcm_of_degrees(const OrientedSurface& surface);

using VertexMap = std::map<Label, Label>;

struct Anchor {
  Label from;
  Label to;
  Orientation orientation = Orientation::Preserving;

  bool operator==(const Anchor&) const = default;
};

// One transport as supplied by a caller: an anchored pair or a full map.
struct TransportSpec {
  DirectedEdge edge;
  std::variant<Anchor, VertexMap> mapping;

  bool operator==(const TransportSpec&) const = default;
};

class DiscreteConnection {
public:
  const OrientedSurface& surface() const { return surface_; }
  const FiberMode& mode() const { return mode_; }
  const Polygon& fiber(const VertexId& v) const;
  // Transport along the directed edge from -> to. Throws UnknownEdge.
  const PolyIso& transport(const VertexId& from, const VertexId& to) const;
  const std::map<DirectedEdge, PolyIso>& transports() const { return transports_; }
  // Set when every fiber has the same size.
  std::optional<std::int64_t> uniform_fiber_size() const;

  // Validates surface/mode/transport invariants; reports instead of throwing.
  static std::optional<DiscreteConnection> assemble(const OrientedSurface& surface, FiberMode mode,
                                                    std::map<DirectedEdge, PolyIso> transports,
                                                    ValidationReport& report);

  // Fiber polygons a connection with this mode would use.
  static std::map<VertexId, Polygon> make_fibers(const OrientedSurface& surface, FiberMode mode,
                                                 ValidationReport& report);

private:
  OrientedSurface surface_;
  FiberMode mode_;
  std::map<VertexId, Polygon> fibers_;
  std::map<DirectedEdge, PolyIso> transports_;
};

// One spec per undirected edge (reverse derived by inversion) or both
// directions (checked to be mutually inverse).
ValidationReport validate_connection(const OrientedSurface& surface, FiberMode mode,
                                     const std::vector<TransportSpec>& transports);
// Throws ValidationError.
DiscreteConnection build_connection(const OrientedSurface& surface, FiberMode mode,
                                    const std::vector<TransportSpec>& transports);

// The transport that carries the direction toward the far endpoint to the
// direction pointing away from the near one: a half turn composed with the
// link positions. Needs an even fiber size divisible by every degree; throws
// BadFiberSize otherwise.
DiscreteConnection link_derived_connection(const OrientedSurface& surface, FiberMode mode);

// Every transport maps position p to position p. Flat (all holonomies 0).
// Requires a uniform fiber size.
DiscreteConnection coordinate_connection(const OrientedSurface& surface, FiberMode mode);

// The octahedron connection given by its twelve transport tables.
DiscreteConnection octahedron_connection();
// Those tables as full-map transport specs.
std::vector<TransportSpec> octahedron_transport_specs();

// ==========================================================
// ================   Faces and holonomy   ==================
// ==========================================================

// face key -> basepoint vertex
using Basepoints = std::map<std::string, VertexId>;

// Least vertex label.
VertexId basepoint(const OrientedFace& face);
VertexId basepoint(const OrientedFace& face, const Basepoints& overrides);
// The face's cyclic edges starting at base. Throws NotIncident.
std::array<DirectedEdge, 3> boundary(const OrientedFace& face, const VertexId& base);

// Composite transport around the boundary, an automorphism of fiber(base).
PolyIso holonomy(const DiscreteConnection& conn, const OrientedFace& face, const VertexId& base);
std::int64_t holonomy_steps(const DiscreteConnection& conn, const OrientedFace& face,
                            const std::optional<VertexId>& base = std::nullopt);
Turns curvature_turns(const DiscreteConnection& conn, const OrientedFace& face,
                      const std::optional<VertexId>& base = std::nullopt);

// Sum of holonomy steps over all faces. Throws NonUniformFiber.
std::int64_t net_holonomy_steps(const DiscreteConnection& conn);
// Sum of curvatures, reduced mod 1. Throws NonUniformFiber.
Turns net_holonomy(const DiscreteConnection& conn);

// ==========================================================
// ================       Flatness         ==================
// ==========================================================

// An integer lift f_F of each face holonomy: a path id => rotation by f_F.
class FlatnessStructure {
public:
  // Throws UnknownFace.
  std::int64_t lift(const OrientedFace& face) const;
  const std::map<std::string, std::int64_t>& lifts() const { return lifts_; }

  friend FlatnessStructure attach_flatness(const DiscreteConnection&,
                                           std::map<std::string, std::int64_t>);

private:
  std::map<std::string, std::int64_t> lifts_;
};

// Throws ValidationError (LiftIncongruent, MissingFace, UnknownFace).
FlatnessStructure attach_flatness(const DiscreteConnection& conn,
                                  std::map<std::string, std::int64_t> lifts);
// Least nonnegative lifts.
FlatnessStructure canonical_flatness(const DiscreteConnection& conn);

// Sum of f_F / n_F. Throws NonUniformFiber.
Turns total_flatness(const DiscreteConnection& conn, const FlatnessStructure& flatness);
// The winding of total flatness. Throws NonIntegralTotal.
std::int64_t total_flatness_winding(const DiscreteConnection& conn,
                                    const FlatnessStructure& flatness);

struct FaceReport {
  std::string face;
  VertexId basepoint;
  std::int64_t fiber_size = 0;
  std::int64_t holonomy_steps = 0;
  std::int64_t lift = 0;
  Turns curvature;
  Turns lift_turns;
};

std::vector<FaceReport> face_reports(const DiscreteConnection& conn,
                                     const FlatnessStructure& flatness,
                                     const Basepoints& overrides = {});

// ==========================================================
// ================   Gauge and charts     ==================
// ==========================================================

// A rotation of each fiber, in steps. Missing vertices rotate by 0.
struct GaugeTransformation {
  std::map<VertexId, std::int64_t> rotation;

  std::int64_t at(const VertexId& v) const;
};

GaugeTransformation operator+(const GaugeTransformation& a, const GaugeTransformation& b);

// transport'(i,j) = rot_j(g_j) . transport(i,j) . rot_i(-g_i)
DiscreteConnection gauge_transform(const DiscreteConnection& conn, const GaugeTransformation& g);

// Charts over one face identifying every fiber with fiber(base) by transport
// back along the boundary. The first two transition maps are identities; the
// closing one is the holonomy, which the flatness lift undoes.
struct LocalTrivialization {
  std::string face;
  VertexId basepoint;
  std::map<VertexId, PolyIso> charts;
  // chart(b) . transport(a,b) . chart(a)^-1 for each boundary edge (a,b).
  std::vector<PolyIso> transitions;
  std::int64_t lift = 0;

  // rotation(-lift) . transitions[2], which is the identity when the cocycle
  // closes.
  PolyIso corrected_closing() const;
  bool closes() const;
};

LocalTrivialization trivialize_face(const DiscreteConnection& conn,
                                    const FlatnessStructure& flatness, const OrientedFace& face,
                                    const std::optional<VertexId>& base = std::nullopt);

} // namespace polybundle
