#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "polybundle/turns.hpp"

namespace polybundle {

using Label = std::string;

// A combinatorial circle: n distinct labels in a cyclic order. "Forward" is
// the stored order. Copies share the immutable label table.
class Polygon {
public:
  Polygon();
  explicit Polygon(std::vector<Label> labels);

  std::int64_t size() const { return static_cast<std::int64_t>(rep_->labels.size()); }
  const std::vector<Label>& labels() const { return rep_->labels; }

  bool contains(const Label& label) const;
  // Position of label in [0, n). Throws UnknownLabel.
  std::int64_t position(const Label& label) const;
  // Label at position p mod n.
  const Label& at(std::int64_t p) const;

  const Label& next(const Label& label) const { return at(position(label) + 1); }
  const Label& prev(const Label& label) const { return at(position(label) - 1); }

  // Same cycle, stored starting from the lexicographically least label.
  Polygon canonical() const;
  // Same labels, cyclic order reversed (starting label kept).
  Polygon reversed() const;

  // Equal as cycles: same labels in the same cyclic order, any rotation.
  friend bool operator==(const Polygon& a, const Polygon& b);
  // Identical stored sequence.
  bool same_storage(const Polygon& other) const;

  // "<a b c>"
  std::string str() const;

private:
  struct Rep {
    std::vector<Label> labels;
    std::map<Label, std::int64_t> index;
  };
  std::shared_ptr<const Rep> rep_;
};

std::ostream& operator<<(std::ostream& os, const Polygon& p);

// Homotopy class of a path on a polygon: start label plus a signed number of
// forward steps.
struct PolyPath {
  Polygon polygon;
  Label start;
  std::int64_t steps = 0;

  // Throws UnknownLabel if start is not on polygon.
  PolyPath(Polygon polygon, Label start, std::int64_t steps);

  Label end() const { return polygon.at(polygon.position(start) + steps); }
  bool is_loop() const { return mod_floor(steps, polygon.size()) == 0; }

  friend bool operator==(const PolyPath& a, const PolyPath& b) {
    return a.polygon == b.polygon && a.start == b.start && a.steps == b.steps;
  }
};

Label endpoint(const PolyPath& p);
// p then q. Throws DifferentPolygon, EndpointMismatch.
PolyPath concat(const PolyPath& p, const PolyPath& q);
PolyPath reverse(const PolyPath& p);
// steps / n for a loop. Throws NotALoop.
std::int64_t winding(const PolyPath& p);

// Reads a path written as a label sequence, e.g. {"g","o","b","r"}. Every
// consecutive pair must be adjacent (or equal, a constant step). Polygons of
// size <= 2 are rejected because adjacency does not determine direction.
PolyPath path_from_labels(const Polygon& polygon, const std::vector<Label>& sequence);

// Representative of the class x -> y with least |steps|, ties toward +.
PolyPath shortest_path(const Polygon& polygon, const Label& from, const Label& to);
std::int64_t shortest_steps(std::int64_t residue, std::int64_t n);

// y - x: the rotation amount in [0, 1) carrying x to y.
Turns subtract(const Polygon& polygon, const Label& x, const Label& y);

enum class Orientation { Preserving, Reversing };

// Isomorphism between polygons of the same size. The whole vertex map is
// forced by one anchored pair plus an orientation.
class PolyIso {
public:
  // Throws SizeMismatch, UnknownLabel.
  PolyIso(Polygon source, Polygon target, Label from, Label to,
          Orientation orientation = Orientation::Preserving);

  // From a full vertex map given as pairs. Throws NotAnIso when the map
  // does not respect cyclic adjacency.
  static PolyIso from_map(Polygon source, Polygon target, const std::map<Label, Label>& images);
  static PolyIso identity(const Polygon& p);
  // x -> the label `steps` positions forward.
  static PolyIso rotation(const Polygon& p, std::int64_t steps);

  const Polygon& source() const { return source_; }
  const Polygon& target() const { return target_; }
  const std::pair<Label, Label>& anchor() const { return anchor_; }
  Orientation orientation() const { return orientation_; }
  bool preserving() const { return orientation_ == Orientation::Preserving; }

  Label operator()(const Label& x) const;
  // Vertex map in source storage order.
  std::map<Label, Label> vertex_map() const;
  // target position of image(x) minus source position of x, for preserving
  // isos; independent of x.
  std::int64_t offset() const;

  friend bool operator==(const PolyIso& a, const PolyIso& b);

private:
  Polygon source_;
  Polygon target_;
  std::pair<Label, Label> anchor_;
  Orientation orientation_;
};

PolyPath apply_iso(const PolyIso& iso, const PolyPath& p);
// outer after inner. Throws DifferentPolygon if inner.target != outer.source.
PolyIso compose(const PolyIso& outer, const PolyIso& inner);
PolyIso invert(const PolyIso& iso);
// The r in [0, n) with iso = rotation by r. Throws NotAnEndomorphism,
// OrientationReversing.
std::int64_t iso_to_rotation(const PolyIso& iso);

// A homotopy class of paths (rotation by start) => (rotation by start+steps)
// in the automorphisms of a polygon. Concatenation adds steps; a loop has
// steps = 0 mod n.
struct RotationPath {
  Polygon polygon;
  std::int64_t start = 0;
  std::int64_t steps = 0;

  std::int64_t end() const { return mod_floor(start + steps, polygon.size()); }
};

// Inverse of evaluation at base: a fiber path y -> z corresponds to the
// rotation path from (y - base) to (z - base) with the same step count.
RotationPath rotation_path_from(const PolyPath& fiber_path, const Label& base);
// Throws DifferentPolygon, EndpointMismatch (q must start where p ends).
RotationPath concat(const RotationPath& p, const RotationPath& q);
std::int64_t winding(const RotationPath& p);

// Collapsing a vertex into its forward neighbor, and the induced map on paths.
class VertexCollapse {
public:
  // Throws TooSmall (n < 2), UnknownLabel.
  VertexCollapse(Polygon source, Label removed);

  const Polygon& source() const { return source_; }
  const Polygon& target() const { return target_; }
  Label map_label(const Label& x) const;
  PolyPath transfer(const PolyPath& p) const;

private:
  std::int64_t image_position(std::int64_t lifted) const;

  Polygon source_;
  Polygon target_;
  std::int64_t removed_position_;
};

// Inserting factor-1 fresh points on every arc. Original label at position p
// lands at factor*p; fresh labels are "<label>#<i>".
class Subdivision {
public:
  // Throws TooSmall (factor < 1), DuplicateLabel on a fresh-label clash.
  Subdivision(Polygon source, std::int64_t factor);

  const Polygon& source() const { return source_; }
  const Polygon& target() const { return target_; }
  std::int64_t factor() const { return factor_; }
  Label map_label(const Label& x) const;
  PolyPath transfer(const PolyPath& p) const;

private:
  Polygon source_;
  Polygon target_;
  std::int64_t factor_;
};

} // namespace polybundle
