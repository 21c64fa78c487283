#include "polybundle/polygon.hpp"

#include <algorithm>
#include <sstream>

#include "polybundle/errors.hpp"

namespace polybundle {

// ==========================================================
// ================        Polygon         ==================
// ==========================================================

Polygon::Polygon() : rep_(std::make_shared<const Rep>()) {}

Polygon::Polygon(std::vector<Label> labels) {
  if (labels.empty()) throw Error(Errc::TooSmall, "a polygon needs at least one label");
  Rep rep;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!rep.index.emplace(labels[i], static_cast<std::int64_t>(i)).second) {
      throw Error(Errc::DuplicateLabel, "label '" + labels[i] + "' repeated in polygon");
    }
  }
  rep.labels = std::move(labels);
  rep_ = std::make_shared<const Rep>(std::move(rep));
}

bool Polygon::contains(const Label& label) const { return rep_->index.count(label) > 0; }

std::int64_t Polygon::position(const Label& label) const {
  auto it = rep_->index.find(label);
  if (it == rep_->index.end()) {
    throw Error(Errc::UnknownLabel, "label '" + label + "' is not on polygon " + str());
  }
  return it->second;
}

const Label& Polygon::at(std::int64_t p) const {
  if (rep_->labels.empty()) throw Error(Errc::TooSmall, "empty polygon");
  return rep_->labels[static_cast<std::size_t>(mod_floor(p, size()))];
}

Polygon Polygon::canonical() const {
  const auto& ls = labels();
  auto least = std::min_element(ls.begin(), ls.end());
  std::vector<Label> rotated(least, ls.end());
  rotated.insert(rotated.end(), ls.begin(), least);
  return Polygon(std::move(rotated));
}

Polygon Polygon::reversed() const {
  std::vector<Label> out;
  out.reserve(labels().size());
  for (std::int64_t i = 0; i < size(); ++i) out.push_back(at(-i));
  return Polygon(std::move(out));
}

bool operator==(const Polygon& a, const Polygon& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.size() != b.size()) return false;
  if (a.size() == 0) return true;
  if (!b.contains(a.labels()[0])) return false;
  std::int64_t shift = b.position(a.labels()[0]);
  for (std::int64_t i = 0; i < a.size(); ++i) {
    if (a.at(i) != b.at(i + shift)) return false;
  }
  return true;
}

bool Polygon::same_storage(const Polygon& other) const { return labels() == other.labels(); }

std::string Polygon::str() const {
  std::string out = "<";
  for (std::size_t i = 0; i < labels().size(); ++i) {
    if (i) out += ' ';
    out += labels()[i];
  }
  return out + ">";
}

std::ostream& operator<<(std::ostream& os, const Polygon& p) { return os << p.str(); }

// ==========================================================
// ================         Paths          ==================
// ==========================================================

PolyPath::PolyPath(Polygon poly, Label from, std::int64_t n_steps)
    : polygon(std::move(poly)), start(std::move(from)), steps(n_steps) {
  polygon.position(start);
}

Label endpoint(const PolyPath& p) { return p.end(); }

PolyPath concat(const PolyPath& p, const PolyPath& q) {
  if (!(p.polygon == q.polygon)) {
    throw Error(Errc::DifferentPolygon, "cannot concatenate paths on " + p.polygon.str() + " and " +
                                            q.polygon.str());
  }
  if (p.end() != q.start) {
    throw Error(Errc::EndpointMismatch,
                "first path ends at '" + p.end() + "', second starts at '" + q.start + "'");
  }
  return PolyPath(p.polygon, p.start, p.steps + q.steps);
}

PolyPath reverse(const PolyPath& p) { return PolyPath(p.polygon, p.end(), -p.steps); }

std::int64_t winding(const PolyPath& p) {
  if (!p.is_loop()) {
    throw Error(Errc::NotALoop, "path from '" + p.start + "' with " + std::to_string(p.steps) +
                                    " steps is not a loop on " + p.polygon.str());
  }
  return p.steps / p.polygon.size();
}

PolyPath path_from_labels(const Polygon& polygon, const std::vector<Label>& sequence) {
  if (sequence.empty()) throw Error(Errc::NotAdjacent, "empty label path");
  if (polygon.size() <= 2) {
    throw Error(Errc::TooSmall, "label paths are ambiguous on " + polygon.str());
  }
  std::int64_t steps = 0;
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    const Label& from = sequence[i - 1];
    const Label& to = sequence[i];
    std::int64_t d = mod_floor(polygon.position(to) - polygon.position(from), polygon.size());
    if (d == 0) continue;
    if (d == 1) {
      ++steps;
    } else if (d == polygon.size() - 1) {
      --steps;
    } else {
      throw Error(Errc::NotAdjacent,
                  "'" + from + "' and '" + to + "' are not adjacent on " + polygon.str());
    }
  }
  return PolyPath(polygon, sequence.front(), steps);
}

std::int64_t shortest_steps(std::int64_t residue, std::int64_t n) {
  std::int64_t r = mod_floor(residue, n);
  return 2 * r > n ? r - n : r;
}

PolyPath shortest_path(const Polygon& polygon, const Label& from, const Label& to) {
  std::int64_t d = polygon.position(to) - polygon.position(from);
  return PolyPath(polygon, from, shortest_steps(d, polygon.size()));
}

Turns subtract(const Polygon& polygon, const Label& x, const Label& y) {
  std::int64_t n = polygon.size();
  return Turns(mod_floor(polygon.position(y) - polygon.position(x), n), n);
}

// ==========================================================
// ================     Isomorphisms       ==================
// ==========================================================

PolyIso::PolyIso(Polygon source, Polygon target, Label from, Label to, Orientation orientation)
    : source_(std::move(source)), target_(std::move(target)), anchor_(std::move(from), std::move(to)),
      orientation_(orientation) {
  if (source_.size() != target_.size()) {
    throw Error(Errc::SizeMismatch, "cannot map " + source_.str() + " onto " + target_.str());
  }
  source_.position(anchor_.first);
  target_.position(anchor_.second);
}

PolyIso PolyIso::from_map(Polygon source, Polygon target, const std::map<Label, Label>& images) {
  if (source.size() != target.size()) {
    throw Error(Errc::SizeMismatch, "cannot map " + source.str() + " onto " + target.str());
  }
  if (static_cast<std::int64_t>(images.size()) != source.size()) {
    throw Error(Errc::NotAnIso, "map must list every label of " + source.str());
  }
  for (const auto& [x, y] : images) {
    source.position(x);
    target.position(y);
  }
  const Label& first = source.at(0);
  auto image_of = [&](const Label& x) { return images.at(x); };
  for (auto orientation : {Orientation::Preserving, Orientation::Reversing}) {
    PolyIso candidate(source, target, first, image_of(first), orientation);
    bool agrees = true;
    for (const Label& x : source.labels()) {
      if (candidate(x) != image_of(x)) {
        agrees = false;
        break;
      }
    }
    if (agrees) return candidate;
  }
  throw Error(Errc::NotAnIso, "map from " + source.str() + " to " + target.str() +
                                  " does not respect cyclic adjacency");
}

PolyIso PolyIso::identity(const Polygon& p) { return PolyIso(p, p, p.at(0), p.at(0)); }

PolyIso PolyIso::rotation(const Polygon& p, std::int64_t steps) {
  return PolyIso(p, p, p.at(0), p.at(steps));
}

Label PolyIso::operator()(const Label& x) const {
  std::int64_t delta = source_.position(x) - source_.position(anchor_.first);
  if (!preserving()) delta = -delta;
  return target_.at(target_.position(anchor_.second) + delta);
}

std::map<Label, Label> PolyIso::vertex_map() const {
  std::map<Label, Label> out;
  for (const Label& x : source_.labels()) out.emplace(x, (*this)(x));
  return out;
}

std::int64_t PolyIso::offset() const {
  return mod_floor(target_.position(anchor_.second) - source_.position(anchor_.first),
                   source_.size());
}

bool operator==(const PolyIso& a, const PolyIso& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.orientation_ == b.orientation_ &&
         a(a.anchor_.first) == b(a.anchor_.first);
}

PolyPath apply_iso(const PolyIso& iso, const PolyPath& p) {
  if (!(p.polygon == iso.source())) {
    throw Error(Errc::DifferentPolygon,
                "path lives on " + p.polygon.str() + ", iso starts at " + iso.source().str());
  }
  return PolyPath(iso.target(), iso(p.start), iso.preserving() ? p.steps : -p.steps);
}

PolyIso compose(const PolyIso& outer, const PolyIso& inner) {
  if (!(inner.target() == outer.source())) {
    throw Error(Errc::DifferentPolygon, "cannot compose: " + inner.target().str() +
                                            " is not " + outer.source().str());
  }
  Orientation o = inner.orientation() == outer.orientation() ? Orientation::Preserving
                                                             : Orientation::Reversing;
  return PolyIso(inner.source(), outer.target(), inner.anchor().first, outer(inner.anchor().second),
                 o);
}

PolyIso invert(const PolyIso& iso) {
  return PolyIso(iso.target(), iso.source(), iso.anchor().second, iso.anchor().first,
                 iso.orientation());
}

std::int64_t iso_to_rotation(const PolyIso& iso) {
  if (!(iso.source() == iso.target())) {
    throw Error(Errc::NotAnEndomorphism,
                "iso maps " + iso.source().str() + " to " + iso.target().str());
  }
  if (!iso.preserving()) {
    throw Error(Errc::OrientationReversing, "reflection of " + iso.source().str() +
                                                " is not a rotation");
  }
  const Polygon& p = iso.source();
  return mod_floor(p.position(iso.anchor().second) - p.position(iso.anchor().first), p.size());
}

// ==========================================================
// ================    Rotation paths      ==================
// ==========================================================

RotationPath rotation_path_from(const PolyPath& fiber_path, const Label& base) {
  const Polygon& p = fiber_path.polygon;
  return RotationPath{p, mod_floor(p.position(fiber_path.start) - p.position(base), p.size()),
                      fiber_path.steps};
}

RotationPath concat(const RotationPath& p, const RotationPath& q) {
  if (!(p.polygon == q.polygon)) {
    throw Error(Errc::DifferentPolygon, "rotation paths on different polygons");
  }
  if (p.end() != mod_floor(q.start, q.polygon.size())) {
    throw Error(Errc::EndpointMismatch, "rotation path ends at rotation " + std::to_string(p.end()) +
                                            ", next starts at " + std::to_string(q.start));
  }
  return RotationPath{p.polygon, p.start, p.steps + q.steps};
}

std::int64_t winding(const RotationPath& p) {
  std::int64_t n = p.polygon.size();
  if (mod_floor(p.steps, n) != 0) {
    throw Error(Errc::NotALoop, "rotation path with " + std::to_string(p.steps) +
                                    " steps is not a loop on " + p.polygon.str());
  }
  return p.steps / n;
}

// ==========================================================
// ============  Collapse and subdivision   =================
// ==========================================================

namespace {
Polygon without(const Polygon& p, const Label& removed) {
  std::vector<Label> kept;
  for (const Label& x : p.labels()) {
    if (x != removed) kept.push_back(x);
  }
  return Polygon(std::move(kept));
}

std::int64_t floor_div(std::int64_t a, std::int64_t n) { return (a - mod_floor(a, n)) / n; }
} // namespace

VertexCollapse::VertexCollapse(Polygon source, Label removed) : source_(std::move(source)) {
  if (source_.size() < 2) throw Error(Errc::TooSmall, "cannot collapse a vertex of a 1-gon");
  removed_position_ = source_.position(removed);
  target_ = without(source_, removed);
}

// Lifted position on the integer cover of the source to the lifted position on
// the cover of the target. The removed vertex lands with its forward neighbor.
std::int64_t VertexCollapse::image_position(std::int64_t lifted) const {
  std::int64_t n = source_.size();
  std::int64_t q = floor_div(lifted, n);
  std::int64_t r = lifted - q * n;
  return q * (n - 1) + (r <= removed_position_ ? r : r - 1);
}

Label VertexCollapse::map_label(const Label& x) const {
  return target_.at(image_position(source_.position(x)));
}

PolyPath VertexCollapse::transfer(const PolyPath& p) const {
  if (!(p.polygon == source_)) throw Error(Errc::DifferentPolygon, "path is not on " + source_.str());
  // The stored rotation of p.polygon may differ from source_; work in source_.
  std::int64_t a = source_.position(p.start);
  std::int64_t steps = image_position(a + p.steps) - image_position(a);
  return PolyPath(target_, map_label(p.start), steps);
}

Subdivision::Subdivision(Polygon source, std::int64_t factor)
    : source_(std::move(source)), factor_(factor) {
  if (factor_ < 1) throw Error(Errc::TooSmall, "subdivision factor must be at least 1");
  std::vector<Label> labels;
  for (const Label& x : source_.labels()) {
    labels.push_back(x);
    for (std::int64_t i = 1; i < factor_; ++i) labels.push_back(x + "#" + std::to_string(i));
  }
  target_ = Polygon(std::move(labels));
}

Label Subdivision::map_label(const Label& x) const {
  return target_.at(factor_ * source_.position(x));
}

PolyPath Subdivision::transfer(const PolyPath& p) const {
  if (!(p.polygon == source_)) throw Error(Errc::DifferentPolygon, "path is not on " + source_.str());
  return PolyPath(target_, map_label(p.start), p.steps * factor_);
}

} // namespace polybundle
