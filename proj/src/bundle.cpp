#include "polybundle/bundle.hpp"

#include <numeric>
#include <set>

namespace polybundle {

std::string FiberMode::str() const {
  return is_refined() ? "refined(" + std::to_string(size) + ")" : "link";
}

std::int64_t lcm_of_degrees(const OrientedSurface& surface) {
  std::int64_t out = 1;
  for (const VertexId& v : surface.vertices()) out = std::lcm(out, surface.degree(v));
  return out;
}

// ==========================================================
// ================      Connections       ==================
// ==========================================================

const Polygon& DiscreteConnection::fiber(const VertexId& v) const {
  auto it = fibers_.find(v);
  if (it == fibers_.end()) throw Error(Errc::UnknownVertex, "no fiber at '" + v + "'");
  return it->second;
}

const PolyIso& DiscreteConnection::transport(const VertexId& from, const VertexId& to) const {
  auto it = transports_.find(DirectedEdge{from, to});
  if (it == transports_.end()) throw Error(Errc::UnknownEdge, "no edge " + from + "->" + to);
  return it->second;
}

std::optional<std::int64_t> DiscreteConnection::uniform_fiber_size() const {
  std::optional<std::int64_t> n;
  for (const auto& [v, p] : fibers_) {
    if (n && *n != p.size()) return std::nullopt;
    n = p.size();
  }
  return n;
}

std::map<VertexId, Polygon> DiscreteConnection::make_fibers(const OrientedSurface& surface,
                                                            FiberMode mode,
                                                            ValidationReport& report) {
  std::map<VertexId, Polygon> fibers;
  if (mode.is_refined() && mode.size < 3) {
    report.add(Errc::BadFiberSize, mode.str(), "refined fibers need at least 3 points");
    return fibers;
  }
  for (const VertexId& v : surface.vertices()) {
    const Polygon& l = surface.link(v);
    if (!mode.is_refined()) {
      fibers.emplace(v, l);
    } else if (mode.size % l.size() != 0) {
      report.add(Errc::BadFiberSize, v,
                 "fiber size " + std::to_string(mode.size) + " is not a multiple of degree " +
                     std::to_string(l.size()));
    } else {
      fibers.emplace(v, Subdivision(l, mode.size / l.size()).target());
    }
  }
  return fibers;
}

std::optional<DiscreteConnection> DiscreteConnection::assemble(
    const OrientedSurface& surface, FiberMode mode, std::map<DirectedEdge, PolyIso> transports,
    ValidationReport& report) {
  std::size_t before = report.violations.size();
  auto fibers = make_fibers(surface, mode, report);
  if (report.violations.size() != before) return std::nullopt;

  for (const Edge& e : surface.edges()) {
    if (!mode.is_refined() && surface.degree(e.a) != surface.degree(e.b)) {
      report.add(Errc::SizeMismatch, e.str(),
                 "link mode needs equal degrees, got " + std::to_string(surface.degree(e.a)) +
                     " and " + std::to_string(surface.degree(e.b)));
      continue;
    }
    for (const DirectedEdge& d : {DirectedEdge{e.a, e.b}, DirectedEdge{e.b, e.a}}) {
      auto it = transports.find(d);
      if (it == transports.end()) {
        report.add(Errc::MissingEdge, d.str(), "no transport along this edge");
        continue;
      }
      const PolyIso& t = it->second;
      if (!(t.source() == fibers.at(d.from)) || !(t.target() == fibers.at(d.to))) {
        report.add(Errc::SizeMismatch, d.str(), "transport does not map fiber to fiber");
      } else if (!t.preserving()) {
        report.add(Errc::OrientationReversing, d.str(), "transports must preserve orientation");
      }
    }
    auto ab = transports.find({e.a, e.b});
    auto ba = transports.find({e.b, e.a});
    if (ab != transports.end() && ba != transports.end() && !(invert(ab->second) == ba->second)) {
      report.add(Errc::NotInverse, e.str(), "the two directions are not mutually inverse");
    }
  }
  for (const auto& [d, t] : transports) {
    if (!surface.has_edge(d.from, d.to)) report.add(Errc::UnknownEdge, d.str(), "not an edge");
  }
  if (report.violations.size() != before) return std::nullopt;

  DiscreteConnection conn;
  conn.surface_ = surface;
  conn.mode_ = mode;
  conn.fibers_ = std::move(fibers);
  conn.transports_ = std::move(transports);
  return conn;
}

namespace {

std::optional<DiscreteConnection> build_from_specs(const OrientedSurface& surface, FiberMode mode,
                                                   const std::vector<TransportSpec>& specs,
                                                   ValidationReport& report) {
  auto fibers = DiscreteConnection::make_fibers(surface, mode, report);
  if (!report.ok()) return std::nullopt;

  std::map<DirectedEdge, PolyIso> given;
  for (const TransportSpec& spec : specs) {
    const DirectedEdge& d = spec.edge;
    if (!surface.has_edge(d.from, d.to)) {
      report.add(Errc::UnknownEdge, d.str(), "not an edge of the surface");
      continue;
    }
    const Polygon& src = fibers.at(d.from);
    const Polygon& dst = fibers.at(d.to);
    try {
      PolyIso iso = std::holds_alternative<Anchor>(spec.mapping)
                        ? [&] {
                            const Anchor& a = std::get<Anchor>(spec.mapping);
                            return PolyIso(src, dst, a.from, a.to, a.orientation);
                          }()
                        : PolyIso::from_map(src, dst, std::get<VertexMap>(spec.mapping));
      if (!given.emplace(d, iso).second) {
        report.add(Errc::DuplicateEntry, d.str(), "transport given twice");
      }
    } catch (const Error& err) {
      report.add(err.code(), d.str(), err.what());
    }
  }
  if (!report.ok()) return std::nullopt;

  std::map<DirectedEdge, PolyIso> all = given;
  for (const auto& [d, iso] : given) {
    if (!given.count(d.reversed())) all.emplace(d.reversed(), invert(iso));
  }
  return DiscreteConnection::assemble(surface, mode, std::move(all), report);
}

} // namespace

ValidationReport validate_connection(const OrientedSurface& surface, FiberMode mode,
                                     const std::vector<TransportSpec>& transports) {
  ValidationReport report;
  build_from_specs(surface, mode, transports, report);
  return report;
}

DiscreteConnection build_connection(const OrientedSurface& surface, FiberMode mode,
                                    const std::vector<TransportSpec>& transports) {
  ValidationReport report;
  auto conn = build_from_specs(surface, mode, transports, report);
  if (!conn) throw ValidationError(std::move(report));
  return *std::move(conn);
}

namespace {

DiscreteConnection assemble_or_throw(const OrientedSurface& surface, FiberMode mode,
                                     std::map<DirectedEdge, PolyIso> transports) {
  ValidationReport report;
  auto conn = DiscreteConnection::assemble(surface, mode, std::move(transports), report);
  if (!conn) throw ValidationError(std::move(report));
  return *std::move(conn);
}

std::map<VertexId, Polygon> fibers_or_throw(const OrientedSurface& surface, FiberMode mode) {
  ValidationReport report;
  auto fibers = DiscreteConnection::make_fibers(surface, mode, report);
  if (!report.ok()) throw ValidationError(std::move(report));
  return fibers;
}

} // namespace

DiscreteConnection link_derived_connection(const OrientedSurface& surface, FiberMode mode) {
  auto fibers = fibers_or_throw(surface, mode);
  std::map<DirectedEdge, PolyIso> transports;
  for (const Edge& e : surface.edges()) {
    for (const DirectedEdge& d : {DirectedEdge{e.a, e.b}, DirectedEdge{e.b, e.a}}) {
      const Polygon& src = fibers.at(d.from);
      const Polygon& dst = fibers.at(d.to);
      if (src.size() != dst.size() || src.size() % 2 != 0) {
        throw Error(Errc::BadFiberSize, "link-derived transport along " + d.str() +
                                            " needs equal even fiber sizes, got " +
                                            std::to_string(src.size()) + " and " +
                                            std::to_string(dst.size()));
      }
      // The direction toward d.to goes to the direction opposite d.from.
      std::int64_t toward = src.position(d.to);
      std::int64_t away = dst.position(d.from) + dst.size() / 2;
      transports.emplace(d, PolyIso(src, dst, src.at(toward), dst.at(away)));
    }
  }
  return assemble_or_throw(surface, mode, std::move(transports));
}

DiscreteConnection coordinate_connection(const OrientedSurface& surface, FiberMode mode) {
  auto fibers = fibers_or_throw(surface, mode);
  std::map<DirectedEdge, PolyIso> transports;
  for (const Edge& e : surface.edges()) {
    for (const DirectedEdge& d : {DirectedEdge{e.a, e.b}, DirectedEdge{e.b, e.a}}) {
      const Polygon& src = fibers.at(d.from);
      const Polygon& dst = fibers.at(d.to);
      transports.emplace(d, PolyIso(src, dst, src.at(0), dst.at(0)));
    }
  }
  return assemble_or_throw(surface, mode, std::move(transports));
}

std::vector<TransportSpec> octahedron_transport_specs() {
  // edge, source fiber order, image of each source label in that order
  struct Row {
    const char* from;
    const char* to;
    const char* source;
    const char* image;
  };
  static constexpr Row rows[] = {
      {"w", "r", "brgo", "bygw"}, {"w", "g", "brgo", "wryo"}, {"w", "b", "brgo", "yrwo"},
      {"w", "o", "brgo", "bwgy"}, {"y", "b", "bogr", "woyr"}, {"y", "r", "bogr", "bygw"},
      {"y", "g", "bogr", "yowr"}, {"y", "o", "bogr", "bwgy"}, {"b", "r", "woyr", "wbyg"},
      {"r", "g", "wbyg", "wryo"}, {"g", "o", "wryo", "wgyb"}, {"o", "b", "wgyb", "woyr"},
  };
  std::vector<TransportSpec> specs;
  for (const Row& row : rows) {
    VertexMap images;
    std::string source = row.source;
    std::string image = row.image;
    for (std::size_t i = 0; i < source.size(); ++i) {
      images.emplace(std::string(1, source[i]), std::string(1, image[i]));
    }
    specs.push_back(TransportSpec{DirectedEdge{row.from, row.to}, std::move(images)});
  }
  return specs;
}

DiscreteConnection octahedron_connection() {
  return build_connection(octahedron(), FiberMode::link(), octahedron_transport_specs());
}

// ==========================================================
// ================   Faces and holonomy   ==================
// ==========================================================

VertexId basepoint(const OrientedFace& face) { return face[0]; }

VertexId basepoint(const OrientedFace& face, const Basepoints& overrides) {
  auto it = overrides.find(face.key());
  if (it == overrides.end()) return basepoint(face);
  if (!face.contains(it->second)) {
    throw Error(Errc::NotIncident, "basepoint '" + it->second + "' is not on face " + face.key());
  }
  return it->second;
}

std::array<DirectedEdge, 3> boundary(const OrientedFace& face, const VertexId& base) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (face[i] == base) {
      return {DirectedEdge{face[i], face[i + 1]}, DirectedEdge{face[i + 1], face[i + 2]},
              DirectedEdge{face[i + 2], face[i]}};
    }
  }
  throw Error(Errc::NotIncident, "vertex '" + base + "' is not on face " + face.key());
}

PolyIso holonomy(const DiscreteConnection& conn, const OrientedFace& face, const VertexId& base) {
  PolyIso total = PolyIso::identity(conn.fiber(base));
  for (const DirectedEdge& d : boundary(face, base)) {
    total = compose(conn.transport(d.from, d.to), total);
  }
  return total;
}

std::int64_t holonomy_steps(const DiscreteConnection& conn, const OrientedFace& face,
                            const std::optional<VertexId>& base) {
  return iso_to_rotation(holonomy(conn, face, base.value_or(basepoint(face))));
}

Turns curvature_turns(const DiscreteConnection& conn, const OrientedFace& face,
                      const std::optional<VertexId>& base) {
  VertexId v = base.value_or(basepoint(face));
  return Turns(holonomy_steps(conn, face, v), conn.fiber(v).size());
}

namespace {
std::int64_t require_uniform(const DiscreteConnection& conn) {
  auto n = conn.uniform_fiber_size();
  if (!n) throw Error(Errc::NonUniformFiber, "fibers have different sizes");
  return *n;
}
} // namespace

std::int64_t net_holonomy_steps(const DiscreteConnection& conn) {
  require_uniform(conn);
  std::int64_t total = 0;
  for (const OrientedFace& f : conn.surface().faces()) total += holonomy_steps(conn, f);
  return total;
}

Turns net_holonomy(const DiscreteConnection& conn) {
  std::int64_t n = require_uniform(conn);
  return Turns(net_holonomy_steps(conn), n).mod1();
}

// ==========================================================
// ================       Flatness         ==================
// ==========================================================

std::int64_t FlatnessStructure::lift(const OrientedFace& face) const {
  auto it = lifts_.find(face.key());
  if (it == lifts_.end()) throw Error(Errc::UnknownFace, "no lift for face " + face.key());
  return it->second;
}

FlatnessStructure attach_flatness(const DiscreteConnection& conn,
                                  std::map<std::string, std::int64_t> lifts) {
  ValidationReport report;
  const OrientedSurface& s = conn.surface();
  for (const auto& [key, f] : lifts) {
    try {
      s.face(key);
    } catch (const Error&) {
      report.add(Errc::UnknownFace, key, "not a face key of the surface");
    }
  }
  for (const OrientedFace& face : s.faces()) {
    auto it = lifts.find(face.key());
    if (it == lifts.end()) {
      report.add(Errc::MissingFace, face.key(), "no lift given");
      continue;
    }
    std::int64_t n = conn.fiber(basepoint(face)).size();
    std::int64_t r = holonomy_steps(conn, face);
    if (mod_floor(it->second - r, n) != 0) {
      report.add(Errc::LiftIncongruent, face.key(),
                 "lift " + std::to_string(it->second) + " is not congruent to holonomy " +
                     std::to_string(r) + " mod " + std::to_string(n));
    }
  }
  if (!report.ok()) throw ValidationError(std::move(report));
  FlatnessStructure out;
  out.lifts_ = std::move(lifts);
  return out;
}

FlatnessStructure canonical_flatness(const DiscreteConnection& conn) {
  std::map<std::string, std::int64_t> lifts;
  for (const OrientedFace& face : conn.surface().faces()) {
    lifts.emplace(face.key(), holonomy_steps(conn, face));
  }
  return attach_flatness(conn, std::move(lifts));
}

Turns total_flatness(const DiscreteConnection& conn, const FlatnessStructure& flatness) {
  require_uniform(conn);
  Turns total;
  for (const OrientedFace& face : conn.surface().faces()) {
    total += Turns(flatness.lift(face), conn.fiber(basepoint(face)).size());
  }
  return total;
}

std::int64_t total_flatness_winding(const DiscreteConnection& conn,
                                    const FlatnessStructure& flatness) {
  Turns total = total_flatness(conn, flatness);
  if (!total.is_integer()) {
    throw Error(Errc::NonIntegralTotal,
                "total flatness " + total.str() + " is not a loop; net holonomy is nonzero");
  }
  return total.numerator();
}

std::vector<FaceReport> face_reports(const DiscreteConnection& conn,
                                     const FlatnessStructure& flatness,
                                     const Basepoints& overrides) {
  std::vector<FaceReport> out;
  for (const OrientedFace& face : conn.surface().faces()) {
    FaceReport r;
    r.face = face.key();
    r.basepoint = basepoint(face, overrides);
    r.fiber_size = conn.fiber(r.basepoint).size();
    r.holonomy_steps = holonomy_steps(conn, face, r.basepoint);
    r.lift = flatness.lift(face);
    r.curvature = Turns(r.holonomy_steps, r.fiber_size);
    r.lift_turns = Turns(r.lift, r.fiber_size);
    out.push_back(std::move(r));
  }
  return out;
}

// ==========================================================
// ================   Gauge and charts     ==================
// ==========================================================

std::int64_t GaugeTransformation::at(const VertexId& v) const {
  auto it = rotation.find(v);
  return it == rotation.end() ? 0 : it->second;
}

GaugeTransformation operator+(const GaugeTransformation& a, const GaugeTransformation& b) {
  GaugeTransformation out = a;
  for (const auto& [v, s] : b.rotation) out.rotation[v] += s;
  return out;
}

DiscreteConnection gauge_transform(const DiscreteConnection& conn, const GaugeTransformation& g) {
  std::map<DirectedEdge, PolyIso> transports;
  for (const auto& [d, t] : conn.transports()) {
    const Polygon& src = conn.fiber(d.from);
    const Polygon& dst = conn.fiber(d.to);
    PolyIso pre = PolyIso::rotation(src, -mod_floor(g.at(d.from), src.size()));
    PolyIso post = PolyIso::rotation(dst, mod_floor(g.at(d.to), dst.size()));
    transports.emplace(d, compose(post, compose(t, pre)));
  }
  return assemble_or_throw(conn.surface(), conn.mode(), std::move(transports));
}

PolyIso LocalTrivialization::corrected_closing() const {
  const PolyIso& closing = transitions.at(2);
  return compose(PolyIso::rotation(closing.source(), -lift), closing);
}

bool LocalTrivialization::closes() const {
  for (std::size_t i = 0; i < 2; ++i) {
    if (!(transitions.at(i) == PolyIso::identity(transitions.at(i).source()))) return false;
  }
  PolyIso c = corrected_closing();
  return c == PolyIso::identity(c.source());
}

LocalTrivialization trivialize_face(const DiscreteConnection& conn,
                                    const FlatnessStructure& flatness, const OrientedFace& face,
                                    const std::optional<VertexId>& base) {
  LocalTrivialization out;
  out.face = face.key();
  out.basepoint = base.value_or(basepoint(face));
  out.lift = flatness.lift(face);
  auto edges = boundary(face, out.basepoint);
  const VertexId& i = edges[0].from;
  const VertexId& j = edges[1].from;
  const VertexId& k = edges[2].from;

  PolyIso chart_j = conn.transport(j, i);
  PolyIso chart_k = compose(chart_j, conn.transport(k, j));
  out.charts.emplace(i, PolyIso::identity(conn.fiber(i)));
  out.charts.emplace(j, chart_j);
  out.charts.emplace(k, chart_k);

  for (const DirectedEdge& d : edges) {
    const PolyIso& from_chart = out.charts.at(d.from);
    const PolyIso& to_chart = out.charts.at(d.to);
    out.transitions.push_back(
        compose(to_chart, compose(conn.transport(d.from, d.to), invert(from_chart))));
  }
  return out;
}

} // namespace polybundle
