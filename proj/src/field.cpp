#include "polybundle/field.hpp"

namespace polybundle {

const Label& VectorField::at(const VertexId& v) const {
  auto it = at_.find(v);
  if (it == at_.end()) throw Error(Errc::UnknownVertex, "no field value at '" + v + "'");
  return it->second;
}

std::int64_t VectorField::step(const VertexId& from, const VertexId& to) const {
  auto it = steps_.find(DirectedEdge{from, to});
  if (it == steps_.end()) throw Error(Errc::UnknownEdge, "no edge " + from + "->" + to);
  return it->second;
}

PolyPath VectorField::edge_path(const VertexId& from, const VertexId& to) const {
  return PolyPath(conn_.fiber(to), conn_.transport(from, to)(at(from)), step(from, to));
}

// ==========================================================
// ================      Construction      ==================
// ==========================================================

std::optional<VectorField> assemble_field(const DiscreteConnection& conn,
                                          std::map<VertexId, Label> at,
                                          const std::vector<EdgeStep>& steps,
                                          ValidationReport& report) {
  const OrientedSurface& s = conn.surface();
  for (const auto& [v, x] : at) {
    if (!s.has_vertex(v)) {
      report.add(Errc::UnknownVertex, v, "field value at undeclared vertex");
    } else if (!conn.fiber(v).contains(x)) {
      report.add(Errc::UnknownLabel, v, "'" + x + "' is not in fiber " + conn.fiber(v).str());
    }
  }
  for (const VertexId& v : s.vertices()) {
    if (!at.count(v)) report.add(Errc::UnknownLabel, v, "no field value at this vertex");
  }

  std::map<DirectedEdge, std::int64_t> given;
  for (const EdgeStep& e : steps) {
    if (!s.has_edge(e.edge.from, e.edge.to)) {
      report.add(Errc::UnknownEdge, e.edge.str(), "not an edge of the surface");
    } else if (!given.emplace(e.edge, e.steps).second) {
      report.add(Errc::DuplicateEntry, e.edge.str(), "edge value given twice");
    }
  }
  if (!report.ok()) return std::nullopt;

  std::map<DirectedEdge, std::int64_t> all;
  for (const Edge& e : s.edges()) {
    DirectedEdge ab{e.a, e.b};
    DirectedEdge ba{e.b, e.a};
    auto fwd = given.find(ab);
    auto bwd = given.find(ba);
    if (fwd == given.end() && bwd == given.end()) {
      report.add(Errc::MissingEdge, e.str(), "no field value along this edge");
      continue;
    }
    if (fwd != given.end() && bwd != given.end() && fwd->second + bwd->second != 0) {
      report.add(Errc::AntisymmetryViolation, e.str(),
                 std::to_string(fwd->second) + " + " + std::to_string(bwd->second) + " != 0");
      continue;
    }
    std::int64_t d = fwd != given.end() ? fwd->second : -bwd->second;
    all.emplace(ab, d);
    all.emplace(ba, -d);
  }

  for (const auto& [d, n_steps] : all) {
    const Polygon& head = conn.fiber(d.to);
    Label transported = conn.transport(d.from, d.to)(at.at(d.from));
    std::int64_t expected = head.position(at.at(d.to)) - head.position(transported);
    if (mod_floor(n_steps - expected, head.size()) != 0) {
      report.add(Errc::EndpointIncongruent, d.str(),
                 std::to_string(n_steps) + " steps from '" + transported + "' do not reach '" +
                     at.at(d.to) + "' on " + head.str());
    }
  }
  if (!report.ok()) return std::nullopt;

  VectorField field;
  field.conn_ = conn;
  field.at_ = std::move(at);
  field.steps_ = std::move(all);
  return field;
}

ValidationReport validate_field(const DiscreteConnection& conn, const std::map<VertexId, Label>& at,
                                const std::vector<EdgeStep>& steps) {
  ValidationReport report;
  assemble_field(conn, at, steps, report);
  return report;
}

VectorField build_field(const DiscreteConnection& conn, std::map<VertexId, Label> at,
                        const std::vector<EdgeStep>& steps) {
  ValidationReport report;
  auto field = assemble_field(conn, std::move(at), steps, report);
  if (!field) throw ValidationError(std::move(report));
  return *std::move(field);
}

VectorField build_field_from_paths(const DiscreteConnection& conn, std::map<VertexId, Label> at,
                                   const std::vector<EdgeLabelPath>& paths) {
  ValidationReport report;
  std::vector<EdgeStep> steps;
  for (const EdgeLabelPath& entry : paths) {
    const DirectedEdge& d = entry.edge;
    try {
      PolyPath p = path_from_labels(conn.fiber(d.to), entry.path);
      Label transported = conn.transport(d.from, d.to)(at.at(d.from));
      if (p.start != transported) {
        report.add(Errc::EndpointIncongruent, d.str(),
                   "path starts at '" + p.start + "', transported value is '" + transported + "'");
      }
      steps.push_back(EdgeStep{d, p.steps});
    } catch (const Error& err) {
      report.add(err.code(), d.str(), err.what());
    } catch (const std::out_of_range&) {
      report.add(Errc::UnknownLabel, d.str(), "no field value at an endpoint");
    }
  }
  if (!report.ok()) throw ValidationError(std::move(report));
  return build_field(conn, std::move(at), steps);
}

VectorField minimal_field(const DiscreteConnection& conn, std::map<VertexId, Label> at) {
  for (const VertexId& v : conn.surface().vertices()) at.emplace(v, conn.fiber(v).at(0));
  std::vector<EdgeStep> steps;
  for (const auto& [d, t] : conn.transports()) {
    if (d.to < d.from) continue;
    const Polygon& head = conn.fiber(d.to);
    std::int64_t delta = head.position(at.at(d.to)) - head.position(t(at.at(d.from)));
    steps.push_back(EdgeStep{d, shortest_steps(delta, head.size())});
  }
  return build_field(conn, std::move(at), steps);
}

std::map<VertexId, Label> octahedron_spin_values() {
  return {{"w", "r"}, {"r", "g"}, {"g", "w"}, {"o", "b"}, {"b", "y"}, {"y", "o"}};
}

std::vector<EdgeLabelPath> octahedron_spin_paths() {
  static constexpr const char* rows[][2] = {
      // north
      {"wr", "yg"}, {"wg", "rw"}, {"wo", "wb"}, {"wb", "ry"},
      {"rw", "gr"}, {"gw", "br"}, {"ow", "br"}, {"bw", "br"},
      // south
      {"yr", "yg"}, {"yg", "ow"}, {"yo", "wb"}, {"yb", "oy"},
      {"ry", "go"}, {"gy", "go"}, {"oy", "bo"}, {"by", "go"},
      // equator
      {"br", "yg"}, {"rg", "ow"}, {"go", "wb"}, {"ob", "ry"},
      {"rb", "ry"}, {"gr", "wg"}, {"og", "ow"}, {"bo", "yb"},
  };
  std::vector<EdgeLabelPath> out;
  for (const auto& row : rows) {
    std::string e = row[0];
    std::string p = row[1];
    out.push_back(EdgeLabelPath{DirectedEdge{e.substr(0, 1), e.substr(1, 1)},
                                {p.substr(0, 1), p.substr(1, 1)}});
  }
  return out;
}

VectorField octahedron_spin_field(const DiscreteConnection& conn) {
  return build_field_from_paths(conn, octahedron_spin_values(), octahedron_spin_paths());
}

VectorField carry_field(const VectorField& field, const DiscreteConnection& gauged,
                        const GaugeTransformation& g) {
  std::map<VertexId, Label> at;
  for (const auto& [v, x] : field.values()) {
    const Polygon& fiber = gauged.fiber(v);
    at.emplace(v, fiber.at(fiber.position(x) + g.at(v)));
  }
  std::vector<EdgeStep> steps;
  for (const auto& [d, s] : field.steps()) steps.push_back(EdgeStep{d, s});
  return build_field(gauged, std::move(at), steps);
}

// ==========================================================
// ================    Swirl and index     ==================
// ==========================================================

std::int64_t swirl(const VectorField& field, const OrientedFace& face,
                   const std::optional<VertexId>& base) {
  std::int64_t total = 0;
  for (const DirectedEdge& d : boundary(face, base.value_or(basepoint(face)))) {
    total += field.step(d.from, d.to);
  }
  return total;
}

PolyPath transported_swirl(const VectorField& field, const OrientedFace& face,
                           const std::optional<VertexId>& base) {
  const DiscreteConnection& conn = field.connection();
  auto e = boundary(face, base.value_or(basepoint(face)));
  const VertexId& v1 = e[0].from;
  const VertexId& v2 = e[1].from;
  const VertexId& v3 = e[2].from;
  const PolyIso& t32 = conn.transport(v2, v3);
  const PolyIso& t13 = conn.transport(v3, v1);

  PolyPath first = apply_iso(t13, apply_iso(t32, field.edge_path(v1, v2)));
  PolyPath second = apply_iso(t13, field.edge_path(v2, v3));
  PolyPath third = field.edge_path(v3, v1);
  return concat(concat(first, second), third);
}

std::int64_t index(const VectorField& field, const FlatnessStructure& flatness,
                   const OrientedFace& face, const std::optional<VertexId>& base) {
  const DiscreteConnection& conn = field.connection();
  VertexId m = base.value_or(basepoint(face));
  const Polygon& fiber = conn.fiber(m);
  std::int64_t lift = flatness.lift(face);
  std::int64_t s = swirl(field, face, m);

  // The swirl is a fiber path from hol(X_m) to X_m; read it as a path of
  // rotations ending at the identity and close it with the flatness path.
  Label start = holonomy(conn, face, m)(field.at(m));
  RotationPath flat{fiber, 0, lift};
  RotationPath sigma = rotation_path_from(PolyPath(fiber, start, s), field.at(m));
  try {
    return winding(concat(flat, sigma));
  } catch (const Error&) {
    throw Error(Errc::NonIntegralIndex, "face " + face.key() + ": lift " + std::to_string(lift) +
                                            " + swirl " + std::to_string(s) +
                                            " is not a multiple of " +
                                            std::to_string(fiber.size()));
  }
}

IndexReport totals(const VectorField& field, const FlatnessStructure& flatness,
                   const Basepoints& overrides) {
  const DiscreteConnection& conn = field.connection();
  if (!conn.uniform_fiber_size()) {
    throw Error(Errc::NonUniformFiber, "totals need a common fiber size");
  }
  IndexReport report;
  for (const OrientedFace& face : conn.surface().faces()) {
    FaceIndex fi;
    fi.face = face.key();
    fi.basepoint = basepoint(face, overrides);
    fi.fiber_size = conn.fiber(fi.basepoint).size();
    fi.holonomy_steps = holonomy_steps(conn, face, fi.basepoint);
    fi.lift = flatness.lift(face);
    fi.swirl = swirl(field, face, fi.basepoint);
    fi.index = index(field, flatness, face, fi.basepoint);
    report.total_swirl += Turns(fi.swirl, fi.fiber_size);
    report.total_index += fi.index;
    report.faces.push_back(std::move(fi));
  }
  report.total_flatness_winding = total_flatness_winding(conn, flatness);
  return report;
}

} // namespace polybundle
