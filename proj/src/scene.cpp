#include "polybundle/scene.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace polybundle {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, where + ": " + what);
}

void require_keys(const json& obj, const std::string& where, std::set<std::string> allowed,
                  std::set<std::string> required = {}) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
  for (const std::string& key : required) {
    if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  }
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::int64_t get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::vector<std::string> get_strings(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const json& x : j) out.push_back(get_string(x, where));
  return out;
}

DirectedEdge get_edge(const json& j, const std::string& where) {
  auto ends = get_strings(j, where);
  if (ends.size() != 2) fail(where, "an edge is a pair of vertex labels");
  return {ends[0], ends[1]};
}

Turns get_coordinate(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Turns(j.get<std::int64_t>());
  if (!j.is_string()) fail(where, "coordinates are integers or \"p/q\" strings");
  std::string s = j.get<std::string>();
  try {
    std::size_t slash = s.find('/');
    std::size_t used = 0;
    std::int64_t num = std::stoll(s.substr(0, slash), &used);
    if (used != s.substr(0, slash).size()) fail(where, "bad rational '" + s + "'");
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      std::string tail = s.substr(slash + 1);
      den = std::stoll(tail, &used);
      if (used != tail.size() || den == 0) fail(where, "bad rational '" + s + "'");
    }
    return Turns(num, den);
  } catch (const std::logic_error&) {
    fail(where, "bad rational '" + s + "'");
  }
}

json coordinate_json(const Turns& t) {
  if (t.is_integer()) return t.numerator();
  return t.str();
}

FiberMode get_mode(const json& j) {
  const std::string where = "connection.fiber_mode";
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "link") return FiberMode::link();
    if (s == "refined") return FiberMode::refined(0);
    fail(where, "expected \"link\", \"refined\" or {\"refined\": N}");
  }
  require_keys(j, where, {"refined"}, {"refined"});
  std::int64_t n = get_int(j.at("refined"), where + ".refined");
  if (n < 1) fail(where, "refined size must be positive");
  return FiberMode::refined(n);
}

json mode_json(const FiberMode& m) {
  if (!m.is_refined()) return "link";
  if (m.size == 0) return "refined";
  return json{{"refined", m.size}};
}

} // namespace

// ==========================================================
// ================        Parsing         ==================
// ==========================================================

SceneFile parse_scene_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("scene", e.what());
  }
  require_keys(root, "scene", {"conventions", "surface", "connection", "flatness", "field"},
               {"surface"});
  if (root.contains("conventions") &&
      get_string(root.at("conventions"), "conventions") != kConventionsVersion) {
    fail("conventions", "scene was written for '" + root.at("conventions").get<std::string>() +
                            "', this build uses '" + std::string(kConventionsVersion) + "'");
  }

  SceneFile scene;
  const json& surface = root.at("surface");
  require_keys(surface, "surface", {"vertices", "faces", "positions"}, {"vertices", "faces"});
  scene.surface.vertices = get_strings(surface.at("vertices"), "surface.vertices");
  if (!surface.at("faces").is_array()) fail("surface.faces", "expected an array");
  for (const json& f : surface.at("faces")) {
    scene.surface.faces.push_back(get_strings(f, "surface.faces"));
  }
  if (surface.contains("positions")) {
    const json& pos = surface.at("positions");
    if (!pos.is_object()) fail("surface.positions", "expected an object");
    for (const auto& [v, xyz] : pos.items()) {
      std::string where = "surface.positions." + v;
      if (!xyz.is_array() || xyz.size() != 3) fail(where, "expected 3 coordinates");
      scene.surface.positions.emplace(
          v, Point3{get_coordinate(xyz[0], where), get_coordinate(xyz[1], where),
                    get_coordinate(xyz[2], where)});
    }
  }

  if (root.contains("connection")) {
    const json& c = root.at("connection");
    require_keys(c, "connection", {"fiber_mode", "transports"}, {"fiber_mode", "transports"});
    ConnectionSpec spec;
    spec.mode = get_mode(c.at("fiber_mode"));
    if (!c.at("transports").is_array()) fail("connection.transports", "expected an array");
    for (const json& t : c.at("transports")) {
      const std::string where = "connection.transports";
      require_keys(t, where, {"edge", "anchor", "orientation", "map"}, {"edge"});
      DirectedEdge edge = get_edge(t.at("edge"), where + ".edge");
      if (t.contains("anchor") == t.contains("map")) {
        fail(where, "transport " + edge.str() + " needs exactly one of 'anchor' or 'map'");
      }
      if (t.contains("anchor")) {
        auto pair = get_strings(t.at("anchor"), where + ".anchor");
        if (pair.size() != 2) fail(where + ".anchor", "expected [source_label, target_label]");
        Anchor a{pair[0], pair[1], Orientation::Preserving};
        if (t.contains("orientation")) {
          std::string o = get_string(t.at("orientation"), where + ".orientation");
          if (o == "reversing") {
            a.orientation = Orientation::Reversing;
          } else if (o != "preserving") {
            fail(where + ".orientation", "expected \"preserving\" or \"reversing\"");
          }
        }
        spec.transports.push_back(TransportSpec{edge, a});
      } else {
        if (t.contains("orientation")) fail(where, "'orientation' only applies to anchors");
        const json& m = t.at("map");
        if (!m.is_object()) fail(where + ".map", "expected an object label -> label");
        VertexMap images;
        for (const auto& [x, y] : m.items()) images.emplace(x, get_string(y, where + ".map"));
        spec.transports.push_back(TransportSpec{edge, std::move(images)});
      }
    }
    scene.connection = std::move(spec);
  }

  if (root.contains("flatness")) {
    const json& f = root.at("flatness");
    if (!f.is_object()) fail("flatness", "expected an object face-key -> integer");
    std::map<std::string, std::int64_t> lifts;
    for (const auto& [key, value] : f.items()) lifts.emplace(key, get_int(value, "flatness." + key));
    scene.flatness = std::move(lifts);
  }

  if (root.contains("field")) {
    const json& f = root.at("field");
    require_keys(f, "field", {"at", "edges"}, {"at", "edges"});
    FieldSpec spec;
    if (!f.at("at").is_object()) fail("field.at", "expected an object vertex -> label");
    for (const auto& [v, x] : f.at("at").items()) spec.at.emplace(v, get_string(x, "field.at." + v));
    if (!f.at("edges").is_array()) fail("field.edges", "expected an array");
    for (const json& e : f.at("edges")) {
      require_keys(e, "field.edges", {"edge", "steps", "path"}, {"edge"});
      DirectedEdge edge = get_edge(e.at("edge"), "field.edges.edge");
      if (e.contains("steps") == e.contains("path")) {
        fail("field.edges", "edge " + edge.str() + " needs exactly one of 'steps' or 'path'");
      }
      if (e.contains("steps")) {
        spec.edges.push_back(FieldEdgeSpec{edge, get_int(e.at("steps"), "field.edges.steps")});
      } else {
        spec.edges.push_back(FieldEdgeSpec{edge, get_strings(e.at("path"), "field.edges.path")});
      }
    }
    scene.field = std::move(spec);
  }
  return scene;
}

SceneFile parse_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scene_text(buffer.str());
}

// ==========================================================
// ================     Serialization      ==================
// ==========================================================

json to_json(const SceneFile& scene) {
  json root;
  root["conventions"] = kConventionsVersion;
  json surface;
  surface["vertices"] = scene.surface.vertices;
  surface["faces"] = scene.surface.faces;
  if (!scene.surface.positions.empty()) {
    json pos = json::object();
    for (const auto& [v, p] : scene.surface.positions) {
      pos[v] = json::array({coordinate_json(p[0]), coordinate_json(p[1]), coordinate_json(p[2])});
    }
    surface["positions"] = pos;
  }
  root["surface"] = surface;

  if (scene.connection) {
    json transports = json::array();
    for (const TransportSpec& t : scene.connection->transports) {
      json entry{{"edge", {t.edge.from, t.edge.to}}};
      if (const auto* a = std::get_if<Anchor>(&t.mapping)) {
        entry["anchor"] = {a->from, a->to};
        if (a->orientation == Orientation::Reversing) entry["orientation"] = "reversing";
      } else {
        entry["map"] = std::get<VertexMap>(t.mapping);
      }
      transports.push_back(entry);
    }
    root["connection"] = {{"fiber_mode", mode_json(scene.connection->mode)},
                          {"transports", transports}};
  }
  if (scene.flatness) root["flatness"] = *scene.flatness;
  if (scene.field) {
    json edges = json::array();
    for (const FieldEdgeSpec& e : scene.field->edges) {
      json entry{{"edge", {e.edge.from, e.edge.to}}};
      if (const auto* s = std::get_if<std::int64_t>(&e.value)) {
        entry["steps"] = *s;
      } else {
        entry["path"] = std::get<std::vector<Label>>(e.value);
      }
      edges.push_back(entry);
    }
    root["field"] = {{"at", scene.field->at}, {"edges", edges}};
  }
  return root;
}

std::string serialize_scene(const SceneFile& scene) { return to_json(scene).dump(2) + "\n"; }

SceneFile canonicalize(SceneFile scene) {
  for (auto& f : scene.surface.faces) {
    if (f.size() == 3 && f[0] != f[1] && f[1] != f[2] && f[0] != f[2]) {
      const auto& v = OrientedFace(f[0], f[1], f[2]).vertices();
      f = {v[0], v[1], v[2]};
    }
  }
  if (scene.connection) {
    std::stable_sort(scene.connection->transports.begin(), scene.connection->transports.end(),
                     [](const auto& a, const auto& b) { return a.edge < b.edge; });
  }
  if (scene.field) {
    std::stable_sort(scene.field->edges.begin(), scene.field->edges.end(),
                     [](const auto& a, const auto& b) { return a.edge < b.edge; });
  }
  return scene;
}

// ==========================================================
// ================        Loading         ==================
// ==========================================================

namespace {

std::optional<Scene> try_load(const SceneFile& file, ValidationReport& report) {
  std::vector<OrientedFace> faces;
  for (const auto& f : file.surface.faces) {
    try {
      faces.push_back(OrientedFace::from_list(f));
    } catch (const Error& err) {
      std::string element;
      for (const auto& v : f) element += (element.empty() ? "" : ",") + v;
      report.add(err.code(), element, err.what());
    }
  }
  if (!report.ok()) return std::nullopt;
  ValidationReport surface_report = validate_surface(file.surface.vertices, faces, file.surface.positions);
  if (!surface_report.ok()) {
    report.merge(surface_report);
    return std::nullopt;
  }
  Scene scene{build_surface(file.surface.vertices, std::move(faces), file.surface.positions), {}, {}, {}};
  if (!file.connection) {
    if (file.flatness || file.field) {
      report.add(Errc::MissingEdge, "connection", "flatness and field need a connection");
      return std::nullopt;
    }
    return scene;
  }

  FiberMode mode = file.connection->mode;
  if (mode.is_refined() && mode.size == 0) mode.size = lcm_of_degrees(scene.surface);
  ValidationReport conn_report = validate_connection(scene.surface, mode, file.connection->transports);
  if (!conn_report.ok()) {
    report.merge(conn_report);
    return std::nullopt;
  }
  scene.connection = build_connection(scene.surface, mode, file.connection->transports);

  try {
    scene.flatness = file.flatness ? attach_flatness(*scene.connection, *file.flatness)
                                   : canonical_flatness(*scene.connection);
  } catch (const ValidationError& err) {
    report.merge(err.report());
    return std::nullopt;
  }

  if (file.field) {
    bool has_paths = false;
    std::vector<EdgeStep> steps;
    std::vector<EdgeLabelPath> paths;
    for (const FieldEdgeSpec& e : file.field->edges) {
      if (const auto* s = std::get_if<std::int64_t>(&e.value)) {
        steps.push_back(EdgeStep{e.edge, *s});
        paths.push_back(EdgeLabelPath{e.edge, {}});
      } else {
        has_paths = true;
        paths.push_back(EdgeLabelPath{e.edge, std::get<std::vector<Label>>(e.value)});
      }
    }
    try {
      if (has_paths) {
        // Resolve label paths to steps, keeping integer entries as given.
        std::vector<EdgeLabelPath> path_entries;
        for (const auto& p : paths) {
          if (!p.path.empty()) path_entries.push_back(p);
        }
        VectorField from_paths =
            build_field_from_paths(*scene.connection, file.field->at, path_entries);
        for (const auto& p : path_entries) {
          steps.push_back(EdgeStep{p.edge, from_paths.step(p.edge.from, p.edge.to)});
        }
      }
      scene.field = build_field(*scene.connection, file.field->at, steps);
    } catch (const ValidationError& err) {
      report.merge(err.report());
      return std::nullopt;
    }
  }
  return scene;
}

} // namespace

Scene load_scene(const SceneFile& file) {
  ValidationReport report;
  auto scene = try_load(file, report);
  if (!scene) throw ValidationError(std::move(report));
  return *std::move(scene);
}

ValidationReport validate_scene(const SceneFile& file) {
  ValidationReport report;
  try_load(file, report);
  return report;
}

// ==========================================================
// ================   Fixtures and export  ==================
// ==========================================================

SceneFile to_scene_file(const OrientedSurface& surface, const DiscreteConnection* conn,
                        const FlatnessStructure* flatness, const VectorField* field) {
  SceneFile out;
  out.surface.vertices = surface.vertices();
  for (const OrientedFace& f : surface.faces()) {
    out.surface.faces.push_back({f[0], f[1], f[2]});
  }
  out.surface.positions = surface.positions();
  if (conn) {
    ConnectionSpec spec;
    spec.mode = conn->mode();
    for (const auto& [d, t] : conn->transports()) {
      if (d.to < d.from) continue;
      const Label& x = conn->fiber(d.from).at(0);
      spec.transports.push_back(TransportSpec{d, Anchor{x, t(x), Orientation::Preserving}});
    }
    out.connection = std::move(spec);
  }
  if (flatness) out.flatness = flatness->lifts();
  if (field) {
    FieldSpec spec;
    spec.at = field->values();
    for (const auto& [d, s] : field->steps()) {
      if (d.from < d.to) spec.edges.push_back(FieldEdgeSpec{d, s});
    }
    out.field = std::move(spec);
  }
  return out;
}

std::vector<std::string> fixture_names() { return {"icosahedron", "octahedron", "tetrahedron", "torus"}; }

SceneFile fixture_scene(std::string_view name) {
  if (name == "octahedron") {
    OrientedSurface s = octahedron();
    SceneFile out = to_scene_file(s);
    out.connection = ConnectionSpec{FiberMode::link(), octahedron_transport_specs()};
    std::map<std::string, std::int64_t> lifts;
    for (const OrientedFace& f : s.faces()) lifts.emplace(f.key(), 1);
    out.flatness = std::move(lifts);
    FieldSpec field;
    field.at = octahedron_spin_values();
    for (const EdgeLabelPath& p : octahedron_spin_paths()) {
      field.edges.push_back(FieldEdgeSpec{p.edge, p.path});
    }
    out.field = std::move(field);
    return out;
  }
  auto derived = [](const OrientedSurface& s, std::int64_t n) {
    DiscreteConnection conn = link_derived_connection(s, FiberMode::refined(n));
    FlatnessStructure flat = canonical_flatness(conn);
    VectorField field = minimal_field(conn);
    return to_scene_file(s, &conn, &flat, &field);
  };
  if (name == "icosahedron") return derived(icosahedron(), 10);
  if (name == "tetrahedron") return derived(boundary_delta3(), 6);
  if (name == "torus") return derived(seven_vertex_torus(), 12);
  throw Error(Errc::ParseError, "unknown fixture '" + std::string(name) + "'");
}

std::string export_off(const OrientedSurface& surface) {
  for (const VertexId& v : surface.vertices()) {
    if (!surface.positions().count(v)) {
      throw Error(Errc::MissingPositions, "vertex '" + v + "' has no position");
    }
  }
  std::ostringstream out;
  out << "OFF\n"
      << surface.vertices().size() << " " << surface.faces().size() << " "
      << surface.edges().size() << "\n";
  out << std::setprecision(12);
  for (const VertexId& v : surface.vertices()) {
    const Point3& p = surface.positions().at(v);
    for (std::size_t i = 0; i < 3; ++i) {
      if (i) out << " ";
      if (p[i].is_integer()) {
        out << p[i].numerator();
      } else {
        out << boost::rational_cast<double>(p[i].rep());
      }
    }
    out << "\n";
  }
  for (const OrientedFace& f : surface.faces()) {
    out << "3 " << surface.vertex_index(f[0]) << " " << surface.vertex_index(f[1]) << " "
        << surface.vertex_index(f[2]) << "\n";
  }
  return out.str();
}

} // namespace polybundle
