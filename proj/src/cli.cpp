#include "polybundle/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "polybundle/scene.hpp"

namespace polybundle {

using nlohmann::json;

namespace {

struct Options {
  std::string scene = "-";
  bool json = false;
  bool canonical_flatness = false;
  std::vector<std::string> basepoints;
  std::string fixture;
  std::string format = "off";
};

// Scene-level failure that maps straight to an exit code.
struct Failure {
  int code;
  std::string message;
};

SceneFile read_scene(const Options& opt, std::istream& in) {
  if (opt.scene == "-") {
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scene_text(buffer.str());
  }
  return parse_scene(opt.scene);
}

Scene load(const Options& opt, std::istream& in) {
  SceneFile file = read_scene(opt, in);
  if (opt.canonical_flatness) file.flatness.reset();
  return load_scene(file);
}

const DiscreteConnection& need_connection(const Scene& scene) {
  if (!scene.connection) throw Failure{kExitValidation, "MissingConnection: scene has no connection"};
  return *scene.connection;
}

Basepoints parse_basepoints(const Options& opt, const OrientedSurface& surface) {
  Basepoints out;
  for (const std::string& entry : opt.basepoints) {
    auto eq = entry.rfind('=');
    if (eq == std::string::npos) {
      throw Failure{kExitParse, "ParseError: --basepoint expects <face>=<vertex>, got '" + entry + "'"};
    }
    std::string key = entry.substr(0, eq);
    VertexId v = entry.substr(eq + 1);
    const OrientedFace& face = surface.face(key);
    if (!face.contains(v)) {
      throw Error(Errc::NotIncident, "vertex '" + v + "' is not on face " + key);
    }
    out[key] = v;
  }
  return out;
}

json header() { return json{{"conventions", kConventionsVersion}}; }

void print_header(std::ostream& out) { out << "conventions: " << kConventionsVersion << "\n"; }

// ==========================================================
// ================      Subcommands       ==================
// ==========================================================

int cmd_validate(const Options& opt, std::istream& in, std::ostream& out) {
  SceneFile file = read_scene(opt, in);
  if (opt.canonical_flatness) file.flatness.reset();
  ValidationReport report = validate_scene(file);
  if (opt.json) {
    json j = header();
    j["ok"] = report.ok();
    json violations = json::array();
    for (const Violation& v : report.violations) {
      violations.push_back({{"rule", to_string(v.rule)}, {"element", v.element}, {"message", v.message}});
    }
    j["violations"] = violations;
    out << j.dump(2) << "\n";
  } else {
    print_header(out);
    if (report.ok()) {
      out << "ok\n";
    } else {
      out << report.str();
    }
  }
  return report.ok() ? kExitOk : kExitValidation;
}

int cmd_links(const Options& opt, std::istream& in, std::ostream& out) {
  Scene scene = load(opt, in);
  const OrientedSurface& s = scene.surface;
  if (opt.json) {
    json j = header();
    json links = json::object();
    for (const VertexId& v : s.vertices()) links[v] = s.link(v).labels();
    j["links"] = links;
    j["euler_characteristic"] = euler_characteristic(s);
    out << j.dump(2) << "\n";
  } else {
    print_header(out);
    for (const VertexId& v : s.vertices()) out << v << ": " << s.link(v).str() << "\n";
    out << "V-E+F = " << euler_characteristic(s) << "\n";
  }
  return kExitOk;
}

int cmd_curvature(const Options& opt, std::istream& in, std::ostream& out) {
  Scene scene = load(opt, in);
  const DiscreteConnection& conn = need_connection(scene);
  Basepoints bases = parse_basepoints(opt, scene.surface);
  std::vector<FaceReport> rows = face_reports(conn, *scene.flatness, bases);
  std::optional<Turns> net;
  std::optional<Turns> total;
  std::optional<std::int64_t> winding;
  if (conn.uniform_fiber_size()) {
    net = net_holonomy(conn);
    total = total_flatness(conn, *scene.flatness);
    winding = total_flatness_winding(conn, *scene.flatness);
  }

  if (opt.json) {
    json j = header();
    j["fiber_mode"] = conn.mode().str();
    json faces = json::array();
    for (const FaceReport& r : rows) {
      faces.push_back({{"face", r.face},
                       {"basepoint", r.basepoint},
                       {"fiber_size", r.fiber_size},
                       {"holonomy_steps", r.holonomy_steps},
                       {"curvature", r.curvature.str()},
                       {"lift", r.lift},
                       {"lift_turns", r.lift_turns.str()}});
    }
    j["faces"] = faces;
    j["net_holonomy"] = net ? json(net->str()) : json(nullptr);
    j["total_flatness"] = total ? json(total->str()) : json(nullptr);
    j["total_flatness_winding"] = winding ? json(*winding) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    print_header(out);
    out << "fiber mode: " << conn.mode().str() << "\n";
    out << std::left << std::setw(14) << "face" << std::setw(6) << "base" << std::setw(4) << "n"
        << std::setw(10) << "holonomy" << std::setw(11) << "curvature" << "lift\n";
    for (const FaceReport& r : rows) {
      out << std::setw(14) << r.face << std::setw(6) << r.basepoint << std::setw(4) << r.fiber_size
          << std::setw(10) << r.holonomy_steps << std::setw(11) << r.curvature.str() << r.lift
          << "\n";
    }
    if (net) {
      out << "net holonomy (mod 1): " << *net << "\n";
      out << "total flatness: " << *total << " (winding " << *winding << ")\n";
    } else {
      out << "fiber sizes differ; no totals\n";
    }
  }
  return kExitOk;
}

VectorField field_of(const Scene& scene) {
  return scene.field ? *scene.field : minimal_field(*scene.connection);
}

int cmd_index(const Options& opt, std::istream& in, std::ostream& out) {
  Scene scene = load(opt, in);
  need_connection(scene);
  Basepoints bases = parse_basepoints(opt, scene.surface);
  IndexReport report = totals(field_of(scene), *scene.flatness, bases);

  if (opt.json) {
    json j = header();
    j["field"] = scene.field ? "scene" : "minimal";
    json faces = json::array();
    for (const FaceIndex& f : report.faces) {
      faces.push_back({{"face", f.face},
                       {"basepoint", f.basepoint},
                       {"fiber_size", f.fiber_size},
                       {"holonomy_steps", f.holonomy_steps},
                       {"lift", f.lift},
                       {"swirl", f.swirl},
                       {"index", f.index}});
    }
    j["faces"] = faces;
    j["total_swirl"] = report.total_swirl.str();
    j["total_index"] = report.total_index;
    j["total_flatness_winding"] = report.total_flatness_winding;
    out << j.dump(2) << "\n";
  } else {
    print_header(out);
    if (!scene.field) out << "field: minimal (scene has none)\n";
    out << std::left << std::setw(14) << "face" << std::setw(6) << "base" << std::setw(4) << "n"
        << std::setw(10) << "holonomy" << std::setw(6) << "lift" << std::setw(7) << "swirl"
        << "index\n";
    for (const FaceIndex& f : report.faces) {
      out << std::setw(14) << f.face << std::setw(6) << f.basepoint << std::setw(4) << f.fiber_size
          << std::setw(10) << f.holonomy_steps << std::setw(6) << f.lift << std::setw(7) << f.swirl
          << f.index << "\n";
    }
    out << "total swirl: " << report.total_swirl << "\n";
    out << "total index: " << report.total_index << "\n";
    out << "total flatness winding: " << report.total_flatness_winding << "\n";
  }
  return kExitOk;
}

int cmd_check(const Options& opt, std::istream& in, std::ostream& out) {
  Scene scene = load(opt, in);
  need_connection(scene);
  Basepoints bases = parse_basepoints(opt, scene.surface);
  IndexReport report = totals(field_of(scene), *scene.flatness, bases);
  bool pass = report.holds();
  if (opt.json) {
    json j = header();
    j["total_index"] = report.total_index;
    j["total_flatness_winding"] = report.total_flatness_winding;
    j["total_swirl"] = report.total_swirl.str();
    j["verdict"] = pass ? "pass" : "fail";
    out << j.dump(2) << "\n";
  } else {
    print_header(out);
    out << "total index " << report.total_index << (pass ? " = " : " != ")
        << "total flatness winding " << report.total_flatness_winding << "\n";
    out << "total swirl " << report.total_swirl << "\n";
    out << (pass ? "pass" : "FAIL") << "\n";
  }
  return pass ? kExitOk : kExitTheorem;
}

int cmd_fixture(const Options& opt, std::ostream& out) {
  out << serialize_scene(fixture_scene(opt.fixture));
  return kExitOk;
}

int cmd_export(const Options& opt, std::istream& in, std::ostream& out) {
  if (opt.format != "off") throw Failure{kExitParse, "ParseError: unsupported format '" + opt.format + "'"};
  Scene scene = load(opt, in);
  out << export_off(scene.surface);
  return kExitOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ParseError:
      return kExitParse;
    case Errc::NonIntegralIndex:
    case Errc::NonIntegralTotal:
      return kExitTheorem;
    default:
      return kExitValidation;
  }
}

} // namespace

int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Combinatorial circle bundles on oriented surfaces"};
  app.require_subcommand(1);

  auto scene_arg = [&](CLI::App* sub) {
    sub->add_option("scene", opt.scene, "scene file, '-' for stdin")->capture_default_str();
    sub->add_flag("--json", opt.json, "machine-readable output");
    sub->add_flag("--canonical-flatness", opt.canonical_flatness,
                  "ignore the scene's lifts and use the least nonnegative ones");
  };
  auto basepoint_arg = [&](CLI::App* sub) {
    sub->add_option("--basepoint", opt.basepoints, "override a face basepoint, <face>=<vertex>");
  };

  CLI::App* validate = app.add_subcommand("validate", "report every validation violation");
  scene_arg(validate);
  CLI::App* links = app.add_subcommand("links", "print vertex link polygons");
  scene_arg(links);
  CLI::App* curvature = app.add_subcommand("curvature", "per-face holonomy and total flatness");
  scene_arg(curvature);
  basepoint_arg(curvature);
  CLI::App* index_cmd = app.add_subcommand("index", "per-face swirl and index with totals");
  scene_arg(index_cmd);
  basepoint_arg(index_cmd);
  CLI::App* check = app.add_subcommand("check", "total index against total flatness winding");
  scene_arg(check);
  basepoint_arg(check);
  CLI::App* fixture = app.add_subcommand("fixture", "emit a built-in scene");
  fixture->add_option("name", opt.fixture, "octahedron, icosahedron, tetrahedron or torus")
      ->required();
  CLI::App* exporter = app.add_subcommand("export", "export geometry");
  exporter->add_option("--format", opt.format, "output format (off)")->capture_default_str();
  exporter->add_option("scene", opt.scene, "scene file, '-' for stdin")->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt, in, out);
    if (links->parsed()) return cmd_links(opt, in, out);
    if (curvature->parsed()) return cmd_curvature(opt, in, out);
    if (index_cmd->parsed()) return cmd_index(opt, in, out);
    if (check->parsed()) return cmd_check(opt, in, out);
    if (fixture->parsed()) return cmd_fixture(opt, out);
    if (exporter->parsed()) return cmd_export(opt, in, out);
  } catch (const Failure& f) {
    err << f.message << "\n";
    return f.code;
  } catch (const ValidationError& e) {
    err << e.report().str();
    return kExitValidation;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitParse;
}

} // namespace polybundle
