// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "reeb/augmented.hpp"
#include "reeb/bench.hpp"
#include "reeb/curves.hpp"
#include "reeb/error.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/mesh_io.hpp"
#include "reeb/morse.hpp"
#include "reeb/oracle.hpp"
#include "reeb/reeb_par.hpp"
#include "reeb/reeb_seq.hpp"

using namespace reeb;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Global {
  bool quiet = false;
  bool json_out = false;
  std::uint64_t seed = 0;
};

Global g_opts;

void info(const std::string& line) {
  if (!g_opts.quiet && !g_opts.json_out) std::cout << line << '\n';
}

void emit(const json& doc) {
  if (g_opts.json_out) std::cout << doc.dump(2) << '\n';
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

ScalarField load_field(const Mesh& mesh, const std::string& arg) {
  if (arg == "x") return field_from_axis(mesh, Axis::X);
  if (arg == "y") return field_from_axis(mesh, Axis::Y);
  if (arg == "z") return field_from_axis(mesh, Axis::Z);
  return load_scalar_field(mesh, arg);
}

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_graph(const ReebGraph& graph, const std::string& out, const std::string& dot) {
  if (!out.empty()) open_out(out) << to_json(graph).dump(1) << '\n';
  if (!dot.empty()) {
    auto f = open_out(dot);
    write_dot(f, graph);
  }
}

json census_json(const Segmentation& seg) {
  json segs = json::array();
  for (const auto& s : seg.segments)
    segs.push_back({{"chi", s.chi}, {"boundaries", s.boundaries}, {"faces", s.faces}});
  return {{"circles", seg.circles}, {"segments", segs}};
}

json graph_summary(const ReebGraph& g) {
  return {{"nodes", g.num_nodes()}, {"arcs", g.num_arcs()}, {"betti1", g.betti1()},
          {"components", g.num_components()}};
}

std::vector<unsigned> parse_list(const std::string& s) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const long v = std::stol(item);
      if (v <= 0) throw InputError("worker counts must be positive: " + s);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::logic_error&) {
      throw InputError("bad worker list: " + s);
    }
  }
  if (out.empty()) throw InputError("empty worker list");
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Augmented Reeb graphs of PL functions on triangle meshes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("-q,--quiet", g_opts.quiet, "Suppress informational output");
  app.add_flag("--json", g_opts.json_out, "Print machine-readable JSON");
  app.add_option("--seed", g_opts.seed, "Seed for fixture generation");

  std::string mesh_path, field_arg, out, dot;

  auto* gen = app.add_subcommand("gen", "Generate a fixture mesh and field");
  std::string kind;
  int res = 8;
  gen->add_option("kind", kind, "Fixture kind")->required();
  gen->add_option("--res", res, "Resolution");
  gen->add_option("--out", out, "Output prefix (writes .off and .field)")->required();

  auto* classify = app.add_subcommand("classify", "Critical point census");
  classify->add_option("mesh", mesh_path)->required();
  classify->add_option("field", field_arg, "Field file or x|y|z")->required();

  auto* compute = app.add_subcommand("compute", "Compute the augmented Reeb graph");
  std::string algo = "seq";
  unsigned workers = 1;
  int cuts = -1;
  compute->add_option("mesh", mesh_path)->required();
  compute->add_option("field", field_arg)->required();
  compute->add_option("--algo", algo)->check(CLI::IsMember({"seq", "par"}));
  compute->add_option("--workers", workers)->check(CLI::PositiveNumber);
  compute->add_option("--cuts", cuts, "Number of cuts (default workers - 1)");
  compute->add_option("--out", out, "Graph JSON");
  compute->add_option("--dot", dot, "Graphviz output");

  auto* extract = app.add_subcommand("extract", "Map a graph point back to the mesh");
  std::string graph_path;
  long arc = -1, node = -1;
  double t = 0.5;
  extract->add_option("graph", graph_path)->required();
  extract->add_option("mesh", mesh_path)->required();
  extract->add_option("field", field_arg)->required();
  extract->add_option("--arc", arc);
  extract->add_option("--t", t);
  extract->add_option("--node", node);
  extract->add_option("--out", out, "OBJ polyline output")->required();

  auto* curves = app.add_subcommand("curves", "Extract curve families and segment the mesh");
  std::string curve_kind = "cutsystem";
  curves->add_option("mesh", mesh_path)->required();
  curves->add_option("field", field_arg)->required();
  curves->add_option("--kind", curve_kind)->check(CLI::IsMember({"cutsystem", "pants", "branch"}));
  curves->add_option("--out", out, "Output prefix")->required();

  auto* oracle = app.add_subcommand("oracle", "Level-sweep reference graph");
  oracle->add_option("mesh", mesh_path)->required();
  oracle->add_option("field", field_arg)->required();
  oracle->add_option("--out", out);

  auto* verify = app.add_subcommand("verify", "Check two graph files for isomorphism");
  std::string a_path, b_path;
  verify->add_option("a", a_path)->required();
  verify->add_option("b", b_path)->required();

  auto* bench = app.add_subcommand("bench", "Time the engines over worker counts");
  std::string worker_list = "1,2,4";
  unsigned repeats = 3;
  std::string fixture;
  bench->add_option("mesh", mesh_path, "Mesh file (omit with --fixture)");
  bench->add_option("field", field_arg);
  bench->add_option("--fixture", fixture, "Generate this fixture kind instead");
  bench->add_option("--res", res);
  bench->add_option("--workers", worker_list);
  bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
  bench->add_option("--cuts", cuts);
  bench->add_option("--out", out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*gen) {
    auto fx = gen_fixture(kind, res, g_opts.seed);
    save_mesh(out + ".off", fx.mesh);
    save_scalar_field(out + ".field", fx.field);
    info(fx.name + ": " + std::to_string(fx.mesh.num_vertices()) + " vertices, chi " +
         std::to_string(fx.mesh.euler_characteristic()));
    emit({{"kind", kind}, {"vertices", fx.mesh.num_vertices()},
          {"faces", fx.mesh.num_faces()}, {"chi", fx.mesh.euler_characteristic()}});
    return 0;
  }
  if (*verify) {
    const auto a = graph_from_json(load_json(a_path));
    const auto b = graph_from_json(load_json(b_path));
    const auto r = graphs_isomorphic(a, b);
    info(std::string(r.isomorphic ? "isomorphic: " : "not isomorphic: ") + r.witness);
    emit({{"isomorphic", r.isomorphic}, {"witness", r.witness}});
    return r.isomorphic ? 0 : 2;
  }

  std::optional<Fixture> generated;
  if (*bench && !fixture.empty()) generated = gen_fixture(fixture, res, g_opts.seed);
  if (!generated && mesh_path.empty()) throw InputError("a mesh is required");
  if (!generated && field_arg.empty()) throw InputError("a field is required");
  const Mesh mesh = generated ? generated->mesh : load_mesh(mesh_path);
  const ScalarField field = generated ? generated->field : load_field(mesh, field_arg);

  if (*classify) {
    const auto inv = build_inventory(mesh, field);
    const auto boundary = validate_morse_boundary(mesh, field);
    std::ostringstream line;
    line << "vertices " << mesh.num_vertices() << ", chi " << mesh.euler_characteristic()
         << ", minima " << inv.minima << ", maxima " << inv.maxima << ", saddles " << inv.saddles
         << " (multiplicity " << inv.total_multiplicity << "), boundary loops "
         << mesh.boundary_loops().size();
    info(line.str());
    for (const auto& v : boundary.violations) info("boundary violation: " + v.reason);
    json crit = json::array();
    for (const auto& c : inv.sorted)
      crit.push_back({{"vertex", c.vertex}, {"rank", c.rank}, {"kind", to_string(c.kind)},
                      {"multiplicity", c.multiplicity}});
    emit({{"vertices", mesh.num_vertices()}, {"chi", mesh.euler_characteristic()},
          {"minima", inv.minima}, {"maxima", inv.maxima}, {"saddles", inv.saddles},
          {"saddle_multiplicity", inv.total_multiplicity}, {"critical", crit},
          {"boundary_clean", boundary.clean()}});
    return boundary.clean() ? 0 : 2;
  }
  if (*compute) {
    ParallelReport report;
    const auto graph = algo == "seq" ? reeb_sequential(mesh, field)
                                     : reeb_parallel(mesh, field, {workers, cuts}, &report);
    write_graph(graph, out, dot);
    for (const auto& w : report.warnings) info("warning: " + w);
    info("nodes " + std::to_string(graph.num_nodes()) + ", arcs " +
         std::to_string(graph.num_arcs()) + ", betti1 " + std::to_string(graph.betti1()));
    json doc = graph_summary(graph);
    if (algo == "par") {
      doc["thresholds"] = report.thresholds;
      doc["slab_sizes"] = report.slab_sizes;
      doc["tasks"] = report.tasks;
      doc["warnings"] = report.warnings;
    }
    emit(doc);
    return 0;
  }
  if (*oracle) {
    const auto graph = sweep_reeb(mesh, field);
    write_graph(graph, out, "");
    info("nodes " + std::to_string(graph.num_nodes()) + ", arcs " +
         std::to_string(graph.num_arcs()) + ", betti1 " + std::to_string(graph.betti1()));
    emit(graph_summary(graph));
    return 0;
  }
  if (*extract) {
    const auto graph = graph_from_json(load_json(graph_path));
    std::vector<std::vector<Vec3>> lines;
    std::vector<bool> closed;
    json doc;
    if ((arc >= 0) == (node >= 0)) throw InputError("give exactly one of --arc or --node");
    if (arc >= 0) {
      const auto c = point_to_circle(graph, mesh, field,
                                     GraphPoint::on_arc(static_cast<ArcId>(arc), t));
      lines.push_back(c.polyline);
      closed.push_back(c.cycle.closed);
      doc = {{"arc", arc}, {"t", t}, {"level", c.level}, {"seed", c.seed},
             {"edges", c.cycle.edges}, {"closed", c.cycle.closed}};
      info("level " + std::to_string(c.level) + ", " + std::to_string(c.cycle.edges.size()) +
           " crossing edges");
    } else {
      const auto set = node_to_set(graph, mesh, field, static_cast<NodeId>(node));
      if (set.critical) {
        const VertexId p = set.critical->vertex;
        const double level = field.value(p);
        for (const auto& comp : set.critical->components) {
          std::vector<Vec3> line;
          if (comp.crossing_edges.empty()) line.push_back(mesh.position(p));
          for (EdgeId e : comp.crossing_edges) line.push_back(crossing_point(mesh, field, e, level));
          lines.push_back(std::move(line));
          closed.push_back(!comp.crossing_edges.empty());
        }
        doc = {{"node", node}, {"vertex", p}, {"components", set.critical->components.size()}};
      } else {
        std::vector<Vec3> line;
        for (VertexId v : set.loop_vertices) line.push_back(mesh.position(v));
        lines.push_back(std::move(line));
        closed.push_back(true);
        doc = {{"node", node}, {"loop_vertices", set.loop_vertices}};
      }
      info("wrote " + std::to_string(lines.size()) + " component(s)");
    }
    auto f = open_out(out);
    write_obj_polylines(f, lines, closed);
    emit(doc);
    return 0;
  }
  if (*curves) {
    const auto graph = reeb_sequential(mesh, field);
    const auto circles = curve_kind == "cutsystem" ? cutting_system(graph, mesh, field)
                         : curve_kind == "pants"   ? pants_curves(graph, mesh, field)
                                                   : branch_curves(graph, mesh, field);
    const auto seg = cut_mesh(mesh, field, circles);
    std::vector<std::vector<Vec3>> lines;
    std::vector<bool> closed;
    for (const auto& c : circles) {
      lines.push_back(c.polyline);
      closed.push_back(c.cycle.closed);
    }
    {
      auto f = open_out(out + "_circles.obj");
      write_obj_polylines(f, lines, closed);
    }
    {
      auto f = open_out(out + "_labels.csv");
      f << "face,origin_face,label\n";
      for (FaceId i = 0; i < seg.labels.size(); ++i)
        f << i << ',' << seg.origin_face[i] << ',' << seg.labels[i] << '\n';
    }
    save_mesh(out + "_cut.off", seg.mesh);
    const auto census = census_json(seg);
    open_out(out + "_census.json") << census.dump(2) << '\n';
    std::ostringstream line;
    line << circles.size() << " circle(s), " << seg.segments.size() << " segment(s):";
    for (const auto& s : seg.segments) line << " (chi " << s.chi << ", " << s.boundaries << " loops)";
    info(line.str());
    emit(census);
    return 0;
  }
  if (*bench) {
    const auto records = run_bench(mesh, field, generated ? generated->name : mesh_path,
                                   parse_list(worker_list), repeats, cuts);
    if (out.empty()) {
      if (!g_opts.json_out) write_bench_csv(std::cout, records);
    } else {
      auto f = open_out(out);
      write_bench_csv(f, records);
    }
    json rows = json::array();
    for (const auto& r : records)
      rows.push_back({{"workers", r.workers}, {"seconds", r.seconds}, {"speedup", r.speedup},
                      {"efficiency", r.efficiency}});
    emit(rows);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
