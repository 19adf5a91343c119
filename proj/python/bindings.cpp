// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reeb/augmented.hpp"
#include "reeb/curves.hpp"
#include "reeb/error.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/mesh_io.hpp"
#include "reeb/morse.hpp"
#include "reeb/oracle.hpp"
#include "reeb/reeb_par.hpp"
#include "reeb/reeb_seq.hpp"

namespace py = pybind11;
using namespace reeb;

namespace {

Mesh mesh_from_lists(const std::vector<std::array<double, 3>>& positions,
                     const std::vector<Triangle>& faces) {
  std::vector<Vec3> pos;
  pos.reserve(positions.size());
  for (const auto& p : positions) pos.push_back({p[0], p[1], p[2]});
  return Mesh::build(std::move(pos), faces);
}

std::vector<std::array<double, 3>> as_lists(const std::vector<Vec3>& pts) {
  std::vector<std::array<double, 3>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({p.x, p.y, p.z});
  return out;
}

py::dict inventory_dict(const CriticalInventory& inv) {
  py::list crit;
  for (const auto& c : inv.sorted)
    crit.append(py::dict(py::arg("vertex") = c.vertex, py::arg("rank") = c.rank,
                         py::arg("kind") = to_string(c.kind),
                         py::arg("multiplicity") = c.multiplicity));
  return py::dict(py::arg("minima") = inv.minima, py::arg("maxima") = inv.maxima,
                  py::arg("saddles") = inv.saddles,
                  py::arg("saddle_multiplicity") = inv.total_multiplicity,
                  py::arg("critical") = crit);
}

}  // namespace

PYBIND11_MODULE(_reeb, m) {
  m.doc() = "Augmented Reeb graphs of PL functions on triangle meshes";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<Mesh>(m, "Mesh")
      .def(py::init(&mesh_from_lists), py::arg("positions"), py::arg("faces"))
      .def_property_readonly("num_vertices", &Mesh::num_vertices)
      .def_property_readonly("num_edges", &Mesh::num_edges)
      .def_property_readonly("num_faces", &Mesh::num_faces)
      .def_property_readonly("num_components", &Mesh::num_components)
      .def_property_readonly("positions", [](const Mesh& me) { return as_lists(me.positions()); })
      .def_property_readonly("faces", &Mesh::faces)
      .def_property_readonly("boundary_loops", &Mesh::boundary_loops)
      .def("euler_characteristic", &Mesh::euler_characteristic);

  py::class_<ScalarField>(m, "ScalarField")
      .def(py::init<std::vector<double>>(), py::arg("values"))
      .def_property_readonly("values", &ScalarField::values)
      .def("rank", &ScalarField::rank)
      .def("__len__", &ScalarField::size);

  py::class_<Fixture>(m, "Fixture")
      .def_readonly("name", &Fixture::name)
      .def_readonly("mesh", &Fixture::mesh)
      .def_readonly("field", &Fixture::field)
      .def_readonly("genus", &Fixture::genus);

  py::class_<ReebNode>(m, "ReebNode")
      .def_readonly("id", &ReebNode::id)
      .def_property_readonly("kind", [](const ReebNode& n) { return to_string(n.kind); })
      .def_readonly("vertex", &ReebNode::vertex)
      .def_readonly("loop", &ReebNode::loop)
      .def_readonly("level", &ReebNode::level);

  py::class_<ReebArc>(m, "ReebArc")
      .def_readonly("id", &ReebArc::id)
      .def_readonly("lo", &ReebArc::lo)
      .def_readonly("hi", &ReebArc::hi)
      .def_readonly("embedding", &ReebArc::embedding);

  py::class_<ReebGraph>(m, "ReebGraph")
      .def_property_readonly("nodes", &ReebGraph::nodes)
      .def_property_readonly("arcs", &ReebGraph::arcs)
      .def_property_readonly("num_nodes", &ReebGraph::num_nodes)
      .def_property_readonly("num_arcs", &ReebGraph::num_arcs)
      .def("betti1", &ReebGraph::betti1)
      .def("degrees", &ReebGraph::degrees)
      .def("to_json", [](const ReebGraph& g) { return to_json(g).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return graph_from_json(nlohmann::json::parse(s)); })
      .def("__eq__", [](const ReebGraph& a, const ReebGraph& b) { return a == b; });

  py::class_<EmbeddedCircle>(m, "EmbeddedCircle")
      .def_readonly("level", &EmbeddedCircle::level)
      .def_readonly("seed", &EmbeddedCircle::seed)
      .def_readonly("arc", &EmbeddedCircle::arc)
      .def_readonly("t", &EmbeddedCircle::t)
      .def_property_readonly("edges", [](const EmbeddedCircle& c) { return c.cycle.edges; })
      .def_property_readonly("closed", [](const EmbeddedCircle& c) { return c.cycle.closed; })
      .def_property_readonly("polyline", [](const EmbeddedCircle& c) { return as_lists(c.polyline); });

  py::class_<SegmentCensus>(m, "SegmentCensus")
      .def_readonly("chi", &SegmentCensus::chi)
      .def_readonly("boundaries", &SegmentCensus::boundaries)
      .def_readonly("faces", &SegmentCensus::faces);

  py::class_<Segmentation>(m, "Segmentation")
      .def_readonly("mesh", &Segmentation::mesh)
      .def_readonly("labels", &Segmentation::labels)
      .def_readonly("origin_face", &Segmentation::origin_face)
      .def_readonly("segments", &Segmentation::segments);

  m.def("fixture_kinds", &fixture_kinds);
  m.def("gen_fixture", &gen_fixture, py::arg("kind"), py::arg("res"), py::arg("seed") = 0);
  m.def("load_mesh", [](const std::string& path) { return load_mesh(path); }, py::arg("path"));
  m.def("load_field", [](const Mesh& me, const std::string& path) { return load_scalar_field(me, path); },
        py::arg("mesh"), py::arg("path"));
  m.def("classify",
        [](const Mesh& me, const ScalarField& f) { return inventory_dict(build_inventory(me, f)); },
        py::arg("mesh"), py::arg("field"));
  m.def("reeb_sequential", &reeb_sequential, py::arg("mesh"), py::arg("field"),
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "reeb_parallel",
      [](const Mesh& me, const ScalarField& f, unsigned workers, int cuts) {
        return reeb_parallel(me, f, {workers, cuts});
      },
      py::arg("mesh"), py::arg("field"), py::arg("workers") = 2, py::arg("cuts") = -1,
      py::call_guard<py::gil_scoped_release>());
  m.def("sweep_reeb", &sweep_reeb, py::arg("mesh"), py::arg("field"));
  m.def(
      "isomorphic",
      [](const ReebGraph& a, const ReebGraph& b) {
        const auto r = graphs_isomorphic(a, b);
        return py::make_tuple(r.isomorphic, r.witness);
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "point_to_circle",
      [](const ReebGraph& g, const Mesh& me, const ScalarField& f, ArcId arc, double t) {
        return point_to_circle(g, me, f, GraphPoint::on_arc(arc, t));
      },
      py::arg("graph"), py::arg("mesh"), py::arg("field"), py::arg("arc"), py::arg("t"));
  m.def("arc_length_table", py::overload_cast<const std::vector<double>&, double>(&arc_length_table),
        py::arg("values"), py::arg("delta") = 0.0);
  m.def("cutting_system", &cutting_system, py::arg("graph"), py::arg("mesh"), py::arg("field"),
        py::arg("t") = kCurveParameter);
  m.def("pants_curves", &pants_curves, py::arg("graph"), py::arg("mesh"), py::arg("field"));
  m.def("branch_curves", &branch_curves, py::arg("graph"), py::arg("mesh"), py::arg("field"),
        py::arg("offset") = kBranchOffset);
  m.def("cut_mesh", &cut_mesh, py::arg("mesh"), py::arg("field"), py::arg("circles"));
}
