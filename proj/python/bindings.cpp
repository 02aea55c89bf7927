#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diswl/counterexamples.hpp"
#include "diswl/disgnn.hpp"
#include "diswl/geometry.hpp"
#include "diswl/io.hpp"
#include "diswl/parallel.hpp"
#include "diswl/wl_engine.hpp"

namespace py = pybind11;
using namespace diswl;

namespace {

using Coords = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

PointCloud cloud_from(const Coords& xyz, std::optional<std::vector<std::int64_t>> labels) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(xyz.rows()));
  for (Eigen::Index i = 0; i < xyz.rows(); ++i) pts.emplace_back(xyz(i, 0), xyz(i, 1), xyz(i, 2));
  return build_point_cloud(std::move(pts), std::move(labels));
}

Coords coords_of(const PointCloud& pc) {
  Coords out(static_cast<Eigen::Index>(pc.size()), 3);
  for (std::size_t i = 0; i < pc.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = pc[i].transpose();
  return out;
}

RefinementConfig refinement(const std::string& method, int k, std::optional<int> rounds, double tol) {
  RefinementConfig c;
  c.method = parse_method(method);
  c.k = k;
  c.rounds = rounds;
  c.tol = tol;
  return c;
}

// Reports cross the boundary as plain dicts.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

CounterexamplePair make_pair(const std::string& family, double a, double b, const std::string& variant,
                             const std::string& layers, const std::string& base) {
  if (family == "cubeocta")
    return cube_octahedron_pair(a, b, variant == "blue" ? CubeOctaVariant::blue : CubeOctaVariant::red);
  if (family == "twocubes") return two_cubes_pair(a, b);
  if (family == "aug") {
    const auto v = parse_base(base);
    if (!v) throw std::invalid_argument("unknown base: " + base);
    return augment_pair(base_pair(*v), parse_layers(layers));
  }
  const auto v = parse_base(family);
  if (!v) throw std::invalid_argument("unknown family: " + family);
  return base_pair(*v);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distance-graph WL tests, counterexample generators and DisGNN forward passes.";
  m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;
  py::register_exception<XyzError>(m, "XyzError", PyExc_ValueError);

  py::class_<PointCloud>(m, "PointCloud")
      .def(py::init(&cloud_from), py::arg("coords"), py::arg("labels") = py::none())
      .def_property_readonly("coords", &coords_of)
      .def_property_readonly("labels", &PointCloud::labels)
      .def("__len__", &PointCloud::size)
      .def("__eq__", [](const PointCloud& a, const PointCloud& b) { return a == b; })
      .def("permuted", [](const PointCloud& pc, std::vector<std::size_t> perm) { return pc.permuted(perm); })
      .def("__repr__", [](const PointCloud& pc) { return "PointCloud(n=" + std::to_string(pc.size()) + ")"; });

  py::class_<CounterexamplePair>(m, "CounterexamplePair")
      .def_readonly("left", &CounterexamplePair::left)
      .def_readonly("right", &CounterexamplePair::right)
      .def_readonly("family", &CounterexamplePair::family)
      .def_readonly("params", &CounterexamplePair::params)
      .def_property_readonly("expected_kinds", [](const CounterexamplePair& p) -> py::object {
        if (!p.expected_kinds) return py::none();
        return to_py(to_json(*p.expected_kinds));
      });

  m.def("parse_xyz", [](const std::string& text) { return parse_xyz(text); }, py::arg("text"));
  m.def("write_xyz", [](const PointCloud& pc, const std::string& comment) { return write_xyz(pc, comment); },
        py::arg("cloud"), py::arg("comment") = "");
  m.def("distance_matrix", &distance_matrix, py::arg("cloud"));
  m.def("random_image",
        [](const PointCloud& pc, std::uint64_t seed) {
          return apply_e3(pc, random_e3(seed)).permuted(random_permutation(pc.size(), seed));
        },
        py::arg("cloud"), py::arg("seed"), "Seeded rotation/reflection, translation and node permutation.");

  m.def("family_names", &family_names);
  m.def("generate", &make_pair, py::arg("family"), py::arg("a") = 1.0, py::arg("b") = 1.5,
        py::arg("variant") = "red", py::arg("layers") = "ori:1.0,all:2.0", py::arg("base") = "fig2");

  m.def("congruent",
        [](const PointCloud& a, const PointCloud& b, double tol) { return to_py(to_json(congruent_bruteforce(a, b, tol))); },
        py::arg("left"), py::arg("right"), py::arg("tol") = kDefaultTolerance);

  m.def("distinguish",
        [](const PointCloud& a, const PointCloud& b, const std::string& method, int k, std::optional<int> rounds,
           double tol) {
          Verdict v;
          {
            py::gil_scoped_release release;
            v = distinguish(a, b, refinement(method, k, rounds, tol));
          }
          return to_py(to_json(v));
        },
        py::arg("left"), py::arg("right"), py::arg("method") = "wl1e", py::arg("k") = 2,
        py::arg("rounds") = py::none(), py::arg("tol") = kDefaultTolerance);

  m.def("refine",
        [](const PointCloud& pc, const std::string& method, int k, std::optional<int> rounds, double tol) {
          const auto g = make_graphs(std::span<const PointCloud>(&pc, 1), tol);
          return to_py(to_json(refine(g.front(), refinement(method, k, rounds, tol))));
        },
        py::arg("cloud"), py::arg("method") = "wl1e", py::arg("k") = 2, py::arg("rounds") = py::none(),
        py::arg("tol") = kDefaultTolerance);

  m.def("verify", [](const CounterexamplePair& p, double tol) {
        return to_py(verification_json(p, verify_counterexample(p, tol), tol));
      },
      py::arg("pair"), py::arg("tol") = kDefaultTolerance);

  m.def("forward",
        [](const PointCloud& pc, const std::string& variant, int k, int rounds, std::uint64_t seed, int hidden_dim,
           int rbf_dim, int label_dim) {
          ModelConfig c;
          c.variant = parse_variant(variant);
          c.k = k;
          c.rounds = rounds;
          c.seed = seed;
          c.hidden_dim = hidden_dim;
          c.rbf_dim = rbf_dim;
          c.label_embed_dim = label_dim;
          const auto out = forward(pc, c);
          py::dict d;
          d["scalar"] = out.scalar;
          d["equivariant"] = Eigen::Vector3d(out.equivariant);
          d["node_reps"] = Eigen::MatrixXd(out.node_reps);
          return d;
        },
        py::arg("cloud"), py::arg("variant") = "f", py::arg("k") = 2, py::arg("rounds") = 3, py::arg("seed") = 0,
        py::arg("hidden_dim") = 32, py::arg("rbf_dim") = 16, py::arg("label_dim") = 8);

  m.def("set_threads", &set_thread_count, py::arg("n"));
  m.def("threads", &thread_count);
}
