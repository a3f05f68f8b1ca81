#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minsum/decompose.hpp"
#include "minsum/instance.hpp"
#include "minsum/msd.hpp"
#include "minsum/msr.hpp"
#include "minsum/oracles.hpp"
#include "minsum/variants.hpp"

namespace py = pybind11;
using namespace minsum;

namespace {

SolveOptions options_for(std::size_t threads) {
  SolveOptions opt;
  opt.threads = threads;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_minsum, m) {
  py::register_exception<MetricError>(m, "MetricError", PyExc_ValueError);
  py::register_exception<DocumentError>(m, "DocumentError", PyExc_ValueError);
  py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge", PyExc_ValueError);

  py::class_<MetricSpace>(m, "MetricSpace")
      .def_static("from_points", &MetricSpace::from_points, py::arg("coords"))
      .def_static("from_matrix", &MetricSpace::from_matrix, py::arg("rows"))
      .def("__len__", &MetricSpace::size)
      .def("distance", &MetricSpace::distance)
      .def_property_readonly("diameter", &MetricSpace::diameter)
      .def_property_readonly("is_euclidean", &MetricSpace::is_euclidean);

  py::class_<Ball>(m, "Ball")
      .def(py::init<>())
      .def(py::init([](PointId c, double r) { return Ball{c, r}; }), py::arg("center"),
           py::arg("radius"))
      .def_readwrite("center", &Ball::center)
      .def_readwrite("radius", &Ball::radius)
      .def("__eq__", [](const Ball& a, const Ball& b) { return a == b; })
      .def("__repr__", [](const Ball& b) {
        return "Ball(center=" + std::to_string(b.center) + ", radius=" + py::repr(py::float_(b.radius)).cast<std::string>() + ")";
      });

  py::class_<BallSolution>(m, "BallSolution")
      .def(py::init<>())
      .def_readwrite("balls", &BallSolution::balls)
      .def_readwrite("outliers", &BallSolution::outliers)
      .def("__eq__", [](const BallSolution& a, const BallSolution& b) { return a == b; });

  py::class_<Cluster>(m, "Cluster")
      .def(py::init<>())
      .def_readwrite("members", &Cluster::members)
      .def_readwrite("tag", &Cluster::tag);

  py::class_<PartitionSolution>(m, "PartitionSolution")
      .def(py::init<>())
      .def_readwrite("clusters", &PartitionSolution::clusters)
      .def_readwrite("outliers", &PartitionSolution::outliers)
      .def("__eq__",
           [](const PartitionSolution& a, const PartitionSolution& b) { return a == b; });

  py::class_<FairSpec>(m, "FairSpec")
      .def(py::init([](std::vector<std::size_t> colors, std::vector<std::size_t> caps) {
             return FairSpec{std::move(colors), std::move(caps)};
           }),
           py::arg("colors"), py::arg("caps"))
      .def_readwrite("colors", &FairSpec::colors)
      .def_readwrite("caps", &FairSpec::caps)
      .def_property_readonly("k", &FairSpec::k);

  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("components", &Decomposition::components)
      .def_readonly("L", &Decomposition::L)
      .def_readonly("beta", &Decomposition::beta)
      .def_readonly("R", &Decomposition::R)
      .def_readonly("psi", &Decomposition::psi)
      .def_readonly("zero_cost", &Decomposition::zero_cost);

  m.def("ball_cost", py::overload_cast<const MetricSpace&, const BallSolution&, double>(&solution_cost),
        py::arg("space"), py::arg("solution"), py::arg("alpha") = 1.0);
  m.def("partition_cost",
        py::overload_cast<const MetricSpace&, const PartitionSolution&, double>(&solution_cost),
        py::arg("space"), py::arg("solution"), py::arg("alpha") = 1.0);
  m.def("verify_balls",
        py::overload_cast<const MetricSpace&, const BallSolution&, std::size_t, std::size_t>(&verify),
        py::arg("space"), py::arg("solution"), py::arg("k"), py::arg("g") = 0);
  m.def("verify_partition",
        py::overload_cast<const MetricSpace&, const PartitionSolution&, std::size_t, std::size_t>(
            &verify),
        py::arg("space"), py::arg("solution"), py::arg("k"), py::arg("g") = 0);

  m.def("decompose",
        [](const MetricSpace& s, std::size_t k, std::size_t g, bool msd) {
          return decompose(s, k, g, msd ? Problem::msd : Problem::msr);
        },
        py::arg("space"), py::arg("k"), py::arg("g") = 0, py::arg("msd") = false);

  auto release = py::call_guard<py::gil_scoped_release>();

  m.def("exact_msr", &exact_msr, py::arg("space"), py::arg("k"), py::arg("g") = 0,
        py::arg("alpha") = 1.0, release);
  m.def("approximate_msr",
        [](const MetricSpace& s, std::size_t k, double eps, std::size_t g, std::size_t threads) {
          return approximate_msr(s, k, eps, g, options_for(threads));
        },
        py::arg("space"), py::arg("k"), py::arg("eps"), py::arg("g") = 0, py::arg("threads") = 1,
        release);
  m.def("exact_msd",
        [](const MetricSpace& s, std::size_t k, std::size_t g) {
          if (g == 0) return *exact_msd(s, k);
          return exact_msd_outliers(s, k, g);
        },
        py::arg("space"), py::arg("k"), py::arg("g") = 0, release);
  m.def("approximate_msd",
        [](const MetricSpace& s, std::size_t k, double eps, std::size_t g, std::size_t threads) {
          return approximate_msd(s, k, eps, g, nullptr, options_for(threads));
        },
        py::arg("space"), py::arg("k"), py::arg("eps"), py::arg("g") = 0, py::arg("threads") = 1,
        release);
  m.def("balanced_msd",
        [](const MetricSpace& s, std::size_t k, double eps, std::vector<std::size_t> side,
           double b, bool exact) {
          const ClusterValidator v = balanced_validator(BalanceSpec{std::move(side), b});
          return exact ? exact_msd(s, k, &v) : approximate_msd(s, k, eps, 0, &v);
        },
        py::arg("space"), py::arg("k"), py::arg("eps"), py::arg("side"), py::arg("b"),
        py::arg("exact") = false, release);
  m.def("alpha_msr_approx",
        [](const MetricSpace& s, std::size_t k, double alpha, double eps, std::size_t g,
           std::size_t threads) { return alpha_msr_approx(s, k, alpha, eps, g, options_for(threads)); },
        py::arg("space"), py::arg("k"), py::arg("alpha"), py::arg("eps"), py::arg("g") = 0,
        py::arg("threads") = 1, release);
  m.def("fair_msr_approx",
        [](const MetricSpace& s, const FairSpec& fair, double eps, std::size_t g,
           std::size_t threads) { return fair_msr_approx(s, fair, eps, g, options_for(threads)); },
        py::arg("space"), py::arg("fair"), py::arg("eps"), py::arg("g") = 0,
        py::arg("threads") = 1, release);
  m.def("k_center_approx", &k_center_approx, py::arg("space"), py::arg("k"), py::arg("eps"),
        release);

  m.def("oracle_msr",
        [](const MetricSpace& s, std::size_t k, std::size_t g, double alpha,
           const FairSpec* fair) -> std::optional<BallSolution> {
          auto r = oracle_msr(s, k, g, alpha, fair);
          if (!r) return std::nullopt;
          return r->solution;
        },
        py::arg("space"), py::arg("k"), py::arg("g") = 0, py::arg("alpha") = 1.0,
        py::arg("fair") = nullptr, release);
  m.def("oracle_msd",
        [](const MetricSpace& s, std::size_t k, std::size_t g, double alpha) {
          return oracle_msd(s, k, g, alpha)->solution;
        },
        py::arg("space"), py::arg("k"), py::arg("g") = 0, py::arg("alpha") = 1.0, release);
  m.def("oracle_kcenter",
        [](const MetricSpace& s, std::size_t k) { return oracle_kcenter(s, k).solution; },
        py::arg("space"), py::arg("k"), release);

  m.def("random_euclidean",
        [](std::size_t n, std::size_t dim, std::uint64_t seed) {
          return gen_random_euclidean(n, dim, seed).space;
        },
        py::arg("n"), py::arg("dim"), py::arg("seed"));
  m.def("load_instance", [](const std::string& text) { return parse_instance(text).space; },
        py::arg("text"));
}
