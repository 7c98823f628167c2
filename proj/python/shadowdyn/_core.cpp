#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "shadowdyn/cantor.hpp"
#include "shadowdyn/chain_recurrence.hpp"
#include "shadowdyn/expansivity.hpp"
#include "shadowdyn/serialize.hpp"
#include "shadowdyn/shadowing.hpp"

namespace py = pybind11;
using namespace shadowdyn;

namespace {

using CatNs = Product<ToralAutomorphism, NorthSouth>;

template <class F>
auto with_system(const std::string& name, F&& f) {
  if (name == "cat") return f(ToralAutomorphism::cat());
  if (name == "shift") return f(FullShift());
  if (name == "cube") return f(CubeShift());
  if (name == "ns") return f(NorthSouth());
  if (name == "product") return f(CatNs());
  throw std::invalid_argument("unknown system: " + name);
}

template <class F>
auto with_gridded_system(const std::string& name, F&& f) {
  if (name == "cat") return f(ToralAutomorphism::cat());
  if (name == "ns") return f(NorthSouth());
  if (name == "product") return f(CatNs());
  throw std::invalid_argument("chain recurrence supports cat, ns and product, not " + name);
}

template <class S>
PointOf<S> point_from(const std::string& text) {
  return PointCodec<PointOf<S>>::from_json(Json::parse(text));
}

std::string shadow_json(const std::string& system, const std::string& points, std::int64_t lo, double eps) {
  return with_system(system, [&](const auto& sys) {
    using S = std::decay_t<decltype(sys)>;
    std::vector<PointOf<S>> pts;
    for (const auto& p : Json::parse(points)) pts.push_back(PointCodec<PointOf<S>>::from_json(p));
    const PseudoOrbit<S> po(sys, lo, std::move(pts));
    const auto r = shadow(po, eps);
    return Json{{"point", point_to_json(r.point)}, {"achieved_eps", r.achieved_eps}, {"defect", defect(po)}, {"details", r.details}}.dump();
  });
}

std::string iterate_json(const std::string& system, const std::string& point, std::int64_t n) {
  return with_system(system, [&](const auto& sys) {
    using S = std::decay_t<decltype(sys)>;
    return point_to_json(iterate(sys, point_from<S>(point), n)).dump();
  });
}

std::string modulus_json(const std::string& system, double eps, std::uint64_t seed) {
  return with_system(system, [&](const auto& sys) { return modulus(sys, eps, seed).to_json().dump(); });
}

std::string cantor_json(const std::string& system, const std::string& point, double eps, int k_max, std::int64_t horizon, std::uint64_t seed,
                        const std::string& direction) {
  const Direction d = direction == "stable" ? Direction::STABLE : Direction::UNSTABLE;
  return with_system(system, [&](const auto& sys) {
    using S = std::decay_t<decltype(sys)>;
    return cantor_to_json(build(sys, point_from<S>(point), eps, k_max, horizon, seed, d)).dump();
  });
}

std::string chain_json(const std::string& system, const std::vector<int>& resolution, double delta, std::uint64_t seed) {
  return with_gridded_system(system, [&](const auto& sys) {
    GraphOptions opt;
    opt.delta = delta;
    opt.seed = seed;
    const auto g = build_graph(sys, BoxGrid(resolution), opt);
    const auto cls = chain_classes(g);
    Json j = cls.summary();
    j["class_of"] = cls.class_of;
    j["delta"] = g.delta();
    return j.dump();
  });
}

std::string sensitivity_json(const std::string& system, std::int64_t samples, const std::vector<double>& radii, std::int64_t horizon,
                             std::uint64_t seed) {
  return with_system(system, [&](const auto& sys) { return sensitivity_lower_bound(sys, samples, radii, horizon, seed).to_json().dump(); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "JSON bridge to the shadowdyn core; the Python package decodes the results.";

  m.attr("DynamicsError") = py::handle(PyErr_NewException("shadowdyn._core.DynamicsError", PyExc_RuntimeError, nullptr));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DynamicsError& e) {
      const py::object type = py::module_::import("shadowdyn._core").attr("DynamicsError");
      py::object err = type(e.what());
      err.attr("certificate_json") = e.certificate().to_json().dump();
      PyErr_SetObject(type.ptr(), err.ptr());
    }
  });

  m.def("shadow", &shadow_json, py::arg("system"), py::arg("points"), py::arg("lo") = 0, py::arg("eps") = kNoBound);
  m.def("iterate", &iterate_json, py::arg("system"), py::arg("point"), py::arg("n"));
  m.def("modulus", &modulus_json, py::arg("system"), py::arg("eps"), py::arg("seed") = 0);
  m.def("cantor", &cantor_json, py::arg("system"), py::arg("point"), py::arg("eps"), py::arg("k_max"), py::arg("horizon") = 50,
        py::arg("seed") = 0, py::arg("direction") = "unstable");
  m.def("chain_classes", &chain_json, py::arg("system"), py::arg("resolution"), py::arg("delta") = 0.0, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("sensitivity", &sensitivity_json, py::arg("system"), py::arg("samples"), py::arg("radii"), py::arg("horizon") = 30,
        py::arg("seed") = 0);
}
