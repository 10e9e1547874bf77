#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>

#include "fcpm/cli.hpp"
#include "fcpm/errors.hpp"
#include "fcpm/io.hpp"
#include "fcpm/series.hpp"
#include "fcpm/singular.hpp"

namespace py = pybind11;

namespace {

std::string describe(const fcpm::Error& e) {
  std::string msg = e.what();
  if (const auto* v = dynamic_cast<const fcpm::ValidationError*>(&e)) {
    for (const auto& c : v->conditions()) msg += "\n  " + c;
  }
  return msg;
}

std::string run_command(const std::string& options) {
  return fcpm::run_command(fcpm::options_from_json(fcpm::Json::parse(options))).dump();
}

std::string replay(const std::string& envelope) { return fcpm::replay(fcpm::Json::parse(envelope)).dump(); }

py::dict evaluate(const std::string& params, const std::vector<std::complex<double>>& x, double tol, int max_shells) {
  auto ps = fcpm::parse_params(std::string_view(params));
  auto e = std::visit(
      [&](const auto& p) {
        fcpm::require_valid(p);
        return fcpm::evaluate(p, std::span<const fcpm::Complex>(x), tol, max_shells);
      },
      ps);
  py::dict d;
  d["value"] = e.value;
  d["n_used"] = e.n_used;
  d["tail_bound"] = e.tail_bound;
  d["converged"] = e.converged;
  return d;
}

std::string singular_polynomial(int p, int m) { return fcpm::poly_to_json(fcpm::singular_polynomial(p, m)).dump(); }

}  // namespace

PYBIND11_MODULE(_fcpm, m) {
  m.doc() = "JSON-level bindings to the fcpm core";
  static py::exception<fcpm::Error> error(m, "FcpmError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const fcpm::Error& e) {
      PyErr_SetString(error.ptr(), describe(e).c_str());
    } catch (const fcpm::Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.attr("SCHEMA_VERSION") = fcpm::kSchemaVersion;
  m.attr("COMMANDS") = fcpm::kCommands;
  m.def("run_command", &run_command, py::arg("options"),
        "Run one subcommand; options and the returned envelope are JSON strings.");
  m.def("replay", &replay, py::arg("envelope"), "Re-run a saved envelope and compare its result.");
  m.def("evaluate", &evaluate, py::arg("params"), py::arg("x"), py::arg("tol") = 1e-12,
        py::arg("max_shells") = fcpm::kMaxShells, "Evaluate the series at x; params is a JSON document.");
  m.def("singular_polynomial", &singular_polynomial, py::arg("p"), py::arg("m"), "R(x) as a JSON document.");
}
