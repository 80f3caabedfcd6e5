// Python bindings: valuations as objects, instances and outcomes as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "jobmatch/generator.hpp"
#include "jobmatch/io.hpp"
#include "jobmatch/solver.hpp"
#include "jobmatch/valuation.hpp"
#include "jobmatch/verify.hpp"

namespace py = pybind11;
using namespace jobmatch;

namespace {

SolverConfig make_config(const std::string& floor_policy, const std::string& rejection, bool assert_invariants) {
  SolverConfig c;
  if (floor_policy == "occupancy") {
    c.floor_policy = FloorPolicy::Occupancy;
  } else if (floor_policy == "nonempty") {
    c.floor_policy = FloorPolicy::NonEmpty;
  } else {
    throw std::invalid_argument("floor_policy must be 'occupancy' or 'nonempty'");
  }
  if (rejection == "unmatched-workers") {
    c.rejection = RejectionRule::UnmatchedWorkers;
  } else if (rejection == "all-unmatched-pairs") {
    c.rejection = RejectionRule::AllUnmatchedPairs;
  } else {
    throw std::invalid_argument("rejection must be 'unmatched-workers' or 'all-unmatched-pairs'");
  }
  c.assert_invariants = assert_invariants;
  return c;
}

Ps2Domain make_domain(const std::string& d) {
  if (d == "unmatched") return Ps2Domain::Unmatched;
  if (d == "all") return Ps2Domain::All;
  throw std::invalid_argument("ps2_domain must be 'unmatched' or 'all'");
}

}  // namespace

PYBIND11_MODULE(_jobmatch, m) {
  m.doc() = "Many-to-one job matching with salary renegotiation";

  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MonotonicityError>(m, "MonotonicityError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<ValuationFn>(m, "Valuation")
      .def(py::init([](const std::string& text, Salary lo, Salary hi, bool increasing) {
             return parse_valuation(text, {lo, hi}, increasing ? Direction::Increasing : Direction::Decreasing);
           }),
           py::arg("text"), py::arg("lo"), py::arg("hi"), py::arg("increasing") = true)
      .def("__call__", &ValuationFn::eval, py::arg("z"))
      .def_property_readonly("domain", [](const ValuationFn& f) { return py::make_tuple(f.domain().lo, f.domain().hi); })
      .def_property_readonly("increasing",
                             [](const ValuationFn& f) { return f.direction() == Direction::Increasing; })
      .def("least_arg_reaching",
           [](const ValuationFn& f, double target) { return least_arg_reaching(f, target); }, py::arg("target"))
      .def("greatest_arg_reaching",
           [](const ValuationFn& f, double target) { return greatest_arg_reaching(f, target); }, py::arg("target"))
      .def("__str__", &ValuationFn::to_string);

  m.def(
      "solve",
      [](const std::string& instance, const std::string& floor_policy, const std::string& rejection,
         bool assert_invariants) {
        const auto market = parse_instance(instance);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(market, make_config(floor_policy, rejection, assert_invariants));
        }
        const bool stable = check_stable(r.outcome, market).stable();
        return py::make_tuple(outcome_to_json(market, r.outcome, r.iterations, stable).dump(),
                              trace_to_jsonl(market, r.trace));
      },
      py::arg("instance"), py::arg("floor_policy") = "occupancy", py::arg("rejection") = "unmatched-workers",
      py::arg("assert_invariants") = true, "Solve an instance; returns (outcome JSON, trace JSON lines).");

  m.def(
      "check",
      [](const std::string& instance, const std::string& outcome,
         const std::string& ps2_domain) -> std::optional<std::string> {
        const auto market = parse_instance(instance);
        const auto doc = outcome_from_json(nlohmann::json::parse(outcome), market);
        const auto verdict = check_stable(doc.outcome, market, make_domain(ps2_domain));
        if (!verdict.ps1_violations.empty())
          return ps1_violation_to_json(market, verdict.ps1_violations.front()).dump();
        if (verdict.blocking) return certificate_to_json(market, *verdict.blocking).dump();
        return std::nullopt;
      },
      py::arg("instance"), py::arg("outcome"), py::arg("ps2_domain") = "unmatched",
      "None when stable, otherwise the first violation as JSON.");

  m.def(
      "iteration_bound", [](const std::string& instance) { return iteration_bound(parse_instance(instance)); },
      py::arg("instance"));

  m.def(
      "generate",
      [](std::uint64_t seed, std::size_t workers, std::size_t firms, int max_quota, Salary max_span,
         int density_percent, bool fixed_salaries) {
        GeneratorParams g;
        g.seed = seed;
        g.workers = workers;
        g.firms = firms;
        g.max_quota = max_quota;
        g.max_span = max_span;
        g.density_percent = density_percent;
        g.fixed_salaries = fixed_salaries;
        return raw_instance_to_json(generate_instance(g)).dump();
      },
      py::arg("seed") = 1, py::arg("workers") = 4, py::arg("firms") = 2, py::arg("max_quota") = 3,
      py::arg("max_span") = 12, py::arg("density_percent") = 100, py::arg("fixed_salaries") = false);
}
