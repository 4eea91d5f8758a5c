// Python bindings for the core operations. Matrices cross the boundary as
// numpy arrays; chains are accepted as JSON strings so the same schema works
// from the CLI and from Python.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinamp/amplitude_engine.hpp"
#include "spinamp/closed_forms.hpp"
#include "spinamp/simulator.hpp"
#include "spinamp/spin_algebra.hpp"
#include "spinamp/text_format.hpp"

namespace py = pybind11;
using namespace spinamp;

namespace {

PhaseConvention convention_arg(const std::string& name) {
  return parse_convention(name);
}

py::dict outcome_map_to_dict(const std::map<OutcomeSequence, double>& values) {
  py::dict out;
  for (const auto& [outcome, p] : values) {
    py::tuple key(outcome.size());
    for (std::size_t i = 0; i < outcome.size(); ++i) key[i] = 0.5 * outcome[i];
    out[key] = p;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "spin measurement amplitude engine";
  m.attr("DEFAULT_SEED") = py::int_(kDefaultSeed);

  m.def(
      "spin_components",
      [](double j) {
        const auto ops = spin_components(Spin(j));
        return py::make_tuple(ops.x, ops.y, ops.z);
      },
      py::arg("j"), "Component operators (S_x, S_y, S_z) for spin j.");

  m.def(
      "projection_operator",
      [](double j, double theta, double phi) {
        return projection_operator(Spin(j), Direction(theta, phi));
      },
      py::arg("j"), py::arg("theta"), py::arg("phi"),
      "Spin projection operator along the direction (theta, phi).");

  m.def(
      "casimir",
      [](double j) { return casimir(Spin(j)); }, py::arg("j"),
      "S^2 = S_x^2 + S_y^2 + S_z^2.");

  m.def(
      "eigenbasis",
      [](double j, double theta, double phi, const std::string& convention) {
        return eigenbasis(Spin(j), Direction(theta, phi),
                          convention_arg(convention));
      },
      py::arg("j"), py::arg("theta"), py::arg("phi"),
      py::arg("convention") = "canonical",
      "Eigenvector columns of the projection operator, m = j..-j.");

  m.def(
      "standard_table",
      [](double j, double theta, double phi, const std::string& convention) {
        return standard_table(Spin(j), Direction(theta, phi),
                              convention_arg(convention))
            .entries;
      },
      py::arg("j"), py::arg("theta"), py::arg("phi"),
      py::arg("convention") = "canonical",
      "Amplitudes psi(m_i at (theta, phi); m_f at z); column m_i, row m_f.");

  m.def(
      "general_table",
      [](double j, double theta_p, double phi_p, double theta, double phi,
         const std::string& convention) {
        return general_table(Spin(j), Direction(theta_p, phi_p),
                             Direction(theta, phi), convention_arg(convention))
            .entries;
      },
      py::arg("j"), py::arg("theta_source"), py::arg("phi_source"),
      py::arg("theta_target"), py::arg("phi_target"),
      py::arg("convention") = "canonical",
      "Amplitudes between two arbitrary quantization directions.");

  m.def(
      "probability_table",
      [](double j, double theta_p, double phi_p, double theta, double phi) {
        return probabilities(general_table(Spin(j), Direction(theta_p, phi_p),
                                           Direction(theta, phi)))
            .entries;
      },
      py::arg("j"), py::arg("theta_source"), py::arg("phi_source"),
      py::arg("theta_target"), py::arg("phi_target"),
      "Square moduli of general_table; doubly stochastic.");

  m.def("standard_closed_form", &standard_closed_form, py::arg("m_i"),
        py::arg("m_f"), py::arg("theta"), py::arg("phi"),
        "Closed-form spin-2 amplitude psi(m_i at (theta, phi); m_f at z).");

  m.def("general_closed_form", &general_closed_form, py::arg("m_i"),
        py::arg("m_f"), py::arg("theta_source"), py::arg("phi_source"),
        py::arg("theta_target"), py::arg("phi_target"),
        "Closed-form generalized spin-2 amplitude (verbatim table entry).");

  m.def(
      "verify_closed_forms",
      [](double tolerance, int samples, std::uint64_t seed) {
        py::list out;
        for (const auto& rec : verify_all(tolerance, samples, seed)) {
          py::dict d;
          d["equation_id"] = rec.equation_id;
          d["m_i"] = rec.m_i;
          d["m_f"] = rec.m_f;
          d["max_abs_deviation"] = rec.max_abs_deviation;
          d["sample_count"] = rec.sample_count;
          d["verdict"] = verdict_name(rec.verdict);
          d["suggested_correction"] =
              rec.verdict == Verdict::confirmed
                  ? py::object(py::none())
                  : py::object(py::str(rec.suggested_correction));
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("tolerance") = 1e-10, py::arg("samples") = 1000,
      py::arg("seed") = kDefaultSeed,
      "Check every bundled closed form against the engine; one record per "
      "form, sorted by deviation descending.");

  m.def(
      "analytic_chain_probabilities",
      [](const std::string& chain_json, bool degrees) {
        return outcome_map_to_dict(
            analytic_chain_probabilities(parse_chain_json(chain_json, degrees)));
      },
      py::arg("chain_json"), py::arg("degrees") = false,
      "Joint Born probability of every outcome sequence of a chain.");

  m.def(
      "run_chain",
      [](const std::string& chain_json, std::uint64_t samples,
         std::uint64_t seed, bool degrees) {
        const MeasurementChain chain = parse_chain_json(chain_json, degrees);
        const SimulationResult result = run_chain(chain, samples, seed);
        const ComparisonReport report = compare(result);
        py::dict counts;
        for (const auto& [outcome, count] : result.counts) {
          py::tuple key(outcome.size());
          for (std::size_t i = 0; i < outcome.size(); ++i) key[i] = 0.5 * outcome[i];
          counts[key] = count;
        }
        py::dict out;
        out["samples"] = result.samples;
        out["seed"] = result.seed;
        out["counts"] = counts;
        out["analytic"] = outcome_map_to_dict(result.analytic);
        out["analytic_conditional"] = outcome_map_to_dict(result.analytic_conditional);
        out["discarded"] = result.discarded;
        out["max_abs_deviation"] = report.max_abs_deviation;
        out["any_flagged"] = report.any_flagged;
        return out;
      },
      py::arg("chain_json"), py::arg("samples"),
      py::arg("seed") = kDefaultSeed, py::arg("degrees") = false,
      "Sample a measurement chain by the Born rule; deterministic in "
      "(chain, samples, seed).");
}
