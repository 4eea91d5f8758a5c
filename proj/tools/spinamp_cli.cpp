// Command-line surface: operators, amplitude tables, closed-form
// verification, and measurement-chain simulation, emitting pretty text,
// CSV, or JSON. All output is deterministic given the flags.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spinamp/amplitude_engine.hpp"
#include "spinamp/closed_forms.hpp"
#include "spinamp/simulator.hpp"
#include "spinamp/spin_algebra.hpp"
#include "spinamp/text_format.hpp"

namespace {

using nlohmann::json;
using namespace spinamp;

enum class Format { pretty, csv, json_out };

Format parse_format(const std::string& name) {
  if (name == "pretty") return Format::pretty;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json_out;
  throw std::invalid_argument("unknown format '" + name + "'");
}

// Angles are radians by default; a trailing 'd' (e.g. "90d") or the
// --degrees flag switches to degrees.
double parse_angle(std::string token, bool degrees_default) {
  bool degrees = degrees_default;
  if (!token.empty() && (token.back() == 'd' || token.back() == 'D')) {
    token.pop_back();
    degrees = true;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse angle '" + token + "'");
  }
  if (used != token.size()) {
    throw std::invalid_argument("cannot parse angle '" + token + "'");
  }
  return degrees ? value * std::numbers::pi / 180.0 : value;
}

json complex_to_json(Complex z) {
  return {{"re", round_to_12_digits(z.real())},
          {"im", round_to_12_digits(z.imag())}};
}

json matrix_to_json(const SpinMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(round_to_12_digits(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_matrix_pretty(std::ostream& out, const Spin& spin,
                         const SpinMatrix& m, const char* row_label = "m") {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  " << row_label << "="
        << format_m(spin.level_two_m(static_cast<int>(r))) << " [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (c == 0 ? " " : "  ") << format_complex(m(r, c));
    }
    out << " ]\n";
  }
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char ch : field) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string outcome_key(const OutcomeSequence& outcome) {
  std::string key;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (i) key += ',';
    key += format_m(outcome[i]);
  }
  return key;
}

// ---------------------------------------------------------------------------
// operators

int cmd_operators(double j, Format format) {
  const Spin spin(j);
  const auto [sx, sy, sz] = spin_components(spin);
  switch (format) {
    case Format::json_out: {
      json out = {{"j", spin.j()},
                  {"dim", spin.dimension()},
                  {"s_x", matrix_to_json(sx)},
                  {"s_y", matrix_to_json(sy)},
                  {"s_z", matrix_to_json(sz)}};
      std::cout << out.dump(2) << "\n";
      break;
    }
    case Format::csv: {
      std::cout << "operator,m_row,m_col,re,im\n";
      const SpinMatrix* ops[3] = {&sx, &sy, &sz};
      const char* names[3] = {"s_x", "s_y", "s_z"};
      for (int k = 0; k < 3; ++k) {
        for (int r = 0; r < spin.dimension(); ++r) {
          for (int c = 0; c < spin.dimension(); ++c) {
            const Complex z = (*ops[k])(r, c);
            std::cout << names[k] << ',' << format_m(spin.level_two_m(r)) << ','
                      << format_m(spin.level_two_m(c)) << ','
                      << format_real(z.real()) << ',' << format_real(z.imag())
                      << "\n";
          }
        }
      }
      break;
    }
    case Format::pretty: {
      std::cout << "spin j = " << format_real(spin.j()) << " (dimension "
                << spin.dimension() << "), entries in units of hbar\n";
      std::cout << "S_x:\n";
      print_matrix_pretty(std::cout, spin, sx);
      std::cout << "S_y:\n";
      print_matrix_pretty(std::cout, spin, sy);
      std::cout << "S_z:\n";
      print_matrix_pretty(std::cout, spin, sz);
      break;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// table

int cmd_table(double j, const Direction& source, const Direction& target,
              PhaseConvention convention, Format format) {
  const Spin spin(j);
  // An exact z-axis target names the raw z basis, so the table shown is the
  // standard one; under the paper convention that differs from
  // general_table(source, z) in the m_f = +-1 rows (see amplitude_engine.hpp).
  const AmplitudeTable table =
      target == Direction::z_axis()
          ? standard_table(spin, source, convention)
          : general_table(spin, source, target, convention);
  const ProbabilityTable probs = probabilities(table);

  const int dim = spin.dimension();
  const double unitarity_dev =
      (table.entries.adjoint() * table.entries - SpinMatrix::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff();
  const double col_dev =
      (probs.entries.colwise().sum().array() - 1.0).abs().maxCoeff();
  const double row_dev =
      (probs.entries.rowwise().sum().array() - 1.0).abs().maxCoeff();

  switch (format) {
    case Format::json_out: {
      json m_values = json::array();
      for (int i = 0; i < dim; ++i) m_values.push_back(round_to_12_digits(spin.level(i)));
      json out = {{"j", spin.j()},
                  {"convention", convention_name(convention)},
                  {"source", {{"theta", round_to_12_digits(source.theta())},
                              {"phi", round_to_12_digits(source.phi())}}},
                  {"target", {{"theta", round_to_12_digits(target.theta())},
                              {"phi", round_to_12_digits(target.phi())}}},
                  {"m_values", m_values},
                  {"amplitudes", matrix_to_json(table.entries)},
                  {"probabilities", real_matrix_to_json(probs.entries)},
                  {"checks", {{"unitarity_max_abs_dev", round_to_12_digits(unitarity_dev)},
                              {"column_sum_max_abs_dev", round_to_12_digits(col_dev)},
                              {"row_sum_max_abs_dev", round_to_12_digits(row_dev)}}}};
      std::cout << out.dump(2) << "\n";
      break;
    }
    case Format::csv: {
      std::cout << "m_i,m_f,re,im,prob\n";
      for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
          const Complex z = table.entries(r, c);
          std::cout << format_m(spin.level_two_m(c)) << ','
                    << format_m(spin.level_two_m(r)) << ','
                    << format_real(z.real()) << ',' << format_real(z.imag())
                    << ',' << format_real(probs.entries(r, c)) << "\n";
        }
      }
      break;
    }
    case Format::pretty: {
      std::cout << "amplitude table psi(m_i; m_f): j = " << format_real(spin.j())
                << ", convention = " << convention_name(convention) << "\n";
      std::cout << "  source (theta = " << format_real(source.theta())
                << ", phi = " << format_real(source.phi()) << ")\n";
      std::cout << "  target (theta = " << format_real(target.theta())
                << ", phi = " << format_real(target.phi()) << ")\n";
      std::cout << "columns m_i = ";
      for (int i = 0; i < dim; ++i)
        std::cout << (i ? ", " : "") << format_m(spin.level_two_m(i));
      std::cout << "\namplitudes:\n";
      print_matrix_pretty(std::cout, spin, table.entries, "m_f");
      std::cout << "probabilities |psi|^2:\n";
      for (int r = 0; r < dim; ++r) {
        std::cout << "  m_f=" << format_m(spin.level_two_m(r)) << " [";
        for (int c = 0; c < dim; ++c) {
          std::cout << (c == 0 ? " " : "  ") << format_real(probs.entries(r, c));
        }
        std::cout << " ]\n";
      }
      std::cout << "check: max |U'U - I| = " << format_real(unitarity_dev)
                << ", max |col sum - 1| = " << format_real(col_dev)
                << ", max |row sum - 1| = " << format_real(row_dev) << "\n";
      break;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(int samples, std::uint64_t seed, Format format) {
  const auto records = verify_all(1e-10, samples, seed);
  bool any_suspected = false;
  for (const auto& rec : records) {
    any_suspected = any_suspected || rec.verdict == Verdict::suspected_typo;
  }

  switch (format) {
    case Format::json_out:
      std::cout << errata_to_json(records).dump(2) << "\n";
      break;
    case Format::csv: {
      std::cout << "equation_id,m_i,m_f,max_abs_deviation,verdict,suggested_correction\n";
      for (const auto& rec : records) {
        std::cout << rec.equation_id << ',' << rec.m_i << ',' << rec.m_f << ','
                  << format_real(rec.max_abs_deviation) << ','
                  << verdict_name(rec.verdict) << ','
                  << csv_quote(rec.suggested_correction) << "\n";
      }
      break;
    }
    case Format::pretty: {
      int n_confirmed = 0;
      for (const auto& rec : records) {
        if (rec.verdict == Verdict::confirmed) ++n_confirmed;
      }
      std::cout << "verified " << records.size() << " closed forms at "
                << samples << " random angle tuples plus corners (seed "
                << seed << "): " << n_confirmed << " confirmed, "
                << records.size() - n_confirmed << " suspected typo\n";
      for (const auto& rec : records) {
        std::cout << "  " << rec.equation_id << "  psi(" << format_m(2 * rec.m_i)
                  << "; " << format_m(2 * rec.m_f)
                  << ")  max|dev| = " << format_real(rec.max_abs_deviation)
                  << "  " << verdict_name(rec.verdict) << "\n";
        if (!rec.suggested_correction.empty()) {
          std::cout << "      " << rec.suggested_correction << "\n";
        }
      }
      break;
    }
  }
  return any_suspected ? 1 : 0;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const std::string& chain_path, std::uint64_t samples,
                 std::uint64_t seed, bool degrees, Format format) {
  std::ifstream in(chain_path);
  if (!in) {
    std::cerr << "cannot open chain file '" << chain_path << "'\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  const MeasurementChain chain = parse_chain_json(buffer.str(), degrees);
  const SimulationResult result = run_chain(chain, samples, seed);
  const ComparisonReport report = compare(result);
  const double n = static_cast<double>(result.samples);

  switch (format) {
    case Format::json_out: {
      json counts = json::object();
      for (const auto& [outcome, count] : result.counts) {
        counts[outcome_key(outcome)] = count;
      }
      json analytic = json::object();
      for (const auto& [outcome, p] : result.analytic) {
        analytic[outcome_key(outcome)] = round_to_12_digits(p);
      }
      json conditional = json::object();
      for (const auto& [outcome, p] : result.analytic_conditional) {
        conditional[outcome_key(outcome)] = round_to_12_digits(p);
      }
      json stages = json::array();
      for (const auto& stage : chain.stages()) {
        json s = {{"theta", round_to_12_digits(stage.direction.theta())},
                  {"phi", round_to_12_digits(stage.direction.phi())}};
        if (stage.select_two_m) s["select"] = 0.5 * *stage.select_two_m;
        stages.push_back(std::move(s));
      }
      json rows = json::array();
      for (const auto& stat : report.outcomes) {
        rows.push_back({{"outcome", outcome_key(stat.outcome)},
                        {"count", stat.count},
                        {"frequency", round_to_12_digits(static_cast<double>(stat.count) / n)},
                        {"analytic_p", round_to_12_digits(stat.analytic_probability)},
                        {"z", round_to_12_digits(stat.z_score)},
                        {"flagged", stat.flagged}});
      }
      json out = {
          {"chain",
           {{"spin", chain.spin().j()},
            {"prepare", {{"theta", round_to_12_digits(chain.prepare_direction().theta())},
                         {"phi", round_to_12_digits(chain.prepare_direction().phi())},
                         {"m", 0.5 * chain.prepare_two_m()}}},
            {"stages", stages}}},
          {"samples", result.samples},
          {"seed", result.seed},
          {"counts", counts},
          {"analytic", analytic},
          {"analytic_conditional", conditional},
          {"discarded", result.discarded},
          {"comparison",
           {{"outcomes", rows},
            {"discarded",
             {{"count", report.discarded.count},
              {"analytic_p", round_to_12_digits(report.discarded.analytic_probability)},
              {"z", round_to_12_digits(report.discarded.z_score)},
              {"flagged", report.discarded.flagged}}},
            {"max_abs_deviation", round_to_12_digits(report.max_abs_deviation)},
            {"any_flagged", report.any_flagged}}}};
      std::cout << out.dump(2) << "\n";
      break;
    }
    case Format::csv: {
      std::cout << "outcome,count,frequency,analytic_p,z,flagged\n";
      for (const auto& stat : report.outcomes) {
        std::cout << csv_quote(outcome_key(stat.outcome)) << ',' << stat.count
                  << ',' << format_real(static_cast<double>(stat.count) / n)
                  << ',' << format_real(stat.analytic_probability) << ','
                  << format_real(stat.z_score) << ','
                  << (stat.flagged ? "true" : "false") << "\n";
      }
      std::cout << "discarded," << report.discarded.count << ','
                << format_real(static_cast<double>(report.discarded.count) / n)
                << ',' << format_real(report.discarded.analytic_probability)
                << ',' << format_real(report.discarded.z_score) << ','
                << (report.discarded.flagged ? "true" : "false") << "\n";
      break;
    }
    case Format::pretty: {
      std::cout << "chain: spin j = " << format_real(chain.spin().j())
                << ", prepare m = " << format_m(chain.prepare_two_m())
                << " along (theta = " << format_real(chain.prepare_direction().theta())
                << ", phi = " << format_real(chain.prepare_direction().phi())
                << ")\n";
      for (std::size_t i = 0; i < chain.stages().size(); ++i) {
        const auto& stage = chain.stages()[i];
        std::cout << "  stage " << i + 1 << ": (theta = "
                  << format_real(stage.direction.theta()) << ", phi = "
                  << format_real(stage.direction.phi()) << ")";
        if (stage.select_two_m) {
          std::cout << " select m = " << format_m(*stage.select_two_m);
        }
        std::cout << "\n";
      }
      std::cout << "samples = " << result.samples << ", seed = " << result.seed
                << ", discarded = " << result.discarded << "\n";
      std::cout << "outcome        count   frequency      analytic_p     z\n";
      for (const auto& stat : report.outcomes) {
        std::cout << "  " << outcome_key(stat.outcome) << "  " << stat.count
                  << "  " << format_real(static_cast<double>(stat.count) / n)
                  << "  " << format_real(stat.analytic_probability) << "  "
                  << format_real(stat.z_score)
                  << (stat.flagged ? "  FLAGGED" : "") << "\n";
      }
      std::cout << "  (discarded)  " << report.discarded.count << "  "
                << format_real(static_cast<double>(report.discarded.count) / n)
                << "  " << format_real(report.discarded.analytic_probability)
                << "  " << format_real(report.discarded.z_score)
                << (report.discarded.flagged ? "  FLAGGED" : "") << "\n";
      std::cout << "max |frequency - analytic| = "
                << format_real(report.max_abs_deviation) << ", "
                << (report.any_flagged ? "z-score flags raised" : "no z-score flags")
                << "\n";
      break;
    }
  }
  return report.any_flagged ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinamp: spin measurement amplitude engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "spinamp 0.1.0");

  // operators
  auto* op_cmd = app.add_subcommand("operators", "print S_x, S_y, S_z for spin j");
  double op_j = 0.0;
  std::string op_format = "pretty";
  op_cmd->add_option("--j", op_j, "spin quantum number (positive half-integer)")
      ->required();
  op_cmd->add_option("--format", op_format, "output format")
      ->check(CLI::IsMember({"pretty", "csv", "json"}));

  // table
  auto* tab_cmd = app.add_subcommand(
      "table", "amplitude and probability tables between two directions");
  double tab_j = 0.0;
  std::vector<std::string> tab_from, tab_to;
  std::string tab_convention = "canonical";
  std::string tab_format = "pretty";
  bool tab_degrees = false;
  tab_cmd->add_option("--j", tab_j, "spin quantum number")->required();
  tab_cmd->add_option("--from", tab_from,
                      "source direction theta phi (radians; 'd' suffix for degrees)")
      ->expected(2)
      ->required();
  tab_cmd->add_option("--to", tab_to, "target direction theta phi")
      ->expected(2)
      ->required();
  tab_cmd->add_option("--convention", tab_convention,
                      "phase convention (paper is spin-2 only; an exact z-axis "
                      "target selects the standard table)")
      ->check(CLI::IsMember({"canonical", "paper"}));
  tab_cmd->add_flag("--degrees", tab_degrees, "read bare angles as degrees");
  tab_cmd->add_option("--format", tab_format, "output format")
      ->check(CLI::IsMember({"pretty", "csv", "json"}));

  // verify
  auto* ver_cmd = app.add_subcommand(
      "verify", "check the bundled closed-form table against the engine");
  int ver_samples = 1000;
  std::uint64_t ver_seed = kDefaultSeed;
  std::string ver_format = "pretty";
  ver_cmd->add_option("--samples", ver_samples, "random angle tuples per form");
  ver_cmd->add_option("--seed", ver_seed, "RNG seed (default 0xC0FFEE)");
  ver_cmd->add_option("--format", ver_format, "output format")
      ->check(CLI::IsMember({"pretty", "csv", "json"}));

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "run a measurement chain described by a JSON file");
  std::string sim_chain;
  std::uint64_t sim_samples = 1000000;
  std::uint64_t sim_seed = kDefaultSeed;
  bool sim_degrees = false;
  std::string sim_format = "pretty";
  sim_cmd->add_option("--chain", sim_chain, "chain description JSON file")
      ->required();
  sim_cmd->add_option("--samples", sim_samples, "number of simulated runs");
  sim_cmd->add_option("--seed", sim_seed, "RNG seed (default 0xC0FFEE)");
  sim_cmd->add_flag("--degrees", sim_degrees, "chain file angles are degrees");
  sim_cmd->add_option("--format", sim_format, "output format")
      ->check(CLI::IsMember({"pretty", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*op_cmd) {
      return cmd_operators(op_j, parse_format(op_format));
    }
    if (*tab_cmd) {
      const Direction source(parse_angle(tab_from[0], tab_degrees),
                             parse_angle(tab_from[1], tab_degrees));
      const Direction target(parse_angle(tab_to[0], tab_degrees),
                             parse_angle(tab_to[1], tab_degrees));
      return cmd_table(tab_j, source, target, parse_convention(tab_convention),
                       parse_format(tab_format));
    }
    if (*ver_cmd) {
      if (ver_samples < 1) {
        std::cerr << "--samples must be >= 1\n";
        return 2;
      }
      return cmd_verify(ver_samples, ver_seed, parse_format(ver_format));
    }
    if (*sim_cmd) {
      if (sim_samples < 1) {
        std::cerr << "--samples must be >= 1\n";
        return 2;
      }
      return cmd_simulate(sim_chain, sim_samples, sim_seed, sim_degrees,
                          parse_format(sim_format));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
