#include "spinamp/simulator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinamp/amplitude_engine.hpp"
#include "spinamp/text_format.hpp"

#include "json.hpp"

namespace spinamp {

namespace {

void check_projection(const Spin& spin, int two_m, const std::string& field) {
  if (!spin.is_valid_two_m(two_m)) {
    throw std::invalid_argument("'" + field + "' = " + format_m(two_m) +
                                " is not a valid projection for spin j=" +
                                format_real(spin.j()));
  }
}

/// Stage-to-stage conditional probabilities: column = previous outcome index,
/// row = next outcome index. Probabilities do not depend on the phase
/// convention.
std::vector<Eigen::MatrixXd> transition_matrices(const MeasurementChain& chain) {
  std::vector<Eigen::MatrixXd> transitions;
  transitions.reserve(chain.stages().size());
  Direction previous = chain.prepare_direction();
  for (const Stage& stage : chain.stages()) {
    transitions.push_back(
        probabilities(general_table(chain.spin(), previous, stage.direction))
            .entries);
    previous = stage.direction;
  }
  return transitions;
}

}  // namespace

MeasurementChain::MeasurementChain(Spin spin, Direction prepare_direction,
                                   int prepare_two_m, std::vector<Stage> stages)
    : spin_(spin),
      prepare_direction_(prepare_direction),
      prepare_two_m_(prepare_two_m),
      stages_(std::move(stages)) {
  check_projection(spin_, prepare_two_m_, "prepare.m");
  if (stages_.empty()) {
    throw std::invalid_argument("'stages' must contain at least one stage");
  }
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    if (stages_[i].select_two_m) {
      check_projection(spin_, *stages_[i].select_two_m,
                       "stages[" + std::to_string(i) + "].select");
    }
  }
}

std::map<OutcomeSequence, double> analytic_chain_probabilities(
    const MeasurementChain& chain) {
  const int dim = chain.spin().dimension();
  const std::size_t n_stages = chain.stages().size();
  if (static_cast<double>(n_stages) * std::log2(static_cast<double>(dim)) > 20.0) {
    throw std::invalid_argument(
        "chain outcome space exceeds 2^20 sequences; too large to enumerate");
  }

  const auto transitions = transition_matrices(chain);
  std::map<OutcomeSequence, double> joint;
  OutcomeSequence outcome(n_stages);
  // depth-first product over the outcome tree
  auto recurse = [&](auto&& self, std::size_t stage, int prev_index,
                     double prob) -> void {
    if (stage == n_stages) {
      joint.emplace(outcome, prob);
      return;
    }
    for (int next = 0; next < dim; ++next) {
      outcome[stage] = chain.spin().level_two_m(next);
      self(self, stage + 1, next, prob * transitions[stage](next, prev_index));
    }
  };
  recurse(recurse, 0, chain.spin().index_of_two_m(chain.prepare_two_m()), 1.0);
  return joint;
}

SimulationResult run_chain_partition(const MeasurementChain& chain,
                                     std::uint64_t first_run,
                                     std::uint64_t run_count,
                                     std::uint64_t seed) {
  const int dim = chain.spin().dimension();
  const auto transitions = transition_matrices(chain);
  const std::size_t n_stages = chain.stages().size();

  // cumulative distributions per (stage, previous index)
  std::vector<Eigen::MatrixXd> cumulative;
  cumulative.reserve(n_stages);
  for (const auto& t : transitions) {
    Eigen::MatrixXd cum(dim, dim);
    for (int col = 0; col < dim; ++col) {
      double acc = 0.0;
      for (int row = 0; row < dim; ++row) {
        acc += t(row, col);
        cum(row, col) = acc;
      }
    }
    cumulative.push_back(std::move(cum));
  }

  SimulationResult result{chain, run_count, seed, {}, {}, {}, 0};
  OutcomeSequence outcome(n_stages);
  const int prepare_index = chain.spin().index_of_two_m(chain.prepare_two_m());
  for (std::uint64_t run = first_run; run < first_run + run_count; ++run) {
    SplitMix64 rng = SplitMix64::substream(seed, run);
    int prev = prepare_index;
    bool kept = true;
    for (std::size_t stage = 0; stage < n_stages; ++stage) {
      const double u = rng.next_unit_double();
      int drawn = dim - 1;
      for (int row = 0; row < dim; ++row) {
        if (u < cumulative[stage](row, prev)) {
          drawn = row;
          break;
        }
      }
      outcome[stage] = chain.spin().level_two_m(drawn);
      const auto& select = chain.stages()[stage].select_two_m;
      if (select && *select != outcome[stage]) {
        kept = false;
        break;
      }
      prev = drawn;
    }
    if (kept) {
      ++result.counts[outcome];
    } else {
      ++result.discarded;
    }
  }
  return result;
}

SimulationResult run_chain(const MeasurementChain& chain, std::uint64_t samples,
                           std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("samples must be >= 1");
  }
  SimulationResult result = run_chain_partition(chain, 0, samples, seed);
  result.analytic = analytic_chain_probabilities(chain);

  double kept_probability = 0.0;
  for (const auto& [outcome, p] : result.analytic) {
    bool selected = true;
    for (std::size_t i = 0; i < chain.stages().size(); ++i) {
      const auto& select = chain.stages()[i].select_two_m;
      if (select && *select != outcome[i]) {
        selected = false;
        break;
      }
    }
    if (selected) {
      result.analytic_conditional.emplace(outcome, p);
      kept_probability += p;
    }
  }
  if (kept_probability > 0.0) {
    for (auto& [outcome, p] : result.analytic_conditional) {
      p /= kept_probability;
    }
  }
  return result;
}

ComparisonReport compare(const SimulationResult& result) {
  const auto& chain = result.chain;
  const double n = static_cast<double>(result.samples);

  auto z_stat = [&](std::uint64_t count, double p) -> std::pair<double, bool> {
    const double expected = n * p;
    const double variance = n * p * (1.0 - p);
    if (variance > 0.0) {
      const double z = (static_cast<double>(count) - expected) / std::sqrt(variance);
      return {z, std::abs(z) > 5.0};
    }
    // degenerate outcome: p == 0 must never be observed, p == 1 always
    const bool exact = static_cast<double>(count) == expected;
    return {exact ? 0.0 : std::numeric_limits<double>::infinity(), !exact};
  };

  ComparisonReport report;
  double kept_probability = 0.0;
  for (const auto& [outcome, p] : result.analytic) {
    bool selected = true;
    for (std::size_t i = 0; i < chain.stages().size(); ++i) {
      const auto& select = chain.stages()[i].select_two_m;
      if (select && *select != outcome[i]) {
        selected = false;
        break;
      }
    }
    if (!selected) continue;  // structurally never counted
    kept_probability += p;
    OutcomeStat stat;
    stat.outcome = outcome;
    auto it = result.counts.find(outcome);
    stat.count = it == result.counts.end() ? 0 : it->second;
    stat.analytic_probability = p;
    std::tie(stat.z_score, stat.flagged) = z_stat(stat.count, p);
    report.max_abs_deviation =
        std::max(report.max_abs_deviation,
                 std::abs(static_cast<double>(stat.count) / n - p));
    report.any_flagged = report.any_flagged || stat.flagged;
    report.outcomes.push_back(std::move(stat));
  }

  report.discarded.count = result.discarded;
  report.discarded.analytic_probability = 1.0 - kept_probability;
  std::tie(report.discarded.z_score, report.discarded.flagged) =
      z_stat(result.discarded, report.discarded.analytic_probability);
  report.any_flagged = report.any_flagged || report.discarded.flagged;
  return report;
}

namespace {

const nlohmann::json& require_field(const nlohmann::json& parent,
                                    const char* key, const std::string& path) {
  if (!parent.is_object() || !parent.contains(key)) {
    throw std::invalid_argument("chain file: missing field '" + path + "'");
  }
  return parent.at(key);
}

double number_field(const nlohmann::json& parent, const char* key,
                    const std::string& path) {
  const auto& node = require_field(parent, key, path);
  if (!node.is_number()) {
    throw std::invalid_argument("chain file: field '" + path +
                                "' must be a number");
  }
  return node.get<double>();
}

int projection_from_double(const Spin& spin, double m, const std::string& path) {
  const double two_m = 2.0 * m;
  const double rounded = std::round(two_m);
  if (!std::isfinite(m) || std::abs(two_m - rounded) > 1e-9 ||
      !spin.is_valid_two_m(static_cast<int>(rounded))) {
    throw std::invalid_argument("chain file: '" + path + "' = " +
                                format_real(m) +
                                " is not a valid projection for spin j=" +
                                format_real(spin.j()));
  }
  return static_cast<int>(rounded);
}

}  // namespace

MeasurementChain parse_chain_json(const std::string& text,
                                  bool angles_in_degrees) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("chain file: invalid JSON: ") +
                                e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("chain file: top-level value must be an object");
  }

  const double scale =
      angles_in_degrees ? std::numbers::pi / 180.0 : 1.0;

  const double j = number_field(doc, "spin", "spin");
  Spin spin = [&] {
    try {
      return Spin(j);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("chain file: 'spin': ") + e.what());
    }
  }();

  const auto& prepare = require_field(doc, "prepare", "prepare");
  const double prep_theta = number_field(prepare, "theta", "prepare.theta");
  const double prep_phi = number_field(prepare, "phi", "prepare.phi");
  const double prep_m = number_field(prepare, "m", "prepare.m");
  const int prepare_two_m = projection_from_double(spin, prep_m, "prepare.m");

  const auto& stages_node = require_field(doc, "stages", "stages");
  if (!stages_node.is_array() || stages_node.empty()) {
    throw std::invalid_argument(
        "chain file: field 'stages' must be a non-empty array");
  }
  std::vector<Stage> stages;
  stages.reserve(stages_node.size());
  for (std::size_t i = 0; i < stages_node.size(); ++i) {
    const std::string path = "stages[" + std::to_string(i) + "]";
    const auto& node = stages_node.at(i);
    if (!node.is_object()) {
      throw std::invalid_argument("chain file: '" + path +
                                  "' must be an object");
    }
    const double theta = number_field(node, "theta", path + ".theta");
    const double phi = number_field(node, "phi", path + ".phi");
    std::optional<int> select;
    if (node.contains("select") && !node.at("select").is_null()) {
      if (!node.at("select").is_number()) {
        throw std::invalid_argument("chain file: field '" + path +
                                    ".select' must be a number");
      }
      select = projection_from_double(spin, node.at("select").get<double>(),
                                      path + ".select");
    }
    stages.push_back(Stage{Direction(theta * scale, phi * scale), select});
  }

  return MeasurementChain(spin, Direction(prep_theta * scale, prep_phi * scale),
                          prepare_two_m, std::move(stages));
}

}  // namespace spinamp
