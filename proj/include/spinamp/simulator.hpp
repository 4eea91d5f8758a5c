#ifndef SPINAMP_SIMULATOR_HPP
#define SPINAMP_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "spinamp/rng.hpp"
#include "spinamp/spin.hpp"

namespace spinamp {

/// One analyzer: a measurement direction, optionally keeping only runs whose
/// outcome matches `select` (post-selection; non-matching runs are discarded,
/// not renormalized away).
struct Stage {
  Direction direction;
  std::optional<int> select_two_m;
};

/// A prepared eigenstate followed by at least one analyzer stage.
class MeasurementChain {
 public:
  MeasurementChain(Spin spin, Direction prepare_direction, int prepare_two_m,
                   std::vector<Stage> stages);

  const Spin& spin() const { return spin_; }
  const Direction& prepare_direction() const { return prepare_direction_; }
  int prepare_two_m() const { return prepare_two_m_; }
  const std::vector<Stage>& stages() const { return stages_; }

 private:
  Spin spin_;
  Direction prepare_direction_;
  int prepare_two_m_;
  std::vector<Stage> stages_;
};

/// Outcome sequences are the per-stage projection values, stored as 2m
/// integers so half-integer spins key exactly.
using OutcomeSequence = std::vector<int>;

struct SimulationResult {
  MeasurementChain chain;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::map<OutcomeSequence, std::uint64_t> counts;
  std::map<OutcomeSequence, double> analytic;              // joint, sums to 1
  std::map<OutcomeSequence, double> analytic_conditional;  // given selection
  std::uint64_t discarded = 0;
};

/// Joint Born probability of every outcome sequence, ignoring selection:
/// the product over stages of |psi(m_prev; m_next)|^2 with collapse after
/// each stage. Throws if the outcome space exceeds 2^20 sequences.
std::map<OutcomeSequence, double> analytic_chain_probabilities(
    const MeasurementChain& chain);

/// Samples `samples` runs by the Born rule. Run k draws from
/// SplitMix64::substream(seed, k), so results are deterministic in
/// (chain, samples, seed) and independent of any partitioning of the run
/// range across workers.
SimulationResult run_chain(const MeasurementChain& chain, std::uint64_t samples,
                           std::uint64_t seed = kDefaultSeed);

/// Runs [first_run, first_run + run_count) only; merging disjoint partitions
/// over the same seed reproduces run_chain exactly. The analytic maps are
/// filled only by run_chain.
SimulationResult run_chain_partition(const MeasurementChain& chain,
                                     std::uint64_t first_run,
                                     std::uint64_t run_count,
                                     std::uint64_t seed);

struct OutcomeStat {
  OutcomeSequence outcome;
  std::uint64_t count = 0;
  double analytic_probability = 0.0;
  double z_score = 0.0;
  bool flagged = false;
};

/// Binomial z-scores of empirical counts against the analytic joint
/// probabilities, over the selection-consistent outcome sequences plus the
/// discarded bucket. |z| > 5 flags an outcome; an impossible outcome with a
/// nonzero count is always flagged.
struct ComparisonReport {
  std::vector<OutcomeStat> outcomes;
  OutcomeStat discarded;  // empty outcome sequence
  double max_abs_deviation = 0.0;
  bool any_flagged = false;
};

ComparisonReport compare(const SimulationResult& result);

/// Chain description from JSON:
///   {"spin": j, "prepare": {"theta": t, "phi": p, "m": m},
///    "stages": [{"theta": t, "phi": p, "select": m?}, ...]}
/// Angles are radians unless angles_in_degrees. Parse errors name the
/// offending field.
MeasurementChain parse_chain_json(const std::string& text,
                                  bool angles_in_degrees = false);

}  // namespace spinamp

#endif  // SPINAMP_SIMULATOR_HPP
