#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spinamp/rng.hpp"
#include "spinamp/simulator.hpp"

using namespace spinamp;

namespace {

constexpr double kPi = std::numbers::pi;

MeasurementChain z_to_x_chain() {
  return {Spin(2.0), {0.0, 0.0}, 4, {Stage{{kPi / 2, 0.0}, {}}}};
}

// message of the std::invalid_argument thrown by fn, empty if none
template <typename Fn>
std::string thrown_message(Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return {};
}

bool throws_mentioning(const std::string& needle, auto&& fn) {
  const std::string message = thrown_message(fn);
  return message.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("splitmix64 reference vector") {
  SplitMix64 rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next_u64() == 0x06C45D188009454FULL);

  SplitMix64 coffee(kDefaultSeed);
  CHECK(coffee.next_u64() == 0xCA8216FA9058D0FAULL);

  SplitMix64 unit(kDefaultSeed);
  for (int i = 0; i < 1000; ++i) {
    const double u = unit.next_unit_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  // substreams depend only on (seed, index)
  SplitMix64 a = SplitMix64::substream(42, 7);
  SplitMix64 b = SplitMix64::substream(42, 7);
  SplitMix64 c = SplitMix64::substream(42, 8);
  const auto va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
}

TEST_CASE("chain validation") {
  const Spin spin(2.0);
  CHECK(throws_mentioning("prepare.m", [&] {
    MeasurementChain(spin, {0.0, 0.0}, 3, {Stage{{1.0, 0.0}, {}}});
  }));
  CHECK(throws_mentioning("stages", [&] {
    MeasurementChain(spin, {0.0, 0.0}, 4, {});
  }));
  CHECK(throws_mentioning("stages[1].select", [&] {
    MeasurementChain(spin, {0.0, 0.0}, 4,
                     {Stage{{1.0, 0.0}, {}}, Stage{{0.5, 0.0}, 5}});
  }));
}

TEST_CASE("analytic probabilities of the canonical chains") {
  // z+2 measured along x
  const auto joint = analytic_chain_probabilities(z_to_x_chain());
  REQUIRE(joint.size() == 5);
  const double expected[5] = {1.0 / 16, 1.0 / 4, 3.0 / 8, 1.0 / 4, 1.0 / 16};
  for (int k = 0; k < 5; ++k) {
    const OutcomeSequence outcome{4 - 2 * k};
    CHECK(std::abs(joint.at(outcome) - expected[k]) < 1e-15);
  }

  // repeated measurement along the same axis is certain
  const MeasurementChain repeat{Spin(2.0), {0.0, 0.0}, 4, {Stage{{0.0, 0.0}, {}}}};
  CHECK(analytic_chain_probabilities(repeat).at({4}) == 1.0);

  // post-selected x then z: joint P(+2,+2) = 1/16 * 1/16
  const MeasurementChain selected{
      Spin(2.0), {0.0, 0.0}, 4,
      {Stage{{kPi / 2, 0.0}, 4}, Stage{{0.0, 0.0}, {}}}};
  const auto joint2 = analytic_chain_probabilities(selected);
  CHECK(std::abs(joint2.at({4, 4}) - 1.0 / 256) < 1e-12);

  double total = 0.0;
  for (const auto& [outcome, p] : joint2) total += p;
  CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("joint probabilities sum to 1 for random chains") {
  SplitMix64 rng(61);
  for (double j : {0.5, 1.0, 2.0}) {
    const Spin spin(j);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Stage> stages;
      const int n_stages = 1 + static_cast<int>(rng.next_unit_double() * 3);
      for (int s = 0; s < n_stages; ++s) {
        stages.push_back(Stage{{rng.next_unit_double() * kPi,
                                rng.next_unit_double() * 2.0 * kPi},
                               {}});
      }
      const MeasurementChain chain(spin, {rng.next_unit_double() * kPi, 0.3},
                                   spin.two_j(), stages);
      double total = 0.0;
      for (const auto& [outcome, p] : analytic_chain_probabilities(chain)) {
        CHECK(p >= 0.0);
        total += p;
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("repeated identical analyzer is exactly idempotent") {
  const Direction axis(1.2, 0.7);
  const MeasurementChain once{Spin(2.0), {0.3, 0.9}, 2, {Stage{axis, {}}}};
  const MeasurementChain twice{Spin(2.0), {0.3, 0.9}, 2,
                               {Stage{axis, {}}, Stage{axis, {}}}};
  const auto p1 = analytic_chain_probabilities(once);
  const auto p2 = analytic_chain_probabilities(twice);
  for (const auto& [outcome, p] : p1) {
    CHECK(p2.at({outcome[0], outcome[0]}) == p);  // bit-exact
  }
}

TEST_CASE("run_chain determinism and counting") {
  const MeasurementChain chain = z_to_x_chain();

  const SimulationResult one = run_chain(chain, 1, kDefaultSeed);
  std::uint64_t counted = one.discarded;
  for (const auto& [outcome, count] : one.counts) counted += count;
  CHECK(counted == 1);

  const SimulationResult a = run_chain(chain, 20000, kDefaultSeed);
  const SimulationResult b = run_chain(chain, 20000, kDefaultSeed);
  CHECK(a.counts == b.counts);
  CHECK(a.discarded == b.discarded);

  const SimulationResult other_seed = run_chain(chain, 20000, 1);
  CHECK(a.counts != other_seed.counts);

  CHECK_THROWS_AS(run_chain(chain, 0, kDefaultSeed), std::invalid_argument);
}

TEST_CASE("merged partitions reproduce the full run") {
  const MeasurementChain chain{
      Spin(2.0), {0.0, 0.0}, 4,
      {Stage{{kPi / 2, 0.0}, 4}, Stage{{0.4, 1.0}, {}}}};
  const SimulationResult full = run_chain(chain, 10000, kDefaultSeed);

  const SimulationResult front = run_chain_partition(chain, 0, 4000, kDefaultSeed);
  const SimulationResult back = run_chain_partition(chain, 4000, 6000, kDefaultSeed);
  std::map<OutcomeSequence, std::uint64_t> merged = front.counts;
  for (const auto& [outcome, count] : back.counts) merged[outcome] += count;
  CHECK(merged == full.counts);
  CHECK(front.discarded + back.discarded == full.discarded);
}

TEST_CASE("selection discards non-matching runs") {
  const MeasurementChain chain{
      Spin(2.0), {0.0, 0.0}, 4,
      {Stage{{kPi / 2, 0.0}, 4}, Stage{{0.0, 0.0}, {}}}};
  const SimulationResult result = run_chain(chain, 50000, kDefaultSeed);

  std::uint64_t counted = 0;
  for (const auto& [outcome, count] : result.counts) {
    CHECK(outcome[0] == 4);  // only runs passing the filter are counted
    counted += count;
  }
  CHECK(counted + result.discarded == result.samples);
  // acceptance probability 1/16
  CHECK(static_cast<double>(result.discarded) / result.samples ==
        doctest::Approx(15.0 / 16).epsilon(0.01));

  // conditional probabilities renormalize over the kept sequences
  double conditional_total = 0.0;
  for (const auto& [outcome, p] : result.analytic_conditional) {
    conditional_total += p;
  }
  CHECK(std::abs(conditional_total - 1.0) < 1e-12);
  CHECK(std::abs(result.analytic_conditional.at({4, 4}) - 1.0 / 16) < 1e-12);
}

TEST_CASE("compare flags impossible events and passes healthy runs") {
  const MeasurementChain chain = z_to_x_chain();
  const SimulationResult healthy = run_chain(chain, 200000, kDefaultSeed);
  const ComparisonReport report = compare(healthy);
  CHECK(!report.any_flagged);
  CHECK(report.outcomes.size() == 5);
  CHECK(report.max_abs_deviation < 0.01);
  for (const auto& stat : report.outcomes) {
    CHECK(std::abs(stat.z_score) < 5.0);
  }

  // perfectly matching counts give z = 0 everywhere
  const MeasurementChain certain{Spin(2.0), {0.0, 0.0}, 4, {Stage{{0.0, 0.0}, {}}}};
  const ComparisonReport exact = compare(run_chain(certain, 1000, kDefaultSeed));
  for (const auto& stat : exact.outcomes) {
    CHECK(stat.z_score == 0.0);
    CHECK(!stat.flagged);
  }
  CHECK(!exact.any_flagged);

  // an outcome with analytic probability zero but nonzero count is flagged
  SimulationResult rigged = run_chain(certain, 1000, kDefaultSeed);
  rigged.counts[{-4}] = 3;
  const ComparisonReport flagged = compare(rigged);
  bool saw_flag = false;
  for (const auto& stat : flagged.outcomes) {
    if (stat.outcome == OutcomeSequence{-4}) {
      saw_flag = stat.flagged;
    }
  }
  CHECK(saw_flag);
  CHECK(flagged.any_flagged);
}

TEST_CASE("chain JSON parsing") {
  const std::string good = R"({
    "spin": 2,
    "prepare": {"theta": 0.0, "phi": 0.0, "m": 2},
    "stages": [{"theta": 1.5707963267948966, "phi": 0.0, "select": 2},
               {"theta": 0.0, "phi": 0.0}]
  })";
  const MeasurementChain chain = parse_chain_json(good);
  CHECK(chain.spin().two_j() == 4);
  CHECK(chain.prepare_two_m() == 4);
  REQUIRE(chain.stages().size() == 2);
  CHECK(chain.stages()[0].select_two_m == 4);
  CHECK(!chain.stages()[1].select_two_m);

  // degrees flag scales every angle
  const std::string degrees = R"({
    "spin": 2,
    "prepare": {"theta": 0, "phi": 0, "m": 2},
    "stages": [{"theta": 90, "phi": 0}]
  })";
  const MeasurementChain deg_chain = parse_chain_json(degrees, true);
  CHECK(deg_chain.stages()[0].direction.theta() ==
        doctest::Approx(kPi / 2).epsilon(1e-15));

  // half-integer projections key exactly
  const std::string half = R"({
    "spin": 0.5,
    "prepare": {"theta": 0, "phi": 0, "m": -0.5},
    "stages": [{"theta": 1.0, "phi": 2.0}]
  })";
  CHECK(parse_chain_json(half).prepare_two_m() == -1);

  // malformed inputs name the offending field
  CHECK(throws_mentioning("invalid JSON", [] { parse_chain_json("{"); }));
  CHECK(throws_mentioning("prepare", [] { parse_chain_json(R"({"spin": 2})"); }));
  CHECK(throws_mentioning("prepare.theta", [] {
    parse_chain_json(R"({"spin": 2, "prepare": {"phi": 0, "m": 2},
                         "stages": [{"theta": 0, "phi": 0}]})");
  }));
  CHECK(throws_mentioning("prepare.m", [] {
    parse_chain_json(R"({"spin": 2, "prepare": {"theta": 0, "phi": 0, "m": 0.3},
                         "stages": [{"theta": 0, "phi": 0}]})");
  }));
  CHECK(throws_mentioning("stages[0].select", [] {
    parse_chain_json(R"({"spin": 2, "prepare": {"theta": 0, "phi": 0, "m": 2},
                         "stages": [{"theta": 0, "phi": 0, "select": 7}]})");
  }));
  CHECK(throws_mentioning("stages", [] {
    parse_chain_json(R"({"spin": 2, "prepare": {"theta": 0, "phi": 0, "m": 2},
                         "stages": []})");
  }));
}
