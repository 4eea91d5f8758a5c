#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "spinamp/amplitude_engine.hpp"
#include "spinamp/closed_forms.hpp"
#include "spinamp/rng.hpp"

using namespace spinamp;

namespace {

constexpr double kPi = std::numbers::pi;

// the oracle-established set of table entries that disagree with the engine
const std::set<std::string> kKnownSuspects = {"Eq45", "Eq55", "Eq57", "Eq59",
                                              "Eq69"};

}  // namespace

TEST_CASE("standard closed form spot values") {
  CHECK(standard_closed_form(2, 2, 0.0, 0.0) == Complex(1.0));
  CHECK(std::abs(standard_closed_form(2, 0, kPi / 2, 0.37) -
                 Complex(std::sqrt(6.0) / 4.0)) < 1e-15);
  CHECK(std::abs(standard_closed_form(1, 1, 0.0, 0.0) - Complex(-1.0)) == 0.0);
  CHECK(std::abs(standard_closed_form(0, 0, kPi / 2, 0.3) - Complex(-0.5)) < 1e-15);

  CHECK_THROWS_AS(standard_closed_form(3, 0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(standard_closed_form(0, -3, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("generalized closed form spot values") {
  SplitMix64 rng(3);
  // equal angles collapse psi(0;0) to 1
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = rng.next_unit_double() * kPi;
    const double phi = rng.next_unit_double() * 2.0 * kPi;
    CHECK(std::abs(general_closed_form(0, 0, theta, phi, theta, phi) -
                   Complex(1.0)) < 1e-12);
  }
  // source at z: only the first displayed term survives
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = rng.next_unit_double() * kPi;
    const double phi = rng.next_unit_double() * 2.0 * kPi;
    const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
    CHECK(std::abs(general_closed_form(2, 2, 0.0, 0.0, theta, phi) -
                   c2 * c2 * std::polar(1.0, 2.0 * phi)) < 1e-14);
  }
  CHECK(std::abs(general_closed_form(2, 1, 0.0, 0.0, kPi / 2, 0.0) -
                 Complex(0.5)) < 1e-15);

  CHECK_THROWS_AS(general_closed_form(5, 0, 0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("literal coefficients are pinned") {
  // sqrt(3/32) with the (2 cos^2 - sin^2) factor, isolated at theta = 0
  CHECK(std::abs(general_closed_form(2, 0, kPi / 2, 0.0, 0.0, 0.0) -
                 Complex(2.0 * std::sqrt(3.0 / 32.0))) < 1e-15);
  // the 3/8 interference term of psi(2;2) at crossed quarter-turns
  CHECK(std::abs(general_closed_form(2, 2, kPi / 2, 0.0, kPi / 2, kPi / 2) -
                 Complex(0.25)) < 1e-15);
  // the transcription keeps the duplicated cos^4 cos^4 factor of Eq69:
  // frozen formula and engine values at (pi/3, 0, pi/2, 0)
  const Complex formula = general_closed_form(-2, -2, kPi / 3, 0.0, kPi / 2, 0.0);
  CHECK(std::abs(formula - Complex(0.9955127018922194)) < 1e-12);
  const Complex engine = general_table(Spin(2.0), {kPi / 3, 0.0}, {kPi / 2, 0.0},
                                       PhaseConvention::paper)
                             .amplitude(-4, -4);
  CHECK(std::abs(engine - Complex(0.8705127018922193)) < 1e-12);
}

TEST_CASE("confirmed closed form magnitudes never exceed 1") {
  // a sign-slipped term breaks normalization, so the suspected entries can
  // and do exceed 1; the bound holds for every confirmed entry
  SplitMix64 rng(9);
  const auto forms = closed_form_table();
  for (int trial = 0; trial < 200; ++trial) {
    const double tp = rng.next_unit_double() * kPi;
    const double pp = rng.next_unit_double() * 2.0 * kPi;
    const double t = rng.next_unit_double() * kPi;
    const double p = rng.next_unit_double() * 2.0 * kPi;
    double suspect_peak = 0.0;
    for (const auto& form : forms) {
      const double magnitude = std::abs(form.evaluate(tp, pp, t, p));
      if (kKnownSuspects.count(std::string(form.equation_id)) > 0) {
        suspect_peak = std::max(suspect_peak, magnitude);
      } else {
        CHECK(magnitude <= 1.0 + 1e-12);
      }
    }
    CHECK(suspect_peak <= 2.0 + 1e-12);  // one slipped term at most doubles
  }
}

TEST_CASE("table layout") {
  const auto forms = closed_form_table();
  REQUIRE(forms.size() == 50);
  std::set<std::string_view> ids;
  int generalized = 0;
  for (const auto& form : forms) {
    ids.insert(form.equation_id);
    CHECK(form.m_i >= -2);
    CHECK(form.m_i <= 2);
    CHECK(form.m_f >= -2);
    CHECK(form.m_f <= 2);
    if (form.generalized) ++generalized;
  }
  CHECK(ids.size() == 50);
  CHECK(generalized == 25);
  CHECK(ids.count("Eq10") == 1);
  CHECK(ids.count("Eq34") == 1);
  CHECK(ids.count("Eq39") == 1);
  CHECK(ids.count("Eq66") == 1);
  CHECK(ids.count("Eq69") == 1);
  CHECK(ids.count("Eq67") == 0);  // unused labels in the source numbering
  CHECK(ids.count("Eq68") == 0);
  CHECK(ids.count("Eq44") == 0);
}

TEST_CASE("reversal consistency between generalized and standard forms") {
  // at theta' = 0 each confirmed generalized form reduces to the conjugate of
  // the standard form with the roles of m_i and m_f exchanged, times the
  // reference convention's column sign for m_i (the generalized table keeps
  // the sign-flipped m = +-1 gauge at the z axis, the standard table does not)
  SplitMix64 rng(15);
  for (const auto& form : closed_form_table()) {
    if (!form.generalized) continue;
    if (kKnownSuspects.count(std::string(form.equation_id)) > 0) continue;
    const double sign = std::abs(form.m_i) == 1 ? -1.0 : 1.0;
    for (int trial = 0; trial < 10; ++trial) {
      const double theta = rng.next_unit_double() * kPi;
      const double phi = rng.next_unit_double() * 2.0 * kPi;
      const Complex general = form.evaluate(0.0, 0.0, theta, phi);
      const Complex reversed =
          std::conj(standard_closed_form(form.m_f, form.m_i, theta, phi));
      CHECK(std::abs(general - sign * reversed) < 1e-10);
    }
  }
}

TEST_CASE("verify_all confirms the standard block and flags the known suspects") {
  const auto records = verify_all(1e-10, 300, kDefaultSeed);
  REQUIRE(records.size() == 50);

  std::set<std::string> suspects;
  for (const auto& rec : records) {
    CHECK(rec.sample_count == 300 + 12);  // randoms plus degenerate corners
    if (rec.verdict == Verdict::suspected_typo) {
      suspects.insert(rec.equation_id);
      CHECK(rec.max_abs_deviation > 1e-2);
      CHECK(!rec.suggested_correction.empty());
      // the note reports the engine value at the worst sampled tuple
      CHECK(rec.suggested_correction.find("engine") != std::string::npos);
    } else {
      CHECK(rec.max_abs_deviation < 1e-12);
      CHECK(rec.suggested_correction.empty());
    }
  }
  CHECK(suspects == kKnownSuspects);

  // sorted by deviation descending
  for (std::size_t k = 1; k < records.size(); ++k) {
    CHECK(records[k - 1].max_abs_deviation >= records[k].max_abs_deviation);
  }

  // verdicts are reproducible
  const auto again = verify_all(1e-10, 300, kDefaultSeed);
  for (std::size_t k = 0; k < records.size(); ++k) {
    CHECK(records[k].equation_id == again[k].equation_id);
    CHECK(records[k].max_abs_deviation == again[k].max_abs_deviation);
    CHECK(records[k].verdict == again[k].verdict);
  }

  CHECK_THROWS_AS(verify_all(1e-10, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_all(-1.0, 10), std::invalid_argument);
}

TEST_CASE("confirmed forms hold at fresh random tuples") {
  // re-check a few confirmed forms against the engine away from the
  // verification seed
  SplitMix64 rng(0xFEED);
  const Spin spin(2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double tp = rng.next_unit_double() * kPi;
    const double pp = rng.next_unit_double() * 2.0 * kPi;
    const double t = rng.next_unit_double() * kPi;
    const double p = rng.next_unit_double() * 2.0 * kPi;
    const SpinMatrix general =
        general_table(spin, {tp, pp}, {t, p}, PhaseConvention::paper).entries;
    const SpinMatrix standard =
        standard_table(spin, {t, p}, PhaseConvention::paper).entries;
    for (const auto& form : closed_form_table()) {
      if (kKnownSuspects.count(std::string(form.equation_id)) > 0) continue;
      const int row = 2 - form.m_f;
      const int col = 2 - form.m_i;
      const Complex engine = form.generalized ? general(row, col) : standard(row, col);
      CHECK(std::abs(form.evaluate(tp, pp, t, p) - engine) < 1e-10);
    }
  }
}

TEST_CASE("errata JSON schema") {
  const auto records = verify_all(1e-10, 50, kDefaultSeed);
  const nlohmann::json report = errata_to_json(records);
  REQUIRE(report.is_array());
  REQUIRE(report.size() == 50);
  for (const auto& entry : report) {
    CHECK(entry.contains("equation_id"));
    CHECK(entry.contains("m_i"));
    CHECK(entry.contains("m_f"));
    CHECK(entry.contains("max_abs_deviation"));
    CHECK(entry.contains("verdict"));
    CHECK(entry.contains("suggested_correction"));
    const std::string verdict = entry["verdict"].get<std::string>();
    CHECK((verdict == "confirmed" || verdict == "suspected-typo"));
    if (verdict == "confirmed") {
      CHECK(entry["suggested_correction"].is_null());
    } else {
      CHECK(entry["suggested_correction"].is_string());
    }
  }
}
