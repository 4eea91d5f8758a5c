#include "spinamp/closed_forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "spinamp/amplitude_engine.hpp"
#include "spinamp/text_format.hpp"

namespace spinamp {

namespace {

const double kRoot6Over4 = std::sqrt(6.0) / 4.0;
const double kRoot6Over2 = std::sqrt(6.0) / 2.0;
const double kRoot3Over8 = std::sqrt(3.0 / 8.0);
const double kRoot3Over2 = std::sqrt(3.0 / 2.0);
const double kRoot3Over32 = std::sqrt(3.0 / 32.0);

void check_projection(int m) {
  if (m < -2 || m > 2) {
    throw std::invalid_argument("closed forms cover spin 2 only: m must lie in {-2..2}, got " +
                                std::to_string(m));
  }
}

}  // namespace

Complex standard_closed_form(int m_i, int m_f, double theta, double phi) {
  check_projection(m_i);
  check_projection(m_f);
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double c4 = c2 * c2;
  const double s4 = s2 * s2;
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const Complex ep1 = std::polar(1.0, phi);
  const Complex em1 = std::polar(1.0, -phi);
  const Complex ep2 = std::polar(1.0, 2.0 * phi);
  const Complex em2 = std::polar(1.0, -2.0 * phi);

  switch ((m_i + 2) * 5 + (m_f + 2)) {
    case 24: return c4 * em2;                                    // Eq10
    case 23: return st * c2 * em1;                               // Eq11
    case 22: return kRoot6Over4 * st * st;                       // Eq12
    case 21: return st * s2 * ep1;                               // Eq13
    case 20: return s4 * ep2;                                    // Eq14
    case 19: return st * c2 * em2;                               // Eq15
    case 18: return (3.0 * s2 - c2) * c2 * em1;                  // Eq16
    case 17: return -kRoot6Over2 * st * ct;                      // Eq17
    case 16: return -(3.0 * c2 - s2) * s2 * ep1;                 // Eq18
    case 15: return -st * s2 * ep2;                              // Eq19
    case 14: return kRoot6Over4 * st * st * em2;                 // Eq20
    case 13: return -kRoot6Over2 * st * ct * em1;                // Eq21
    case 12: return 0.5 * (2.0 * ct * ct - st * st);             // Eq22
    case 11: return kRoot6Over2 * st * ct * ep1;                 // Eq23
    case 10: return kRoot6Over4 * st * st * ep2;                 // Eq24
    case 9: return st * s2 * em2;                                // Eq25
    case 8: return -(3.0 * c2 - s2) * s2 * em1;                  // Eq26
    case 7: return kRoot6Over2 * st * ct;                        // Eq27
    case 6: return (3.0 * s2 - c2) * c2 * ep1;                   // Eq28
    case 5: return -st * c2 * ep2;                               // Eq29
    case 4: return s4 * em2;                                     // Eq30
    case 3: return -st * s2 * em1;                               // Eq31
    case 2: return kRoot6Over4 * st * st;                        // Eq32
    case 1: return -st * c2 * ep1;                               // Eq33
    case 0: return c4 * ep2;                                     // Eq34
  }
  throw std::logic_error("unreachable");
}

Complex general_closed_form(int m_i, int m_f, double theta_p, double phi_p,
                            double theta, double phi) {
  check_projection(m_i);
  check_projection(m_f);
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double c4 = c2 * c2;
  const double s4 = s2 * s2;
  const double cp2 = std::cos(theta_p / 2) * std::cos(theta_p / 2);
  const double sp2 = std::sin(theta_p / 2) * std::sin(theta_p / 2);
  const double cp4 = cp2 * cp2;
  const double sp4 = sp2 * sp2;
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double stp = std::sin(theta_p);
  const double ctp = std::cos(theta_p);
  const double dphi = phi - phi_p;
  const Complex e1 = std::polar(1.0, dphi);
  const Complex e2 = std::polar(1.0, 2.0 * dphi);
  const Complex f1 = std::polar(1.0, -dphi);
  const Complex f2 = std::polar(1.0, -2.0 * dphi);

  switch ((m_i + 2) * 5 + (m_f + 2)) {
    case 24:  // Eq39
      return c4 * cp4 * e2 + stp * st * cp2 * c2 * e1 +
             (3.0 / 8.0) * stp * stp * st * st + stp * st * sp2 * s2 * f1 +
             s4 * sp4 * f2;
    case 23:  // Eq40
      return st * cp4 * c2 * e2 + (3.0 * s2 - c2) * stp * cp2 * c2 * e1 -
             (3.0 / 4.0) * stp * stp * st * ct -
             (3.0 * c2 - s2) * stp * sp2 * s2 * f1 - st * sp4 * s2 * f2;
    case 22:  // Eq41
      return kRoot3Over8 * st * st * cp4 * e2 -
             kRoot3Over2 * st * stp * ct * cp2 * e1 +
             kRoot3Over32 * (2.0 * ct * ct - st * st) * stp * stp +
             kRoot3Over2 * st * stp * ct * sp2 * f1 +
             kRoot3Over8 * st * st * sp4 * f2;
    case 21:  // Eq42
      return st * cp4 * s2 * e2 - (3.0 * c2 - s2) * stp * cp2 * s2 * e1 +
             (3.0 / 4.0) * stp * stp * st * ct +
             (3.0 * s2 - c2) * stp * sp2 * c2 * f1 - st * sp4 * c2 * f2;
    case 20:  // Eq43
      return s4 * cp4 * e2 - stp * st * cp2 * s2 * e1 +
             (3.0 / 8.0) * stp * stp * st * st - stp * st * sp2 * c2 * f1 +
             c4 * sp4 * f2;
    case 19:  // Eq45
      return stp * cp2 * c4 * e2 + (3.0 * sp2 - cp2) * st * cp2 * c2 * e1 -
             (3.0 / 4.0) * st * st * stp * ctp +
             (3.0 * cp2 - sp2) * st * sp2 * s2 * f1 - stp * sp2 * s4 * f2;
    case 18:  // Eq46
      return stp * st * cp2 * c2 * e2 +
             (3.0 * sp2 - cp2) * (3.0 * s2 - c2) * cp2 * c2 * e1 +
             (3.0 / 2.0) * st * stp * ct * ctp +
             (3.0 * cp2 - sp2) * (3.0 * c2 - s2) * sp2 * s2 * f1 +
             stp * st * sp2 * s2 * f2;
    case 17:  // Eq47
      return kRoot3Over8 * stp * st * st * cp2 * e2 -
             kRoot3Over2 * (3.0 * sp2 - cp2) * st * ct * cp2 * e1 -
             kRoot3Over8 * (2.0 * ct * ct - st * st) * stp * ctp -
             kRoot3Over2 * (3.0 * cp2 - sp2) * st * ct * sp2 * f1 -
             kRoot3Over8 * stp * st * st * sp2 * f2;
    case 16:  // Eq48
      return stp * st * cp2 * s2 * e2 -
             (3.0 * sp2 - cp2) * (3.0 * c2 - s2) * cp2 * s2 * e1 -
             (3.0 / 2.0) * st * stp * ct * ctp -
             (3.0 * cp2 - sp2) * (3.0 * s2 - c2) * sp2 * c2 * f1 +
             stp * st * sp2 * c2 * f2;
    case 15:  // Eq49
      return stp * cp2 * s4 * e2 - (3.0 * sp2 - cp2) * st * cp2 * s2 * e1 -
             (3.0 / 4.0) * st * st * stp * ctp - stp * sp2 * c4 * f2 +
             (3.0 * cp2 - sp2) * st * sp2 * c2 * f1;
    case 14:  // Eq51
      return kRoot3Over8 * stp * stp * c4 * e2 -
             kRoot3Over2 * st * stp * ctp * c2 * e1 +
             kRoot3Over32 * (2.0 * ctp * ctp - stp * stp) * st * st +
             kRoot3Over2 * st * stp * ctp * s2 * f1 +
             kRoot3Over8 * stp * stp * s4 * f2;
    case 13:  // Eq52
      return kRoot3Over8 * st * stp * stp * c2 * e2 -
             kRoot3Over2 * (3.0 * s2 - c2) * stp * ctp * c2 * e1 -
             kRoot3Over8 * (2.0 * ctp * ctp - stp * stp) * st * ct -
             kRoot3Over2 * (3.0 * c2 - s2) * stp * ctp * s2 * f1 -
             kRoot3Over8 * st * stp * stp * s2 * f2;
    case 12:  // Eq53 (the stray "+" between the displayed lines is read as
              // plain addition of the five terms)
      return (3.0 / 8.0) * st * st * stp * stp * e2 +
             (3.0 / 2.0) * stp * ctp * st * ct * e1 +
             (3.0 / 2.0) * stp * ctp * st * ct * f1 +
             (1.0 / 4.0) * (2.0 * ctp * ctp - stp * stp) *
                 (2.0 * ct * ct - st * st) +
             (3.0 / 8.0) * st * st * stp * stp * f2;
    case 11:  // Eq54
      return kRoot3Over8 * st * stp * stp * s2 * e2 +
             kRoot3Over2 * (3.0 * c2 - s2) * stp * ctp * s2 * e1 +
             kRoot3Over2 * (3.0 * s2 - c2) * stp * ctp * c2 * f1 +
             kRoot3Over8 * (2.0 * ctp * ctp - stp * stp) * st * ct -
             kRoot3Over8 * st * stp * stp * c2 * f2;
    case 10:  // Eq55
      return kRoot3Over8 * stp * stp * s4 * e2 +
             kRoot3Over2 * st * stp * ctp * s2 * e1 +
             kRoot3Over8 * stp * stp * c4 * f2 +
             kRoot3Over32 * (2.0 * ctp * ctp - stp * stp) * st * st +
             kRoot3Over2 * st * stp * ctp * c2 * f1;
    case 9:  // Eq57
      return -stp * sp2 * c4 * e2 - (3.0 * cp2 - sp2) * st * sp2 * c2 * e1 +
             (3.0 / 4.0) * st * st * stp * ctp - stp * cp2 * s4 * f2 +
             (3.0 * sp2 - cp2) * st * cp2 * s2 * f1;
    case 8:  // Eq58
      return stp * st * sp2 * c2 * e2 -
             (3.0 * cp2 - sp2) * (3.0 * s2 - c2) * sp2 * c2 * e1 -
             (3.0 * sp2 - cp2) * (3.0 * c2 - s2) * cp2 * s2 * f1 -
             (3.0 / 2.0) * st * stp * ct * ctp + stp * st * cp2 * s2 * f2;
    case 7:  // Eq59
      return kRoot3Over8 * stp * st * st * sp2 * e2 +
             kRoot3Over2 * (3.0 * cp2 - sp2) * st * ct * sp2 * e1 +
             kRoot3Over2 * (3.0 * sp2 - cp2) * st * ct * cp2 * f1 +
             kRoot3Over8 * (2.0 * ct * ct - st * st) * stp * ctp +
             kRoot3Over8 * stp * st * st * cp2 * f2;
    case 6:  // Eq60
      return stp * st * sp2 * s2 * e2 +
             (3.0 * cp2 - sp2) * (3.0 * c2 - s2) * sp2 * s2 * e1 +
             (3.0 * sp2 - cp2) * (3.0 * s2 - c2) * cp2 * c2 * f1 +
             (3.0 / 2.0) * st * stp * ct * ctp + stp * st * cp2 * c2 * f2;
    case 5:  // Eq61
      return stp * sp2 * s4 * e2 + (3.0 * cp2 - sp2) * st * sp2 * s2 * e1 +
             (3.0 / 4.0) * st * st * stp * ctp - stp * cp2 * c4 * f2 -
             (3.0 * sp2 - cp2) * st * cp2 * c2 * f1;
    case 4:  // Eq63
      return c4 * sp4 * e2 - stp * st * sp2 * c2 * e1 +
             (3.0 / 8.0) * stp * stp * st * st - stp * st * cp2 * s2 * f1 +
             s4 * cp4 * f2;
    case 3:  // Eq64
      return st * sp4 * c2 * e2 - (3.0 * s2 - c2) * stp * sp2 * c2 * e1 -
             (3.0 / 4.0) * stp * stp * st * ct - st * cp4 * s2 * f2 +
             (3.0 * c2 - s2) * stp * cp2 * s2 * f1;
    case 2:  // Eq65
      return kRoot3Over8 * st * st * sp4 * e2 +
             kRoot3Over2 * st * stp * ct * sp2 * e1 +
             kRoot3Over8 * st * st * cp4 * f2 +
             kRoot3Over32 * (2.0 * ct * ct - st * st) * stp * stp -
             kRoot3Over2 * st * stp * ct * cp2 * f1;
    case 1:  // Eq66
      return st * sp4 * s2 * e2 + (3.0 * c2 - s2) * stp * sp2 * s2 * e1 +
             (3.0 / 4.0) * stp * stp * st * ct - st * cp4 * c2 * f2 -
             (3.0 * s2 - c2) * stp * cp2 * c2 * f1;
    case 0:  // Eq69 (first and last displayed terms carry the same
             // cos^4(theta/2) cos^4(theta'/2) factor; transcribed as printed)
      return c4 * cp4 * e2 + stp * st * sp2 * s2 * e1 +
             (3.0 / 8.0) * stp * stp * st * st + stp * st * cp2 * c2 * f1 +
             c4 * cp4 * f2;
  }
  throw std::logic_error("unreachable");
}

Complex ClosedFormAmplitude::evaluate(double theta_p, double phi_p,
                                      double theta, double phi) const {
  return generalized ? general_closed_form(m_i, m_f, theta_p, phi_p, theta, phi)
                     : standard_closed_form(m_i, m_f, theta, phi);
}

namespace {

struct TableStorage {
  std::vector<std::string> ids;
  std::vector<ClosedFormAmplitude> entries;

  TableStorage() {
    ids.reserve(50);
    entries.reserve(50);
    for (int m_i = 2; m_i >= -2; --m_i) {
      for (int m_f = 2; m_f >= -2; --m_f) {
        const int label = 10 + 5 * (2 - m_i) + (2 - m_f);
        ids.push_back("Eq" + std::to_string(label));
      }
    }
    for (int m_i = 2; m_i >= -2; --m_i) {
      for (int m_f = 2; m_f >= -2; --m_f) {
        int label = 39 + 6 * (2 - m_i) + (2 - m_f);
        if (label == 67) label = 69;  // the source numbering has no 67/68
        ids.push_back("Eq" + std::to_string(label));
      }
    }
    std::size_t k = 0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int m_i = 2; m_i >= -2; --m_i) {
        for (int m_f = 2; m_f >= -2; --m_f) {
          entries.push_back({std::string_view(ids[k]), m_i, m_f, pass == 1});
          ++k;
        }
      }
    }
  }
};

const TableStorage& table_storage() {
  static const TableStorage storage;
  return storage;
}

}  // namespace

std::span<const ClosedFormAmplitude> closed_form_table() {
  return table_storage().entries;
}

std::string verdict_name(Verdict verdict) {
  return verdict == Verdict::confirmed ? "confirmed" : "suspected-typo";
}

std::vector<ErrataRecord> verify_all(double tolerance, int samples,
                                     std::uint64_t seed) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("verify_all: tolerance must be positive");
  }
  if (samples < 1) {
    throw std::invalid_argument("verify_all: samples must be >= 1");
  }

  constexpr double pi = std::numbers::pi;
  SplitMix64 rng(seed);
  std::vector<std::array<double, 4>> tuples;  // (theta', phi', theta, phi)
  tuples.reserve(static_cast<std::size_t>(samples) + 12);
  for (int i = 0; i < samples; ++i) {
    tuples.push_back({rng.next_unit_double() * pi,
                      rng.next_unit_double() * 2.0 * pi,
                      rng.next_unit_double() * pi,
                      rng.next_unit_double() * 2.0 * pi});
  }
  for (double theta_p : {0.0, pi}) {
    for (double theta : {0.0, pi}) {
      tuples.push_back({theta_p, 0.0, theta, 0.0});
      tuples.push_back({theta_p, rng.next_unit_double() * 2.0 * pi, theta,
                        rng.next_unit_double() * 2.0 * pi});
    }
  }
  for (double corner : {0.0, pi}) {
    tuples.push_back({corner, rng.next_unit_double() * 2.0 * pi,
                      rng.next_unit_double() * pi,
                      rng.next_unit_double() * 2.0 * pi});
    tuples.push_back({rng.next_unit_double() * pi,
                      rng.next_unit_double() * 2.0 * pi, corner,
                      rng.next_unit_double() * 2.0 * pi});
  }

  const Spin spin2(2.0);
  const auto forms = closed_form_table();
  std::vector<ErrataRecord> records(forms.size());
  for (std::size_t f = 0; f < forms.size(); ++f) {
    records[f].equation_id = std::string(forms[f].equation_id);
    records[f].m_i = forms[f].m_i;
    records[f].m_f = forms[f].m_f;
    records[f].sample_count = static_cast<long>(tuples.size());
  }

  for (const auto& [theta_p, phi_p, theta, phi] : tuples) {
    const SpinMatrix standard =
        standard_table(spin2, Direction(theta, phi), PhaseConvention::paper)
            .entries;
    const SpinMatrix general =
        general_table(spin2, Direction(theta_p, phi_p), Direction(theta, phi),
                      PhaseConvention::paper)
            .entries;
    for (std::size_t f = 0; f < forms.size(); ++f) {
      const auto& form = forms[f];
      const int row = spin2.index_of_two_m(2 * form.m_f);
      const int col = spin2.index_of_two_m(2 * form.m_i);
      const Complex engine = form.generalized ? general(row, col) : standard(row, col);
      const Complex value = form.evaluate(theta_p, phi_p, theta, phi);
      const double dev = std::abs(value - engine);
      if (dev > records[f].max_abs_deviation) {
        auto& rec = records[f];
        rec.max_abs_deviation = dev;
        rec.worst_theta_p = theta_p;
        rec.worst_phi_p = phi_p;
        rec.worst_theta = theta;
        rec.worst_phi = phi;
        rec.formula_value = value;
        rec.engine_value = engine;
      }
    }
  }

  for (auto& rec : records) {
    if (rec.max_abs_deviation < tolerance) {
      rec.verdict = Verdict::confirmed;
    } else {
      rec.verdict = Verdict::suspected_typo;
      rec.suggested_correction =
          "disagrees with the numeric amplitude table; max |formula - engine| = " +
          format_real(rec.max_abs_deviation) + " at (theta'=" +
          format_real(rec.worst_theta_p) + ", phi'=" + format_real(rec.worst_phi_p) +
          ", theta=" + format_real(rec.worst_theta) + ", phi=" +
          format_real(rec.worst_phi) + "): formula = " +
          format_complex(rec.formula_value) + ", engine = " +
          format_complex(rec.engine_value) +
          "; the engine value is the unitary-table entry";
    }
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const ErrataRecord& a, const ErrataRecord& b) {
                     if (a.max_abs_deviation != b.max_abs_deviation) {
                       return a.max_abs_deviation > b.max_abs_deviation;
                     }
                     return a.equation_id < b.equation_id;
                   });
  return records;
}

nlohmann::json errata_to_json(const std::vector<ErrataRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& rec : records) {
    out.push_back({{"equation_id", rec.equation_id},
                   {"m_i", rec.m_i},
                   {"m_f", rec.m_f},
                   {"max_abs_deviation", round_to_12_digits(rec.max_abs_deviation)},
                   {"verdict", verdict_name(rec.verdict)},
                   {"suggested_correction",
                    rec.verdict == Verdict::confirmed
                        ? nlohmann::json(nullptr)
                        : nlohmann::json(rec.suggested_correction)}});
  }
  return out;
}

}  // namespace spinamp
