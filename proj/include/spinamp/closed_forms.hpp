#ifndef SPINAMP_CLOSED_FORMS_HPP
#define SPINAMP_CLOSED_FORMS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinamp/rng.hpp"
#include "spinamp/spin.hpp"

#include "json.hpp"

namespace spinamp {

/// One entry of the bundled spin-2 closed-form amplitude table. The entries
/// are faithful transcriptions of the published expressions, including any
/// slips the source may contain; verify_all decides which entries hold.
/// Standard entries give psi(m_i at (theta, phi); m_f at z) and ignore the
/// primed angles. Generalized entries give psi(m_i at (theta', phi');
/// m_f at (theta, phi)).
struct ClosedFormAmplitude {
  std::string_view equation_id;  // table label, "Eq10".."Eq69"
  int m_i;
  int m_f;
  bool generalized;

  Complex evaluate(double theta_p, double phi_p, double theta,
                   double phi) const;
};

/// All 50 table entries: 25 standard (Eq10..Eq34), 25 generalized
/// (Eq39..Eq66 plus Eq69; the source numbering skips the eigenvector
/// displays and the labels 67 and 68).
std::span<const ClosedFormAmplitude> closed_form_table();

/// Standard form for psi(m_i at (theta, phi); m_f at z).
/// Throws std::invalid_argument for m outside {-2..2}.
Complex standard_closed_form(int m_i, int m_f, double theta, double phi);

/// Generalized five-term form for psi(m_i at (theta', phi'); m_f at
/// (theta, phi)). Throws std::invalid_argument for m outside {-2..2}.
Complex general_closed_form(int m_i, int m_f, double theta_p, double phi_p,
                            double theta, double phi);

enum class Verdict { confirmed, suspected_typo };

std::string verdict_name(Verdict verdict);

struct ErrataRecord {
  std::string equation_id;
  int m_i = 0;
  int m_f = 0;
  double max_abs_deviation = 0.0;
  long sample_count = 0;
  Verdict verdict = Verdict::confirmed;
  std::string suggested_correction;  // empty when confirmed

  // worst sampled tuple and the two values there
  double worst_theta_p = 0.0, worst_phi_p = 0.0;
  double worst_theta = 0.0, worst_phi = 0.0;
  Complex formula_value;
  Complex engine_value;
};

/// Checks every table entry against the numeric engine (paper phase
/// convention) at `samples` random angle tuples plus the degenerate corners
/// theta, theta' in {0, pi}. Returns one record per entry, sorted by
/// deviation descending. Deterministic given (tolerance, samples, seed).
std::vector<ErrataRecord> verify_all(double tolerance = 1e-10,
                                     int samples = 1000,
                                     std::uint64_t seed = kDefaultSeed);

/// Errata report as a JSON array of
/// {equation_id, m_i, m_f, max_abs_deviation, verdict, suggested_correction}.
nlohmann::json errata_to_json(const std::vector<ErrataRecord>& records);

}  // namespace spinamp

#endif  // SPINAMP_CLOSED_FORMS_HPP
