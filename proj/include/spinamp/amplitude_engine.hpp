#ifndef SPINAMP_AMPLITUDE_ENGINE_HPP
#define SPINAMP_AMPLITUDE_ENGINE_HPP

#include "spinamp/spin.hpp"

namespace spinamp {

/// Column phase convention for eigenbases and amplitude tables.
///
/// canonical: columns of the rotation operator exp(-i phi S_z) exp(-i theta S_y)
///            carrying the z axis into the quantization direction; defined for
///            every j.
/// paper:     spin 2 only. Same columns with a fixed per-column sign map
///            {+1, -1, +1, -1, +1} for m = +2..-2, the convention used by the
///            closed-form reference table in closed_forms.hpp (its m = +-1
///            eigenvectors are the negatives of the canonical ones; at
///            theta = 0 the m = 1 column is -e_1, not +e_1).
enum class PhaseConvention { canonical, paper };

PhaseConvention parse_convention(const std::string& name);
std::string convention_name(PhaseConvention convention);

/// Orthonormal eigenvectors of projection_operator(spin, dir) as columns,
/// column k holding the eigenvector for m = j - k, phases fixed by the
/// chosen convention. Throws std::invalid_argument for the paper convention
/// with j != 2.
SpinMatrix eigenbasis(const Spin& spin, const Direction& dir,
                      PhaseConvention convention = PhaseConvention::canonical);

/// Table of amplitudes psi(m_i at source; m_f at target): column index
/// encodes m_i (ordered +j..-j), row index encodes m_f (same order).
/// Every table is unitary and each column is an eigenvector of the source
/// projection operator expressed in the target eigenbasis.
struct AmplitudeTable {
  Spin spin;
  Direction source;
  Direction target;
  PhaseConvention convention;
  SpinMatrix entries;

  Complex amplitude(int two_m_i, int two_m_f) const {
    return entries(spin.index_of_two_m(two_m_f), spin.index_of_two_m(two_m_i));
  }
};

/// Entrywise square moduli of an amplitude table; doubly stochastic.
struct ProbabilityTable {
  Spin spin;
  Direction source;
  Direction target;
  Eigen::MatrixXd entries;

  double probability(int two_m_i, int two_m_f) const {
    return entries(spin.index_of_two_m(two_m_f), spin.index_of_two_m(two_m_i));
  }
};

/// Amplitudes from an arbitrary source direction into the raw z basis
/// (target recorded as the z axis). Under the paper convention this
/// reproduces the closed-form reference table entry for entry; note that the
/// paper convention's z-axis eigenbasis carries the m = +-1 sign flips, so
/// for that convention this table differs from general_table(source, z) in
/// the m_f = +-1 rows.
AmplitudeTable standard_table(const Spin& spin, const Direction& source,
                              PhaseConvention convention = PhaseConvention::canonical);

/// Amplitudes between two arbitrary directions, computed directly as
/// eigenbasis(target)^dagger * eigenbasis(source). Equal source and target
/// give the exact identity.
AmplitudeTable general_table(const Spin& spin, const Direction& source,
                             const Direction& target,
                             PhaseConvention convention = PhaseConvention::canonical);

/// Chain-rule composition over an intermediate direction: requires
/// first.target == second.source (and matching spin and convention) and
/// returns the table from first.source to second.target. The result is
/// independent of the intermediate direction.
AmplitudeTable chain_compose(const AmplitudeTable& first,
                             const AmplitudeTable& second);

ProbabilityTable probabilities(const AmplitudeTable& table);

}  // namespace spinamp

#endif  // SPINAMP_AMPLITUDE_ENGINE_HPP
