#include "spinamp/amplitude_engine.hpp"

#include "spinamp/spin_algebra.hpp"

namespace spinamp {

PhaseConvention parse_convention(const std::string& name) {
  if (name == "canonical") return PhaseConvention::canonical;
  if (name == "paper") return PhaseConvention::paper;
  throw std::invalid_argument("unknown phase convention '" + name +
                              "' (expected 'canonical' or 'paper')");
}

std::string convention_name(PhaseConvention convention) {
  return convention == PhaseConvention::canonical ? "canonical" : "paper";
}

SpinMatrix eigenbasis(const Spin& spin, const Direction& dir,
                      PhaseConvention convention) {
  if (convention == PhaseConvention::paper && spin.two_j() != 4) {
    throw std::invalid_argument("the paper phase convention is defined for spin 2 only");
  }
  const int dim = spin.dimension();
  const Eigen::MatrixXd d = rotation_about_y(spin, dir.theta());
  SpinMatrix u(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const double angle = -spin.level(r) * dir.phi();
    const Complex z_phase = angle == 0.0 ? Complex(1.0, 0.0) : std::polar(1.0, angle);
    for (int c = 0; c < dim; ++c) {
      u(r, c) = z_phase * d(r, c);
    }
  }
  if (convention == PhaseConvention::paper) {
    u.col(1) *= -1.0;  // m = +1
    u.col(3) *= -1.0;  // m = -1
  }
  return u;
}

AmplitudeTable standard_table(const Spin& spin, const Direction& source,
                              PhaseConvention convention) {
  return {spin, source, Direction::z_axis(), convention,
          eigenbasis(spin, source, convention)};
}

AmplitudeTable general_table(const Spin& spin, const Direction& source,
                             const Direction& target,
                             PhaseConvention convention) {
  if (convention == PhaseConvention::paper && spin.two_j() != 4) {
    throw std::invalid_argument("the paper phase convention is defined for spin 2 only");
  }
  if (source == target) {
    const int dim = spin.dimension();
    return {spin, source, target, convention, SpinMatrix::Identity(dim, dim)};
  }
  SpinMatrix entries = eigenbasis(spin, target, convention).adjoint() *
                       eigenbasis(spin, source, convention);
  return {spin, source, target, convention, std::move(entries)};
}

AmplitudeTable chain_compose(const AmplitudeTable& first,
                             const AmplitudeTable& second) {
  if (first.spin != second.spin) {
    throw std::invalid_argument("chain_compose: spin mismatch");
  }
  if (!(first.target == second.source)) {
    throw std::invalid_argument(
        "chain_compose: intermediate direction mismatch (first.target != second.source)");
  }
  if (first.convention != second.convention) {
    throw std::invalid_argument("chain_compose: phase convention mismatch");
  }
  return {first.spin, first.source, second.target, first.convention,
          second.entries * first.entries};
}

ProbabilityTable probabilities(const AmplitudeTable& table) {
  return {table.spin, table.source, table.target, table.entries.cwiseAbs2()};
}

}  // namespace spinamp
