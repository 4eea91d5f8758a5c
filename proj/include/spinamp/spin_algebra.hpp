#ifndef SPINAMP_SPIN_ALGEBRA_HPP
#define SPINAMP_SPIN_ALGEBRA_HPP

#include "spinamp/spin.hpp"

namespace spinamp {

struct SpinComponents {
  SpinMatrix x;
  SpinMatrix y;
  SpinMatrix z;
};

/// Component operators (S_x, S_y, S_z) from the ladder construction:
/// S_z diagonal with m = j..-j top-left to bottom-right, S+/- elements
/// sqrt(j(j+1) - m(m+-1)), S_x = (S+ + S-)/2, S_y = (S+ - S-)/(2i).
SpinComponents spin_components(const Spin& spin);

/// Projection of the spin operator onto a unit vector:
/// sin(theta)cos(phi) S_x + sin(theta)sin(phi) S_y + cos(theta) S_z.
SpinMatrix projection_operator(const Spin& spin, const Direction& dir);

/// ab - ba. Throws std::invalid_argument on dimension mismatch.
SpinMatrix commutator(const SpinMatrix& a, const SpinMatrix& b);

/// S^2 = S_x^2 + S_y^2 + S_z^2, equal to j(j+1) times the identity.
SpinMatrix casimir(const Spin& spin);

/// Matrix elements of exp(-i theta S_y), real for every j (the standard
/// rotation about y in the m = j..-j basis). Exact identity at theta == 0.
Eigen::MatrixXd rotation_about_y(const Spin& spin, double theta);

}  // namespace spinamp

#endif  // SPINAMP_SPIN_ALGEBRA_HPP
