#include "spinamp/spin.hpp"

#include <cmath>
#include <numbers>

namespace spinamp {

int Spin::validated_two_j(double j) {
  const double two_j = 2.0 * j;
  const double rounded = std::round(two_j);
  if (!std::isfinite(j) || std::abs(two_j - rounded) > 1e-9 || rounded < 1.0 ||
      rounded > 1e6) {
    throw std::invalid_argument(
        "spin j must be a positive half-integer (1/2, 1, 3/2, ...), got " +
        std::to_string(j));
  }
  return static_cast<int>(rounded);
}

Direction::Direction(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("direction angles must be finite");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (theta < 0.0 || theta >= two_pi) {
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
  }
  if (theta > std::numbers::pi) {
    // fold the lower-hemisphere parametrization back: (theta, phi) and
    // (2*pi - theta, phi + pi) name the same axis
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  if (phi < 0.0 || phi >= two_pi) {
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
  }
  theta_ = theta;
  phi_ = phi;
}

}  // namespace spinamp
