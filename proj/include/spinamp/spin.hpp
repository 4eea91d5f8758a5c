#ifndef SPINAMP_SPIN_HPP
#define SPINAMP_SPIN_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinamp {

using Complex = std::complex<double>;
using SpinMatrix = Eigen::MatrixXcd;

/// Spin quantum number j, restricted to positive half-integers.
/// All operator eigenvalues and amplitudes are reported in units of hbar
/// (hbar == 1 internally).
class Spin {
 public:
  explicit Spin(double j) : two_j_(validated_two_j(j)) {}

  double j() const { return 0.5 * two_j_; }
  int two_j() const { return two_j_; }
  int dimension() const { return two_j_ + 1; }

  // Row/column index convention: index 0 is m = +j, counting down to m = -j.
  double level(int index) const { return 0.5 * (two_j_ - 2 * index); }
  int level_two_m(int index) const { return two_j_ - 2 * index; }

  bool is_valid_two_m(int two_m) const {
    return std::abs(two_m) <= two_j_ && (two_j_ - two_m) % 2 == 0;
  }

  int index_of_two_m(int two_m) const {
    if (!is_valid_two_m(two_m)) {
      throw std::invalid_argument("projection 2m=" + std::to_string(two_m) +
                                  " is not in {-2j..2j} for 2j=" +
                                  std::to_string(two_j_));
    }
    return (two_j_ - two_m) / 2;
  }

  friend bool operator==(const Spin&, const Spin&) = default;

 private:
  static int validated_two_j(double j);

  int two_j_;
};

/// Quantization axis named by polar angles, theta in [0, pi] and phi in
/// [0, 2*pi). Out-of-range input is folded back on construction; in-range
/// values pass through unchanged so grid angles stay exact.
class Direction {
 public:
  Direction(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  Eigen::Vector3d unit_vector() const {
    return {std::sin(theta_) * std::cos(phi_),
            std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
  }

  static Direction z_axis() { return {0.0, 0.0}; }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  double theta_;
  double phi_;
};

}  // namespace spinamp

#endif  // SPINAMP_SPIN_HPP
