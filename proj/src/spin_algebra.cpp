#include "spinamp/spin_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace spinamp {

namespace {

long double ln_factorial(int n) {
  return std::lgammal(static_cast<long double>(n) + 1.0L);
}

}  // namespace

SpinComponents spin_components(const Spin& spin) {
  const int dim = spin.dimension();
  const double j = spin.j();
  SpinMatrix sx = SpinMatrix::Zero(dim, dim);
  SpinMatrix sy = SpinMatrix::Zero(dim, dim);
  SpinMatrix sz = SpinMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    sz(i, i) = spin.level(i);
  }
  for (int i = 1; i < dim; ++i) {
    const double m = spin.level(i);  // S+ |m> lands one row up
    const double half = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    sx(i - 1, i) = half;
    sx(i, i - 1) = half;
    sy(i - 1, i) = Complex(0.0, -half);
    sy(i, i - 1) = Complex(0.0, half);
  }
  return {std::move(sx), std::move(sy), std::move(sz)};
}

SpinMatrix projection_operator(const Spin& spin, const Direction& dir) {
  const auto [sx, sy, sz] = spin_components(spin);
  const Eigen::Vector3d n = dir.unit_vector();
  return n.x() * sx + n.y() * sy + n.z() * sz;
}

SpinMatrix commutator(const SpinMatrix& a, const SpinMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw std::invalid_argument("commutator requires square matrices of equal dimension");
  }
  return a * b - b * a;
}

SpinMatrix casimir(const Spin& spin) {
  const auto [sx, sy, sz] = spin_components(spin);
  return sx * sx + sy * sy + sz * sz;
}

Eigen::MatrixXd rotation_about_y(const Spin& spin, double theta) {
  const int dim = spin.dimension();
  const int two_j = spin.two_j();
  if (theta == 0.0) {
    return Eigen::MatrixXd::Identity(dim, dim);
  }
  const long double c = std::cos(static_cast<long double>(theta) * 0.5L);
  const long double s = std::sin(static_cast<long double>(theta) * 0.5L);
  Eigen::MatrixXd d(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const int two_mr = two_j - 2 * r;
    for (int col = 0; col < dim; ++col) {
      const int two_mc = two_j - 2 * col;
      const int j_plus_mc = (two_j + two_mc) / 2;
      const int j_minus_mc = (two_j - two_mc) / 2;
      const int j_plus_mr = (two_j + two_mr) / 2;
      const int j_minus_mr = (two_j - two_mr) / 2;
      const int k_min = std::max(0, (two_mc - two_mr) / 2);
      const int k_max = std::min(j_plus_mc, j_minus_mr);
      const long double ln_pref =
          0.5L * (ln_factorial(j_plus_mc) + ln_factorial(j_minus_mc) +
                  ln_factorial(j_plus_mr) + ln_factorial(j_minus_mr));
      long double sum = 0.0L;
      for (int k = k_min; k <= k_max; ++k) {
        const int pow_cos = (2 * two_j + two_mc - two_mr) / 2 - 2 * k;
        const int pow_sin = (two_mr - two_mc) / 2 + 2 * k;
        const long double ln_den =
            ln_factorial(j_plus_mc - k) + ln_factorial(k) +
            ln_factorial((two_mr - two_mc) / 2 + k) +
            ln_factorial(j_minus_mr - k);
        const int parity = ((two_mr - two_mc) / 2 + k) & 1;
        const long double term = std::exp(ln_pref - ln_den) *
                                 std::pow(c, static_cast<long double>(pow_cos)) *
                                 std::pow(s, static_cast<long double>(pow_sin));
        sum += parity ? -term : term;
      }
      d(r, col) = static_cast<double>(sum);
    }
  }
  return d;
}

}  // namespace spinamp
