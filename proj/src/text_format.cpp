#include "spinamp/text_format.hpp"

#include <cstdio>
#include <cstdlib>

namespace spinamp {

std::string format_real(double x) {
  if (x == 0.0) return "0";  // collapse -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double round_to_12_digits(double x) {
  return std::strtod(format_real(x).c_str(), nullptr);
}

std::string format_complex(Complex z) {
  const std::string re = format_real(z.real());
  const std::string im = format_real(z.imag());
  if (im[0] == '-') {
    return re + im + "i";
  }
  return re + "+" + im + "i";
}

std::string format_m(int two_m) {
  if (two_m % 2 == 0) return std::to_string(two_m / 2);
  return format_real(0.5 * two_m);
}

}  // namespace spinamp
