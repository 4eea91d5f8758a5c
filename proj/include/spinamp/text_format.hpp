#ifndef SPINAMP_TEXT_FORMAT_HPP
#define SPINAMP_TEXT_FORMAT_HPP

#include <string>

#include "spinamp/spin.hpp"

namespace spinamp {

/// Shortest decimal form with 12 significant digits (%.12g); chosen so
/// serialized values round-trip well inside the 1e-12 tolerances used
/// throughout.
std::string format_real(double x);

/// The double nearest the 12-significant-digit decimal form of x, i.e. what
/// a reader of format_real(x) reconstructs.
double round_to_12_digits(double x);

/// "a+bi" / "a-bi" with 12 significant digits per part.
std::string format_complex(Complex z);

/// Projection value 2m/2 rendered as a compact decimal ("2", "-0.5").
std::string format_m(int two_m);

}  // namespace spinamp

#endif  // SPINAMP_TEXT_FORMAT_HPP
