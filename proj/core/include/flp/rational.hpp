#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace flp {

// All problem data is kept exact.  Decimal literals from input files map to
// rationals with power-of-ten denominators, so serialization can round-trip
// them without loss.
using Rat = mpq_class;

struct NumberFormatError : std::runtime_error {
  explicit NumberFormatError(const std::string& what) : std::runtime_error(what) {}
};

// Accepts [+-]digits[.digits][(e|E)[+-]digits] and the fraction form p/q.
Rat rat_from_string(std::string_view text);

// Shortest exact representation: a plain decimal when the reduced denominator
// has only factors 2 and 5, otherwise "p/q".
std::string rat_to_string(const Rat& value);

// True when rat_to_string would produce a plain decimal.
bool rat_has_finite_decimal(const Rat& value);

inline double to_double(const Rat& value) { return value.get_d(); }

// Exact value of the double (doubles are dyadic rationals).
inline Rat rat_from_double(double value) {
  Rat r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

// True when value is the square of a rational; if so *root is set.
bool rat_exact_sqrt(const Rat& value, Rat* root);

}  // namespace flp
