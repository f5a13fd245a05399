#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hv {

// All coefficient arithmetic in the kernel is exact. Rat is GMP's
// canonical rational: always stored in lowest terms with positive
// denominator.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  mpq_class r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("rat_parse: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

// "p" when the denominator is 1, else "p/q" in lowest terms.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

}  // namespace hv
