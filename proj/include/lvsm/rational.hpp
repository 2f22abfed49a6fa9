#pragma once

#include <gmpxx.h>

#include <string>

namespace lvsm {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace lvsm
