#pragma once

#include <stdexcept>

#include "nilhom/rational.hpp"

namespace nilhom {

/**
 * Element of Z[1/p]: value = unit / p^exponent. Canonical form: zero is
 * (0, 0), and whenever exponent > 0 the unit is not divisible by p, so
 * equality is structural. The prime is context and is passed to every
 * operation; a PLocal value is meaningless without it.
 */
struct PLocal {
  Int unit = 0;
  unsigned exponent = 0;

  friend bool operator==(const PLocal&, const PLocal&) = default;
};

inline Int pow_int(const Int& base, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline PLocal plocal_normalize(Int unit, unsigned exponent, const Int& p) {
  if (unit == 0) return {};
  while (exponent > 0 && unit % p == 0) {
    unit /= p;
    --exponent;
  }
  return {std::move(unit), exponent};
}

inline PLocal plocal_from_int(Int n) { return {std::move(n), 0}; }

inline bool plocal_is_zero(const PLocal& a) { return a.unit == 0; }
inline bool plocal_is_integer(const PLocal& a) { return a.exponent == 0; }

inline PLocal plocal_add(const PLocal& a, const PLocal& b, const Int& p) {
  unsigned k = std::max(a.exponent, b.exponent);
  Int u = a.unit * pow_int(p, k - a.exponent) + b.unit * pow_int(p, k - b.exponent);
  return plocal_normalize(std::move(u), k, p);
}

inline PLocal plocal_neg(const PLocal& a) { return {-a.unit, a.exponent}; }

inline PLocal plocal_sub(const PLocal& a, const PLocal& b, const Int& p) {
  return plocal_add(a, plocal_neg(b), p);
}

inline PLocal plocal_mul(const PLocal& a, const PLocal& b, const Int& p) {
  return plocal_normalize(a.unit * b.unit, a.exponent + b.exponent, p);
}

/// Multiplication by p (shifts the exponent; stays canonical).
inline PLocal plocal_times_p(const PLocal& a, const Int& p) {
  if (plocal_is_zero(a)) return a;
  if (a.exponent > 0) return {a.unit, a.exponent - 1};
  return {a.unit * p, 0};
}

/// Division by p.
inline PLocal plocal_div_p(const PLocal& a, const Int& p) {
  return plocal_normalize(a.unit, a.exponent + 1, p);
}

inline Rat plocal_to_rat(const PLocal& a, const Int& p) {
  return Rat(a.unit) / Rat(pow_int(p, a.exponent));
}

/// Converts an exact rational whose denominator is a power of p.
/// Throws std::domain_error otherwise.
inline PLocal plocal_from_rat(const Rat& q, const Int& p) {
  Int num = numerator(q);
  Int den = denominator(q);
  unsigned k = 0;
  while (den > 1) {
    if (den % p != 0) throw std::domain_error("plocal_from_rat: denominator not a power of p");
    den /= p;
    ++k;
  }
  return plocal_normalize(std::move(num), k, p);
}

/// Integer floor of the value; frac = value - floor lies in [0, 1).
inline Int plocal_floor(const PLocal& a, const Int& p) {
  if (a.exponent == 0) return a.unit;
  Int q = pow_int(p, a.exponent);
  Int fl = a.unit / q;
  if (a.unit % q != 0 && a.unit < 0) fl -= 1;
  return fl;
}

/// Fractional part in [0, 1), a p-power-denominator value.
inline PLocal plocal_fract(const PLocal& a, const Int& p) {
  if (a.exponent == 0) return {};
  Int q = pow_int(p, a.exponent);
  Int r = a.unit % q;
  if (r < 0) r += q;
  return plocal_normalize(std::move(r), a.exponent, p);
}

} // namespace nilhom
