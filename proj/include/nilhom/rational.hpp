#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace nilhom {

/// Exact arbitrary-precision scalars. Everything downstream of this header is
/// exact: no floating point enters any rank, kernel, or homology computation.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline int sgn(const Rat& q) { return q.sign(); }
inline int sgn(const Int& n) { return n.sign(); }

} // namespace nilhom
