#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace denselab {

// Arbitrary-precision rational; mpq_class keeps values canonical
// (lowest terms, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool rational_is_integer(const Rational& q) {
  return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0;
}

// floor as an exact integer (round toward -inf)
inline Integer rational_floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), mpq_numref(q.get_mpq_t()), mpq_denref(q.get_mpq_t()));
  return out;
}

// canonical text form: "p" for integers, "p/q" otherwise
inline std::string rational_str(const Rational& q) { return q.get_str(); }

// parses "p" or "p/q"; rejects malformed input and zero denominators
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::domain_error("parse_rational: zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

using VecQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace denselab

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

}  // namespace Eigen
