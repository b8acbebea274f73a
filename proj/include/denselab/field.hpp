#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "denselab/scalar.hpp"

namespace denselab {

// Exact real scalar in the degree-8 field Q(sqrt2, sqrt3, sqrt5).
// Coordinates are rationals over the fixed basis
//   B = (1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt10, sqrt15, sqrt30),
// which is closed under products up to rational factors, so +,-,*,/ stay
// inside the representation. Equality is coordinate-wise: certificates built
// on this type are exact relative to the linear independence of B over Q,
// a classical fact this code assumes rather than proves.
class FieldElement {
 public:
  static constexpr int kDim = 8;
  // squarefree radicands in basis order
  static constexpr std::array<int, kDim> kRadicand = {1, 2, 3, 5, 6, 10, 15, 30};

  FieldElement() = default;  // zero
  FieldElement(const Rational& r) {  // NOLINT: implicit by design
    c_[0] = r;
    c_[0].canonicalize();
  }
  FieldElement(long v) { c_[0] = v; }  // NOLINT
  FieldElement(int v) { c_[0] = v; }   // NOLINT

  // basis element sqrt(r) for r in kRadicand
  static FieldElement radical(int radicand);
  static FieldElement sqrt2() { return radical(2); }
  static FieldElement sqrt3() { return radical(3); }
  static FieldElement sqrt5() { return radical(5); }

  const Rational& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
  void set_coeff(int i, const Rational& v) {
    c_[static_cast<size_t>(i)] = v;
    c_[static_cast<size_t>(i)].canonicalize();  // gmp arithmetic requires canonical operands
  }

  bool is_zero() const;
  bool is_rational() const;  // only the constant coordinate may be nonzero
  bool is_integer() const;   // rational with denominator 1
  const Rational& rational_part() const { return c_[0]; }

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  bool operator==(const FieldElement& o) const { return c_ == o.c_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // field automorphism flipping the sign of sqrt2/sqrt3/sqrt5 per mask bit 0/1/2
  FieldElement conjugate(unsigned mask) const;

  // exact inverse via the product of the seven nontrivial conjugates divided
  // by the (rational) norm; throws std::domain_error on zero
  FieldElement inverse() const;

  double to_float() const;

  // exact sign in {-1, 0, +1}; decided by rational interval refinement of the
  // radicals, terminating because a nonzero element is bounded away from 0
  int sign() const;

  // exact floor; uses sign() to certify the candidate from to_float()
  Integer floor() const;

  bool operator<(const FieldElement& o) const { return (*this - o).sign() < 0; }
  bool operator>(const FieldElement& o) const { return o < *this; }
  bool operator<=(const FieldElement& o) const { return !(o < *this); }
  bool operator>=(const FieldElement& o) const { return !(*this < o); }

  // "p/q,p/q,..." over the 8 coordinates; exact round-trip with parse()
  std::string str() const;
  // accepts the full 8-tuple form or a bare rational "p/q"
  static FieldElement parse(const std::string& text);

 private:
  std::array<Rational, kDim> c_{};
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

using VecK = Eigen::Matrix<FieldElement, Eigen::Dynamic, 1>;
using MatK = Eigen::Matrix<FieldElement, Eigen::Dynamic, Eigen::Dynamic>;

VecK parse_field_vector(const std::string& line);  // whitespace-separated coordinates
std::string field_vector_str(const VecK& v);
double field_vector_norm(const VecK& v);  // Euclidean norm of the float image

}  // namespace denselab

namespace Eigen {

template <>
struct NumTraits<denselab::FieldElement> : GenericNumTraits<denselab::FieldElement> {
  typedef denselab::FieldElement Real;
  typedef denselab::FieldElement NonInteger;
  typedef denselab::FieldElement Nested;
  typedef denselab::FieldElement Literal;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 48,
    AddCost = 240,
    MulCost = 800
  };
};

}  // namespace Eigen
