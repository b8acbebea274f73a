#include "denselab/field.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

namespace denselab {

namespace {

// index of each radicand within kRadicand, -1 elsewhere
constexpr int kIndexOf[31] = {
    // 0   1   2   3   4   5   6   7   8   9
    -1, 0,  1,  2,  -1, 3,  4,  -1, -1, -1,
    5,  -1, -1, -1, -1, 6,  -1, -1, -1, -1,
    -1, -1, -1, -1, -1, -1, -1, -1, -1, -1,
    7};

struct MulTable {
  // sqrt(r_i) * sqrt(r_j) = factor[i][j] * sqrt(r_{index[i][j]})
  int index[FieldElement::kDim][FieldElement::kDim];
  int factor[FieldElement::kDim][FieldElement::kDim];
  MulTable() {
    for (int i = 0; i < FieldElement::kDim; ++i) {
      for (int j = 0; j < FieldElement::kDim; ++j) {
        const int ri = FieldElement::kRadicand[static_cast<size_t>(i)];
        const int rj = FieldElement::kRadicand[static_cast<size_t>(j)];
        const int d = std::gcd(ri, rj);
        index[i][j] = kIndexOf[(ri / d) * (rj / d)];
        factor[i][j] = d;
      }
    }
  }
};

const MulTable& mul_table() {
  static const MulTable t;
  return t;
}

const double kSqrtValue[FieldElement::kDim] = {
    1.0,
    1.4142135623730950488,   // sqrt 2
    1.7320508075688772935,   // sqrt 3
    2.2360679774997896964,   // sqrt 5
    2.4494897427831780982,   // sqrt 6
    3.1622776601683793320,   // sqrt 10
    3.8729833462074168852,   // sqrt 15
    5.4772255750516611346};  // sqrt 30

// Dyadic enclosure: with s = floor(sqrt(r * 4^p)), sqrt(r) lies in
// [s / 2^p, (s + 1) / 2^p]. Exact integer arithmetic throughout.
void sqrt_enclosure(int radicand, unsigned prec_bits, Rational* lo, Rational* hi) {
  Integer scaled = Integer(radicand) << (2 * prec_bits);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Integer denom = Integer(1) << prec_bits;
  *lo = Rational(root, denom);
  *hi = Rational(root + 1, denom);
  lo->canonicalize();
  hi->canonicalize();
}

}  // namespace

FieldElement FieldElement::radical(int radicand) {
  if (radicand < 0 || radicand > 30 || kIndexOf[radicand] < 0)
    throw std::invalid_argument("FieldElement::radical: unsupported radicand");
  FieldElement x;
  x.c_[static_cast<size_t>(kIndexOf[radicand])] = 1;
  return x;
}

bool FieldElement::is_zero() const {
  for (const auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (int i = 1; i < kDim; ++i)
    if (sgn(c_[static_cast<size_t>(i)]) != 0) return false;
  return true;
}

bool FieldElement::is_integer() const {
  return is_rational() && rational_is_integer(c_[0]);
}

FieldElement FieldElement::operator-() const {
  FieldElement out;
  for (int i = 0; i < kDim; ++i) out.c_[static_cast<size_t>(i)] = -c_[static_cast<size_t>(i)];
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  for (int i = 0; i < kDim; ++i) c_[static_cast<size_t>(i)] += o.c_[static_cast<size_t>(i)];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  for (int i = 0; i < kDim; ++i) c_[static_cast<size_t>(i)] -= o.c_[static_cast<size_t>(i)];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  const MulTable& t = mul_table();
  std::array<Rational, kDim> out{};
  for (int i = 0; i < kDim; ++i) {
    const Rational& a = c_[static_cast<size_t>(i)];
    if (sgn(a) == 0) continue;  // sparse fast path; word orbits touch few coordinates
    for (int j = 0; j < kDim; ++j) {
      const Rational& b = o.c_[static_cast<size_t>(j)];
      if (sgn(b) == 0) continue;
      Rational term = a * b;
      if (t.factor[i][j] != 1) term *= t.factor[i][j];
      out[static_cast<size_t>(t.index[i][j])] += term;
    }
  }
  c_ = out;
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  return *this *= o.inverse();
}

FieldElement FieldElement::conjugate(unsigned mask) const {
  FieldElement out;
  for (int i = 0; i < kDim; ++i) {
    const int r = kRadicand[static_cast<size_t>(i)];
    int flips = 0;
    if ((mask & 1u) && r % 2 == 0) ++flips;
    if ((mask & 2u) && r % 3 == 0) ++flips;
    if ((mask & 4u) && r % 5 == 0) ++flips;
    out.c_[static_cast<size_t>(i)] =
        (flips % 2 == 0) ? c_[static_cast<size_t>(i)] : -c_[static_cast<size_t>(i)];
  }
  return out;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("FieldElement: division by zero");
  // product over the 7 nontrivial Galois conjugates
  FieldElement p = conjugate(1);
  for (unsigned mask = 2; mask < 8; ++mask) p *= conjugate(mask);
  // x * p is the full norm, invariant under every conjugation, hence rational
  FieldElement norm = *this * p;
  for (int i = 1; i < kDim; ++i) {
    if (sgn(norm.c_[static_cast<size_t>(i)]) != 0)
      throw std::logic_error("FieldElement: norm has irrational residue");
  }
  const Rational& n = norm.c_[0];
  if (sgn(n) == 0) throw std::logic_error("FieldElement: zero norm for nonzero element");
  FieldElement out;
  for (int i = 0; i < kDim; ++i) out.c_[static_cast<size_t>(i)] = p.c_[static_cast<size_t>(i)] / n;
  return out;
}

double FieldElement::to_float() const {
  double acc = 0.0;
  for (int i = 0; i < kDim; ++i) {
    const Rational& q = c_[static_cast<size_t>(i)];
    if (sgn(q) != 0) acc += q.get_d() * kSqrtValue[i];
  }
  return acc;
}

int FieldElement::sign() const {
  if (is_rational()) return sgn(c_[0]);
  for (unsigned prec = 64; prec <= 65536; prec *= 2) {
    Rational lo = c_[0];
    Rational hi = c_[0];
    for (int i = 1; i < kDim; ++i) {
      const Rational& q = c_[static_cast<size_t>(i)];
      if (sgn(q) == 0) continue;
      Rational a, b;
      sqrt_enclosure(kRadicand[static_cast<size_t>(i)], prec, &a, &b);
      if (sgn(q) > 0) {
        lo += q * a;
        hi += q * b;
      } else {
        lo += q * b;
        hi += q * a;
      }
    }
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
  }
  // unreachable for elements of this field at the coordinate sizes in use
  throw std::logic_error("FieldElement::sign: interval refinement exhausted");
}

Integer FieldElement::floor() const {
  if (is_rational()) return rational_floor(c_[0]);
  Integer m(static_cast<long>(std::floor(to_float())));
  // certify with exact sign tests; float error is at most a few ulps
  while ((*this - FieldElement(Rational(m))).sign() < 0) m -= 1;
  while ((*this - FieldElement(Rational(m + 1))).sign() >= 0) m += 1;
  return m;
}

std::string FieldElement::str() const {
  std::string out;
  for (int i = 0; i < kDim; ++i) {
    if (i) out += ',';
    out += rational_str(c_[static_cast<size_t>(i)]);
  }
  return out;
}

FieldElement FieldElement::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  parts.push_back(cur);
  FieldElement out;
  if (parts.size() == 1) {
    out.c_[0] = parse_rational(parts[0]);
    return out;
  }
  if (parts.size() != kDim)
    throw std::invalid_argument("FieldElement::parse: expected 1 or 8 coordinates, got " +
                                std::to_string(parts.size()));
  for (int i = 0; i < kDim; ++i) out.c_[static_cast<size_t>(i)] = parse_rational(parts[static_cast<size_t>(i)]);
  return out;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.str(); }

VecK parse_field_vector(const std::string& line) {
  std::istringstream in(line);
  std::vector<FieldElement> coords;
  std::string token;
  while (in >> token) coords.push_back(FieldElement::parse(token));
  VecK v(static_cast<Eigen::Index>(coords.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = coords[static_cast<size_t>(i)];
  return v;
}

std::string field_vector_str(const VecK& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v(i).str();
  }
  return out;
}

double field_vector_norm(const VecK& v) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double f = v(i).to_float();
    acc += f * f;
  }
  return std::sqrt(acc);
}

}  // namespace denselab
