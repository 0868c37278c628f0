#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace infloc {

// Bad user data: maps to CLI exit code 1.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computed object broke an invariant it must satisfy: exit code 2.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact scalar. modulus 0 means an element of Q (Z is the integral subset);
// modulus p means an element of F_p stored as an integer in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v, unsigned long p = 0);  // NOLINT
  Scalar(const mpq_class& v, unsigned long p = 0);
  Scalar(const mpz_class& v, unsigned long p = 0);

  const mpq_class& value() const { return v_; }
  unsigned long modulus() const { return p_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  unsigned long join(const Scalar& o) const;
  void reduce();

  mpq_class v_ = 0;
  unsigned long p_ = 0;
};

class Ring {
 public:
  enum class Kind { Integers, Rationals, PrimeField };

  Ring() = default;
  static Ring Z() { return Ring(Kind::Integers, 0); }
  static Ring Q() { return Ring(Kind::Rationals, 0); }
  static Ring F(unsigned long p);
  // Accepts Z, ZZ, Q, QQ, F<p>, GF<p>.
  static Ring parse(const std::string& s);

  Kind kind() const { return kind_; }
  unsigned long modulus() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integers; }
  std::string name() const;

  Scalar zero() const { return Scalar(0L, p_); }
  Scalar one() const { return Scalar(1L, p_); }
  Scalar make(long v) const { return Scalar(v, p_); }
  Scalar make(const mpq_class& v) const;
  // Decimal integer or "a/b".
  Scalar parse_scalar(const std::string& s) const;

  bool contains(const Scalar& x) const;
  bool is_unit(const Scalar& x) const;
  Scalar inverse(const Scalar& x) const;

  bool operator==(const Ring& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

 private:
  Ring(Kind k, unsigned long p) : kind_(k), p_(p) {}
  Kind kind_ = Kind::Integers;
  unsigned long p_ = 0;
};

bool is_prime(unsigned long p);

}  // namespace infloc
