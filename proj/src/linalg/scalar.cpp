#include "infloc/linalg/scalar.hpp"

#include <cctype>

namespace infloc {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Scalar::Scalar(long v, unsigned long p) : v_(v), p_(p) { reduce(); }
Scalar::Scalar(const mpq_class& v, unsigned long p) : v_(v), p_(p) {
  v_.canonicalize();
  reduce();
}
Scalar::Scalar(const mpz_class& v, unsigned long p) : v_(v), p_(p) { reduce(); }

void Scalar::reduce() {
  if (p_ == 0) return;
  mpz_class num = v_.get_num();
  mpz_class den = v_.get_den();
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), num.get_mpz_t(), p_);
  if (den != 1) {
    mpz_class modp(p_), inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modp.get_mpz_t()) == 0)
      throw InvalidInput("denominator " + den.get_str() + " is not invertible mod " +
                         std::to_string(p_));
    r = r * inv;
    mpz_fdiv_r_ui(r.get_mpz_t(), r.get_mpz_t(), p_);
  }
  v_ = mpq_class(r);
}

unsigned long Scalar::join(const Scalar& o) const {
  if (p_ == o.p_ || o.p_ == 0) return p_;
  if (p_ == 0) return o.p_;
  throw InvariantViolation("mixing scalars of characteristic " + std::to_string(p_) + " and " +
                           std::to_string(o.p_));
}

Scalar Scalar::operator-() const { return Scalar(mpq_class(-v_), p_); }

Scalar& Scalar::operator+=(const Scalar& o) {
  p_ = join(o);
  v_ += o.v_;
  reduce();
  return *this;
}
Scalar& Scalar::operator-=(const Scalar& o) {
  p_ = join(o);
  v_ -= o.v_;
  reduce();
  return *this;
}
Scalar& Scalar::operator*=(const Scalar& o) {
  p_ = join(o);
  if (is_zero() || o.is_zero()) {
    v_ = 0;
    return *this;
  }
  v_ *= o.v_;
  reduce();
  return *this;
}
Scalar& Scalar::operator/=(const Scalar& o) {
  p_ = join(o);
  if (o.is_zero()) throw InvariantViolation("division by zero");
  if (p_ == 0) {
    v_ /= o.v_;
    return *this;
  }
  Scalar d(o.v_, p_);
  return *this *= d.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InvariantViolation("inverse of zero");
  if (p_ == 0) return Scalar(mpq_class(1 / v_), 0);
  mpz_class inv, a = v_.get_num(), m(p_);
  mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return Scalar(inv, p_);
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ == o.p_) return v_ == o.v_;
  return (*this - o).is_zero();
}

std::string Scalar::str() const { return v_.get_str(); }

Ring Ring::F(unsigned long p) {
  if (!is_prime(p)) throw InvalidInput("F_p needs a prime p, got " + std::to_string(p));
  return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(const std::string& s) {
  if (s == "Z" || s == "ZZ") return Z();
  if (s == "Q" || s == "QQ") return Q();
  std::string digits;
  if (s.size() > 1 && s[0] == 'F') digits = s.substr(1);
  if (s.size() > 2 && s.rfind("GF", 0) == 0) digits = s.substr(2);
  if (!digits.empty() && digits.size() < 10) {
    bool ok = true;
    for (char c : digits) ok = ok && std::isdigit(static_cast<unsigned char>(c));
    if (ok) return F(std::stoul(digits));
  }
  throw InvalidInput("unknown ring '" + s + "' (expected Z, Q or F<p>)");
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "F" + std::to_string(p_);
  }
  return "?";
}

Scalar Ring::make(const mpq_class& v) const {
  if (kind_ == Kind::Integers && v.get_den() != 1)
    throw InvalidInput("non-integer " + v.get_str() + " over Z");
  return Scalar(v, p_);
}

Scalar Ring::parse_scalar(const std::string& s) const {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw InvalidInput("bad scalar '" + s + "'");
  if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + s + "'");
  q.canonicalize();
  return make(q);
}

bool Ring::contains(const Scalar& x) const {
  if (x.modulus() != 0 && x.modulus() != p_) return false;
  if (kind_ == Kind::Integers) return x.is_integer();
  return true;
}

bool Ring::is_unit(const Scalar& x) const {
  if (x.is_zero()) return false;
  if (kind_ == Kind::Integers) return x.value() == 1 || x.value() == -1;
  return true;
}

Scalar Ring::inverse(const Scalar& x) const {
  if (!is_unit(x)) throw InvalidInput(x.str() + " is not a unit in " + name());
  return Scalar(x.value(), p_).inverse();
}

}  // namespace infloc
