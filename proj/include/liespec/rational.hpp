#ifndef LIESPEC_RATIONAL_HPP
#define LIESPEC_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "liespec/error.hpp"

namespace liespec {

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator (GMP canonical form).
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long n, long d);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  Rational(const mpz_class& n, const mpz_class& d);

  /// Parses the `rat` literal grammar: [+-]? digits ("/" digits)?
  static std::optional<Rational> parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational inverse() const;

  /// Exact square root when this is a ratio of perfect squares (and >= 0).
  std::optional<Rational> exact_sqrt() const;

  /// Splits |this| = s^2 * core with core a squarefree integer; returns
  /// (core with the sign of *this, s). Large prime cofactors may be left
  /// unsplit, which only affects radicand cosmetics, never correctness.
  std::pair<mpz_class, Rational> squarefree_decomposition() const;

  std::string str() const { return v_.get_str(); }

private:
  mpq_class v_;
};

/// Total order used for canonical (display/column) ordering of exact
/// scalars: ascending |value|, ties broken positive-before-negative.
/// This is a presentation order, not the numeric order.
bool canonical_less(const Rational& a, const Rational& b);

}  // namespace liespec

#endif
