#include "liespec/rational.hpp"

#include <cctype>

namespace liespec {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::TowerDepthExceeded: return "TowerDepthExceeded";
    case ErrorCode::IncompatibleTower: return "IncompatibleTower";
    case ErrorCode::ConjugationUndefined: return "ConjugationUndefined";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionLimitExceeded: return "DimensionLimitExceeded";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotADerivation: return "NotADerivation";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::NotFullyFactorable: return "NotFullyFactorable";
    case ErrorCode::UnsupportedFieldExtension: return "UnsupportedFieldExtension";
    case ErrorCode::ArrangementTooLarge: return "ArrangementTooLarge";
    case ErrorCode::UnknownEntry: return "UnknownEntry";
    case ErrorCode::ParameterConstraintViolated: return "ParameterConstraintViolated";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

Rational::Rational(long n, long d) {
  if (d == 0) raise(ErrorCode::DivisionByZero, "rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) raise(ErrorCode::DivisionByZero, "rational with zero denominator");
  v_ = mpq_class(n) / mpq_class(d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) raise(ErrorCode::DivisionByZero, "rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero");
  return Rational(mpq_class(1) / v_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') {
    neg = text[pos] == '-';
    ++pos;
  }
  size_t num_start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == num_start) return std::nullopt;
  mpz_class num(std::string(text.substr(num_start, pos - num_start)), 10);
  mpz_class den(1);
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    size_t den_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == den_start) return std::nullopt;
    den = mpz_class(std::string(text.substr(den_start, pos - den_start)), 10);
    if (den == 0) return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;
  if (neg) num = -num;
  return Rational(num, den);
}

std::optional<Rational> Rational::exact_sqrt() const {
  if (sign() < 0) return std::nullopt;
  mpz_class num = numerator();
  mpz_class den = denominator();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

std::pair<mpz_class, Rational> Rational::squarefree_decomposition() const {
  // |p/q| = (p*q)/q^2, so the core of p*q is the radicand and s picks up 1/q.
  mpz_class p = numerator();
  mpz_class q = denominator();
  int sgn_in = sgn(p);
  mpz_class m = ::abs(p) * q;

  mpz_class core(1);
  mpz_class square_part(1);
  const unsigned long trial_limit = 1000000;
  for (unsigned long f = 2; f <= trial_limit && m > 1; f += (f == 2 ? 1 : 2)) {
    if (f > 3 && f % 3 == 0) continue;
    if (!mpz_divisible_ui_p(m.get_mpz_t(), f)) continue;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), f)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), f);
      ++e;
    }
    mpz_class fz(static_cast<long>(f));
    if (e % 2 == 1) core *= fz;
    mpz_class half;
    mpz_pow_ui(half.get_mpz_t(), fz.get_mpz_t(), e / 2);
    square_part *= half;
    if (m.fits_ulong_p() && f * f > m.get_ui()) break;  // remaining cofactor is prime
  }
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      mpz_class s;
      mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
      square_part *= s;
    } else {
      core *= m;  // possibly not fully squarefree for huge prime-square cofactors
    }
  }
  if (sgn_in < 0) core = -core;
  return {core, Rational(square_part, q)};
}

bool canonical_less(const Rational& a, const Rational& b) {
  Rational aa = a.abs();
  Rational bb = b.abs();
  if (aa != bb) return aa < bb;
  return a.sign() > b.sign();
}

}  // namespace liespec
