#include "liespec/unipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace liespec {

UniPoly::UniPoly(TowerContext ctx, std::vector<FieldElement> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  normalize();
}

void UniPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::monomial(const TowerContext& ctx, int degree, const FieldElement& coeff) {
  std::vector<FieldElement> c(degree + 1, FieldElement::zero(ctx));
  c[degree] = coeff;
  return UniPoly(ctx, std::move(c));
}

UniPoly UniPoly::from_roots(const TowerContext& ctx,
                            const std::vector<FieldElement>& roots) {
  UniPoly p = monomial(ctx, 0, FieldElement::one(ctx));
  for (const FieldElement& r : roots) {
    UniPoly lin(ctx, {-r.lifted_to(ctx), FieldElement::one(ctx)});
    p = p * lin;
  }
  return p;
}

bool UniPoly::is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

bool UniPoly::is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

FieldElement UniPoly::coeff(int degree) const {
  if (degree < 0 || degree >= static_cast<int>(coeffs_.size()))
    return FieldElement::zero(ctx_);
  return coeffs_[degree];
}

FieldElement UniPoly::eval(const FieldElement& x) const {
  FieldElement acc = FieldElement::zero(ctx_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::operator-() const {
  std::vector<FieldElement> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(-x);
  return UniPoly(ctx_, std::move(c));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  const TowerContext& ctx = (a.ctx_.depth() >= b.ctx_.depth()) ? a.ctx_ : b.ctx_;
  std::vector<FieldElement> c(std::max(a.coeffs_.size(), b.coeffs_.size()),
                              FieldElement::zero(ctx));
  for (size_t i = 0; i < c.size(); ++i) {
    FieldElement s = FieldElement::zero(ctx);
    if (i < a.coeffs_.size()) s += a.coeffs_[i];
    if (i < b.coeffs_.size()) s += b.coeffs_[i];
    c[i] = s;
  }
  return UniPoly(ctx, std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  const TowerContext& ctx = (a.ctx_.depth() >= b.ctx_.depth()) ? a.ctx_ : b.ctx_;
  if (a.is_zero() || b.is_zero()) return UniPoly(ctx);
  std::vector<FieldElement> c(a.coeffs_.size() + b.coeffs_.size() - 1,
                              FieldElement::zero(ctx));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(ctx, std::move(c));
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  return true;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
  if (divisor.is_zero()) raise(ErrorCode::DivisionByZero, "polynomial division by zero");
  const TowerContext& ctx = (ctx_.depth() >= divisor.ctx_.depth()) ? ctx_ : divisor.ctx_;
  UniPoly rem = *this;
  std::vector<FieldElement> quot(
      std::max<int>(0, degree() - divisor.degree() + 1), FieldElement::zero(ctx));
  FieldElement lead_inv = divisor.coeffs_.back().inverse();
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    int shift = rem.degree() - divisor.degree();
    FieldElement q = rem.coeffs_.back() * lead_inv;
    quot[shift] = q;
    UniPoly sub = UniPoly::monomial(ctx, shift, q) * divisor;
    rem = rem - sub;
  }
  return {UniPoly(ctx, std::move(quot)), rem};
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const FieldElement c = coeff(d);
    if (c.is_zero()) continue;
    std::string cs = c.str();
    std::string term;
    if (d == 0) {
      term = cs;
    } else {
      std::string xs = (d == 1) ? var : var + "^" + std::to_string(d);
      if (c.is_one())
        term = xs;
      else if (c == -FieldElement::one(ctx_))
        term = "-" + xs;
      else if (cs.find('+') != std::string::npos ||
               cs.find('-', 1) != std::string::npos)
        term = "(" + cs + ")*" + xs;
      else
        term = cs + "*" + xs;
    }
    if (first) {
      out << term;
      first = false;
    } else {
      out << (term.front() == '-' ? " - " + term.substr(1) : " + " + term);
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Base-field root extraction

namespace {

struct GInt {
  mpz_class x, y;  // x + y*i
};

GInt gmul(const GInt& a, const GInt& b) {
  return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x};
}
GInt gsub(const GInt& a, const GInt& b) { return {a.x - b.x, a.y - b.y}; }
bool gzero(const GInt& a) { return a.x == 0 && a.y == 0; }
mpz_class gnorm(const GInt& a) { return a.x * a.x + a.y * a.y; }

bool gdivides(const GInt& d, const GInt& a) {
  // d | a in Z[i] iff a * conj(d) / N(d) has integer parts
  mpz_class n = gnorm(d);
  if (n == 0) return false;
  GInt prod = gmul(a, GInt{d.x, -d.y});
  return mpz_divisible_p(prod.x.get_mpz_t(), n.get_mpz_t()) &&
         mpz_divisible_p(prod.y.get_mpz_t(), n.get_mpz_t());
}

void factor_integer_rec(mpz_class n, std::map<mpz_class, int>& out);

mpz_class pollard_rho(const mpz_class& n) {
  // n odd composite with no factor <= 10^6
  for (unsigned long c = 1; c < 64; ++c) {
    mpz_class x(2), y(2), d(1);
    mpz_class cc(static_cast<long>(c));
    long limit = 1 << 22;
    for (long i = 0; i < limit && d == 1; ++i) {
      x = (x * x + cc) % n;
      y = (y * y + cc) % n;
      y = (y * y + cc) % n;
      mpz_class diff = x - y;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d > 1 && d < n) return d;
  }
  raise(ErrorCode::DimensionLimitExceeded, "integer factorization gave up");
}

void factor_integer_rec(mpz_class n, std::map<mpz_class, int>& out) {
  if (n <= 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out[n] += 1;
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_integer_rec(d, out);
  factor_integer_rec(n / d, out);
}

std::map<mpz_class, int> factor_integer(mpz_class n) {
  std::map<mpz_class, int> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (unsigned long f = 2; f <= 1000000 && n > 1; f += (f == 2 ? 1 : 2)) {
    if (f > 3 && f % 3 == 0) continue;
    while (mpz_divisible_ui_p(n.get_mpz_t(), f)) {
      out[mpz_class(static_cast<long>(f))] += 1;
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), f);
    }
    if (n.fits_ulong_p() && f * f > n.get_ui()) break;
  }
  factor_integer_rec(n, out);
  return out;
}

/// Positive divisors of |n| that are <= bound, ascending.
std::vector<mpz_class> bounded_divisors(const mpz_class& n, const mpz_class& bound) {
  auto fac = factor_integer(n);
  std::vector<mpz_class> divs{mpz_class(1)};
  for (const auto& [p, e] : fac) {
    size_t sz = divs.size();
    mpz_class pe(1);
    for (int k = 1; k <= e; ++k) {
      pe *= p;
      if (pe > bound) break;
      for (size_t i = 0; i < sz; ++i) {
        mpz_class d = divs[i] * pe;
        if (d <= bound) divs.push_back(d);
      }
    }
    if (divs.size() > 200000)
      raise(ErrorCode::DimensionLimitExceeded, "divisor enumeration too large");
  }
  std::sort(divs.begin(), divs.end());
  divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
  return divs;
}

enum class BaseField { Rational, Gaussian };

struct BasePoly {
  BaseField base;
  std::vector<std::pair<Rational, Rational>> coeffs;  // index = degree; monic
};

BasePoly to_base_poly(const UniPoly& p) {
  BasePoly out;
  out.base = BaseField::Rational;
  for (const FieldElement& c : p.coeffs()) {
    if (!c.in_gaussian_field())
      raise(ErrorCode::UnsupportedFieldExtension,
            "univariate factorization supports rational or gaussian coefficients only");
    auto [re, im] = c.gaussian_parts();
    if (!im.is_zero()) out.base = BaseField::Gaussian;
    out.coeffs.emplace_back(re, im);
  }
  return out;
}

FieldElement gauss_to_element(const TowerContext& ctx, const Rational& re,
                              const Rational& im) {
  FieldElement out(re, ctx);
  if (!im.is_zero()) {
    auto unit = try_sqrt(FieldElement(Rational(-1), ctx));
    if (!unit)
      raise(ErrorCode::InternalInconsistency, "gaussian value without an i level");
    out += FieldElement(im, ctx) * *unit;
  }
  return out;
}

/// Integer-monic rescaling: q(u) = c^d p(u/c) with c the denominator lcm;
/// roots of p are (integer roots of q)/c.
struct ScaledPoly {
  mpz_class scale;
  std::vector<GInt> coeffs;  // monic, integral gaussian
};

ScaledPoly integralize(const std::vector<std::pair<Rational, Rational>>& coeffs) {
  mpz_class c(1);
  for (const auto& [re, im] : coeffs) {
    mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), re.denominator().get_mpz_t());
    mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), im.denominator().get_mpz_t());
  }
  int d = static_cast<int>(coeffs.size()) - 1;
  ScaledPoly out;
  out.scale = c;
  std::vector<mpz_class> powers(d + 1);
  mpz_class pw(1);
  for (int i = d; i >= 0; --i) {
    powers[i] = pw;
    pw *= c;
  }
  for (int i = 0; i <= d; ++i) {
    const auto& [re, im] = coeffs[i];
    mpz_class rx = re.numerator() * (powers[i] / re.denominator());
    mpz_class ry = im.numerator() * (powers[i] / im.denominator());
    out.coeffs.push_back({rx, ry});
  }
  return out;
}

GInt geval(const std::vector<GInt>& coeffs, const GInt& x) {
  GInt acc{0, 0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = gmul(acc, x);
    acc.x += it->x;
    acc.y += it->y;
  }
  return acc;
}

/// One root of the monic polynomial in its base field, or none.
std::optional<std::pair<Rational, Rational>> find_base_root(const BasePoly& p) {
  int d = static_cast<int>(p.coeffs.size()) - 1;
  if (d < 1) return std::nullopt;
  if (p.coeffs[0].first.is_zero() && p.coeffs[0].second.is_zero())
    return std::make_pair(Rational(0), Rational(0));
  if (d == 1) return std::make_pair(-p.coeffs[0].first, -p.coeffs[0].second);

  ScaledPoly sp = integralize(p.coeffs);
  mpz_class maxc(0);
  for (const GInt& g : sp.coeffs) {
    mpz_class m = ::abs(g.x) + ::abs(g.y);
    if (m > maxc) maxc = m;
  }
  mpz_class bound = maxc + 1;  // Cauchy bound on |root|

  const GInt& g0 = sp.coeffs[0];
  if (p.base == BaseField::Rational) {
    for (const mpz_class& v : bounded_divisors(g0.x, bound)) {
      for (int s = 0; s < 2; ++s) {
        GInt cand{s ? mpz_class(-v) : v, 0};
        if (gzero(geval(sp.coeffs, cand)))
          return std::make_pair(Rational(cand.x, sp.scale), Rational(0));
      }
    }
    return std::nullopt;
  }
  mpz_class n0 = gnorm(g0);
  mpz_class nbound = bound * bound;
  for (const mpz_class& m : bounded_divisors(n0, nbound)) {
    mpz_class xmax;
    mpz_sqrt(xmax.get_mpz_t(), m.get_mpz_t());
    for (mpz_class x(0); x <= xmax; ++x) {
      mpz_class y2 = m - x * x;
      if (mpz_perfect_square_p(y2.get_mpz_t()) == 0) continue;
      mpz_class y;
      mpz_sqrt(y.get_mpz_t(), y2.get_mpz_t());
      for (const GInt& cand : std::vector<GInt>{{x, y}, {x, -y}, {-x, y}, {-x, -y},
                                                {y, x}, {y, -x}, {-y, x}, {-y, -x}}) {
        if (!gdivides(cand, g0)) continue;
        if (gzero(geval(sp.coeffs, cand)))
          return std::make_pair(Rational(cand.x, sp.scale), Rational(cand.y, sp.scale));
      }
    }
  }
  return std::nullopt;
}

/// Splits a rootless monic quartic into two monic base-field quadratics,
/// if possible, by enumerating the constant term of one factor over the
/// divisors of the (integralized) constant.
std::optional<std::pair<UniPoly, UniPoly>> split_quartic(const UniPoly& p,
                                                         const BasePoly& bp) {
  const TowerContext& ctx = p.context();
  ScaledPoly sp = integralize(bp.coeffs);
  const GInt a0 = sp.coeffs[0];
  const GInt a1 = sp.coeffs[1];
  const GInt a2 = sp.coeffs[2];
  const GInt a3 = sp.coeffs[3];

  auto make_result = [&](const Rational& ux, const Rational& uy, const Rational& vx,
                         const Rational& vy, const Rational& upx, const Rational& upy,
                         const Rational& vpx,
                         const Rational& vpy) -> std::optional<std::pair<UniPoly, UniPoly>> {
    Rational c(sp.scale, mpz_class(1));
    Rational c2 = c * c;
    // u^2 + U u + V  ->  t^2 + (U/c) t + V/c^2
    UniPoly q1(ctx, {gauss_to_element(ctx, vx / c2, vy / c2),
                     gauss_to_element(ctx, ux / c, uy / c), FieldElement::one(ctx)});
    UniPoly q2(ctx, {gauss_to_element(ctx, vpx / c2, vpy / c2),
                     gauss_to_element(ctx, upx / c, upy / c), FieldElement::one(ctx)});
    if (q1 * q2 != p) return std::nullopt;
    return std::make_pair(q1, q2);
  };

  auto try_v = [&](const GInt& v) -> std::optional<std::pair<UniPoly, UniPoly>> {
    if (gzero(v) || !gdivides(v, a0)) return std::nullopt;
    mpz_class nv = gnorm(v);
    GInt vp = gmul(a0, GInt{v.x, -v.y});
    vp.x /= nv;
    vp.y /= nv;  // v' = a0 / v, exact by the divisibility check
    GInt diff = gsub(vp, v);
    Rational a3x(a3.x), a3y(a3.y);
    if (!gzero(diff)) {
      // u*(v'-v) = a1 - a3*v from matching the t^1 and t^3 coefficients
      GInt rhs = gsub(a1, gmul(a3, v));
      mpz_class nd = gnorm(diff);
      GInt num = gmul(rhs, GInt{diff.x, -diff.y});
      Rational ux(num.x, nd), uy(num.y, nd);
      Rational upx = a3x - ux, upy = a3y - uy;
      Rational uu_x = ux * upx - uy * upy + Rational(v.x) + Rational(vp.x);
      Rational uu_y = ux * upy + uy * upx + Rational(v.y) + Rational(vp.y);
      if (uu_x != Rational(a2.x) || uu_y != Rational(a2.y)) return std::nullopt;
      return make_result(ux, uy, Rational(v.x), Rational(v.y), upx, upy, Rational(vp.x),
                         Rational(vp.y));
    }
    // v == v': u + u' = a3, u*u' = a2 - 2v, consistent only when a1 = a3*v
    GInt a3v = gmul(a3, v);
    if (a1.x != a3v.x || a1.y != a3v.y) return std::nullopt;
    GInt a3sq = gmul(a3, a3);
    GInt disc{a3sq.x - 4 * (a2.x - 2 * v.x), a3sq.y - 4 * (a2.y - 2 * v.y)};
    TowerContext gctx;
    auto [ictx, iu] = adjoin_sqrt(gctx, FieldElement(Rational(-1)));
    FieldElement de = FieldElement(Rational(disc.x), ictx) +
                      FieldElement(Rational(disc.y), ictx) * iu;
    auto s = try_sqrt(de);
    if (!s || !s->in_gaussian_field()) return std::nullopt;
    auto [sx, sy] = s->gaussian_parts();
    if (bp.base == BaseField::Rational && !sy.is_zero()) return std::nullopt;
    Rational half(1, 2);
    Rational ux = (Rational(a3.x) + sx) * half, uy = (Rational(a3.y) + sy) * half;
    Rational upx = (Rational(a3.x) - sx) * half, upy = (Rational(a3.y) - sy) * half;
    return make_result(ux, uy, Rational(v.x), Rational(v.y), upx, upy, Rational(v.x),
                       Rational(v.y));
  };

  if (bp.base == BaseField::Rational) {
    for (const mpz_class& d : bounded_divisors(a0.x, ::abs(a0.x))) {
      for (int s = 0; s < 2; ++s) {
        if (auto res = try_v(GInt{s ? mpz_class(-d) : d, 0})) return res;
      }
    }
    return std::nullopt;
  }
  mpz_class n0 = gnorm(a0);
  for (const mpz_class& m : bounded_divisors(n0, n0)) {
    mpz_class xmax;
    mpz_sqrt(xmax.get_mpz_t(), m.get_mpz_t());
    for (mpz_class x(0); x <= xmax; ++x) {
      mpz_class y2 = m - x * x;
      if (mpz_perfect_square_p(y2.get_mpz_t()) == 0) continue;
      mpz_class y;
      mpz_sqrt(y.get_mpz_t(), y2.get_mpz_t());
      for (const GInt& v : std::vector<GInt>{{x, y}, {x, -y}, {-x, y}, {-x, -y},
                                             {y, x}, {y, -x}, {-y, x}, {-y, -x}}) {
        if (auto res = try_v(v)) return res;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

UniFactorization factor_univariate(const UniPoly& p_in) {
  if (p_in.is_zero() || !p_in.is_monic())
    raise(ErrorCode::InvalidArgument, "factor_univariate expects a monic polynomial");
  if (p_in.degree() > 12)
    raise(ErrorCode::InvalidArgument, "factor_univariate expects degree <= 12");
  const TowerContext& ctx = p_in.context();
  UniPoly work = p_in;
  std::vector<UniPoly> found;

  while (work.degree() >= 1) {
    BasePoly bp = to_base_poly(work);
    auto root = find_base_root(bp);
    if (!root) break;
    FieldElement r = gauss_to_element(ctx, root->first, root->second);
    UniPoly lin(ctx, {-r, FieldElement::one(ctx)});
    auto [q, rem] = work.divmod(lin);
    if (!rem.is_zero())
      raise(ErrorCode::InternalInconsistency, "claimed root does not divide");
    found.push_back(lin);
    work = q;
  }

  if (work.degree() == 2) {
    found.push_back(work);
    work = UniPoly::monomial(ctx, 0, FieldElement::one(ctx));
  } else if (work.degree() == 4) {
    BasePoly bp = to_base_poly(work);
    if (auto split = split_quartic(work, bp)) {
      found.push_back(split->first);
      found.push_back(split->second);
      work = UniPoly::monomial(ctx, 0, FieldElement::one(ctx));
    }
  }

  std::sort(found.begin(), found.end(), [](const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int d = a.degree(); d >= 0; --d) {
      if (a.coeff(d) == b.coeff(d)) continue;
      return canonical_less(a.coeff(d), b.coeff(d));
    }
    return false;
  });
  UniFactorization out;
  out.residual = work;
  for (size_t i = 0; i < found.size();) {
    size_t j = i;
    while (j < found.size() && found[j] == found[i]) ++j;
    out.factors.emplace_back(found[i], static_cast<int>(j - i));
    i = j;
  }
  return out;
}

RootExtraction extract_roots(const UniPoly& p, const TowerContext& ctx_in) {
  UniFactorization f = factor_univariate(p);
  if (!f.residual.is_one())
    raise(ErrorCode::UnsupportedFieldExtension,
          "eigenvalue requires a field extension of degree >= 3: " + f.residual.str());
  TowerContext ctx = (ctx_in.depth() >= p.context().depth()) ? ctx_in : p.context();
  std::vector<FieldElement> roots;
  for (const auto& [factor, mult] : f.factors) {
    if (factor.degree() == 1) {
      FieldElement r = -factor.coeff(0);
      for (int k = 0; k < mult; ++k) roots.push_back(r);
    } else {
      QuadraticRoots qr = solve_quadratic(FieldElement::one(ctx),
                                          factor.coeff(1).lifted_to(ctx),
                                          factor.coeff(0).lifted_to(ctx));
      ctx = qr.ctx;
      for (int k = 0; k < mult; ++k) {
        roots.push_back(qr.r1);
        roots.push_back(qr.r2);
      }
    }
  }
  for (FieldElement& r : roots) r = r.lifted_to(ctx);
  std::sort(roots.begin(), roots.end(),
            [](const FieldElement& a, const FieldElement& b) { return canonical_less(a, b); });
  return {ctx, std::move(roots)};
}

}  // namespace liespec
