#include "liespec/tower.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace liespec {

namespace {

using Vec = std::vector<Rational>;

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec vec_neg(const Vec& a) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

Vec lift_vec(const Vec& v, size_t width) {
  Vec out(width, Rational(0));
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

Vec lower_half(const Vec& v) { return Vec(v.begin(), v.begin() + v.size() / 2); }
Vec upper_half(const Vec& v) { return Vec(v.begin() + v.size() / 2, v.end()); }

Vec join_halves(const Vec& lo, const Vec& hi) {
  Vec out = lo;
  out.insert(out.end(), hi.begin(), hi.end());
  return out;
}

// (a0 + a1*sqrt(r)) * (b0 + b1*sqrt(r)) recursively over the tower.
Vec vec_mul(const TowerContext& ctx, int level, const Vec& a, const Vec& b) {
  if (level == 0) return {a[0] * b[0]};
  const Vec a0 = lower_half(a), a1 = upper_half(a);
  const Vec b0 = lower_half(b), b1 = upper_half(b);
  const Vec& r = ctx.radicand_raw(level);
  Vec lo = vec_add(vec_mul(ctx, level - 1, a0, b0),
                   vec_mul(ctx, level - 1, vec_mul(ctx, level - 1, a1, b1), r));
  Vec hi = vec_add(vec_mul(ctx, level - 1, a0, b1), vec_mul(ctx, level - 1, a1, b0));
  return join_halves(lo, hi);
}

Vec vec_inv(const TowerContext& ctx, int level, const Vec& a) {
  if (level == 0) {
    if (a[0].is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero field element");
    return {a[0].inverse()};
  }
  const Vec a0 = lower_half(a), a1 = upper_half(a);
  const Vec& r = ctx.radicand_raw(level);
  // norm a0^2 - a1^2*r lies one level down; zero only for the zero element
  Vec n = vec_sub(vec_mul(ctx, level - 1, a0, a0),
                  vec_mul(ctx, level - 1, vec_mul(ctx, level - 1, a1, a1), r));
  if (vec_is_zero(n)) {
    if (vec_is_zero(a)) raise(ErrorCode::DivisionByZero, "inverse of zero field element");
    raise(ErrorCode::InternalInconsistency, "tower radicand admits a lower-level square root");
  }
  Vec ni = vec_inv(ctx, level - 1, n);
  return join_halves(vec_mul(ctx, level - 1, a0, ni),
                     vec_neg(vec_mul(ctx, level - 1, a1, ni)));
}

Vec vec_conj(const TowerContext& ctx, int level, const Vec& a) {
  if (level == 0) return a;
  Vec lo = vec_conj(ctx, level - 1, lower_half(a));
  Vec hi = upper_half(a);
  if (vec_is_zero(hi)) return join_halves(lo, hi);
  const Vec& r = ctx.radicand_raw(level);
  bool r_rational = std::all_of(r.begin() + 1, r.end(),
                                [](const Rational& q) { return q.is_zero(); });
  if (!r_rational)
    raise(ErrorCode::ConjugationUndefined, "conjugation over a nested radicand");
  Vec ch = vec_conj(ctx, level - 1, hi);
  if (r[0] == Rational(-1)) return join_halves(lo, vec_neg(ch));
  if (r[0].sign() > 0) return join_halves(lo, ch);
  raise(ErrorCode::ConjugationUndefined,
        "conjugation over sqrt of a negative rational other than -1");
}

std::optional<Vec> vec_try_sqrt(const TowerContext& ctx, int level, const Vec& d) {
  if (level == 0) {
    auto s = d[0].exact_sqrt();
    if (!s) return std::nullopt;
    return Vec{*s};
  }
  const Vec lo = lower_half(d), hi = upper_half(d);
  const Vec& r = ctx.radicand_raw(level);
  if (vec_is_zero(hi)) {
    if (auto x = vec_try_sqrt(ctx, level - 1, lo)) {
      return join_halves(*x, Vec(x->size(), Rational(0)));
    }
    // maybe sqrt(lo) = b*sqrt(r) with b^2 = lo/r
    Vec q = vec_mul(ctx, level - 1, lo, vec_inv(ctx, level - 1, r));
    if (auto b = vec_try_sqrt(ctx, level - 1, q)) {
      return join_halves(Vec(b->size(), Rational(0)), *b);
    }
    return std::nullopt;
  }
  // x = a + b*sqrt(r), both parts nonzero: a^2 = (lo +- s)/2 with
  // s^2 = lo^2 - hi^2*r, and then b = hi/(2a).
  Vec n = vec_sub(vec_mul(ctx, level - 1, lo, lo),
                  vec_mul(ctx, level - 1, vec_mul(ctx, level - 1, hi, hi), r));
  auto s = vec_try_sqrt(ctx, level - 1, n);
  if (!s) return std::nullopt;
  const Rational half(1, 2);
  for (int sign = 0; sign < 2; ++sign) {
    Vec t = (sign == 0) ? vec_add(lo, *s) : vec_sub(lo, *s);
    Vec a2(t.size());
    for (size_t i = 0; i < t.size(); ++i) a2[i] = t[i] * half;
    auto a = vec_try_sqrt(ctx, level - 1, a2);
    if (!a || vec_is_zero(*a)) continue;
    Vec two_a(a->size());
    for (size_t i = 0; i < a->size(); ++i) two_a[i] = (*a)[i] + (*a)[i];
    Vec b = vec_mul(ctx, level - 1, hi, vec_inv(ctx, level - 1, two_a));
    Vec cand = join_halves(*a, b);
    if (vec_mul(ctx, level, cand, cand) == d) return cand;
  }
  return std::nullopt;
}

void canonical_sign_flip(Vec& v) {
  for (const Rational& c : v) {
    if (c.is_zero()) continue;
    if (c.sign() < 0) v = vec_neg(v);
    return;
  }
}

bool is_prefix(const std::vector<Vec>& shorter, const std::vector<Vec>& longer) {
  for (size_t i = 0; i < shorter.size(); ++i)
    if (shorter[i] != longer[i]) return false;
  return true;
}

}  // namespace

const TowerContext::Data* TowerContext::intern(Data&& candidate) {
  // immortal registry keyed by content; contexts are few and small
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<Data>>* registry =
      new std::map<std::string, std::unique_ptr<Data>>();
  std::string key = std::to_string(candidate.max_depth);
  for (const auto& rad : candidate.radicands) {
    key += '|';
    for (const Rational& r : rad) {
      key += r.str();
      key += ',';
    }
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto it = registry->find(key);
  if (it != registry->end()) return it->second.get();
  auto owned = std::make_unique<Data>(std::move(candidate));
  const Data* raw = owned.get();
  registry->emplace(std::move(key), std::move(owned));
  return raw;
}

TowerContext::TowerContext(int max_depth) {
  if (max_depth == kDefaultMaxDepth) {
    static const Data* plain = intern(Data{{}, kDefaultMaxDepth});
    data_ = plain;
    return;
  }
  data_ = intern(Data{{}, max_depth});
}

const std::vector<Rational>& TowerContext::radicand_raw(int level) const {
  if (level < 1 || level > depth())
    raise(ErrorCode::InternalInconsistency, "radicand level out of range");
  return data_->radicands[level - 1];
}

FieldElement TowerContext::radicand(int level) const {
  FieldElement e(*this, level - 1, radicand_raw(level));
  e.trim();
  return e;
}

bool TowerContext::compatible_with(const TowerContext& other) const {
  if (data_ == other.data_) return true;
  if (depth() <= other.depth()) return is_prefix(data_->radicands, other.data_->radicands);
  return is_prefix(other.data_->radicands, data_->radicands);
}

int TowerContext::gaussian_level() const {
  for (int l = 1; l <= depth(); ++l) {
    const Vec& r = radicand_raw(l);
    if (r[0] == Rational(-1) &&
        std::all_of(r.begin() + 1, r.end(), [](const Rational& q) { return q.is_zero(); }))
      return l;
  }
  return 0;
}

FieldElement::FieldElement(const Rational& r, TowerContext ctx)
    : ctx_(std::move(ctx)), level_(0), coords_{r} {}

FieldElement::FieldElement(TowerContext ctx, int level, std::vector<Rational> coords)
    : ctx_(std::move(ctx)), level_(level), coords_(std::move(coords)) {}

void FieldElement::trim() {
  while (level_ > 0) {
    size_t half = coords_.size() / 2;
    bool top_zero = true;
    for (size_t i = half; i < coords_.size(); ++i)
      if (!coords_[i].is_zero()) { top_zero = false; break; }
    if (!top_zero) break;
    coords_.resize(half);
    --level_;
  }
}

const Rational& FieldElement::rational_value() const {
  if (level_ != 0) raise(ErrorCode::InvalidArgument, "field element is not rational");
  return coords_[0];
}

bool FieldElement::in_gaussian_field() const {
  if (level_ == 0) return true;
  int g = ctx_.gaussian_level();
  if (g == 0 || level_ != g) return false;
  size_t half = coords_.size() / 2;
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i == 0 || i == half) continue;
    if (!coords_[i].is_zero()) return false;
  }
  return true;
}

std::pair<Rational, Rational> FieldElement::gaussian_parts() const {
  if (!in_gaussian_field())
    raise(ErrorCode::InvalidArgument, "field element is not in the gaussian field");
  if (level_ == 0) return {coords_[0], Rational(0)};
  return {coords_[0], coords_[coords_.size() / 2]};
}

namespace {

// Shared coercion: picks the deeper compatible context and a common level.
struct Coerced {
  TowerContext ctx;
  int level;
  Vec a;
  Vec b;
};

Coerced coerce(const FieldElement& x, const FieldElement& y) {
  const TowerContext& cx = x.context();
  const TowerContext& cy = y.context();
  if (!cx.compatible_with(cy))
    raise(ErrorCode::IncompatibleTower, "operands live in incompatible towers");
  TowerContext ctx = (cx.depth() >= cy.depth()) ? cx : cy;
  int level = std::max(x.level(), y.level());
  size_t width = size_t{1} << level;
  return {ctx, level, lift_vec(x.coords(), width), lift_vec(y.coords(), width)};
}

}  // namespace

FieldElement FieldElement::operator-() const {
  return FieldElement(ctx_, level_, vec_neg(coords_));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  Coerced c = coerce(*this, o);
  *this = FieldElement(std::move(c.ctx), c.level, vec_add(c.a, c.b));
  trim();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  Coerced c = coerce(*this, o);
  *this = FieldElement(std::move(c.ctx), c.level, vec_sub(c.a, c.b));
  trim();
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  Coerced c = coerce(*this, o);
  *this = FieldElement(c.ctx, c.level, vec_mul(c.ctx, c.level, c.a, c.b));
  trim();
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  Coerced c = coerce(*this, o);
  Vec bi = vec_inv(c.ctx, c.level, c.b);
  *this = FieldElement(c.ctx, c.level, vec_mul(c.ctx, c.level, c.a, bi));
  trim();
  return *this;
}

FieldElement FieldElement::inverse() const {
  FieldElement out(ctx_, level_, vec_inv(ctx_, level_, coords_));
  out.trim();
  return out;
}

FieldElement FieldElement::conjugate() const {
  FieldElement out(ctx_, level_, vec_conj(ctx_, level_, coords_));
  out.trim();
  return out;
}

FieldElement FieldElement::lifted_to(const TowerContext& ctx) const {
  if (!ctx_.compatible_with(ctx) || level_ > ctx.depth())
    raise(ErrorCode::IncompatibleTower, "cannot lift element into the given tower");
  return FieldElement(ctx, level_, coords_);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.level_ == 0 && b.level_ == 0) return a.coords_[0] == b.coords_[0];
  if (a.level_ != b.level_) return false;
  if (!a.ctx_.compatible_with(b.ctx_))
    raise(ErrorCode::IncompatibleTower, "comparing elements of incompatible towers");
  return a.coords_ == b.coords_;
}

bool canonical_less(const FieldElement& a, const FieldElement& b) {
  if (a.level() != b.level()) return a.level() < b.level();
  if (a.level() > 0 && !a.context().compatible_with(b.context()))
    raise(ErrorCode::IncompatibleTower, "ordering elements of incompatible towers");
  const auto& ca = a.coords();
  const auto& cb = b.coords();
  for (size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == cb[i]) continue;
    return canonical_less(ca[i], cb[i]);
  }
  return false;
}

namespace {

std::string format_gauss(const Rational& re, const Rational& im) {
  if (im.is_zero()) return re.str();
  Rational mag = im.abs();
  if (re.is_zero()) {
    std::string imag = mag.is_one() ? "i" : mag.str() + "i";
    return (im.sign() < 0 ? "-" : "") + imag;
  }
  // combo form needs an explicit magnitude to stay within the literal grammar
  return re.str() + (im.sign() < 0 ? "-" : "+") + mag.str() + "i";
}

std::string render_vec(const TowerContext& ctx, int level, const Vec& v);

std::string render_radical_term(const TowerContext& ctx, int level, const Vec& coef) {
  // coefficient (at level-1) times sqrt of this level's radicand
  const Vec& rad = ctx.radicand_raw(level);
  Vec rad_trimmed = rad;
  int rad_level = level - 1;
  while (rad_level > 0) {
    size_t half = rad_trimmed.size() / 2;
    bool zero = true;
    for (size_t i = half; i < rad_trimmed.size(); ++i)
      if (!rad_trimmed[i].is_zero()) { zero = false; break; }
    if (!zero) break;
    rad_trimmed.resize(half);
    --rad_level;
  }
  std::string root = "sqrt(" + render_vec(ctx, rad_level, rad_trimmed) + ")";
  bool coef_rational = std::all_of(coef.begin() + (coef.empty() ? 0 : 1), coef.end(),
                                   [](const Rational& q) { return q.is_zero(); });
  if (coef_rational) {
    const Rational& c = coef[0];
    if (c.is_one()) return root;
    if (c == Rational(-1)) return "-" + root;
    return c.str() + "*" + root;
  }
  int clevel = level - 1;
  Vec ctrim = coef;
  while (clevel > 0) {
    size_t half = ctrim.size() / 2;
    bool zero = true;
    for (size_t i = half; i < ctrim.size(); ++i)
      if (!ctrim[i].is_zero()) { zero = false; break; }
    if (!zero) break;
    ctrim.resize(half);
    --clevel;
  }
  return "(" + render_vec(ctx, clevel, ctrim) + ")*" + root;
}

std::string render_vec(const TowerContext& ctx, int level, const Vec& v) {
  if (level == 0) return v[0].str();
  const Vec& rad = ctx.radicand_raw(level);
  bool rad_is_minus_one =
      rad[0] == Rational(-1) &&
      std::all_of(rad.begin() + 1, rad.end(), [](const Rational& q) { return q.is_zero(); });
  size_t half = v.size() / 2;
  Vec lo = lower_half(v), hi = upper_half(v);
  bool parts_rational = true;
  for (size_t i = 1; i < half; ++i)
    if (!lo[i].is_zero() || !hi[i].is_zero()) { parts_rational = false; break; }
  if (rad_is_minus_one && parts_rational) return format_gauss(lo[0], hi[0]);

  std::string out;
  if (!vec_is_zero(lo)) {
    int lo_level = level - 1;
    Vec lt = lo;
    while (lo_level > 0) {
      size_t h = lt.size() / 2;
      bool zero = true;
      for (size_t i = h; i < lt.size(); ++i)
        if (!lt[i].is_zero()) { zero = false; break; }
      if (!zero) break;
      lt.resize(h);
      --lo_level;
    }
    out = render_vec(ctx, lo_level, lt);
  }
  if (!vec_is_zero(hi)) {
    std::string term = render_radical_term(ctx, level, hi);
    if (out.empty())
      out = term;
    else
      out += (term.front() == '-') ? term : "+" + term;
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace

std::string FieldElement::str() const {
  return render_vec(ctx_, level_, coords_);
}

std::optional<FieldElement> try_sqrt(const FieldElement& d) {
  const TowerContext& ctx = d.context();
  Vec lifted = lift_vec(d.coords(), size_t{1} << ctx.depth());
  auto root = vec_try_sqrt(ctx, ctx.depth(), lifted);
  if (!root) return std::nullopt;
  canonical_sign_flip(*root);
  FieldElement out(ctx, ctx.depth(), std::move(*root));
  out.trim();
  if (out * out != d)
    raise(ErrorCode::InternalInconsistency, "square root verification failed");
  return out;
}

std::pair<TowerContext, FieldElement> adjoin_sqrt(const TowerContext& ctx,
                                                  const FieldElement& d_in) {
  if (d_in.is_zero()) raise(ErrorCode::InvalidArgument, "adjoin_sqrt of zero");
  if (!ctx.compatible_with(d_in.context()))
    raise(ErrorCode::IncompatibleTower, "radicand lives in an incompatible tower");
  const TowerContext& work =
      (ctx.depth() >= d_in.context().depth()) ? ctx : d_in.context();
  FieldElement d = d_in.lifted_to(work);
  if (auto existing = try_sqrt(d)) return {work, *existing};

  if (work.depth() + 1 > work.max_depth())
    raise(ErrorCode::TowerDepthExceeded,
          "tower depth limit " + std::to_string(work.max_depth()) + " exceeded");

  size_t rad_width = size_t{1} << work.depth();
  Vec rad(rad_width, Rational(0));
  Rational scale(1);
  if (d.is_rational()) {
    auto [core, s] = d.rational_value().squarefree_decomposition();
    rad[0] = Rational(core, mpz_class(1));
    scale = s;
  } else {
    Vec lifted = lift_vec(d.coords(), rad_width);
    rad = lifted;
  }

  TowerContext::Data data;
  data.radicands = work.data_->radicands;
  data.radicands.push_back(rad);
  data.max_depth = work.max_depth();
  TowerContext extended;
  extended.data_ = TowerContext::intern(std::move(data));

  Vec coords(rad_width * 2, Rational(0));
  coords[rad_width] = scale;
  FieldElement root(extended, extended.depth(), std::move(coords));
  return {extended, root};
}

QuadraticRoots solve_quadratic(const FieldElement& a, const FieldElement& b,
                               const FieldElement& c) {
  if (a.is_zero()) raise(ErrorCode::InvalidArgument, "leading coefficient is zero");
  FieldElement four(Rational(4), a.context());
  FieldElement disc = b * b - four * a * c;
  FieldElement two_a = a + a;
  if (disc.is_zero()) {
    FieldElement r = ((-b) / two_a).lifted_to(disc.context());
    return {disc.context(), r, r};
  }
  auto [ctx, s] = adjoin_sqrt(disc.context(), disc);
  FieldElement nb = (-b).lifted_to(ctx);
  FieldElement den = two_a.lifted_to(ctx);
  return {ctx, (nb + s) / den, (nb - s) / den};
}

}  // namespace liespec
