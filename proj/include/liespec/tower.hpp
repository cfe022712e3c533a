#ifndef LIESPEC_TOWER_HPP
#define LIESPEC_TOWER_HPP

#include <optional>
#include <string>
#include <vector>

#include "liespec/rational.hpp"

namespace liespec {

class FieldElement;

/// Tower of iterated quadratic extensions of Q. Level 0 is Q; level j
/// adjoins the square root of a radicand expressed in level j-1.
/// Immutable: adjoining a root yields a new context. Two contexts are
/// compatible when one radicand list is a prefix of the other.
///
/// Context data is interned in an immortal registry, so handles are raw
/// pointers: copying a context (or a FieldElement) never touches shared
/// state, which keeps the OpenMP kernels contention-free.
class TowerContext {
public:
  static constexpr int kDefaultMaxDepth = 4;

  TowerContext() : TowerContext(kDefaultMaxDepth) {}
  explicit TowerContext(int max_depth);

  int depth() const { return static_cast<int>(data_->radicands.size()); }
  int max_depth() const { return data_->max_depth; }

  /// Raw coordinates (size 2^(level-1)) of the radicand adjoined at
  /// `level`, expressed in the level below. `level` is 1-based.
  const std::vector<Rational>& radicand_raw(int level) const;

  /// The radicand adjoined at `level` as a field element of this context.
  FieldElement radicand(int level) const;

  bool compatible_with(const TowerContext& other) const;
  bool same_data(const TowerContext& other) const { return data_ == other.data_; }

  /// Index (1-based) of the level whose radicand is exactly -1, or 0.
  int gaussian_level() const;

private:
  struct Data {
    std::vector<std::vector<Rational>> radicands;
    int max_depth;
  };
  static const Data* intern(Data&& candidate);

  const Data* data_;

  friend std::pair<TowerContext, FieldElement> adjoin_sqrt(const TowerContext&,
                                                           const FieldElement&);
};

/// Element of a quadratic extension tower, stored as 2^level rational
/// coordinates over the multiplicative basis of radical products. Always
/// trimmed: a value expressible at a lower level is stored there, so
/// equality is plain coordinate comparison (after context coercion).
class FieldElement {
public:
  FieldElement() : FieldElement(Rational(0)) {}
  explicit FieldElement(const Rational& r, TowerContext ctx = TowerContext());
  FieldElement(long n, TowerContext ctx) : FieldElement(Rational(n), std::move(ctx)) {}

  static FieldElement zero(const TowerContext& ctx) { return FieldElement(Rational(0), ctx); }
  static FieldElement one(const TowerContext& ctx) { return FieldElement(Rational(1), ctx); }

  const TowerContext& context() const { return ctx_; }
  int level() const { return level_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const { return level_ == 0 && coords_[0].is_zero(); }
  bool is_one() const { return level_ == 0 && coords_[0].is_one(); }
  bool is_rational() const { return level_ == 0; }
  const Rational& rational_value() const;

  /// True when the value lies in Q or Q(i) with i at the context's
  /// gaussian level; gaussian_parts() then yields (re, im).
  bool in_gaussian_field() const;
  std::pair<Rational, Rational> gaussian_parts() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement inverse() const;

  /// Complex conjugation: i -> -i, square roots of positive rationals
  /// fixed. Undefined (throws) when the value involves a level whose
  /// radicand is neither -1 nor a positive rational.
  FieldElement conjugate() const;

  /// Re-expresses the value in a compatible deeper context.
  FieldElement lifted_to(const TowerContext& ctx) const;

  std::string str() const;

private:
  FieldElement(TowerContext ctx, int level, std::vector<Rational> coords);

  void trim();

  TowerContext ctx_;
  int level_;
  std::vector<Rational> coords_;

  friend std::pair<TowerContext, FieldElement> adjoin_sqrt(const TowerContext&,
                                                           const FieldElement&);
  friend std::optional<FieldElement> try_sqrt(const FieldElement&);
  friend class TowerContext;
};

/// Square root within the existing tower, if expressible; canonical sign
/// (first nonzero coordinate positive).
std::optional<FieldElement> try_sqrt(const FieldElement& d);

/// Returns a context containing sqrt(d) together with that root. The
/// context is unchanged when the root already exists; otherwise one level
/// is adjoined (rational radicands are reduced to their squarefree core).
std::pair<TowerContext, FieldElement> adjoin_sqrt(const TowerContext& ctx,
                                                  const FieldElement& d);

struct QuadraticRoots {
  TowerContext ctx;
  FieldElement r1;
  FieldElement r2;
};

/// Exact roots of a*t^2 + b*t + c (a != 0), extending the tower by the
/// discriminant's square root if needed. r1 carries the canonical-sign
/// root of the discriminant.
QuadraticRoots solve_quadratic(const FieldElement& a, const FieldElement& b,
                               const FieldElement& c);

/// Canonical presentation order on exact scalars: level first, then
/// coordinate-wise canonical rational order. Total, deterministic, and
/// unrelated to any numeric embedding.
bool canonical_less(const FieldElement& a, const FieldElement& b);

}  // namespace liespec

#endif
