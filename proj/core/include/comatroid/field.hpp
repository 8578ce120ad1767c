#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace comatroid {

/// Prime fields supported by the library. Only GF(2) and GF(3) have unique
/// representability, which the whole library relies on.
enum class Field : std::uint8_t { GF2 = 2, GF3 = 3 };

constexpr int order(Field f) { return static_cast<int>(f); }

/// Throws UnsupportedFieldError for anything other than 2 or 3.
Field field_from_order(int q);

/// Longest coordinate vector the packed representation can hold.
inline constexpr int kMaxCoordinates = 32;

/// A vector over GF(2) or GF(3), bit-sliced: coordinate i lives in bit i.
/// `pos` marks coordinates equal to 1 and `neg` marks coordinates equal to 2
/// (that is, -1). Over GF(2) `neg` is always zero.
struct Vec {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;

  constexpr std::uint32_t support() const { return pos | neg; }
  constexpr bool is_zero() const { return (pos | neg) == 0; }
  friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

constexpr int coord(const Vec& v, int i) {
  if ((v.pos >> i) & 1U) return 1;
  if ((v.neg >> i) & 1U) return 2;
  return 0;
}

/// Sets coordinate i to value c in {0, 1, 2}.
constexpr Vec with_coord(Vec v, int i, int c) {
  const std::uint32_t bit = std::uint32_t{1} << i;
  v.pos &= ~bit;
  v.neg &= ~bit;
  if (c == 1) v.pos |= bit;
  if (c == 2) v.neg |= bit;
  return v;
}

constexpr Vec negate(Field f, const Vec& v) {
  return f == Field::GF2 ? v : Vec{v.neg, v.pos};
}

constexpr Vec add(Field f, const Vec& a, const Vec& b) {
  if (f == Field::GF2) return Vec{a.pos ^ b.pos, 0};
  const std::uint32_t as = a.support();
  const std::uint32_t bs = b.support();
  return Vec{(a.pos & ~bs) | (b.pos & ~as) | (a.neg & b.neg),
             (a.neg & ~bs) | (b.neg & ~as) | (a.pos & b.pos)};
}

constexpr Vec sub(Field f, const Vec& a, const Vec& b) { return add(f, a, negate(f, b)); }

/// c * v for a scalar c in {0, 1, 2}.
constexpr Vec scale(Field f, const Vec& v, int c) {
  if (c == 0) return Vec{};
  if (c == 1) return v;
  return negate(f, v);
}

/// Index of the first nonzero coordinate, or -1 for the zero vector.
constexpr int leading_coordinate(const Vec& v) {
  const std::uint32_t s = v.support();
  return s == 0 ? -1 : __builtin_ctz(s);
}

/// Scales v so that its first nonzero coordinate is 1.
constexpr Vec normalize(Field f, const Vec& v) {
  const int lead = leading_coordinate(v);
  if (lead < 0) return v;
  return coord(v, lead) == 1 ? v : negate(f, v);
}

/// Restricts v to coordinates [0, length).
constexpr Vec truncate(const Vec& v, int length) {
  const std::uint32_t mask = length >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << length) - 1);
  return Vec{v.pos & mask, v.neg & mask};
}

/// Digits of v over coordinates [0, length), e.g. "1021".
std::string to_digits(const Vec& v, int length);

/// Incrementally built basis of a subspace of GF(q)^n, kept in echelon form.
///
/// Every stored row records, in `combo`, which combination of the inserted
/// generators produces it, so reductions also express a vector in terms of
/// the generators. Combination coordinate j refers to the j-th generator that
/// was accepted by insert().
class LinearBasis {
 public:
  struct Reduction {
    Vec residual;  ///< v minus its projection onto the span; zero iff v is in the span
    Vec combo;     ///< coefficients c with v = residual + sum_j c_j * generator_j
  };

  explicit LinearBasis(Field f) : field_(f) {}

  Field field() const { return field_; }
  int size() const { return size_; }
  const Vec& generator(int j) const { return generators_[static_cast<std::size_t>(j)]; }

  Reduction reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).residual.is_zero(); }

  /// Adds v as a new generator if it is independent of the current span.
  bool insert(const Vec& v);

 private:
  struct Row {
    Vec value;  // leading coordinate is `pivot` with value 1
    Vec combo;
    int pivot;
  };

  Field field_;
  int size_ = 0;
  std::array<Row, kMaxCoordinates> rows_{};
  std::array<Vec, kMaxCoordinates> generators_{};
};

}  // namespace comatroid
