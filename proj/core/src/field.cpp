#include "comatroid/field.hpp"

#include "comatroid/error.hpp"

namespace comatroid {

Field field_from_order(int q) {
  if (q == 2) return Field::GF2;
  if (q == 3) return Field::GF3;
  throw UnsupportedFieldError("unsupported field order " + std::to_string(q) + " (expected 2 or 3)");
}

std::string to_digits(const Vec& v, int length) {
  std::string digits;
  digits.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) digits.push_back(static_cast<char>('0' + coord(v, i)));
  return digits;
}

LinearBasis::Reduction LinearBasis::reduce(const Vec& v) const {
  Reduction out{v, Vec{}};
  for (int k = 0; k < size_; ++k) {
    const Row& row = rows_[static_cast<std::size_t>(k)];
    const int c = coord(out.residual, row.pivot);
    if (c == 0) continue;
    out.residual = sub(field_, out.residual, scale(field_, row.value, c));
    out.combo = add(field_, out.combo, scale(field_, row.combo, c));
  }
  return out;
}

bool LinearBasis::insert(const Vec& v) {
  if (size_ >= kMaxCoordinates) return false;
  const Reduction r = reduce(v);
  if (r.residual.is_zero()) return false;
  // residual = v - combo.generators, so as a combination it is unit(size_) - combo.
  const int pivot = leading_coordinate(r.residual);
  const int s = coord(r.residual, pivot) == 1 ? 1 : 2;  // 2 is its own inverse in GF(3)
  Vec combo = sub(field_, with_coord(Vec{}, size_, 1), r.combo);
  rows_[static_cast<std::size_t>(size_)] = Row{scale(field_, r.residual, s), scale(field_, combo, s), pivot};
  generators_[static_cast<std::size_t>(size_)] = v;
  ++size_;
  return true;
}

}  // namespace comatroid
