#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "formring/subset.hpp"

namespace formring {

inline constexpr int kMaxDim = 8;

/// An index in Ω = {1..n, -n..-1}.
///
/// Positions follow the base order e_1..e_n, e_{-n}..e_{-1}: i > 0 maps to
/// i-1, i < 0 maps to 2n+i.
struct OmegaIndex {
  int value = 1;

  constexpr int sign() const { return value > 0 ? 1 : -1; }
  constexpr int position(int n) const { return value > 0 ? value - 1 : 2 * n + value; }
  constexpr OmegaIndex opposite() const { return OmegaIndex{-value}; }
  static constexpr OmegaIndex from_position(int pos, int n) {
    return OmegaIndex{pos < n ? pos + 1 : pos - 2 * n};
  }
  friend constexpr bool operator==(OmegaIndex, OmegaIndex) = default;
};

/// All of Ω in base order.
std::vector<OmegaIndex> omega(int n);

/// A 2n x 2n matrix over a table ring. Entries are element indices stored
/// row-major with a fixed stride; unused cells stay 0, which UnitarySpace
/// requires to be the ring's zero.
class UMatrix {
 public:
  UMatrix() = default;
  explicit UMatrix(int dim) : dim_(static_cast<std::uint8_t>(dim)) {}

  int dim() const { return dim_; }
  int half() const { return dim_ / 2; }

  Elem at(int r, int c) const { return e_[static_cast<std::size_t>(r * kMaxDim + c)]; }
  Elem& at(int r, int c) { return e_[static_cast<std::size_t>(r * kMaxDim + c)]; }
  Elem at(OmegaIndex i, OmegaIndex j) const { return at(i.position(half()), j.position(half())); }
  Elem& at(OmegaIndex i, OmegaIndex j) { return at(i.position(half()), j.position(half())); }

  const Elem* row(int r) const { return e_.data() + r * kMaxDim; }
  Elem* row(int r) { return e_.data() + r * kMaxDim; }

  friend bool operator==(const UMatrix&, const UMatrix&) = default;
  friend auto operator<=>(const UMatrix&, const UMatrix&) = default;

 private:
  std::uint8_t dim_ = 0;
  std::array<Elem, kMaxDim * kMaxDim> e_{};
};

/// Fixed-width canonical encoding: entries row-major in Ω position order,
/// ceil(log2|A|) bits each, packed little-endian into four words.
using Key = std::array<std::uint64_t, 4>;

}  // namespace formring
