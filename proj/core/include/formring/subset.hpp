#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace formring {

/// Ring elements are addressed by dense indices into the arithmetic tables.
using Elem = std::uint8_t;

inline constexpr int kMaxRingOrder = 64;

/// A set of ring elements, stored as a 64-bit mask (bit i = element i).
/// Ordering compares the masks as unsigned integers, which is the canonical
/// order used wherever subsets are listed.
class Subset {
 public:
  constexpr Subset() = default;
  explicit constexpr Subset(std::uint64_t bits) : bits_(bits) {}
  Subset(std::initializer_list<Elem> elems) {
    for (Elem e : elems) insert(e);
  }

  static Subset from(const std::vector<Elem>& elems) {
    Subset s;
    for (Elem e : elems) s.insert(e);
    return s;
  }
  static constexpr Subset full(int order) {
    return Subset(order >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1);
  }

  constexpr bool contains(Elem e) const { return (bits_ >> e) & 1u; }
  constexpr void insert(Elem e) { bits_ |= std::uint64_t{1} << e; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<Elem>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr bool operator==(Subset a, Subset b) = default;
  friend constexpr std::strong_ordering operator<=>(Subset a, Subset b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace formring
