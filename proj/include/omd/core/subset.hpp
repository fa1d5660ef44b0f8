#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace omd {

/// A subset of the ground set {1..m}, m <= 63, stored as a bitmask.
///
/// Item arguments to member functions are 0-based (bit positions). The
/// external representation (indices(), from_indices(), to_string()) is the
/// sorted list of 1-based item numbers.
///
/// The defaulted ordering compares masks numerically, which coincides with
/// the lexicographic order "largest element of the symmetric difference lies
/// in the larger set".
class Subset {
 public:
  using Mask = std::uint64_t;
  static constexpr int kMaxItems = 63;

  constexpr Subset() = default;
  constexpr explicit Subset(Mask mask) : mask_(mask) {}

  /// {1..n}
  static Subset full(int n);
  static Subset singleton(int item) { return Subset(Mask{1} << item); }
  /// Validates 1 <= index <= ground_size and rejects duplicates.
  static Subset from_indices(std::span<const int> one_based, int ground_size);

  [[nodiscard]] constexpr Mask mask() const { return mask_; }
  [[nodiscard]] constexpr bool empty() const { return mask_ == 0; }
  [[nodiscard]] constexpr int size() const { return std::popcount(mask_); }
  [[nodiscard]] constexpr bool contains(int item) const { return (mask_ >> item) & 1U; }
  [[nodiscard]] constexpr Subset with(int item) const { return Subset(mask_ | (Mask{1} << item)); }
  [[nodiscard]] constexpr Subset without(int item) const {
    return Subset(mask_ & ~(Mask{1} << item));
  }
  [[nodiscard]] constexpr bool is_subset_of(Subset other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  /// Largest 0-based item in the set; -1 when empty.
  [[nodiscard]] constexpr int max_item() const {
    return mask_ == 0 ? -1 : 63 - std::countl_zero(mask_);
  }

  /// Complement within {1..n}.
  [[nodiscard]] Subset complement(int n) const { return Subset(full(n).mask_ & ~mask_); }

  [[nodiscard]] std::vector<int> indices() const;
  [[nodiscard]] std::string to_string() const;

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.mask_ | b.mask_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.mask_ & b.mask_); }
  friend constexpr Subset operator^(Subset a, Subset b) { return Subset(a.mask_ ^ b.mask_); }
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.mask_ & ~b.mask_); }

  friend constexpr auto operator<=>(Subset, Subset) = default;

 private:
  Mask mask_ = 0;
};

/// a <=_lex b iff the largest element of the symmetric difference belongs to b.
/// Agrees with the numeric mask order used by operator<=>.
constexpr bool lex_leq(Subset a, Subset b) {
  const Subset diff = a ^ b;
  return diff.empty() || b.contains(diff.max_item());
}

/// Number of subsets of an n-item ground set.
inline std::size_t subset_count(int n) { return std::size_t{1} << n; }

}  // namespace omd
