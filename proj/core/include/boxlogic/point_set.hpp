#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boxlogic {

/// Fixed-width bit vector over a ground set {0, ..., size-1}.
///
/// Bits past `size()` in the last word are kept zero so that word-wise
/// equality, hashing and popcount need no masking.
class PointSet {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  PointSet() = default;
  explicit PointSet(std::size_t size);

  static PointSet full(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept;
  bool none() const noexcept;
  bool any() const noexcept { return !none(); }
  bool all() const noexcept;

  /// Index of the smallest member, or npos when empty.
  std::size_t lowest() const noexcept;
  /// Smallest member strictly greater than `i`, or npos.
  std::size_t next(std::size_t i) const noexcept;

  bool is_subset_of(const PointSet& other) const noexcept;
  bool intersects(const PointSet& other) const noexcept;
  bool disjoint(const PointSet& other) const noexcept { return !intersects(other); }

  PointSet& operator&=(const PointSet& other) noexcept;
  PointSet& operator|=(const PointSet& other) noexcept;
  PointSet& operator^=(const PointSet& other) noexcept;
  /// Set difference.
  PointSet& operator-=(const PointSet& other) noexcept;

  /// Complement within the ground set.
  PointSet complement() const;

  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator^(PointSet a, const PointSet& b) { return a ^= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

  std::size_t hash() const noexcept;

  /// Big-endian hex of the integer sum 2^i over members, zero padded to
  /// ceil(size/4) digits.
  std::string to_hex() const;
  static PointSet from_hex(std::string_view hex, std::size_t size);

  /// Members in increasing order.
  std::vector<std::size_t> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

 private:
  void trim() noexcept;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Canonical element order: popcount first, then the set whose smallest
/// differing point is a member comes first.
bool canonical_less(const PointSet& a, const PointSet& b) noexcept;

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const noexcept { return s.hash(); }
};

}  // namespace boxlogic
