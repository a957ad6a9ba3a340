#pragma once

#include <boxlogic/point_set.hpp>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace boxlogic {

/// Resource caps shared by every stage of the pipeline.
struct Limits {
  std::size_t max_gamma = std::size_t{1} << 20;
  std::size_t max_closure = 1'000'000;
  std::size_t max_polytope_vars = 200;
  std::size_t max_compatible_family = 12;
};

enum class Side { Left, Right };

std::string_view to_string(Side side) noexcept;

/// A two-box scenario: for every input of each box, the ordered list of
/// outcome labels. Indices into these lists are what all the math uses.
class BoxWorldSpec {
 public:
  using Box = std::vector<std::vector<std::string>>;

  BoxWorldSpec() = default;
  /// Throws InvalidInput unless every input has >= 2 distinct labels and each
  /// box has at least one input.
  BoxWorldSpec(Box left, Box right);

  /// Convenience: labels "0", "1", ... for the given outcome counts.
  static BoxWorldSpec from_sizes(const std::vector<std::size_t>& left,
                                 const std::vector<std::size_t>& right);

  /// {"left": [["0","1"], ...], "right": [...]}
  static BoxWorldSpec from_json(std::string_view text);
  static BoxWorldSpec load(const std::string& path);
  std::string to_json() const;

  const Box& left() const noexcept { return left_; }
  const Box& right() const noexcept { return right_; }
  const Box& box(Side side) const noexcept { return side == Side::Left ? left_ : right_; }

  std::size_t left_inputs() const noexcept { return left_.size(); }
  std::size_t right_inputs() const noexcept { return right_.size(); }
  std::size_t inputs(Side side) const noexcept { return box(side).size(); }
  std::size_t left_outcomes(std::size_t a) const { return left_.at(a).size(); }
  std::size_t right_outcomes(std::size_t b) const { return right_.at(b).size(); }
  std::size_t outcomes(Side side, std::size_t input) const { return box(side).at(input).size(); }

  /// Number of [a alpha, b beta] atoms: (sum |U_a|)(sum |V_b|).
  std::size_t atom_count() const noexcept;

  friend bool operator==(const BoxWorldSpec&, const BoxWorldSpec&) = default;

 private:
  Box left_;
  Box right_;
};

/// The atom [a alpha, b beta]. Ordered lexicographically on (a, alpha, b, beta).
struct AtomId {
  std::size_t a = 0;
  std::size_t alpha = 0;
  std::size_t b = 0;
  std::size_t beta = 0;

  friend auto operator<=>(const AtomId&, const AtomId&) = default;
};

/// [a in P, 1] (Left) or [1, b in Q] (Right). `outcomes` is sorted and unique.
struct LocalizedSpec {
  Side side = Side::Left;
  std::size_t input = 0;
  std::vector<std::size_t> outcomes;

  friend bool operator==(const LocalizedSpec&, const LocalizedSpec&) = default;
};

/// Gamma = Gamma_1 x Gamma_2 with a mixed-radix numbering of its points.
///
/// Point (x, y) has index ix * gamma2_size + iy, where ix and iy are the
/// mixed-radix numbers of x and y with the first input most significant.
/// Points are therefore listed in lexicographic order of (x_1..x_N, y_1..y_M).
class GammaIndex {
 public:
  struct Point {
    std::vector<std::size_t> x;
    std::vector<std::size_t> y;
    friend bool operator==(const Point&, const Point&) = default;
  };

  GammaIndex() = default;

  const BoxWorldSpec& spec() const noexcept { return spec_; }
  std::size_t gamma1_size() const noexcept { return gamma1_; }
  std::size_t gamma2_size() const noexcept { return gamma2_; }
  std::size_t gamma_size() const noexcept { return gamma1_ * gamma2_; }

  Point point(std::size_t index) const;
  std::size_t index(const Point& p) const;

  /// Outcome of left input `a` at point `index`.
  std::size_t left_coordinate(std::size_t index, std::size_t a) const noexcept {
    return (index / gamma2_ / left_stride_[a]) % spec_.left_outcomes(a);
  }
  std::size_t right_coordinate(std::size_t index, std::size_t b) const noexcept {
    return (index % gamma2_ / right_stride_[b]) % spec_.right_outcomes(b);
  }
  std::size_t coordinate(Side side, std::size_t index, std::size_t input) const noexcept {
    return side == Side::Left ? left_coordinate(index, input) : right_coordinate(index, input);
  }

  PointSet empty() const { return PointSet(gamma_size()); }
  PointSet full() const { return PointSet::full(gamma_size()); }

  /// All atoms in AtomId order.
  std::vector<AtomId> atom_ids() const;

 private:
  friend GammaIndex build_gamma(const BoxWorldSpec&, const Limits&);

  BoxWorldSpec spec_;
  std::size_t gamma1_ = 0;
  std::size_t gamma2_ = 0;
  std::vector<std::size_t> left_stride_;
  std::vector<std::size_t> right_stride_;
};

/// Throws CapExceeded when |Gamma| passes limits.max_gamma.
GammaIndex build_gamma(const BoxWorldSpec& spec, const Limits& limits = {});

/// [a alpha, b beta] = {(x, y) : x_a = alpha, y_b = beta}.
PointSet make_atom(const GammaIndex& gamma, const AtomId& id);

/// [a alpha, 1] or [1, b beta] for a single outcome.
PointSet make_localized(const GammaIndex& gamma, Side side, std::size_t input,
                        std::size_t outcome);
/// Union over P of the single-outcome localized sets.
PointSet make_localized(const GammaIndex& gamma, const LocalizedSpec& loc);

PointSet complement(const GammaIndex& gamma, const PointSet& e);

/// Non-empty proper subsets P of U_a (or V_b) as sorted outcome lists, in
/// increasing bitmask order. With `include_full`, P = U_a is appended.
std::vector<std::vector<std::size_t>> outcome_subsets(std::size_t outcome_count,
                                                      bool include_full);

}  // namespace boxlogic
