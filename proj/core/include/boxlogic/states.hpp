#pragma once

#include <boxlogic/logic.hpp>
#include <boxlogic/rational.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boxlogic {

/// Conditional table P(alpha beta | a b), stored in AtomId order.
class PRState {
 public:
  PRState() = default;
  /// All-zero table for the given outcome counts per input.
  PRState(std::vector<std::size_t> left_sizes, std::vector<std::size_t> right_sizes);
  static PRState for_spec(const BoxWorldSpec& spec);
  /// Takes values in AtomId order; throws InvalidInput on a length mismatch.
  static PRState from_values(const BoxWorldSpec& spec, std::vector<Rational> values);

  /// {"a,b": [[P(0 0|a b), P(0 1|a b), ...], ...], ...} with rows indexed by
  /// the left outcome and 0-based input indices. Entries are "p/q" strings.
  /// The shape is read off the matrices. Missing or ragged entries throw.
  static PRState from_json(std::string_view text);
  static PRState load(const std::string& path);
  std::string to_json() const;

  const std::vector<std::size_t>& left_sizes() const noexcept { return left_; }
  const std::vector<std::size_t>& right_sizes() const noexcept { return right_; }
  bool matches(const BoxWorldSpec& spec) const;

  std::size_t variable(const AtomId& id) const;
  const Rational& at(const AtomId& id) const { return values_[variable(id)]; }
  Rational& at(const AtomId& id) { return values_[variable(id)]; }
  std::span<const Rational> values() const noexcept { return values_; }

  friend bool operator==(const PRState&, const PRState&) = default;

 private:
  void index_offsets();

  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
  std::vector<std::size_t> left_offset_;
  std::vector<std::size_t> right_offset_;
  std::size_t right_total_ = 0;
  std::vector<Rational> values_;
};

struct Violation {
  enum class Kind { Negative, Normalization, NoSignallingRight, NoSignallingLeft };
  Kind kind;
  std::string where;
  /// Signed amount by which the constraint is off.
  Rational residual;
};

std::string_view to_string(Violation::Kind kind) noexcept;

/// Non-negativity, per-input-pair normalization and both no-signalling
/// families. NoSignallingRight: the right marginal for (b, beta) differs
/// between left input a and left input 0. NoSignallingLeft: symmetric.
std::vector<Violation> validate_pr_state(const PRState& state);
/// Also throws InvalidInput if the table shape does not match the scenario.
std::vector<Violation> validate_pr_state(const BoxWorldSpec& spec, const PRState& state);

/// Uniform product table 1 / (|U_a| |V_b|).
PRState uniform_pr_state(const BoxWorldSpec& spec);

/// Exact values of a state on every element of a logic, by element index.
struct LogicState {
  std::vector<Rational> values;

  const Rational& operator[](ElementIndex i) const { return values.at(i); }
  friend bool operator==(const LogicState&, const LogicState&) = default;
};

/// Extends P additively from the atoms to the whole logic. Every atomic
/// decomposition of every element is checked to give the same sum: each
/// decomposition uses exactly one atom through the element's lowest point,
/// so comparing those branches (on top of already-checked smaller elements)
/// covers all of them. Throws WellDefinednessViolation on a disagreement.
LogicState state_from_pr(const Logic& logic, const PRState& state);

/// The per-element decomposition structure behind state_from_pr and
/// state_defect, computed once for a logic so that many states can be
/// processed cheaply. Holds a pointer to the logic, which must outlive it.
class StateExtension {
 public:
  /// Throws InvalidInput for a logic without box-world provenance and
  /// TheoremViolation if a non-empty element has no atomic decomposition.
  explicit StateExtension(const Logic& logic);

  const Logic& logic() const noexcept { return *logic_; }
  LogicState extend(const PRState& state) const;
  std::optional<std::string> defect(const LogicState& rho) const;
  PRState restrict(const LogicState& rho) const;

 private:
  struct Branch {
    std::size_t atom;  // position in logic.atoms()
    ElementIndex rest;  // Logic::npos when the element is the atom itself
  };

  template <typename T, typename Add>
  bool extend_as(const std::vector<T>& atom_values, std::vector<T>& out, Add add) const;

  const Logic* logic_;
  std::vector<ElementIndex> order_;
  std::vector<std::size_t> offsets_;
  std::vector<Branch> branches_;
};

/// Reads P off the atoms after checking that rho is a state: values in
/// [0, 1], rho(1) = 1, rho(0) = 0 and additivity. Additivity is checked as
/// rho(e) = rho(atom) + rho(e - atom) for each atom through the lowest point
/// of e, which forces rho to be the sum over every atomic decomposition.
/// Throws InvalidInput when rho is not a state.
PRState pr_from_state(const Logic& logic, const LogicState& rho);

/// First reason rho fails to be a state, or nullopt.
std::optional<std::string> state_defect(const Logic& logic, const LogicState& rho);

/// rho(A) = 1 iff point is in A.
LogicState point_state(const Logic& logic, std::size_t point);

/// lambda * x + (1 - lambda) * y, entrywise.
LogicState mix(const LogicState& x, const LogicState& y, const Rational& lambda);
PRState mix(const PRState& x, const PRState& y, const Rational& lambda);

/// Random convex combinations of 1-4 of the given tables with integer
/// weights in [1, 100]. Deterministic for a given seed.
std::vector<PRState> sample_pr_states(std::span<const PRState> vertices, std::size_t count,
                                      std::uint64_t seed);

}  // namespace boxlogic
