#pragma once

#include <boxlogic/errors.hpp>
#include <boxlogic/logic.hpp>
#include <boxlogic/rational.hpp>
#include <boxlogic/states.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace boxlogic {

inline constexpr std::size_t kMaxObservableOutcomes = 20;

/// Why an assignment is not an observable.
class ObservableError : public InvalidInput {
 public:
  enum class Kind { OverlappingSupports, IncompleteCover, SubJoinNotInLogic, DuplicateValue, Empty };
  ObservableError(Kind kind, const std::string& what) : InvalidInput(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(ObservableError::Kind kind) noexcept;

/// A finite observable: distinct values, each mapped to an element of the
/// logic. Value order is the order given to make_observable.
struct Observable {
  struct Outcome {
    Rational value;
    ElementIndex element;
    friend bool operator==(const Outcome&, const Outcome&) = default;
  };
  std::vector<Outcome> outcomes;

  friend bool operator==(const Observable&, const Observable&) = default;
};

/// Checks that the elements are pairwise disjoint, that they cover the
/// ground set and that the union of every subset of them is in the logic.
/// Throws ObservableError, or CapExceeded above kMaxObservableOutcomes
/// outcomes (the sub-union check is exhaustive).
Observable make_observable(const Logic& logic, std::vector<Observable::Outcome> outcomes);

/// Sum of v * rho(e).
Rational mean(const Observable& x, const LogicState& rho);
/// Sum of (v - mean)^2 rho(e). No square root.
Rational variance(const Observable& x, const LogicState& rho);

struct UncertaintyWitness {
  LogicState state;
  std::size_t point = 0;
  Rational product;
};

/// A point state for which variance(x) * variance(y) = 0. Every point state
/// qualifies; the lowest point of the ground set is used.
UncertaintyWitness heisenberg_infimum_witness(const Logic& logic, const Observable& x,
                                              const Observable& y);

/// One observable per set partition of the atoms [a alpha, b beta] of input
/// pair (a, b), blocks in order of their first atom and valued 0, 1, ...
/// Partitions are listed in restricted-growth-string order. Box-world logics
/// only; throws CapExceeded above kMaxObservableOutcomes atoms.
std::vector<Observable> input_pair_observables(const Logic& logic, std::size_t a, std::size_t b);

/// [{"value": "p/q", "element": "<hex>"}, ...]
Observable observable_from_json(const Logic& logic, std::string_view text);
Observable load_observable(const Logic& logic, const std::string& path);
std::string observable_to_json(const Logic& logic, const Observable& x);

}  // namespace boxlogic
