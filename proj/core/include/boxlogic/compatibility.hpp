#pragma once

#include <boxlogic/logic.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boxlogic {

/// p = p1 (+) r and q = q1 (+) r with p1, q1, r pairwise disjoint members.
struct CompatibilityWitness {
  ElementIndex p1 = 0;
  ElementIndex q1 = 0;
  ElementIndex r = 0;

  friend bool operator==(const CompatibilityWitness&, const CompatibilityWitness&) = default;
};

/// Searches r over the table in canonical order; nullopt means incompatible.
std::optional<CompatibilityWitness> are_compatible(const Logic& logic, ElementIndex p,
                                                   ElementIndex q);

/// Every way element i can be written as [a in P, 1] or [1, b in Q] with P
/// (Q) non-empty. The full set has one form per input on each side; most
/// elements have none.
std::vector<LocalizedSpec> localized_forms(const Logic& logic, ElementIndex i);

/// The partition {p_i, q_j, r_ij} for a family of localized sets that uses a
/// single input on each side. Empty pieces are dropped. nullopt when the
/// family mixes inputs on one side.
std::optional<std::vector<PointSet>> localized_partition(const GammaIndex& gamma,
                                                         std::span<const LocalizedSpec> family);

/// A mutually disjoint G in the logic such that every given element is a
/// union of members of G, or nullopt if none exists.
///
/// One element: its canonical decomposition. Localized families on one input
/// per side: localized_partition. Otherwise G is the set of non-empty cells
/// (points grouped by which elements contain them), which is the coarsest
/// candidate; it is in the logic exactly when any valid G is, since a union
/// of disjoint members is a member.
/// Throws CapExceeded past limits.max_compatible_family elements.
std::optional<std::vector<ElementIndex>> is_compatible_set(const Logic& logic,
                                                           std::span<const ElementIndex> elems,
                                                           const Limits& limits = {});

struct BooleanSublogic {
  /// Disjoint generators covering the ground set.
  std::vector<ElementIndex> blocks;
  /// All unions of blocks, sorted by element index.
  std::vector<ElementIndex> members;
  bool distributivity_checked = false;
};

/// The sublogic generated by a compatible set's partition, checked to be a
/// Boolean sublogic. nullopt iff the set is not compatible. Throws
/// TheoremViolation if a compatible set fails to produce one.
std::optional<BooleanSublogic> boolean_sublogic_containing(const Logic& logic,
                                                           std::span<const ElementIndex> elems,
                                                           const Limits& limits = {});

struct PastingReport {
  Side side = Side::Left;
  std::size_t element_count = 0;
  /// sum over inputs of (2^|U_a| - 2), plus 2
  std::size_t expected_count = 0;
  std::vector<std::size_t> block_sizes;
  /// Per input: outcome-subset bitmask -> element index in the single-box logic.
  std::vector<std::vector<ElementIndex>> isomorphism;
  bool blocks_boolean = true;
  bool blocks_intersect_trivially = true;
  bool cross_block_meet_join = true;
  bool orthomodular_lattice = true;
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct SingleBoxLogic {
  Logic logic;
  PastingReport report;
};

/// The logic of one box, built directly from the localized sets of that side
/// (not filtered out of the two-box logic), with its pasting checks.
SingleBoxLogic single_box_logic(const BoxWorldSpec& spec, Side side, const Limits& limits = {});

/// Every element of the single-box logic is a member of `logic`.
CheckResult embeds_in(const SingleBoxLogic& box, const Logic& logic);

/// Exhaustive checks over all localized elements of a box-world logic:
/// cross-side compatibility with the explicit witness, same-side
/// compatibility iff same input, the meet/join table for same-side pairs, the
/// distributivity counterexample certifying incompatibility, and set
/// compatibility of pairwise compatible localized families.
std::vector<CheckResult> verify_localized_propositions(const Logic& logic);

}  // namespace boxlogic
