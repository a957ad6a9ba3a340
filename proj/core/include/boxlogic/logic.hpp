#pragma once

#include <boxlogic/point_set.hpp>
#include <boxlogic/rational.hpp>
#include <boxlogic/report.hpp>
#include <boxlogic/scenario.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace boxlogic {

using ElementIndex = std::size_t;

/// A finite concrete logic: a family of subsets of a ground set, ordered by
/// inclusion, with set complement as orthocomplement.
///
/// Element table order: the empty set first, the ground set second (when
/// present), then everything else by canonical_less. The table itself makes
/// no closure promises; verify_axioms reports on those. Immutable once built.
class Logic {
 public:
  static constexpr ElementIndex npos = static_cast<ElementIndex>(-1);

  Logic() = default;

  /// Table over an arbitrary family. Duplicates are dropped. Atoms are the
  /// minimal non-empty members, in table order.
  static Logic from_family(std::size_t ground_size, std::vector<PointSet> family);

  /// Same as from_family, but remembers the box-world scenario and uses the
  /// sets [a alpha, b beta] (in AtomId order) as the atom list. Throws
  /// TheoremViolation if one of them is missing from the family.
  static Logic from_box_family(const GammaIndex& gamma, std::vector<PointSet> family);

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t ground_size() const noexcept { return ground_size_; }

  const PointSet& element(ElementIndex i) const { return elements_.at(i); }
  std::span<const PointSet> elements() const noexcept { return elements_; }

  std::optional<ElementIndex> find(const PointSet& s) const;
  bool contains(const PointSet& s) const { return find(s).has_value(); }
  /// Throws ForeignElement when `s` is not in the table.
  ElementIndex require(const PointSet& s) const;

  std::optional<ElementIndex> complement_of(ElementIndex i) const;
  std::optional<ElementIndex> zero() const;
  std::optional<ElementIndex> one() const;

  bool leq(ElementIndex p, ElementIndex q) const {
    return elements_[p].is_subset_of(elements_[q]);
  }
  /// p <= q^perp, i.e. the sets are disjoint.
  bool orthogonal(ElementIndex p, ElementIndex q) const {
    return elements_[p].disjoint(elements_[q]);
  }

  /// Atoms in atom order (AtomId order for box-world logics).
  std::span<const ElementIndex> atoms() const noexcept { return atoms_; }
  bool is_atom(ElementIndex i) const;

  /// Lexicographically least (in atom order) list of pairwise-disjoint atoms
  /// whose union is element i. Empty for the empty set, and also empty for a
  /// non-empty element with no atomic decomposition.
  std::span<const ElementIndex> canonical_decomposition(ElementIndex i) const {
    return decompositions_.at(i);
  }

  // Box-world provenance. gamma() is null for abstract families.
  const GammaIndex* gamma() const noexcept { return gamma_ ? &*gamma_ : nullptr; }
  /// Parallel to atoms(); empty for abstract families.
  std::span<const AtomId> atom_ids() const noexcept { return atom_ids_; }
  /// Element index of [a alpha, b beta].
  ElementIndex atom_element(const AtomId& id) const;
  /// Position of an atom element in atoms(), or npos.
  std::size_t atom_position(ElementIndex i) const;

 private:
  void index_elements();
  void compute_decompositions();

  std::size_t ground_size_ = 0;
  std::vector<PointSet> elements_;
  std::unordered_map<PointSet, ElementIndex, PointSetHash> index_;
  std::vector<ElementIndex> complement_;
  std::vector<ElementIndex> atoms_;
  std::vector<std::size_t> atom_position_;
  std::vector<std::vector<ElementIndex>> decompositions_;
  std::optional<GammaIndex> gamma_;
  std::vector<AtomId> atom_ids_;
};

/// Smallest family containing the generators, the empty set and the ground
/// set that is closed under complement and under unions of disjoint members.
///
/// Runs the two rules to a fixpoint: each pass pairs only the elements added
/// in the previous pass with everything known so far. Throws
/// ClosureBudgetExceeded once the family grows past limits.max_closure.
std::vector<PointSet> close_family(std::size_t ground_size, std::vector<PointSet> generators,
                                   const Limits& limits = {});

/// The logic of the scenario: closure of all atoms [a alpha, b beta].
Logic close_logic(const BoxWorldSpec& spec, const Limits& limits = {});
Logic close_logic(const GammaIndex& gamma, const Limits& limits = {});

// Poset operations. Meet and join are taken over the table, not as set
// operations: nullopt means the bounds have no greatest (least) element.
bool leq(const Logic& logic, ElementIndex p, ElementIndex q);
std::optional<ElementIndex> meet(const Logic& logic, ElementIndex p, ElementIndex q);
std::optional<ElementIndex> join(const Logic& logic, ElementIndex p, ElementIndex q);
bool leq(const Logic& logic, const PointSet& p, const PointSet& q);
std::optional<PointSet> meet(const Logic& logic, const PointSet& p, const PointSet& q);
std::optional<PointSet> join(const Logic& logic, const PointSet& p, const PointSet& q);

using Decomposition = std::vector<ElementIndex>;

/// Every partition of element p into pairwise-disjoint atoms, each listed in
/// atom order, the whole list sorted lexicographically. Empty for the empty
/// set. Throws CapExceeded past `max_count` decompositions.
std::vector<Decomposition> atomic_decompositions(const Logic& logic, ElementIndex p,
                                                 std::size_t max_count = 1'000'000);
/// Number of atomic decompositions of every element, by dynamic programming
/// over the lowest point of each element.
std::vector<Integer> count_decompositions(const Logic& logic);

enum class OrderCase {
  AtomPlusRest,    // q = p (+) q'
  LeftLocalized,   // q = [a alpha, 1] (+) q'
  RightLocalized,  // q = [1, b beta] (+) q'
  Top,             // q = 1
};

std::string_view to_string(OrderCase c) noexcept;

struct OrderClassification {
  OrderCase kind = OrderCase::AtomPlusRest;
  ElementIndex remainder = 0;
};

/// Which of the four shapes an element above atom p takes, checked in the
/// order Top, LeftLocalized, RightLocalized, AtomPlusRest. The remainder is
/// a member of the logic disjoint from the extracted part.
/// Throws InvalidInput (not above) if p is not below q, TheoremViolation if
/// no shape fits.
OrderClassification classify_above_atom(const Logic& logic, const AtomId& p, ElementIndex q);
/// Rebuilds q from a classification.
PointSet reconstruct(const Logic& logic, const AtomId& p, const OrderClassification& c);

struct LatticeCheck {
  bool is_lattice = true;
  /// First pair lacking a meet or a join, with which one failed.
  std::optional<std::pair<ElementIndex, ElementIndex>> witness;
  bool missing_join = false;
};

/// Every pair has a meet and a join. Stops at the first failing pair.
LatticeCheck check_lattice(const Logic& logic);
bool is_lattice(const Logic& logic);
/// Lattice plus p v (q ^ r) = (p v q) ^ (p v r) over all triples. Throws
/// CapExceeded above `max_elements` when the lattice test passes.
bool is_boolean(const Logic& logic, std::size_t max_elements = 512);

/// Covering pairs (lower, upper) of the inclusion order, sorted.
std::vector<std::pair<ElementIndex, ElementIndex>> hasse_covers(const Logic& logic);

/// L1-L5 and C1-C3, each checked exhaustively. Families in L4/C3 are checked
/// pairwise; for a finite table closure under pairwise disjoint unions
/// reaches every finite disjoint family by chaining, and the report says so.
std::vector<CheckResult> verify_axioms(const Logic& logic);

/// Every non-empty element equals the union of its canonical decomposition.
/// Also records (without judging) whether every disjoint union of atoms is
/// in the table.
CheckResult verify_observation(const Logic& logic, const Limits& limits = {});

/// classify_above_atom succeeds with exact reconstruction for every atom p
/// and every element q containing it. Box-world logics only.
CheckResult verify_order_lemma(const Logic& logic);

struct EvenSetLogic {
  std::size_t k = 0;
  Logic logic;
};

/// All even-cardinality subsets of a 2k-point set. Requires 1 <= k <= 6.
EvenSetLogic even_set_logic(std::size_t k);

/// Short human-readable name of an element: "#index:hex".
std::string describe(const Logic& logic, ElementIndex i);

}  // namespace boxlogic
