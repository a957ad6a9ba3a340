#pragma once

#include <boxlogic/logic.hpp>
#include <boxlogic/report.hpp>
#include <boxlogic/states.hpp>

#include <span>
#include <string>
#include <vector>

namespace boxlogic {

/// {x : equalities x = rhs, x >= 0} over the atom table entries.
struct HRepresentation {
  BoxWorldSpec spec;
  std::vector<AtomId> variables;
  std::vector<std::vector<Rational>> equalities;
  std::vector<Rational> rhs;
  std::vector<std::string> labels;

  std::size_t dimension() const noexcept { return variables.size(); }
  std::string to_json() const;
};

/// Normalization per input pair plus no-signalling equalities (every input
/// compared against input 0 on the other side). Throws CapExceeded above
/// limits.max_polytope_vars variables.
HRepresentation ns_polytope(const BoxWorldSpec& spec, const Limits& limits = {});

enum class AdjacencyTest {
  /// Rank of the constraints tight at both rays equals cone dimension - 2.
  Algebraic,
  /// No third ray is tight on every constraint tight at both.
  Combinatorial,
};

struct VertexEnumeration {
  /// Sorted lexicographically.
  std::vector<std::vector<Rational>> vertices;
  std::size_t affine_dimension = 0;
  std::size_t max_intermediate_rays = 0;
};

/// Exact double description: homogenize, parametrize the equality solution
/// space, start from a simplicial cone on the first independent
/// non-negativity rows and insert the remaining rows in index order.
VertexEnumeration enumerate_vertices(const HRepresentation& h,
                                     AdjacencyTest adjacency = AdjacencyTest::Algebraic);

/// Rank of {v - v0}.
std::size_t affine_dimension(std::span<const std::vector<Rational>> points);

/// Rank of a rational matrix (rows as vectors).
std::size_t matrix_rank(std::vector<std::vector<Rational>> rows);

bool is_deterministic(std::span<const Rational> vertex);

/// Every H-constraint holds exactly.
bool satisfies(const HRepresentation& h, std::span<const Rational> point);

PRState to_pr_state(const HRepresentation& h, std::span<const Rational> vertex);

/// Header "index,class,<variable names>", one row per vertex.
std::string vertices_csv(const HRepresentation& h, const VertexEnumeration& v);

/// For every pair p not below q, some state gives rho(p) > rho(q). Pairs with
/// p below q are skipped. The states are typically the polytope vertices: a
/// linear functional attains its maximum over the polytope at a vertex.
CheckResult check_order_determining(const Logic& logic, std::span<const LogicState> states);

}  // namespace boxlogic
