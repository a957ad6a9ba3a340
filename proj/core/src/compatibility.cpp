#include <boxlogic/compatibility.hpp>

#include <boxlogic/errors.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace boxlogic {

namespace {

std::string pair_text(const Logic& logic, ElementIndex p, ElementIndex q) {
  return "(" + describe(logic, p) + ", " + describe(logic, q) + ")";
}

const GammaIndex& require_gamma(const Logic& logic) {
  if (logic.gamma() == nullptr) throw InvalidInput("operation needs a box-world logic");
  return *logic.gamma();
}

/// Union of atoms [a alpha, b beta] over the given outcome lists.
PointSet atom_block(const GammaIndex& gamma, std::size_t a, const std::vector<std::size_t>& alphas,
                    std::size_t b, const std::vector<std::size_t>& betas) {
  PointSet s = gamma.empty();
  for (auto alpha : alphas)
    for (auto beta : betas) s |= make_atom(gamma, {a, alpha, b, beta});
  return s;
}

/// Groups the outcomes in the union of `sets` by which sets contain them.
std::vector<std::vector<std::size_t>> refine(const std::vector<std::vector<std::size_t>>& sets) {
  std::map<std::vector<bool>, std::vector<std::size_t>> cells;
  std::set<std::size_t> all;
  for (const auto& s : sets) all.insert(s.begin(), s.end());
  for (auto o : all) {
    std::vector<bool> sig;
    for (const auto& s : sets) sig.push_back(std::find(s.begin(), s.end(), o) != s.end());
    cells[sig].push_back(o);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [sig, outcomes] : cells) out.push_back(std::move(outcomes));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> set_minus(std::size_t count, const std::vector<std::size_t>& taken) {
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o < count; ++o) {
    if (std::find(taken.begin(), taken.end(), o) == taken.end()) out.push_back(o);
  }
  return out;
}

std::vector<std::size_t> flatten(const std::vector<std::vector<std::size_t>>& parts) {
  std::vector<std::size_t> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// G is mutually disjoint and every element is the union of the members of G
/// it contains.
bool is_valid_partition(const std::vector<PointSet>& g, std::span<const PointSet> elems) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g[i].intersects(g[j])) return false;
  for (const auto& e : elems) {
    PointSet acc(e.size());
    for (const auto& piece : g) {
      if (piece.is_subset_of(e)) acc |= piece;
    }
    if (acc != e) return false;
  }
  return true;
}

struct LocalizedElement {
  LocalizedSpec spec;
  ElementIndex index = 0;
};

std::vector<LocalizedElement> all_localized(const Logic& logic, Side side, bool include_full) {
  const auto& gamma = require_gamma(logic);
  std::vector<LocalizedElement> out;
  for (std::size_t input = 0; input < gamma.spec().inputs(side); ++input) {
    for (auto& outcomes : outcome_subsets(gamma.spec().outcomes(side, input), include_full)) {
      LocalizedSpec spec{side, input, std::move(outcomes)};
      const auto idx = logic.find(make_localized(gamma, spec));
      if (!idx) throw TheoremViolation("localized element missing from the logic");
      out.push_back({std::move(spec), *idx});
    }
  }
  return out;
}

}  // namespace

std::optional<CompatibilityWitness> are_compatible(const Logic& logic, ElementIndex p,
                                                   ElementIndex q) {
  const auto& ep = logic.element(p);
  const auto& eq = logic.element(q);
  for (ElementIndex r = 0; r < logic.size(); ++r) {
    const auto& er = logic.element(r);
    if (!er.is_subset_of(ep) || !er.is_subset_of(eq)) continue;
    const PointSet p1 = ep - er;
    const PointSet q1 = eq - er;
    if (p1.intersects(q1)) continue;
    const auto ip = logic.find(p1);
    const auto iq = logic.find(q1);
    if (ip && iq) return CompatibilityWitness{*ip, *iq, r};
  }
  return std::nullopt;
}

std::vector<LocalizedSpec> localized_forms(const Logic& logic, ElementIndex i) {
  const auto& gamma = require_gamma(logic);
  const auto& e = logic.element(i);
  std::vector<LocalizedSpec> out;
  for (Side side : {Side::Left, Side::Right}) {
    for (std::size_t input = 0; input < gamma.spec().inputs(side); ++input) {
      LocalizedSpec form{side, input, {}};
      PointSet acc = gamma.empty();
      for (std::size_t o = 0; o < gamma.spec().outcomes(side, input); ++o) {
        const PointSet piece = make_localized(gamma, side, input, o);
        if (piece.is_subset_of(e)) {
          form.outcomes.push_back(o);
          acc |= piece;
        }
      }
      if (!form.outcomes.empty() && acc == e) out.push_back(std::move(form));
    }
  }
  return out;
}

std::optional<std::vector<PointSet>> localized_partition(const GammaIndex& gamma,
                                                         std::span<const LocalizedSpec> family) {
  std::optional<std::size_t> a;
  std::optional<std::size_t> b;
  std::vector<std::vector<std::size_t>> ps;
  std::vector<std::vector<std::size_t>> qs;
  for (const auto& loc : family) {
    auto& input = loc.side == Side::Left ? a : b;
    if (input && *input != loc.input) return std::nullopt;
    input = loc.input;
    (loc.side == Side::Left ? ps : qs).push_back(loc.outcomes);
  }
  const std::size_t ia = a.value_or(0);
  const std::size_t ib = b.value_or(0);
  const auto p_cells = refine(ps);
  const auto q_cells = refine(qs);
  const auto p_rest = set_minus(gamma.spec().left_outcomes(ia), flatten(p_cells));
  const auto q_rest = set_minus(gamma.spec().right_outcomes(ib), flatten(q_cells));

  std::vector<PointSet> pieces;
  auto keep = [&](PointSet s) {
    if (s.any()) pieces.push_back(std::move(s));
  };
  for (const auto& pc : p_cells) keep(atom_block(gamma, ia, pc, ib, q_rest));
  for (const auto& qc : q_cells) keep(atom_block(gamma, ia, p_rest, ib, qc));
  for (const auto& pc : p_cells)
    for (const auto& qc : q_cells) keep(atom_block(gamma, ia, pc, ib, qc));
  return pieces;
}

std::optional<std::vector<ElementIndex>> is_compatible_set(const Logic& logic,
                                                           std::span<const ElementIndex> elems,
                                                           const Limits& limits) {
  if (elems.size() > limits.max_compatible_family) {
    throw CapExceeded("compatible-set search limited to " +
                      std::to_string(limits.max_compatible_family) + " elements");
  }
  for (auto e : elems) {
    if (e >= logic.size()) throw ForeignElement("element index out of range");
  }
  if (elems.empty()) return std::vector<ElementIndex>{};
  if (elems.size() == 1) {
    const auto dec = logic.canonical_decomposition(elems[0]);
    if (dec.empty() && logic.element(elems[0]).any()) return std::nullopt;
    std::vector<ElementIndex> g(dec.begin(), dec.end());
    return g;
  }

  std::vector<PointSet> sets;
  for (auto e : elems) sets.push_back(logic.element(e));

  auto to_indices = [&](const std::vector<PointSet>& pieces) -> std::optional<std::vector<ElementIndex>> {
    std::vector<ElementIndex> g;
    for (const auto& piece : pieces) {
      const auto idx = logic.find(piece);
      if (!idx) return std::nullopt;
      g.push_back(*idx);
    }
    std::sort(g.begin(), g.end());
    return g;
  };

  // Localized fast path.
  if (const GammaIndex* gamma = logic.gamma()) {
    std::vector<LocalizedSpec> family;
    std::optional<std::size_t> left_input;
    std::optional<std::size_t> right_input;
    bool localized = true;
    std::vector<ElementIndex> tops;
    for (auto e : elems) {
      if (logic.element(e).none()) continue;
      if (logic.element(e).all()) {
        tops.push_back(e);
        continue;
      }
      const auto forms = localized_forms(logic, e);
      if (forms.size() != 1) {
        localized = false;
        break;
      }
      auto& input = forms[0].side == Side::Left ? left_input : right_input;
      if (input && *input != forms[0].input) {
        localized = false;
        break;
      }
      input = forms[0].input;
      family.push_back(forms[0]);
    }
    if (localized) {
      if (!tops.empty()) {
        const std::size_t a = left_input.value_or(0);
        std::vector<std::size_t> all(gamma->spec().left_outcomes(a));
        for (std::size_t o = 0; o < all.size(); ++o) all[o] = o;
        family.push_back({Side::Left, a, std::move(all)});
      }
      if (auto pieces = localized_partition(*gamma, family);
          pieces && is_valid_partition(*pieces, sets)) {
        if (auto g = to_indices(*pieces)) return g;
      }
    }
  }

  // Cells of the family.
  std::map<std::vector<bool>, PointSet> cells;
  PointSet covered(logic.ground_size());
  for (const auto& s : sets) covered |= s;
  covered.for_each([&](std::size_t point) {
    std::vector<bool> sig;
    sig.reserve(sets.size());
    for (const auto& s : sets) sig.push_back(s.test(point));
    auto [it, inserted] = cells.try_emplace(std::move(sig), logic.ground_size());
    it->second.set(point);
  });
  std::vector<PointSet> pieces;
  for (auto& [sig, cell] : cells) pieces.push_back(std::move(cell));
  return to_indices(pieces);
}

std::optional<BooleanSublogic> boolean_sublogic_containing(const Logic& logic,
                                                           std::span<const ElementIndex> elems,
                                                           const Limits& limits) {
  const auto g = is_compatible_set(logic, elems, limits);
  if (!g) return std::nullopt;

  BooleanSublogic out;
  out.blocks = *g;
  PointSet covered(logic.ground_size());
  for (auto i : out.blocks) covered |= logic.element(i);
  const PointSet rest = covered.complement();
  if (rest.any()) {
    const auto r = logic.find(rest);
    if (!r) throw TheoremViolation("complement of a disjoint union is missing from the logic");
    out.blocks.push_back(*r);
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  if (out.blocks.size() > 16) throw CapExceeded("Boolean sublogic with more than 2^16 members");

  const std::size_t count = std::size_t{1} << out.blocks.size();
  std::vector<PointSet> sets;
  sets.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    PointSet s(logic.ground_size());
    for (std::size_t k = 0; k < out.blocks.size(); ++k) {
      if ((mask >> k) & 1) s |= logic.element(out.blocks[k]);
    }
    const auto idx = logic.find(s);
    if (!idx) throw TheoremViolation("union of compatible blocks is missing from the logic");
    out.members.push_back(*idx);
    sets.push_back(std::move(s));
  }

  // Members are indexed by block bitmask, so set operations are bit operations
  // on the mask; check the members really behave that way.
  const std::size_t full = count - 1;
  for (std::size_t m = 0; m < count; ++m) {
    if (logic.complement_of(out.members[m]) != out.members[full & ~m]) {
      throw TheoremViolation("Boolean sublogic not closed under complement");
    }
    for (std::size_t k = 0; k < count; ++k) {
      if ((sets[m] | sets[k]) != sets[m | k] || (sets[m] & sets[k]) != sets[m & k]) {
        throw TheoremViolation("Boolean sublogic not closed under union/intersection");
      }
    }
  }
  if (count <= 64) {
    for (std::size_t p = 0; p < count; ++p)
      for (std::size_t q = 0; q < count; ++q)
        for (std::size_t r = 0; r < count; ++r) {
          if ((sets[p] | (sets[q] & sets[r])) != ((sets[p] | sets[q]) & (sets[p] | sets[r]))) {
            throw TheoremViolation("Boolean sublogic is not distributive");
          }
        }
    out.distributivity_checked = true;
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

bool PastingReport::passed() const {
  return element_count == expected_count && blocks_boolean && blocks_intersect_trivially &&
         cross_block_meet_join && orthomodular_lattice && all_passed(checks);
}

SingleBoxLogic single_box_logic(const BoxWorldSpec& spec, Side side, const Limits& limits) {
  const GammaIndex gamma = build_gamma(spec, limits);
  const std::size_t inputs = spec.inputs(side);

  std::vector<PointSet> family{gamma.empty(), gamma.full()};
  std::size_t expected = 2;
  for (std::size_t input = 0; input < inputs; ++input) {
    const std::size_t n = spec.outcomes(side, input);
    if (n >= 20) throw CapExceeded("too many outcomes for a single-box logic");
    expected += (std::size_t{1} << n) - 2;
    for (auto& outcomes : outcome_subsets(n, false)) {
      family.push_back(make_localized(gamma, {side, input, std::move(outcomes)}));
    }
  }

  SingleBoxLogic box{Logic::from_family(gamma.gamma_size(), std::move(family)), {}};
  const Logic& logic = box.logic;
  PastingReport& report = box.report;
  report.side = side;
  report.element_count = logic.size();
  report.expected_count = expected;

  const ElementIndex zero = *logic.zero();
  const ElementIndex one = *logic.one();
  for (std::size_t input = 0; input < inputs; ++input) {
    const std::size_t n = spec.outcomes(side, input);
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<ElementIndex> iso(full + 1);
    for (std::size_t mask = 0; mask <= full; ++mask) {
      std::vector<std::size_t> outcomes;
      for (std::size_t o = 0; o < n; ++o) {
        if ((mask >> o) & 1) outcomes.push_back(o);
      }
      iso[mask] = mask == 0 ? zero : logic.require(make_localized(gamma, {side, input, outcomes}));
    }
    std::set<ElementIndex> distinct(iso.begin(), iso.end());
    report.block_sizes.push_back(distinct.size());
    if (distinct.size() != iso.size()) report.blocks_boolean = false;
    for (std::size_t m = 0; m <= full && report.blocks_boolean; ++m) {
      if (logic.complement_of(iso[m]) != iso[full & ~m]) report.blocks_boolean = false;
      for (std::size_t k = 0; k <= full; ++k) {
        if (meet(logic, iso[m], iso[k]) != iso[m & k] || join(logic, iso[m], iso[k]) != iso[m | k]) {
          report.blocks_boolean = false;
          break;
        }
      }
    }
    report.isomorphism.push_back(std::move(iso));
  }

  for (std::size_t a = 0; a < inputs; ++a) {
    for (std::size_t c = a + 1; c < inputs; ++c) {
      const auto& ia = report.isomorphism[a];
      const auto& ic = report.isomorphism[c];
      for (std::size_t m = 1; m + 1 < ia.size(); ++m) {
        for (std::size_t k = 1; k + 1 < ic.size(); ++k) {
          if (ia[m] == ic[k]) report.blocks_intersect_trivially = false;
          if (meet(logic, ia[m], ic[k]) != zero || join(logic, ia[m], ic[k]) != one) {
            report.cross_block_meet_join = false;
          }
        }
      }
    }
  }

  report.checks = verify_axioms(logic);
  const bool lattice = is_lattice(logic);
  report.orthomodular_lattice = lattice;
  for (const auto& c : report.checks) {
    if (c.name.starts_with("L") && !c.passed) report.orthomodular_lattice = false;
  }
  return box;
}

CheckResult embeds_in(const SingleBoxLogic& box, const Logic& logic) {
  CheckResult out("single_box_embedding");
  for (const auto& e : box.logic.elements()) {
    ++out.checked;
    if (!logic.contains(e)) out.fail("element " + e.to_hex() + " missing from the two-box logic");
  }
  return out;
}

std::vector<CheckResult> verify_localized_propositions(const Logic& logic) {
  const auto& gamma = require_gamma(logic);
  const auto& spec = gamma.spec();
  std::vector<CheckResult> out;

  const auto left_all = all_localized(logic, Side::Left, true);
  const auto right_all = all_localized(logic, Side::Right, true);

  {
    CheckResult cross("cross_side_compatibility");
    for (const auto& p : left_all) {
      for (const auto& q : right_all) {
        ++cross.checked;
        const std::size_t a = p.spec.input;
        const std::size_t b = q.spec.input;
        const auto p_out = p.spec.outcomes;
        const auto q_out = q.spec.outcomes;
        const auto not_q = set_minus(spec.right_outcomes(b), q_out);
        const auto not_p = set_minus(spec.left_outcomes(a), p_out);
        const auto p1 = logic.find(atom_block(gamma, a, p_out, b, not_q));
        const auto q1 = logic.find(atom_block(gamma, a, not_p, b, q_out));
        const auto r = logic.find(atom_block(gamma, a, p_out, b, q_out));
        const auto w = are_compatible(logic, p.index, q.index);
        if (!p1 || !q1 || !r) {
          cross.fail("explicit witness pieces missing for " + pair_text(logic, p.index, q.index));
        } else if (!w) {
          cross.fail("incompatible cross-side pair " + pair_text(logic, p.index, q.index));
        } else if (!(*w == CompatibilityWitness{*p1, *q1, *r})) {
          cross.fail("witness differs from the explicit one for " + pair_text(logic, p.index, q.index));
        }
      }
    }
    out.push_back(std::move(cross));
  }

  CheckResult same("same_side_compatibility");
  CheckResult table("localized_meet_join");
  CheckResult certificate("incompatibility_certificate");
  same.note("scope", "non-empty proper outcome subsets");
  const ElementIndex zero = *logic.zero();
  const ElementIndex one = *logic.one();
  for (Side side : {Side::Left, Side::Right}) {
    const auto& all = side == Side::Left ? left_all : right_all;
    for (const auto& p : all) {
      for (const auto& q : all) {
        const bool p_proper = p.spec.outcomes.size() < spec.outcomes(side, p.spec.input);
        const bool q_proper = q.spec.outcomes.size() < spec.outcomes(side, q.spec.input);
        const bool same_input = p.spec.input == q.spec.input;
        if (p_proper && q_proper) {
          ++same.checked;
          const bool compatible = are_compatible(logic, p.index, q.index).has_value();
          if (compatible != same_input) {
            same.fail("compatibility " + std::string(compatible ? "holds" : "fails") +
                      " for " + pair_text(logic, p.index, q.index));
          }
        }

        if (same_input) {
          ++table.checked;
          std::vector<std::size_t> inter;
          std::vector<std::size_t> uni;
          std::set_intersection(p.spec.outcomes.begin(), p.spec.outcomes.end(), q.spec.outcomes.begin(),
                                q.spec.outcomes.end(), std::back_inserter(inter));
          std::set_union(p.spec.outcomes.begin(), p.spec.outcomes.end(), q.spec.outcomes.begin(),
                         q.spec.outcomes.end(), std::back_inserter(uni));
          const ElementIndex want_meet =
              inter.empty() ? zero : logic.require(make_localized(gamma, {side, p.spec.input, inter}));
          const ElementIndex want_join = logic.require(make_localized(gamma, {side, p.spec.input, uni}));
          if (meet(logic, p.index, q.index) != want_meet || join(logic, p.index, q.index) != want_join) {
            table.fail("same-input meet/join mismatch for " + pair_text(logic, p.index, q.index));
          }
        } else if (p_proper && q_proper) {
          ++table.checked;
          if (meet(logic, p.index, q.index) != zero || join(logic, p.index, q.index) != one) {
            table.fail("cross-input meet/join not 0/1 for " + pair_text(logic, p.index, q.index));
          }
          ++certificate.checked;
          const auto pc = *logic.complement_of(p.index);
          const auto m = meet(logic, pc, q.index);
          const auto lhs = m ? join(logic, p.index, *m) : std::nullopt;
          const auto j1 = join(logic, p.index, pc);
          const auto j2 = join(logic, p.index, q.index);
          const auto rhs = (j1 && j2) ? meet(logic, *j1, *j2) : std::nullopt;
          if (lhs != p.index || rhs != one) {
            certificate.fail("distributivity counterexample not reproduced for " +
                             pair_text(logic, p.index, q.index));
          }
        }
      }
    }
  }
  out.push_back(std::move(same));
  out.push_back(std::move(table));
  out.push_back(std::move(certificate));

  {
    CheckResult families("compatible_localized_families");
    std::size_t skipped = 0;
    for (std::size_t a = 0; a < spec.left_inputs(); ++a) {
      for (std::size_t b = 0; b < spec.right_inputs(); ++b) {
        std::vector<const LocalizedElement*> pool;
        for (const auto& p : left_all) {
          if (p.spec.input == a) pool.push_back(&p);
        }
        for (const auto& q : right_all) {
          if (q.spec.input == b) pool.push_back(&q);
        }
        if (pool.size() > 20) {
          ++skipped;
          continue;
        }
        for (std::size_t mask = 1; mask < (std::size_t{1} << pool.size()); ++mask) {
          std::vector<LocalizedSpec> family;
          std::vector<PointSet> sets;
          for (std::size_t k = 0; k < pool.size(); ++k) {
            if ((mask >> k) & 1) {
              family.push_back(pool[k]->spec);
              sets.push_back(logic.element(pool[k]->index));
            }
          }
          ++families.checked;
          const auto pieces = localized_partition(gamma, family);
          bool ok = pieces && is_valid_partition(*pieces, sets);
          if (ok) {
            for (const auto& piece : *pieces) ok = ok && logic.contains(piece);
          }
          if (!ok) families.fail("no constructive partition for family mask " + std::to_string(mask) +
                                 " on inputs (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        }
      }
    }
    if (skipped > 0) families.note("skipped_input_pairs", std::to_string(skipped));
    families.note("pairwise_compatibility", "covered by cross_side and same_side checks");
    out.push_back(std::move(families));
  }
  return out;
}

}  // namespace boxlogic
