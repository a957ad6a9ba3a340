#include <boxlogic/logic.hpp>

#include <boxlogic/errors.hpp>

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace boxlogic {

namespace {

/// Empty set first, ground set second, everything else canonical.
bool table_less(const PointSet& a, const PointSet& b) {
  auto rank = [](const PointSet& s) { return s.none() ? 0 : s.all() ? 1 : 2; };
  const int ra = rank(a);
  const int rb = rank(b);
  if (ra != rb) return ra < rb;
  return canonical_less(a, b);
}

}  // namespace

Logic Logic::from_family(std::size_t ground_size, std::vector<PointSet> family) {
  for (const auto& s : family) {
    if (s.size() != ground_size) throw InvalidInput("family member has the wrong width");
  }
  std::sort(family.begin(), family.end(), table_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());

  Logic logic;
  logic.ground_size_ = ground_size;
  logic.elements_ = std::move(family);
  logic.index_elements();

  // Minimal non-empty members.
  const std::size_t n = logic.elements_.size();
  for (ElementIndex i = 0; i < n; ++i) {
    const auto& e = logic.elements_[i];
    if (e.none()) continue;
    bool minimal = true;
    for (ElementIndex j = 0; j < n && minimal; ++j) {
      const auto& f = logic.elements_[j];
      if (j != i && f.any() && f.count() < e.count() && f.is_subset_of(e)) minimal = false;
    }
    if (minimal) logic.atoms_.push_back(i);
  }
  logic.compute_decompositions();
  return logic;
}

Logic Logic::from_box_family(const GammaIndex& gamma, std::vector<PointSet> family) {
  for (const auto& s : family) {
    if (s.size() != gamma.gamma_size()) throw InvalidInput("family member has the wrong width");
  }
  std::sort(family.begin(), family.end(), table_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());

  Logic logic;
  logic.ground_size_ = gamma.gamma_size();
  logic.elements_ = std::move(family);
  logic.index_elements();
  logic.gamma_ = gamma;
  logic.atom_ids_ = gamma.atom_ids();
  for (const auto& id : logic.atom_ids_) {
    const auto idx = logic.find(make_atom(gamma, id));
    if (!idx) throw TheoremViolation("atom missing from box-world family");
    logic.atoms_.push_back(*idx);
  }
  logic.compute_decompositions();
  return logic;
}

void Logic::index_elements() {
  index_.clear();
  index_.reserve(elements_.size());
  for (ElementIndex i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  complement_.assign(elements_.size(), npos);
  for (ElementIndex i = 0; i < elements_.size(); ++i) {
    if (auto c = find(elements_[i].complement())) complement_[i] = *c;
  }
}

void Logic::compute_decompositions() {
  atom_position_.assign(elements_.size(), npos);
  for (std::size_t k = 0; k < atoms_.size(); ++k) atom_position_[atoms_[k]] = k;

  decompositions_.assign(elements_.size(), {});
  std::vector<ElementIndex> order(elements_.size());
  for (ElementIndex i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](ElementIndex a, ElementIndex b) {
    return elements_[a].count() < elements_[b].count();
  });

  // The least first atom whose removal leaves something decomposable starts
  // the lexicographically least decomposition; the rest recurses.
  for (ElementIndex e : order) {
    const auto& set = elements_[e];
    if (set.none()) continue;
    for (ElementIndex atom : atoms_) {
      const auto& a = elements_[atom];
      if (!a.is_subset_of(set)) continue;
      const PointSet rest = set - a;
      if (rest.none()) {
        decompositions_[e] = {atom};
        break;
      }
      const auto r = find(rest);
      if (r && !decompositions_[*r].empty()) {
        auto& d = decompositions_[e];
        d.reserve(decompositions_[*r].size() + 1);
        d.push_back(atom);
        d.insert(d.end(), decompositions_[*r].begin(), decompositions_[*r].end());
        break;
      }
    }
  }
}

std::optional<ElementIndex> Logic::find(const PointSet& s) const {
  if (s.size() != ground_size_) return std::nullopt;
  const auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementIndex Logic::require(const PointSet& s) const {
  if (auto i = find(s)) return *i;
  throw ForeignElement("element " + s.to_hex() + " is not a member of the logic");
}

std::optional<ElementIndex> Logic::complement_of(ElementIndex i) const {
  const auto c = complement_.at(i);
  if (c == npos) return std::nullopt;
  return c;
}

std::optional<ElementIndex> Logic::zero() const {
  if (!elements_.empty() && elements_[0].none()) return 0;
  return std::nullopt;
}

std::optional<ElementIndex> Logic::one() const {
  for (ElementIndex i = 0; i < std::min<std::size_t>(2, elements_.size()); ++i) {
    if (elements_[i].all()) return i;
  }
  return std::nullopt;
}

bool Logic::is_atom(ElementIndex i) const { return atom_position(i) != npos; }

ElementIndex Logic::atom_element(const AtomId& id) const {
  if (!gamma_) throw InvalidInput("not a box-world logic");
  const auto it = std::lower_bound(atom_ids_.begin(), atom_ids_.end(), id);
  if (it == atom_ids_.end() || *it != id) throw InvalidInput("atom index out of range");
  return atoms_[static_cast<std::size_t>(it - atom_ids_.begin())];
}

std::size_t Logic::atom_position(ElementIndex i) const { return atom_position_.at(i); }

std::vector<PointSet> close_family(std::size_t ground_size, std::vector<PointSet> generators,
                                   const Limits& limits) {
  std::vector<PointSet> all;
  std::unordered_set<PointSet, PointSetHash> seen;
  // Word copies of `all`, back to back, for the disjointness scan.
  const std::size_t width = PointSet(ground_size).words().size();
  std::vector<std::uint64_t> flat;

  auto add = [&](PointSet s) {
    if (seen.contains(s)) return;
    if (all.size() >= limits.max_closure) {
      throw ClosureBudgetExceeded("closure exceeded the cap of " +
                                  std::to_string(limits.max_closure) + " elements");
    }
    seen.insert(s);
    flat.insert(flat.end(), s.words().begin(), s.words().end());
    all.push_back(std::move(s));
  };
  auto disjoint = [&](std::size_t i, std::size_t j) {
    const std::uint64_t* a = flat.data() + i * width;
    const std::uint64_t* b = flat.data() + j * width;
    for (std::size_t w = 0; w < width; ++w) {
      if (a[w] & b[w]) return false;
    }
    return true;
  };

  add(PointSet(ground_size));
  add(PointSet::full(ground_size));
  for (auto& g : generators) {
    if (g.size() != ground_size) throw InvalidInput("generator has the wrong width");
    add(std::move(g));
  }

  std::size_t frontier_begin = 0;
  while (frontier_begin < all.size()) {
    const std::size_t frontier_end = all.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      add(all[i].complement());
      for (std::size_t j = 0; j < frontier_end; ++j) {
        if (disjoint(i, j)) add(all[i] | all[j]);
      }
    }
    frontier_begin = frontier_end;
  }
  return all;
}

Logic close_logic(const GammaIndex& gamma, const Limits& limits) {
  std::vector<PointSet> atoms;
  for (const auto& id : gamma.atom_ids()) atoms.push_back(make_atom(gamma, id));
  return Logic::from_box_family(gamma, close_family(gamma.gamma_size(), std::move(atoms), limits));
}

Logic close_logic(const BoxWorldSpec& spec, const Limits& limits) {
  return close_logic(build_gamma(spec, limits), limits);
}

bool leq(const Logic& logic, ElementIndex p, ElementIndex q) { return logic.leq(p, q); }

std::optional<ElementIndex> meet(const Logic& logic, ElementIndex p, ElementIndex q) {
  const PointSet common = logic.element(p) & logic.element(q);
  if (auto i = logic.find(common)) return i;
  std::vector<ElementIndex> lower;
  for (ElementIndex r = 0; r < logic.size(); ++r) {
    if (logic.element(r).is_subset_of(common)) lower.push_back(r);
  }
  if (lower.empty()) return std::nullopt;
  const auto best = *std::max_element(lower.begin(), lower.end(), [&](auto a, auto b) {
    return logic.element(a).count() < logic.element(b).count();
  });
  for (auto r : lower) {
    if (!logic.leq(r, best)) return std::nullopt;
  }
  return best;
}

std::optional<ElementIndex> join(const Logic& logic, ElementIndex p, ElementIndex q) {
  const PointSet both = logic.element(p) | logic.element(q);
  if (auto i = logic.find(both)) return i;
  std::vector<ElementIndex> upper;
  for (ElementIndex r = 0; r < logic.size(); ++r) {
    if (both.is_subset_of(logic.element(r))) upper.push_back(r);
  }
  if (upper.empty()) return std::nullopt;
  const auto best = *std::min_element(upper.begin(), upper.end(), [&](auto a, auto b) {
    return logic.element(a).count() < logic.element(b).count();
  });
  for (auto r : upper) {
    if (!logic.leq(best, r)) return std::nullopt;
  }
  return best;
}

bool leq(const Logic& logic, const PointSet& p, const PointSet& q) {
  return logic.leq(logic.require(p), logic.require(q));
}

std::optional<PointSet> meet(const Logic& logic, const PointSet& p, const PointSet& q) {
  if (auto m = meet(logic, logic.require(p), logic.require(q))) return logic.element(*m);
  return std::nullopt;
}

std::optional<PointSet> join(const Logic& logic, const PointSet& p, const PointSet& q) {
  if (auto j = join(logic, logic.require(p), logic.require(q))) return logic.element(*j);
  return std::nullopt;
}

std::vector<Decomposition> atomic_decompositions(const Logic& logic, ElementIndex p,
                                                 std::size_t max_count) {
  std::vector<Decomposition> out;
  Decomposition current;
  const auto atoms = logic.atoms();

  std::function<void(const PointSet&)> recurse = [&](const PointSet& rest) {
    const std::size_t low = rest.lowest();
    if (low == PointSet::npos) {
      if (out.size() >= max_count) {
        throw CapExceeded("more than " + std::to_string(max_count) + " atomic decompositions");
      }
      auto d = current;
      std::sort(d.begin(), d.end(), [&](auto a, auto b) {
        return logic.atom_position(a) < logic.atom_position(b);
      });
      out.push_back(std::move(d));
      return;
    }
    for (ElementIndex atom : atoms) {
      const auto& a = logic.element(atom);
      if (!a.test(low) || !a.is_subset_of(rest)) continue;
      current.push_back(atom);
      recurse(rest - a);
      current.pop_back();
    }
  };

  if (logic.element(p).any()) recurse(logic.element(p));
  std::sort(out.begin(), out.end(), [&](const Decomposition& x, const Decomposition& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [&](auto a, auto b) {
      return logic.atom_position(a) < logic.atom_position(b);
    });
  });
  return out;
}

std::vector<Integer> count_decompositions(const Logic& logic) {
  std::unordered_map<PointSet, Integer, PointSetHash> memo;
  const auto atoms = logic.atoms();

  std::function<Integer(const PointSet&)> count = [&](const PointSet& s) -> Integer {
    const std::size_t low = s.lowest();
    if (low == PointSet::npos) return Integer(1);
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    Integer total = 0;
    for (ElementIndex atom : atoms) {
      const auto& a = logic.element(atom);
      if (a.test(low) && a.is_subset_of(s)) total += count(s - a);
    }
    memo.emplace(s, total);
    return total;
  };

  std::vector<Integer> out;
  out.reserve(logic.size());
  for (ElementIndex i = 0; i < logic.size(); ++i) {
    out.push_back(logic.element(i).none() ? Integer(0) : count(logic.element(i)));
  }
  return out;
}

std::string_view to_string(OrderCase c) noexcept {
  switch (c) {
    case OrderCase::AtomPlusRest: return "atom_plus_rest";
    case OrderCase::LeftLocalized: return "left_localized";
    case OrderCase::RightLocalized: return "right_localized";
    case OrderCase::Top: return "top";
  }
  return "?";
}

OrderClassification classify_above_atom(const Logic& logic, const AtomId& p, ElementIndex q) {
  const GammaIndex* gamma = logic.gamma();
  if (gamma == nullptr) throw InvalidInput("classify_above_atom needs a box-world logic");
  const ElementIndex atom = logic.atom_element(p);
  if (!logic.leq(atom, q)) {
    throw InvalidInput("atom " + describe(logic, atom) + " is not below " + describe(logic, q));
  }
  const PointSet& upper = logic.element(q);
  if (upper.all()) return {OrderCase::Top, *logic.zero()};

  auto try_extract = [&](const PointSet& part) -> std::optional<ElementIndex> {
    if (!logic.contains(part) || !part.is_subset_of(upper)) return std::nullopt;
    return logic.find(upper - part);
  };
  if (auto r = try_extract(make_localized(*gamma, Side::Left, p.a, p.alpha))) {
    return {OrderCase::LeftLocalized, *r};
  }
  if (auto r = try_extract(make_localized(*gamma, Side::Right, p.b, p.beta))) {
    return {OrderCase::RightLocalized, *r};
  }
  if (auto r = try_extract(logic.element(atom))) return {OrderCase::AtomPlusRest, *r};
  throw TheoremViolation("no order case applies to atom " + describe(logic, atom) + " below " +
                         describe(logic, q));
}

PointSet reconstruct(const Logic& logic, const AtomId& p, const OrderClassification& c) {
  const GammaIndex* gamma = logic.gamma();
  if (gamma == nullptr) throw InvalidInput("reconstruct needs a box-world logic");
  PointSet part = gamma->empty();
  switch (c.kind) {
    case OrderCase::Top: part = gamma->full(); break;
    case OrderCase::LeftLocalized: part = make_localized(*gamma, Side::Left, p.a, p.alpha); break;
    case OrderCase::RightLocalized: part = make_localized(*gamma, Side::Right, p.b, p.beta); break;
    case OrderCase::AtomPlusRest: part = logic.element(logic.atom_element(p)); break;
  }
  return part | logic.element(c.remainder);
}

LatticeCheck check_lattice(const Logic& logic) {
  LatticeCheck out;
  for (ElementIndex p = 0; p < logic.size(); ++p) {
    for (ElementIndex q = p + 1; q < logic.size(); ++q) {
      if (logic.leq(p, q) || logic.leq(q, p)) continue;
      if (!meet(logic, p, q)) {
        out.is_lattice = false;
        out.witness = {p, q};
        return out;
      }
      if (!join(logic, p, q)) {
        out.is_lattice = false;
        out.witness = {p, q};
        out.missing_join = true;
        return out;
      }
    }
  }
  return out;
}

bool is_lattice(const Logic& logic) { return check_lattice(logic).is_lattice; }

bool is_boolean(const Logic& logic, std::size_t max_elements) {
  if (!is_lattice(logic)) return false;
  const std::size_t n = logic.size();
  if (n > max_elements) {
    throw CapExceeded("distributivity check limited to " + std::to_string(max_elements) +
                      " elements");
  }
  std::vector<ElementIndex> meets(n * n);
  std::vector<ElementIndex> joins(n * n);
  for (ElementIndex p = 0; p < n; ++p) {
    for (ElementIndex q = 0; q < n; ++q) {
      meets[p * n + q] = *meet(logic, p, q);
      joins[p * n + q] = *join(logic, p, q);
    }
  }
  for (ElementIndex p = 0; p < n; ++p)
    for (ElementIndex q = 0; q < n; ++q)
      for (ElementIndex r = 0; r < n; ++r) {
        const auto lhs = joins[p * n + meets[q * n + r]];
        const auto rhs = meets[joins[p * n + q] * n + joins[p * n + r]];
        if (lhs != rhs) return false;
      }
  return true;
}

std::vector<std::pair<ElementIndex, ElementIndex>> hasse_covers(const Logic& logic) {
  std::vector<std::pair<ElementIndex, ElementIndex>> covers;
  std::vector<ElementIndex> below;
  std::vector<ElementIndex> found;
  for (ElementIndex upper = 0; upper < logic.size(); ++upper) {
    below.clear();
    found.clear();
    const auto& u = logic.element(upper);
    for (ElementIndex s = 0; s < logic.size(); ++s) {
      if (s != upper && logic.element(s).is_subset_of(u)) below.push_back(s);
    }
    std::stable_sort(below.begin(), below.end(), [&](auto a, auto b) {
      return logic.element(a).count() > logic.element(b).count();
    });
    // Every strict lower bound sits under some cover, so checking against the
    // covers found so far is enough.
    for (ElementIndex s : below) {
      const auto& e = logic.element(s);
      const bool covered = std::any_of(found.begin(), found.end(), [&](ElementIndex c) {
        return e.is_subset_of(logic.element(c));
      });
      if (!covered) found.push_back(s);
    }
    for (ElementIndex s : found) covers.emplace_back(s, upper);
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

std::string describe(const Logic& logic, ElementIndex i) {
  return "#" + std::to_string(i) + ":" + logic.element(i).to_hex();
}

}  // namespace boxlogic
