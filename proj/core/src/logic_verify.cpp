#include <boxlogic/logic.hpp>

#include <boxlogic/errors.hpp>

#include <algorithm>
#include <map>
#include <unordered_set>

namespace boxlogic {

namespace {

std::string pair_text(const Logic& logic, ElementIndex p, ElementIndex q) {
  return "(" + describe(logic, p) + ", " + describe(logic, q) + ")";
}

}  // namespace

std::vector<CheckResult> verify_axioms(const Logic& logic) {
  const std::size_t n = logic.size();
  std::vector<CheckResult> out;

  {
    CheckResult l1("L1");
    if (n == 0) {
      l1.fail("empty table");
    } else {
      auto by_count = [&](ElementIndex a, ElementIndex b) {
        return logic.element(a).count() < logic.element(b).count();
      };
      std::vector<ElementIndex> all(n);
      for (ElementIndex i = 0; i < n; ++i) all[i] = i;
      const auto least = *std::min_element(all.begin(), all.end(), by_count);
      const auto greatest = *std::max_element(all.begin(), all.end(), by_count);
      for (ElementIndex i = 0; i < n; ++i) {
        ++l1.checked;
        if (!logic.leq(least, i)) l1.fail("no least element: " + pair_text(logic, least, i));
        if (!logic.leq(i, greatest)) l1.fail("no greatest element: " + pair_text(logic, i, greatest));
      }
      l1.note("least", describe(logic, least));
      l1.note("greatest", describe(logic, greatest));
    }
    out.push_back(std::move(l1));
  }

  CheckResult l2("L2");
  CheckResult l5("L5");
  for (ElementIndex p = 0; p < n; ++p) {
    for (ElementIndex q = 0; q < n; ++q) {
      if (!logic.leq(p, q)) continue;
      ++l2.checked;
      ++l5.checked;
      const auto cp = logic.complement_of(p);
      const auto cq = logic.complement_of(q);
      if (!cp || !cq) {
        l2.fail("missing orthocomplement in pair " + pair_text(logic, p, q));
        l5.fail("missing orthocomplement in pair " + pair_text(logic, p, q));
        continue;
      }
      if (!logic.leq(*cq, *cp)) l2.fail("complement not order reversing on " + pair_text(logic, p, q));
      const auto m = meet(logic, q, *cp);
      const auto j = m ? join(logic, p, *m) : std::nullopt;
      if (!j || *j != q) l5.fail("orthomodular law fails on " + pair_text(logic, p, q));
    }
  }
  out.push_back(std::move(l2));

  {
    CheckResult l3("L3");
    for (ElementIndex p = 0; p < n; ++p) {
      ++l3.checked;
      const auto c = logic.complement_of(p);
      if (!c) {
        l3.fail("no orthocomplement for " + describe(logic, p));
      } else if (logic.complement_of(*c) != p) {
        l3.fail("complement not involutive at " + describe(logic, p));
      }
    }
    out.push_back(std::move(l3));
  }

  CheckResult l4("L4");
  CheckResult c3("C3");
  for (ElementIndex p = 0; p < n; ++p) {
    for (ElementIndex q = p; q < n; ++q) {
      if (!logic.orthogonal(p, q)) continue;
      ++l4.checked;
      ++c3.checked;
      if (!join(logic, p, q)) l4.fail("disjoint pair without supremum " + pair_text(logic, p, q));
      if (!logic.contains(logic.element(p) | logic.element(q))) {
        c3.fail("union of disjoint pair missing " + pair_text(logic, p, q));
      }
    }
  }
  const std::string reduction =
      "pairwise; longer finite disjoint families reduce to chained pairwise unions";
  l4.note("family_reduction", reduction);
  c3.note("family_reduction", reduction);
  out.push_back(std::move(l4));
  out.push_back(std::move(l5));

  {
    CheckResult c1("C1");
    c1.checked = 1;
    if (!logic.contains(PointSet(logic.ground_size()))) c1.fail("empty set missing");
    out.push_back(std::move(c1));
  }
  {
    CheckResult c2("C2");
    for (ElementIndex p = 0; p < n; ++p) {
      ++c2.checked;
      if (!logic.contains(logic.element(p).complement())) {
        c2.fail("set complement of " + describe(logic, p) + " missing");
      }
    }
    out.push_back(std::move(c2));
  }
  out.push_back(std::move(c3));
  return out;
}

CheckResult verify_observation(const Logic& logic, const Limits& limits) {
  CheckResult out("observation");
  for (ElementIndex i = 0; i < logic.size(); ++i) {
    const auto& e = logic.element(i);
    if (e.none()) continue;
    ++out.checked;
    const auto dec = logic.canonical_decomposition(i);
    if (dec.empty()) {
      out.fail(describe(logic, i) + " has no atomic decomposition");
      continue;
    }
    PointSet acc(logic.ground_size());
    bool disjoint = true;
    for (auto atom : dec) {
      if (acc.intersects(logic.element(atom))) disjoint = false;
      acc |= logic.element(atom);
    }
    if (!disjoint || acc != e) out.fail(describe(logic, i) + " decomposition does not partition it");
  }

  // Converse: is every disjoint union of atoms a member? Reported only.
  std::unordered_set<PointSet, PointSetHash> unions{PointSet(logic.ground_size())};
  bool capped = false;
  for (ElementIndex atom : logic.atoms()) {
    const auto& a = logic.element(atom);
    std::vector<PointSet> fresh;
    for (const auto& u : unions) {
      if (u.disjoint(a)) fresh.push_back(u | a);
    }
    for (auto& f : fresh) unions.insert(std::move(f));
    if (unions.size() > limits.max_closure) {
      capped = true;
      break;
    }
  }
  if (capped) {
    out.note("converse", "not evaluated (closure cap)");
  } else {
    const bool converse = std::all_of(unions.begin(), unions.end(),
                                      [&](const PointSet& u) { return logic.contains(u); });
    out.note("disjoint_unions_of_atoms", std::to_string(unions.size()));
    out.note("converse", converse ? "holds" : "fails");
  }
  return out;
}

CheckResult verify_order_lemma(const Logic& logic) {
  CheckResult out("order_lemma");
  if (logic.gamma() == nullptr) {
    out.fail("not a box-world logic");
    return out;
  }
  std::map<OrderCase, std::size_t> tally;
  for (const auto& id : logic.atom_ids()) {
    const ElementIndex atom = logic.atom_element(id);
    for (ElementIndex q = 0; q < logic.size(); ++q) {
      if (!logic.leq(atom, q)) continue;
      ++out.checked;
      try {
        const auto c = classify_above_atom(logic, id, q);
        if (reconstruct(logic, id, c) != logic.element(q)) {
          out.fail("reconstruction mismatch for " + pair_text(logic, atom, q));
        } else {
          const PointSet part = reconstruct(logic, id, {c.kind, *logic.zero()});
          if (part.intersects(logic.element(c.remainder))) {
            out.fail("remainder overlaps extracted part for " + pair_text(logic, atom, q));
          }
        }
        ++tally[c.kind];
      } catch (const TheoremViolation& e) {
        out.fail(e.what());
      }
    }
  }
  for (const auto& [kind, count] : tally) out.note(std::string(to_string(kind)), std::to_string(count));
  return out;
}

}  // namespace boxlogic
