#include <boxlogic/compatibility.hpp>
#include <boxlogic/errors.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace boxlogic;

namespace {

using Sizes = std::vector<std::size_t>;

std::vector<ElementIndex> localized_elements(const Logic& logic) {
  std::vector<ElementIndex> out;
  for (ElementIndex e = 0; e < logic.size(); ++e) {
    const auto& s = logic.element(e);
    if (s.any() && !s.all() && !localized_forms(logic, e).empty()) out.push_back(e);
  }
  return out;
}

}  // namespace

TEST(Compatibility, PairsMatchDefinition) {
  const Sizes left{2, 2};
  const Sizes right{2, 2};
  const Logic logic = close_logic(BoxWorldSpec::from_sizes(left, right));
  const auto pts = oracle::gamma_points(left, right);
  const auto fam = oracle::closure(pts.size(), oracle::all_atoms(pts, left, right));
  std::size_t compatible = 0;
  for (ElementIndex p = 0; p < logic.size(); ++p) {
    for (ElementIndex q = 0; q < logic.size(); ++q) {
      const bool want = oracle::compatible(fam, oracle::to_mask(logic.element(p)), oracle::to_mask(logic.element(q)));
      const auto w = are_compatible(logic, p, q);
      ASSERT_EQ(w.has_value(), want);
      if (!w) continue;
      ++compatible;
      const auto& r = logic.element(w->r);
      EXPECT_EQ(logic.element(w->p1) | r, logic.element(p));
      EXPECT_EQ(logic.element(w->q1) | r, logic.element(q));
      EXPECT_TRUE(logic.element(w->p1).disjoint(r));
      EXPECT_TRUE(logic.element(w->q1).disjoint(r));
      EXPECT_TRUE(logic.element(w->p1).disjoint(logic.element(w->q1)));
      const std::vector<ElementIndex> pair{p, q};
      EXPECT_TRUE(is_compatible_set(logic, pair).has_value());
    }
  }
  EXPECT_GT(compatible, logic.size());
}

TEST(Compatibility, LocalizedForms) {
  const Logic logic = close_logic(BoxWorldSpec::from_sizes({2, 2}, {2, 2}));
  const GammaIndex& gamma = *logic.gamma();
  const ElementIndex l = logic.require(make_localized(gamma, Side::Left, 1, 0));
  const auto forms = localized_forms(logic, l);
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(forms[0], (LocalizedSpec{Side::Left, 1, {0}}));
  EXPECT_EQ(localized_forms(logic, *logic.one()).size(), 4u);
  EXPECT_TRUE(localized_forms(logic, logic.atoms()[0]).empty());
  EXPECT_EQ(localized_elements(logic).size(), 8u);
}

TEST(Compatibility, CrossSidePairsAlwaysCompatible) {
  const Logic logic = close_logic(BoxWorldSpec::from_sizes({3, 2}, {2, 3}));
  const GammaIndex& gamma = *logic.gamma();
  for (std::size_t a = 0; a < 2; ++a)
    for (const auto& p : outcome_subsets(gamma.spec().left_outcomes(a), false))
      for (std::size_t b = 0; b < 2; ++b)
        for (const auto& q : outcome_subsets(gamma.spec().right_outcomes(b), false)) {
          const PointSet ps = make_localized(gamma, {Side::Left, a, p});
          const PointSet qs = make_localized(gamma, {Side::Right, b, q});
          const auto w = are_compatible(logic, logic.require(ps), logic.require(qs));
          ASSERT_TRUE(w);
          EXPECT_EQ(logic.element(w->r), ps & qs);
        }
}

TEST(Compatibility, SameSideCompatibleIffSameInput) {
  const Logic logic = close_logic(BoxWorldSpec::from_sizes({3, 2}, {2}));
  const GammaIndex& gamma = *logic.gamma();
  const auto& spec = gamma.spec();
  for (std::size_t a = 0; a < spec.left_inputs(); ++a)
    for (const auto& p : outcome_subsets(spec.left_outcomes(a), false))
      for (std::size_t c = 0; c < spec.left_inputs(); ++c)
        for (const auto& q : outcome_subsets(spec.left_outcomes(c), false)) {
          const auto pi = logic.require(make_localized(gamma, {Side::Left, a, p}));
          const auto qi = logic.require(make_localized(gamma, {Side::Left, c, q}));
          EXPECT_EQ(are_compatible(logic, pi, qi).has_value(), a == c);
        }
}

TEST(Compatibility, LocalizedPartitionCoversGamma) {
  const GammaIndex gamma = build_gamma(BoxWorldSpec::from_sizes({3, 2}, {2, 2}));
  const std::vector<LocalizedSpec> family{{Side::Left, 0, {0}}, {Side::Left, 0, {1, 2}}, {Side::Right, 1, {1}}};
  const auto g = localized_partition(gamma, family);
  ASSERT_TRUE(g);
  PointSet u(gamma.gamma_size());
  for (const auto& piece : *g) {
    EXPECT_TRUE(u.disjoint(piece));
    u |= piece;
  }
  EXPECT_TRUE(u.all());
  for (const auto& f : family) {
    const PointSet target = make_localized(gamma, f);
    PointSet covered(gamma.gamma_size());
    for (const auto& piece : *g)
      if (piece.is_subset_of(target)) covered |= piece;
    EXPECT_EQ(covered, target);
  }
  const std::vector<LocalizedSpec> mixed{{Side::Left, 0, {0}}, {Side::Left, 1, {0}}};
  EXPECT_FALSE(localized_partition(gamma, mixed));
}

TEST(Compatibility, SetCompatibilityOfLocalizedFamilies) {
  const Logic logic = close_logic(BoxWorldSpec::from_sizes({2, 2}, {2, 2}));
  const auto loc = localized_elements(logic);
  for (std::size_t i = 0; i < loc.size(); ++i)
    for (std::size_t j = i + 1; j < loc.size(); ++j)
      for (std::size_t k = j + 1; k < loc.size(); ++k) {
        const std::vector<ElementIndex> fam{loc[i], loc[j], loc[k]};
        const bool pairwise = are_compatible(logic, loc[i], loc[j]) && are_compatible(logic, loc[i], loc[k]) &&
                              are_compatible(logic, loc[j], loc[k]);
        const auto g = is_compatible_set(logic, fam);
        EXPECT_EQ(g.has_value(), pairwise);
        if (!g) continue;
        const auto sub = boolean_sublogic_containing(logic, fam);
        ASSERT_TRUE(sub);
        EXPECT_EQ(sub->members.size(), std::size_t{1} << sub->blocks.size());
        for (auto e : fam) EXPECT_NE(std::find(sub->members.begin(), sub->members.end(), e), sub->members.end());
      }
}

TEST(Compatibility, FamilyCap) {
  const Logic logic = close_logic(BoxWorldSpec::from_sizes({2, 2}, {2, 2}));
  Limits limits;
  limits.max_compatible_family = 2;
  const std::vector<ElementIndex> fam{2, 3, 4};
  EXPECT_THROW(is_compatible_set(logic, fam, limits), CapExceeded);
}

TEST(Compatibility, SingleBoxLogicIsAPasting) {
  struct Case {
    Sizes box;
    std::size_t expected;
  };
  for (const auto& c : std::vector<Case>{{{2, 2}, 6}, {{3, 3}, 14}, {{2, 2, 2}, 8}, {{2, 3}, 10}}) {
    const auto spec = BoxWorldSpec::from_sizes(c.box, {2});
    const SingleBoxLogic box = single_box_logic(spec, Side::Left);
    EXPECT_EQ(box.logic.size(), c.expected);
    EXPECT_EQ(box.report.element_count, c.expected);
    EXPECT_EQ(box.report.expected_count, c.expected);
    EXPECT_TRUE(box.report.passed());

    // Oracle: closure of the one-sided localized sets.
    const auto pts = oracle::gamma_points(c.box, {2});
    std::vector<oracle::Mask> gens;
    for (std::size_t a = 0; a < c.box.size(); ++a)
      for (std::size_t alpha = 0; alpha < c.box[a]; ++alpha) {
        oracle::Mask m(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) m[i] = pts[i].x[a] == alpha;
        gens.push_back(m);
      }
    EXPECT_EQ(oracle::closure(pts.size(), gens).size(), c.expected);
    EXPECT_TRUE(embeds_in(box, close_logic(spec)).passed);
  }
}

TEST(Compatibility, LocalizedPropositionSuitePasses) {
  for (const auto& [l, r] : std::vector<std::pair<Sizes, Sizes>>{{{2, 2}, {2, 2}}, {{3, 2}, {2, 2}}}) {
    for (const auto& c : verify_localized_propositions(close_logic(BoxWorldSpec::from_sizes(l, r)))) {
      EXPECT_TRUE(c.passed) << c.name << ": " << c.counterexample.value_or("");
      EXPECT_GT(c.checked, 0u) << c.name;
    }
  }
}
