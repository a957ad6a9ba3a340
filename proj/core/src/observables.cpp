#include <boxlogic/observables.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace boxlogic {

std::string_view to_string(ObservableError::Kind kind) noexcept {
  switch (kind) {
    case ObservableError::Kind::OverlappingSupports: return "overlapping_supports";
    case ObservableError::Kind::IncompleteCover: return "incomplete_cover";
    case ObservableError::Kind::SubJoinNotInLogic: return "sub_join_not_in_logic";
    case ObservableError::Kind::DuplicateValue: return "duplicate_value";
    case ObservableError::Kind::Empty: return "empty";
  }
  return "?";
}

Observable make_observable(const Logic& logic, std::vector<Observable::Outcome> outcomes) {
  using Kind = ObservableError::Kind;
  if (outcomes.empty()) throw ObservableError(Kind::Empty, "observable has no outcomes");
  if (outcomes.size() > kMaxObservableOutcomes) {
    throw CapExceeded("observable has " + std::to_string(outcomes.size()) + " outcomes, cap is " +
                      std::to_string(kMaxObservableOutcomes));
  }
  for (const auto& o : outcomes) {
    if (o.element >= logic.size()) throw ForeignElement("observable element outside the logic");
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
      if (outcomes[i].value == outcomes[j].value) {
        throw ObservableError(Kind::DuplicateValue, "value " + to_string(outcomes[i].value) +
                                                        " assigned twice");
      }
      if (!logic.orthogonal(outcomes[i].element, outcomes[j].element)) {
        throw ObservableError(Kind::OverlappingSupports,
                              describe(logic, outcomes[i].element) + " and " +
                                  describe(logic, outcomes[j].element) + " overlap");
      }
    }
  }
  PointSet cover(logic.ground_size());
  for (const auto& o : outcomes) cover |= logic.element(o.element);
  if (!cover.all()) {
    throw ObservableError(Kind::IncompleteCover, "supports miss " +
                                                     std::to_string(logic.ground_size() - cover.count()) +
                                                     " points of the ground set");
  }
  const std::size_t k = outcomes.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    PointSet u(logic.ground_size());
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) u |= logic.element(outcomes[i].element);
    if (!logic.contains(u)) {
      throw ObservableError(Kind::SubJoinNotInLogic,
                            "union of value subset " + std::to_string(mask) + " is not in the logic");
    }
  }
  return Observable{std::move(outcomes)};
}

Rational mean(const Observable& x, const LogicState& rho) {
  Rational m = 0;
  for (const auto& o : x.outcomes) m += o.value * rho[o.element];
  return m;
}

Rational variance(const Observable& x, const LogicState& rho) {
  const Rational m = mean(x, rho);
  Rational v = 0;
  for (const auto& o : x.outcomes) {
    const Rational d = o.value - m;
    v += d * d * rho[o.element];
  }
  return v;
}

UncertaintyWitness heisenberg_infimum_witness(const Logic& logic, const Observable& x,
                                              const Observable& y) {
  UncertaintyWitness w;
  w.point = 0;
  w.state = point_state(logic, w.point);
  w.product = variance(x, w.state) * variance(y, w.state);
  if (w.product != 0) throw TheoremViolation("point state with non-zero variance product");
  return w;
}

std::vector<Observable> input_pair_observables(const Logic& logic, std::size_t a, std::size_t b) {
  if (logic.gamma() == nullptr) throw InvalidInput("input-pair observables need a box-world logic");
  const auto& spec = logic.gamma()->spec();
  if (a >= spec.left_inputs() || b >= spec.right_inputs()) throw InvalidInput("input out of range");
  std::vector<ElementIndex> atoms;
  for (std::size_t alpha = 0; alpha < spec.left_outcomes(a); ++alpha)
    for (std::size_t beta = 0; beta < spec.right_outcomes(b); ++beta)
      atoms.push_back(logic.atom_element({a, alpha, b, beta}));
  const std::size_t n = atoms.size();
  if (n > kMaxObservableOutcomes) throw CapExceeded("too many atoms in one input pair");

  std::vector<Observable> out;
  std::vector<std::size_t> rgs(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);
  while (true) {
    const std::size_t blocks = prefix_max[n - 1] + 1;
    std::vector<PointSet> unions(blocks, PointSet(logic.ground_size()));
    for (std::size_t i = 0; i < n; ++i) unions[rgs[i]] |= logic.element(atoms[i]);
    std::vector<Observable::Outcome> outcomes;
    for (std::size_t k = 0; k < blocks; ++k) {
      outcomes.push_back({Rational(static_cast<long>(k)), logic.require(unions[k])});
    }
    out.push_back(make_observable(logic, std::move(outcomes)));

    // Next restricted growth string: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i)).
    std::size_t i = n;
    while (i > 1) {
      --i;
      if (rgs[i] <= prefix_max[i - 1]) break;
      if (i == 1) return out;
    }
    if (n == 1 || i == 0) return out;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

Observable observable_from_json(const Logic& logic, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("observable file is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw InvalidInput("observable file must be a list");
  std::vector<Observable::Outcome> outcomes;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("value") || !item.contains("element") ||
        !item["value"].is_string() || !item["element"].is_string()) {
      throw InvalidInput("observable entries need string \"value\" and \"element\"");
    }
    const PointSet set = PointSet::from_hex(item["element"].get<std::string>(), logic.ground_size());
    outcomes.push_back({parse_rational(item["value"].get<std::string>()), logic.require(set)});
  }
  return make_observable(logic, std::move(outcomes));
}

Observable load_observable(const Logic& logic, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open observable file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return observable_from_json(logic, ss.str());
}

std::string observable_to_json(const Logic& logic, const Observable& x) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& o : x.outcomes) {
    j.push_back({{"value", to_string(o.value)}, {"element", logic.element(o.element).to_hex()}});
  }
  return j.dump(2);
}

}  // namespace boxlogic
