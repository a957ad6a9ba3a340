#include <boxlogic/states.hpp>

#include <boxlogic/errors.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace boxlogic {

namespace {

std::vector<std::size_t> sizes_of(const BoxWorldSpec::Box& box) {
  std::vector<std::size_t> out;
  for (const auto& in : box) out.push_back(in.size());
  return out;
}

std::string atom_text(const AtomId& id) {
  return "P(" + std::to_string(id.alpha) + " " + std::to_string(id.beta) + "|" +
         std::to_string(id.a) + " " + std::to_string(id.b) + ")";
}

/// Atoms through one point, in AtomId order.
std::vector<ElementIndex> atoms_through(const Logic& logic, std::size_t point) {
  const GammaIndex& gamma = *logic.gamma();
  std::vector<ElementIndex> out;
  for (std::size_t a = 0; a < gamma.spec().left_inputs(); ++a) {
    for (std::size_t b = 0; b < gamma.spec().right_inputs(); ++b) {
      out.push_back(logic.atom_element(
          {a, gamma.left_coordinate(point, a), b, gamma.right_coordinate(point, b)}));
    }
  }
  return out;
}

std::vector<ElementIndex> by_popcount(const Logic& logic) {
  std::vector<ElementIndex> order(logic.size());
  for (ElementIndex i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return logic.element(a).count() < logic.element(b).count();
  });
  return order;
}

void require_box_logic(const Logic& logic) {
  if (logic.gamma() == nullptr) throw InvalidInput("states need a box-world logic");
}

}  // namespace

PRState::PRState(std::vector<std::size_t> left_sizes, std::vector<std::size_t> right_sizes)
    : left_(std::move(left_sizes)), right_(std::move(right_sizes)) {
  if (left_.empty() || right_.empty()) throw InvalidInput("table needs inputs on both sides");
  index_offsets();
}

void PRState::index_offsets() {
  left_offset_.clear();
  right_offset_.clear();
  std::size_t acc = 0;
  for (auto n : left_) {
    left_offset_.push_back(acc);
    acc += n;
  }
  const std::size_t left_total = acc;
  acc = 0;
  for (auto n : right_) {
    right_offset_.push_back(acc);
    acc += n;
  }
  right_total_ = acc;
  values_.assign(left_total * right_total_, Rational(0));
}

PRState PRState::for_spec(const BoxWorldSpec& spec) {
  return PRState(sizes_of(spec.left()), sizes_of(spec.right()));
}

PRState PRState::from_values(const BoxWorldSpec& spec, std::vector<Rational> values) {
  PRState s = for_spec(spec);
  if (values.size() != s.values_.size()) {
    throw InvalidInput("expected " + std::to_string(s.values_.size()) + " table entries, got " +
                       std::to_string(values.size()));
  }
  s.values_ = std::move(values);
  return s;
}

bool PRState::matches(const BoxWorldSpec& spec) const {
  return left_ == sizes_of(spec.left()) && right_ == sizes_of(spec.right());
}

std::size_t PRState::variable(const AtomId& id) const {
  if (id.a >= left_.size() || id.b >= right_.size() || id.alpha >= left_[id.a] ||
      id.beta >= right_[id.b]) {
    throw InvalidInput("table index out of range: " + atom_text(id));
  }
  return (left_offset_[id.a] + id.alpha) * right_total_ + right_offset_[id.b] + id.beta;
}

PRState PRState::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("PR-state file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.empty()) throw InvalidInput("PR-state file must be a non-empty object");

  std::map<std::pair<std::size_t, std::size_t>, const nlohmann::json*> blocks;
  std::size_t max_a = 0;
  std::size_t max_b = 0;
  for (const auto& [key, value] : j.items()) {
    std::size_t a = 0;
    std::size_t b = 0;
    char comma = 0;
    std::istringstream in(key);
    if (!(in >> a >> comma >> b) || comma != ',' || !in.eof()) {
      throw InvalidInput("bad PR-state key '" + key + "', expected \"a,b\"");
    }
    blocks[{a, b}] = &value;
    max_a = std::max(max_a, a);
    max_b = std::max(max_b, b);
  }

  std::vector<std::size_t> left(max_a + 1, 0);
  std::vector<std::size_t> right(max_b + 1, 0);
  for (std::size_t a = 0; a <= max_a; ++a) {
    for (std::size_t b = 0; b <= max_b; ++b) {
      const auto it = blocks.find({a, b});
      if (it == blocks.end()) {
        throw InvalidInput("missing PR-state entry for inputs \"" + std::to_string(a) + "," +
                           std::to_string(b) + "\"");
      }
      const auto& m = *it->second;
      if (!m.is_array() || m.empty() || !m[0].is_array()) {
        throw InvalidInput("PR-state entries must be non-empty matrices");
      }
      const std::size_t rows = m.size();
      const std::size_t cols = m[0].size();
      if ((left[a] != 0 && left[a] != rows) || (right[b] != 0 && right[b] != cols)) {
        throw InvalidInput("inconsistent matrix shape for inputs \"" + std::to_string(a) + "," +
                           std::to_string(b) + "\"");
      }
      left[a] = rows;
      right[b] = cols;
    }
  }

  PRState s(left, right);
  for (const auto& [key, m] : blocks) {
    const auto [a, b] = key;
    for (std::size_t alpha = 0; alpha < left[a]; ++alpha) {
      const auto& row = (*m)[alpha];
      if (!row.is_array() || row.size() != right[b]) {
        throw InvalidInput("ragged matrix for inputs \"" + std::to_string(a) + "," +
                           std::to_string(b) + "\"");
      }
      for (std::size_t beta = 0; beta < right[b]; ++beta) {
        if (!row[beta].is_string()) throw InvalidInput("PR-state entries must be \"p/q\" strings");
        s.at({a, alpha, b, beta}) = parse_rational(row[beta].get<std::string>());
      }
    }
  }
  return s;
}

PRState PRState::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open PR-state file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string PRState::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t a = 0; a < left_.size(); ++a) {
    for (std::size_t b = 0; b < right_.size(); ++b) {
      nlohmann::json m = nlohmann::json::array();
      for (std::size_t alpha = 0; alpha < left_[a]; ++alpha) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t beta = 0; beta < right_[b]; ++beta) {
          row.push_back(to_string(at({a, alpha, b, beta})));
        }
        m.push_back(std::move(row));
      }
      j[std::to_string(a) + "," + std::to_string(b)] = std::move(m);
    }
  }
  return j.dump(2);
}

std::string_view to_string(Violation::Kind kind) noexcept {
  switch (kind) {
    case Violation::Kind::Negative: return "negative";
    case Violation::Kind::Normalization: return "normalization";
    case Violation::Kind::NoSignallingRight: return "no_signalling_right_marginal";
    case Violation::Kind::NoSignallingLeft: return "no_signalling_left_marginal";
  }
  return "?";
}

std::vector<Violation> validate_pr_state(const PRState& s) {
  const auto& left = s.left_sizes();
  const auto& right = s.right_sizes();
  std::vector<Violation> out;

  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t alpha = 0; alpha < left[a]; ++alpha)
      for (std::size_t b = 0; b < right.size(); ++b)
        for (std::size_t beta = 0; beta < right[b]; ++beta) {
          const auto& v = s.at({a, alpha, b, beta});
          if (v < 0) out.push_back({Violation::Kind::Negative, atom_text({a, alpha, b, beta}), v});
        }

  for (std::size_t a = 0; a < left.size(); ++a) {
    for (std::size_t b = 0; b < right.size(); ++b) {
      Rational total = 0;
      for (std::size_t alpha = 0; alpha < left[a]; ++alpha)
        for (std::size_t beta = 0; beta < right[b]; ++beta) total += s.at({a, alpha, b, beta});
      if (total != 1) {
        out.push_back({Violation::Kind::Normalization,
                       "inputs " + std::to_string(a) + "," + std::to_string(b), total - 1});
      }
    }
  }

  auto right_marginal = [&](std::size_t a, std::size_t b, std::size_t beta) {
    Rational m = 0;
    for (std::size_t alpha = 0; alpha < left[a]; ++alpha) m += s.at({a, alpha, b, beta});
    return m;
  };
  auto left_marginal = [&](std::size_t a, std::size_t alpha, std::size_t b) {
    Rational m = 0;
    for (std::size_t beta = 0; beta < right[b]; ++beta) m += s.at({a, alpha, b, beta});
    return m;
  };
  for (std::size_t b = 0; b < right.size(); ++b)
    for (std::size_t beta = 0; beta < right[b]; ++beta)
      for (std::size_t a = 1; a < left.size(); ++a) {
        const Rational diff = right_marginal(a, b, beta) - right_marginal(0, b, beta);
        if (diff != 0) {
          out.push_back({Violation::Kind::NoSignallingRight,
                         "b=" + std::to_string(b) + " beta=" + std::to_string(beta) +
                             " left inputs " + std::to_string(a) + " vs 0",
                         diff});
        }
      }
  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t alpha = 0; alpha < left[a]; ++alpha)
      for (std::size_t b = 1; b < right.size(); ++b) {
        const Rational diff = left_marginal(a, alpha, b) - left_marginal(a, alpha, 0);
        if (diff != 0) {
          out.push_back({Violation::Kind::NoSignallingLeft,
                         "a=" + std::to_string(a) + " alpha=" + std::to_string(alpha) +
                             " right inputs " + std::to_string(b) + " vs 0",
                         diff});
        }
      }
  return out;
}

std::vector<Violation> validate_pr_state(const BoxWorldSpec& spec, const PRState& state) {
  if (!state.matches(spec)) throw InvalidInput("PR-state table shape does not match the scenario");
  return validate_pr_state(state);
}

PRState uniform_pr_state(const BoxWorldSpec& spec) {
  PRState s = PRState::for_spec(spec);
  for (std::size_t a = 0; a < spec.left_inputs(); ++a)
    for (std::size_t alpha = 0; alpha < spec.left_outcomes(a); ++alpha)
      for (std::size_t b = 0; b < spec.right_inputs(); ++b)
        for (std::size_t beta = 0; beta < spec.right_outcomes(b); ++beta)
          s.at({a, alpha, b, beta}) = Rational(1, spec.left_outcomes(a) * spec.right_outcomes(b));
  return s;
}

StateExtension::StateExtension(const Logic& logic) : logic_(&logic) {
  require_box_logic(logic);
  order_ = by_popcount(logic);
  std::vector<std::vector<Branch>> per(logic.size());
  for (ElementIndex e = 0; e < logic.size(); ++e) {
    const auto& set = logic.element(e);
    if (set.none()) continue;
    for (ElementIndex atom : atoms_through(logic, set.lowest())) {
      const auto& a = logic.element(atom);
      if (!a.is_subset_of(set)) continue;
      const PointSet rest = set - a;
      if (rest.none()) {
        per[e].push_back({logic.atom_position(atom), Logic::npos});
      } else if (const auto r = logic.find(rest)) {
        per[e].push_back({logic.atom_position(atom), *r});
      }
    }
    if (per[e].empty()) throw TheoremViolation(describe(logic, e) + " has no atomic decomposition");
  }
  offsets_.push_back(0);
  for (auto& list : per) {
    branches_.insert(branches_.end(), list.begin(), list.end());
    offsets_.push_back(branches_.size());
  }
}

template <typename T, typename Add>
bool StateExtension::extend_as(const std::vector<T>& atom_values, std::vector<T>& out,
                               Add add) const {
  out.assign(logic_->size(), T(0));
  for (ElementIndex e : order_) {
    const std::size_t first = offsets_[e];
    const std::size_t last = offsets_[e + 1];
    for (std::size_t k = first; k < last; ++k) {
      T v = atom_values[branches_[k].atom];
      if (branches_[k].rest != Logic::npos && !add(v, out[branches_[k].rest])) return false;
      if (k == first) {
        out[e] = std::move(v);
      } else if (v != out[e]) {
        throw WellDefinednessViolation(
            "decompositions of " + describe(*logic_, e) + " disagree: branch through " +
            describe(*logic_, logic_->atoms()[branches_[first].atom]) + " vs branch through " +
            describe(*logic_, logic_->atoms()[branches_[k].atom]));
      }
    }
  }
  return true;
}

LogicState StateExtension::extend(const PRState& state) const {
  if (!state.matches(logic_->gamma()->spec())) {
    throw InvalidInput("PR-state table shape does not match the logic");
  }
  const auto ids = logic_->atom_ids();
  std::vector<Rational> atom_values;
  atom_values.reserve(ids.size());
  for (const auto& id : ids) atom_values.push_back(state.at(id));

  // Integer fast path over a common denominator; exact, falls back on overflow.
  Integer den = 1;
  for (const auto& v : atom_values) den = lcm(den, denominator(v));
  std::vector<std::int64_t> scaled;
  bool fits = true;
  for (const auto& v : atom_values) {
    const Integer n = numerator(v) * (den / denominator(v));
    if (abs(n) > Integer(INT64_MAX) / 4) {
      fits = false;
      break;
    }
    scaled.push_back(n.convert_to<std::int64_t>());
  }
  LogicState rho;
  if (fits) {
    std::vector<std::int64_t> out;
    if (extend_as(scaled, out, [](std::int64_t& acc, std::int64_t x) {
          return !__builtin_add_overflow(acc, x, &acc);
        })) {
      rho.values.reserve(out.size());
      for (auto x : out) rho.values.emplace_back(Integer(x), den);
      return rho;
    }
  }
  extend_as(atom_values, rho.values, [](Rational& acc, const Rational& x) {
    acc += x;
    return true;
  });
  return rho;
}

std::optional<std::string> StateExtension::defect(const LogicState& rho) const {
  const Logic& logic = *logic_;
  if (rho.values.size() != logic.size()) return "state has the wrong number of values";
  for (ElementIndex i = 0; i < logic.size(); ++i) {
    if (rho.values[i] < 0 || rho.values[i] > 1) return "value outside [0, 1] at " + describe(logic, i);
  }
  if (rho.values[*logic.zero()] != 0) return "rho(0) != 0";
  if (rho.values[*logic.one()] != 1) return "rho(1) != 1";

  // Values lie in [0, 1], so over a common denominator that fits, sums of
  // two numerators cannot overflow.
  Integer den = 1;
  for (const auto& v : rho.values) den = lcm(den, denominator(v));
  std::vector<std::int64_t> scaled;
  if (den <= Integer(INT64_MAX / 4)) {
    scaled.reserve(rho.values.size());
    for (const auto& v : rho.values) {
      scaled.push_back(Integer(numerator(v) * (den / denominator(v))).convert_to<std::int64_t>());
    }
  }
  for (ElementIndex e = 0; e < logic.size(); ++e) {
    for (std::size_t k = offsets_[e]; k < offsets_[e + 1]; ++k) {
      const auto& br = branches_[k];
      if (br.rest == Logic::npos) continue;
      const ElementIndex atom = logic.atoms()[br.atom];
      const bool additive = scaled.empty()
                                ? rho.values[atom] + rho.values[br.rest] == rho.values[e]
                                : scaled[atom] + scaled[br.rest] == scaled[e];
      if (!additive) {
        return "not additive on " + describe(logic, atom) + " (+) " + describe(logic, br.rest);
      }
    }
  }
  return std::nullopt;
}

PRState StateExtension::restrict(const LogicState& rho) const {
  if (auto d = defect(rho)) throw InvalidInput("not a state: " + *d);
  PRState s = PRState::for_spec(logic_->gamma()->spec());
  for (std::size_t k = 0; k < logic_->atoms().size(); ++k) {
    s.at(logic_->atom_ids()[k]) = rho.values[logic_->atoms()[k]];
  }
  if (!validate_pr_state(s).empty()) {
    throw TheoremViolation("a state on the logic produced a table that is not a PR-state");
  }
  return s;
}

LogicState state_from_pr(const Logic& logic, const PRState& state) {
  return StateExtension(logic).extend(state);
}

std::optional<std::string> state_defect(const Logic& logic, const LogicState& rho) {
  return StateExtension(logic).defect(rho);
}

PRState pr_from_state(const Logic& logic, const LogicState& rho) {
  return StateExtension(logic).restrict(rho);
}

LogicState point_state(const Logic& logic, std::size_t point) {
  if (point >= logic.ground_size()) throw InvalidInput("point outside the ground set");
  LogicState rho;
  rho.values.reserve(logic.size());
  for (const auto& e : logic.elements()) rho.values.emplace_back(e.test(point) ? 1 : 0);
  return rho;
}

LogicState mix(const LogicState& x, const LogicState& y, const Rational& lambda) {
  if (x.values.size() != y.values.size()) throw InvalidInput("states over different logics");
  LogicState out;
  out.values.reserve(x.values.size());
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    out.values.push_back(lambda * x.values[i] + (1 - lambda) * y.values[i]);
  }
  return out;
}

PRState mix(const PRState& x, const PRState& y, const Rational& lambda) {
  if (x.left_sizes() != y.left_sizes() || x.right_sizes() != y.right_sizes()) {
    throw InvalidInput("tables of different shapes");
  }
  PRState out = x;
  for (std::size_t a = 0; a < x.left_sizes().size(); ++a)
    for (std::size_t alpha = 0; alpha < x.left_sizes()[a]; ++alpha)
      for (std::size_t b = 0; b < x.right_sizes().size(); ++b)
        for (std::size_t beta = 0; beta < x.right_sizes()[b]; ++beta) {
          const AtomId id{a, alpha, b, beta};
          out.at(id) = lambda * x.at(id) + (1 - lambda) * y.at(id);
        }
  return out;
}

std::vector<PRState> sample_pr_states(std::span<const PRState> vertices, std::size_t count,
                                      std::uint64_t seed) {
  if (vertices.empty()) throw InvalidInput("no vertices to sample from");
  std::mt19937_64 rng(seed);
  std::vector<PRState> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t parts = 1 + rng() % 4;
    PRState acc = vertices[rng() % vertices.size()];
    Rational weight_so_far = 1 + rng() % 100;
    for (std::size_t k = 1; k < parts; ++k) {
      const auto& v = vertices[rng() % vertices.size()];
      const Rational w = 1 + rng() % 100;
      // acc stays the normalized combination of the parts drawn so far.
      acc = mix(acc, v, weight_so_far / (weight_so_far + w));
      weight_so_far += w;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace boxlogic
