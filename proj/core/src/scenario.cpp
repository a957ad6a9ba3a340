#include <boxlogic/scenario.hpp>

#include <boxlogic/errors.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace boxlogic {

namespace {

void validate_box(const BoxWorldSpec::Box& box, std::string_view name) {
  if (box.empty()) throw InvalidInput(std::string(name) + " box has no inputs");
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& labels = box[i];
    const std::string where = std::string(name) + " input " + std::to_string(i);
    if (labels.size() < 2) {
      throw InvalidInput(where + " has " + std::to_string(labels.size()) +
                         " outcome(s); at least 2 are required");
    }
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) throw InvalidInput(where + " repeats outcome label '" + l + "'");
    }
  }
}

BoxWorldSpec::Box box_from_json(const nlohmann::json& j, std::string_view name) {
  if (!j.is_array()) throw InvalidInput("\"" + std::string(name) + "\" must be an array of arrays");
  BoxWorldSpec::Box box;
  for (const auto& input : j) {
    if (!input.is_array()) {
      throw InvalidInput("\"" + std::string(name) + "\" entries must be arrays of labels");
    }
    auto& labels = box.emplace_back();
    for (const auto& label : input) {
      if (!label.is_string()) throw InvalidInput("outcome labels must be strings");
      labels.push_back(label.get<std::string>());
    }
  }
  return box;
}

std::size_t checked_product(const BoxWorldSpec::Box& box, std::size_t cap) {
  std::size_t p = 1;
  for (const auto& in : box) {
    if (p > cap / in.size()) {
      throw CapExceeded("|Gamma| exceeds the gamma cap of " + std::to_string(cap));
    }
    p *= in.size();
  }
  return p;
}

}  // namespace

std::string_view to_string(Side side) noexcept { return side == Side::Left ? "left" : "right"; }

BoxWorldSpec::BoxWorldSpec(Box left, Box right) : left_(std::move(left)), right_(std::move(right)) {
  validate_box(left_, "left");
  validate_box(right_, "right");
}

BoxWorldSpec BoxWorldSpec::from_sizes(const std::vector<std::size_t>& left,
                                      const std::vector<std::size_t>& right) {
  auto make = [](const std::vector<std::size_t>& sizes) {
    Box box;
    for (auto n : sizes) {
      auto& labels = box.emplace_back();
      for (std::size_t k = 0; k < n; ++k) labels.push_back(std::to_string(k));
    }
    return box;
  };
  return BoxWorldSpec(make(left), make(right));
}

BoxWorldSpec BoxWorldSpec::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("left") || !j.contains("right")) {
    throw InvalidInput("scenario must be an object with \"left\" and \"right\" arrays");
  }
  return BoxWorldSpec(box_from_json(j["left"], "left"), box_from_json(j["right"], "right"));
}

BoxWorldSpec BoxWorldSpec::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string BoxWorldSpec::to_json() const {
  nlohmann::json j;
  j["left"] = left_;
  j["right"] = right_;
  return j.dump();
}

std::size_t BoxWorldSpec::atom_count() const noexcept {
  auto total = [](const Box& box) {
    return std::accumulate(box.begin(), box.end(), std::size_t{0},
                           [](std::size_t s, const auto& in) { return s + in.size(); });
  };
  return total(left_) * total(right_);
}

GammaIndex build_gamma(const BoxWorldSpec& spec, const Limits& limits) {
  if (spec.left().empty() || spec.right().empty()) {
    throw InvalidInput("scenario needs at least one input per box");
  }
  GammaIndex g;
  g.spec_ = spec;
  g.gamma1_ = checked_product(spec.left(), limits.max_gamma);
  g.gamma2_ = checked_product(spec.right(), limits.max_gamma);
  if (g.gamma1_ > limits.max_gamma / g.gamma2_) {
    throw CapExceeded("|Gamma| = " + std::to_string(g.gamma1_) + " x " + std::to_string(g.gamma2_) +
                      " exceeds the gamma cap of " + std::to_string(limits.max_gamma));
  }
  auto strides = [](const BoxWorldSpec::Box& box) {
    std::vector<std::size_t> s(box.size());
    std::size_t acc = 1;
    for (std::size_t i = box.size(); i-- > 0;) {
      s[i] = acc;
      acc *= box[i].size();
    }
    return s;
  };
  g.left_stride_ = strides(spec.left());
  g.right_stride_ = strides(spec.right());
  return g;
}

GammaIndex::Point GammaIndex::point(std::size_t index) const {
  if (index >= gamma_size()) throw InvalidInput("point index out of range");
  Point p;
  for (std::size_t a = 0; a < spec_.left_inputs(); ++a) p.x.push_back(left_coordinate(index, a));
  for (std::size_t b = 0; b < spec_.right_inputs(); ++b) p.y.push_back(right_coordinate(index, b));
  return p;
}

std::size_t GammaIndex::index(const Point& p) const {
  if (p.x.size() != spec_.left_inputs() || p.y.size() != spec_.right_inputs()) {
    throw InvalidInput("point has the wrong number of coordinates");
  }
  std::size_t ix = 0;
  for (std::size_t a = 0; a < p.x.size(); ++a) {
    if (p.x[a] >= spec_.left_outcomes(a)) throw InvalidInput("left coordinate out of range");
    ix += p.x[a] * left_stride_[a];
  }
  std::size_t iy = 0;
  for (std::size_t b = 0; b < p.y.size(); ++b) {
    if (p.y[b] >= spec_.right_outcomes(b)) throw InvalidInput("right coordinate out of range");
    iy += p.y[b] * right_stride_[b];
  }
  return ix * gamma2_ + iy;
}

std::vector<AtomId> GammaIndex::atom_ids() const {
  std::vector<AtomId> ids;
  ids.reserve(spec_.atom_count());
  for (std::size_t a = 0; a < spec_.left_inputs(); ++a)
    for (std::size_t alpha = 0; alpha < spec_.left_outcomes(a); ++alpha)
      for (std::size_t b = 0; b < spec_.right_inputs(); ++b)
        for (std::size_t beta = 0; beta < spec_.right_outcomes(b); ++beta)
          ids.push_back({a, alpha, b, beta});
  return ids;
}

PointSet make_atom(const GammaIndex& gamma, const AtomId& id) {
  const auto& spec = gamma.spec();
  if (id.a >= spec.left_inputs() || id.b >= spec.right_inputs() ||
      id.alpha >= spec.left_outcomes(id.a) || id.beta >= spec.right_outcomes(id.b)) {
    throw InvalidInput("atom index out of range");
  }
  PointSet s = gamma.empty();
  for (std::size_t i = 0; i < gamma.gamma_size(); ++i) {
    if (gamma.left_coordinate(i, id.a) == id.alpha && gamma.right_coordinate(i, id.b) == id.beta) {
      s.set(i);
    }
  }
  return s;
}

PointSet make_localized(const GammaIndex& gamma, Side side, std::size_t input,
                        std::size_t outcome) {
  const auto& spec = gamma.spec();
  if (input >= spec.inputs(side) || outcome >= spec.outcomes(side, input)) {
    throw InvalidInput("localized element index out of range");
  }
  PointSet s = gamma.empty();
  for (std::size_t i = 0; i < gamma.gamma_size(); ++i) {
    if (gamma.coordinate(side, i, input) == outcome) s.set(i);
  }
  return s;
}

PointSet make_localized(const GammaIndex& gamma, const LocalizedSpec& loc) {
  if (loc.outcomes.empty()) throw InvalidInput("localized element needs a non-empty outcome set");
  PointSet s = gamma.empty();
  for (auto o : loc.outcomes) s |= make_localized(gamma, loc.side, loc.input, o);
  return s;
}

PointSet complement(const GammaIndex& gamma, const PointSet& e) {
  if (e.size() != gamma.gamma_size()) throw InvalidInput("element has the wrong width");
  return e.complement();
}

std::vector<std::vector<std::size_t>> outcome_subsets(std::size_t outcome_count,
                                                      bool include_full) {
  if (outcome_count >= 31) throw CapExceeded("too many outcomes to enumerate subsets");
  std::vector<std::vector<std::size_t>> out;
  const std::size_t full = (std::size_t{1} << outcome_count) - 1;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (mask == full && !include_full) break;
    auto& p = out.emplace_back();
    for (std::size_t k = 0; k < outcome_count; ++k) {
      if ((mask >> k) & 1) p.push_back(k);
    }
  }
  return out;
}

}  // namespace boxlogic
