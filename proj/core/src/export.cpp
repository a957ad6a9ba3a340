#include <boxlogic/export.hpp>

#include <nlohmann/json.hpp>

#include <set>
#include <sstream>

namespace boxlogic {

std::string logic_to_json(const Logic& logic) {
  nlohmann::json j;
  if (const auto* gamma = logic.gamma()) j["scenario"] = nlohmann::json::parse(gamma->spec().to_json());
  j["ground_size"] = logic.ground_size();
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : logic.elements()) elements.push_back(e.to_hex());
  j["elements"] = std::move(elements);
  nlohmann::json complements = nlohmann::json::array();
  for (ElementIndex i = 0; i < logic.size(); ++i) {
    const auto c = logic.complement_of(i);
    complements.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
  }
  j["complement"] = std::move(complements);
  j["atoms"] = std::vector<ElementIndex>(logic.atoms().begin(), logic.atoms().end());
  if (!logic.atom_ids().empty()) {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& id : logic.atom_ids()) ids.push_back({id.a, id.alpha, id.b, id.beta});
    j["atom_ids"] = std::move(ids);
  }
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& [lo, hi] : hasse_covers(logic)) covers.push_back({lo, hi});
  j["hasse_covers"] = std::move(covers);
  return j.dump(2);
}

std::string hasse_dot(const Logic& logic) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=box, fontname=monospace];\n";
  for (ElementIndex i = 0; i < logic.size(); ++i) {
    out << "  n" << i << " [label=\"" << logic.element(i).to_hex() << "\"];\n";
  }
  for (const auto& [lo, hi] : hasse_covers(logic)) {
    out << "  n" << lo << " -> n" << hi << " [arrowhead=none];\n";
  }
  out << "}\n";
  return out.str();
}

std::string pasting_dot(const SingleBoxLogic& box) {
  const Logic& logic = box.logic;
  const auto zero = logic.zero();
  const auto one = logic.one();
  std::ostringstream out;
  out << "graph pasting {\n  node [shape=box, fontname=monospace];\n";
  if (zero) out << "  n" << *zero << " [label=\"0\"];\n";
  if (one) out << "  n" << *one << " [label=\"1\"];\n";
  const auto& iso = box.report.isomorphism;
  for (std::size_t input = 0; input < iso.size(); ++input) {
    out << "  subgraph cluster_" << input << " {\n    label=\"input " << input << "\";\n";
    std::set<ElementIndex> inner;
    for (ElementIndex e : iso[input]) {
      if (e != zero && e != one) inner.insert(e);
    }
    for (ElementIndex e : inner) {
      out << "    n" << e << " [label=\"" << logic.element(e).to_hex() << "\"];\n";
    }
    out << "  }\n";
  }
  for (const auto& [lo, hi] : hasse_covers(logic)) out << "  n" << lo << " -- n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

std::string pasting_report_json(const PastingReport& report) {
  nlohmann::json j;
  j["side"] = std::string(to_string(report.side));
  j["element_count"] = report.element_count;
  j["expected_count"] = report.expected_count;
  j["block_sizes"] = report.block_sizes;
  j["blocks_boolean"] = report.blocks_boolean;
  j["blocks_intersect_trivially"] = report.blocks_intersect_trivially;
  j["cross_block_meet_join"] = report.cross_block_meet_join;
  j["orthomodular_lattice"] = report.orthomodular_lattice;
  j["passed"] = report.passed();
  return j.dump(2);
}

}  // namespace boxlogic
