// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any
// criterion fails.

#include <boxlogic/compatibility.hpp>
#include <boxlogic/errors.hpp>
#include <boxlogic/logic.hpp>
#include <boxlogic/observables.hpp>
#include <boxlogic/polytope.hpp>
#include <boxlogic/states.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"

using namespace boxlogic;

namespace {

using Sizes = std::vector<std::size_t>;

struct Scenario {
  std::string name;
  BoxWorldSpec spec;
};

const std::vector<Scenario>& desk_scenarios() {
  static const std::vector<Scenario> s{
      {"chsh", BoxWorldSpec::from_sizes({2, 2}, {2, 2})},
      {"two-input-three-outcome", BoxWorldSpec::from_sizes({3, 3}, {3, 3})},
      {"three-input-binary", BoxWorldSpec::from_sizes({2, 2, 2}, {2, 2, 2})},
  };
  return s;
}

/// Built logics and polytopes are shared between criteria.
struct Built {
  Logic logic;
  double build_seconds = 0;
  HRepresentation h;
  VertexEnumeration v;
  bool polytope_ready = false;
};

std::map<std::string, Built>& cache() {
  static std::map<std::string, Built> c;
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Built& built(const Scenario& s) {
  auto it = cache().find(s.name);
  if (it != cache().end()) return it->second;
  const auto t0 = std::chrono::steady_clock::now();
  Built b;
  b.logic = close_logic(s.spec);
  b.build_seconds = seconds_since(t0);
  return cache().emplace(s.name, std::move(b)).first->second;
}

Built& with_polytope(const Scenario& s) {
  Built& b = built(s);
  if (!b.polytope_ready) {
    b.h = ns_polytope(s.spec);
    b.v = enumerate_vertices(b.h);
    b.polytope_ready = true;
  }
  return b;
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail << "first failure: " << what << "; ";
      passed = false;
    }
  }
};

std::string failures_of(const std::vector<CheckResult>& checks) {
  std::string out;
  for (const auto& c : checks)
    if (!c.passed) out += c.name + "(" + c.counterexample.value_or("") + ") ";
  return out;
}

Outcome criterion1() {
  Outcome o;
  for (const auto& s : desk_scenarios()) {
    const auto t0 = std::chrono::steady_clock::now();
    Built& b = built(s);
    const auto checks = verify_axioms(b.logic);
    const double secs = b.build_seconds + seconds_since(t0);
    std::size_t checked = 0;
    for (const auto& c : checks) checked += c.checked;
    o.require(checks.size() == 8 && all_passed(checks), s.name + " " + failures_of(checks));
    o.require(secs < 60.0, s.name + " took too long");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", secs);
    o.detail << s.name << ": " << b.logic.size() << " elements, " << checked << " checks, " << buf << " s; ";
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const std::size_t expected[] = {2, 8, 32};
  for (std::size_t k = 1; k <= 3; ++k) {
    const Logic logic = even_set_logic(k).logic;
    const auto axioms = verify_axioms(logic);
    bool l5 = false;
    for (const auto& c : axioms)
      if (c.name == "L5") l5 = c.passed;
    const LatticeCheck lat = check_lattice(logic);
    o.require(logic.size() == expected[k - 1], "k=" + std::to_string(k) + " element count");
    if (k == 1) o.require(lat.is_lattice && is_boolean(logic), "k=1 not Boolean");
    if (k == 2) {
      o.require(lat.is_lattice, "k=2 not a lattice");
      o.require(l5 && all_passed(axioms), "k=2 not orthomodular");
      o.require(!is_boolean(logic), "k=2 distributive");
    }
    if (k == 3) {
      o.require(all_passed(axioms), "k=3 axioms fail: " + failures_of(axioms));
      o.require(!lat.is_lattice && lat.missing_join, "k=3 has all joins");
    }
  }
  o.detail << "element counts 2, 8, 32; k=1 Boolean; k=2 orthomodular non-distributive lattice; k=3 pair without join";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::size_t elements = 0;
  for (const auto& s : desk_scenarios()) {
    const CheckResult c = verify_observation(built(s).logic);
    o.require(c.passed, s.name + " " + c.counterexample.value_or(""));
    elements += c.checked;
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    const CheckResult c = verify_observation(even_set_logic(k).logic);
    o.require(c.passed, "even-set " + std::to_string(k));
    elements += c.checked;
  }
  o.detail << elements << " non-zero elements decomposed";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t pairs = 0;
  for (const auto& s : desk_scenarios()) {
    const CheckResult c = verify_order_lemma(built(s).logic);
    o.require(c.passed, s.name + " " + c.counterexample.value_or(""));
    pairs += c.checked;
  }
  o.detail << pairs << " (atom, element above) pairs classified and rebuilt";
  return o;
}

/// Sums every atomic decomposition of every element over a common
/// denominator and compares with the extension.
bool all_decompositions_agree(const Logic& logic, const std::vector<std::vector<Decomposition>>& decs,
                              const PRState& table, const LogicState& rho) {
  std::vector<Rational> atom_value(logic.size());
  for (std::size_t k = 0; k < logic.atoms().size(); ++k) atom_value[logic.atoms()[k]] = table.at(logic.atom_ids()[k]);
  Integer den = 1;
  for (auto a : logic.atoms()) den = lcm(den, denominator(atom_value[a]));
  std::vector<Integer> scaled(logic.size());
  for (auto a : logic.atoms()) scaled[a] = numerator(atom_value[a]) * (den / denominator(atom_value[a]));
  for (ElementIndex e = 0; e < logic.size(); ++e) {
    const Integer want = numerator(Rational(rho[e] * den));
    if (Rational(rho[e] * den) != Rational(want)) return false;
    for (const auto& d : decs[e]) {
      Integer sum = 0;
      for (auto a : d) sum += scaled[a];
      if (sum != want) return false;
    }
  }
  return true;
}

Outcome criterion5() {
  Outcome o;
  for (const auto& s : desk_scenarios()) {
    Built& b = with_polytope(s);
    const Logic& logic = b.logic;
    std::vector<std::vector<Decomposition>> decs(logic.size());
    std::size_t total = 0;
    for (ElementIndex e = 0; e < logic.size(); ++e) {
      decs[e] = atomic_decompositions(logic, e);
      total += decs[e].size();
    }
    std::vector<PRState> tables;
    for (const auto& x : b.v.vertices) tables.push_back(to_pr_state(b.h, x));
    const auto sampled = sample_pr_states(tables, 100, 20240101);
    tables.insert(tables.end(), sampled.begin(), sampled.end());
    const StateExtension ext(logic);
    std::size_t ok = 0;
    for (const auto& t : tables) {
      try {
        const LogicState rho = ext.extend(t);
        const bool agree = all_decompositions_agree(logic, decs, t, rho);
        const PRState back = ext.restrict(rho);
        const bool trips = back == t && ext.extend(back) == rho;
        o.require(agree, s.name + ": decompositions disagree");
        o.require(trips, s.name + ": round trip differs");
        ok += agree && trips ? 1 : 0;
      } catch (const WellDefinednessViolation& e) {
        o.require(false, s.name + ": " + e.what());
      }
    }
    o.detail << s.name << ": " << ok << "/" << tables.size() << " tables over " << total << " decompositions; ";
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Scenario& chsh = desk_scenarios()[0];
  Built& b = with_polytope(chsh);
  std::size_t deterministic = 0;
  std::size_t pr_type = 0;
  std::set<std::vector<Rational>> pr_oracle;
  for (const auto& p : oracle::chsh_pr_boxes()) pr_oracle.insert(p);
  std::set<std::vector<Rational>> det_oracle;
  for (const auto& d : oracle::chsh_deterministic()) det_oracle.insert(d);
  const auto system = oracle::ns_system({{2, 2}, {2, 2}});
  for (const auto& x : b.v.vertices) {
    if (is_deterministic(x)) {
      ++deterministic;
      o.require(det_oracle.count(x) == 1, "unexpected deterministic vertex");
    } else {
      pr_type += pr_oracle.count(x);
    }
    o.require(satisfies(b.h, x) && oracle::is_vertex(system, x), "a vertex fails the support-rank test");
  }
  for (const auto& p : pr_oracle) o.require(oracle::is_vertex(system, p), "PR table not extreme");
  for (const auto& d : det_oracle) o.require(oracle::is_vertex(system, d), "deterministic table not extreme");
  o.require(b.v.affine_dimension == 8, "affine dimension " + std::to_string(b.v.affine_dimension));
  o.require(b.v.vertices.size() == 24, std::to_string(b.v.vertices.size()) + " vertices");
  o.require(deterministic == 16 && pr_type == 8, "class split");

  const auto single = enumerate_vertices(ns_polytope(BoxWorldSpec::from_sizes({2}, {2})));
  o.require(single.vertices.size() == 4 && single.affine_dimension == 3, "single pair is not a 4-vertex simplex");
  o.detail << "CHSH: dimension " << b.v.affine_dimension << ", " << b.v.vertices.size() << " vertices (" << deterministic
           << " deterministic, " << pr_type << " PR-type); single pair: " << single.vertices.size() << " vertices";
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (const auto* name : {"chsh", "two-input-three-outcome"}) {
    const Scenario& s = *std::find_if(desk_scenarios().begin(), desk_scenarios().end(),
                                      [&](const Scenario& x) { return x.name == name; });
    Built& b = with_polytope(s);
    const StateExtension ext(b.logic);
    std::vector<LogicState> states;
    for (const auto& x : b.v.vertices) states.push_back(ext.extend(to_pr_state(b.h, x)));
    const CheckResult c = check_order_determining(b.logic, states);
    o.require(c.passed, s.name + " " + c.counterexample.value_or(""));
    o.detail << s.name << ": " << c.checked << " unordered pairs separated by " << states.size() << " vertex states; ";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& s : desk_scenarios()) {
    const auto checks = verify_localized_propositions(built(s).logic);
    o.require(all_passed(checks), s.name + " " + failures_of(checks));
    o.detail << s.name << ":";
    for (const auto& c : checks) o.detail << " " << c.name << "=" << c.checked;
    o.detail << "; ";
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (const auto& s : desk_scenarios()) {
    for (Side side : {Side::Left, Side::Right}) {
      const SingleBoxLogic box = single_box_logic(s.spec, side);
      std::size_t formula = 2;
      for (const auto& input : s.spec.box(side)) formula += (std::size_t{1} << input.size()) - 2;
      const std::string where = s.name + "/" + std::string(to_string(side));
      o.require(box.logic.size() == formula, where + " element count");
      o.require(box.report.blocks_boolean, where + " block not Boolean");
      o.require(box.report.blocks_intersect_trivially, where + " blocks overlap");
      o.require(box.report.cross_block_meet_join, where + " cross-block meet/join");
      o.require(box.report.orthomodular_lattice, where + " not an orthomodular lattice");
      o.require(box.report.passed(), where + " report");
      o.require(embeds_in(box, built(s).logic).passed, where + " not embedded");
      if (s.name == "chsh" && side == Side::Left) {
        o.require(box.logic.size() == 6, "CHSH left box is not 6 elements");
        o.detail << "CHSH left box: " << box.logic.size() << " elements; ";
      }
    }
  }
  o.detail << "counts match sum(2^|U_a| - 2) + 2 on both sides of all scenarios";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const Logic& logic = built(desk_scenarios()[0]).logic;
  std::vector<Observable> all;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (auto& x : input_pair_observables(logic, a, b)) all.push_back(std::move(x));
  std::size_t pairs = 0;
  for (const auto& x : all)
    for (const auto& y : all) {
      const UncertaintyWitness w = heisenberg_infimum_witness(logic, x, y);
      o.require(w.product == 0, "non-zero product");
      o.require(!state_defect(logic, w.state), "witness is not a state");
      ++pairs;
    }
  o.detail << pairs << " observable pairs over " << all.size() << " single-input-pair observables, all products 0";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion11() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "boxlogic-acceptance-determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string scenario = std::string(BOXLOGIC_TEST_DATA) + "/chsh.json";
  std::string outputs[2];
  std::string files[2];
  for (int run = 0; run < 2; ++run) {
    const auto out_dir = dir / ("run" + std::to_string(run));
    const auto stdout_file = dir / ("stdout" + std::to_string(run));
    const std::string cmd = std::string("\"") + BOXLOGIC_CLI + "\" --seed 42 --out \"" + out_dir.string() +
                            "\" verify \"" + scenario + "\" > \"" + stdout_file.string() + "\"";
    const int status = std::system(cmd.c_str());
    o.require(status == 0, "verify exited with status " + std::to_string(status));
    outputs[run] = slurp(stdout_file);
    files[run] = slurp(out_dir / "report.json");
  }
  o.require(!outputs[0].empty() && outputs[0] == outputs[1], "stdout differs between runs");
  o.require(!files[0].empty() && files[0] == files[1], "report.json differs between runs");
  o.require(outputs[0] == files[0], "stdout and report.json differ");
  o.detail << "two verify runs with seed 42: " << outputs[0].size() << " identical bytes";
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"axiom suite L1-L5, C1-C3", criterion1},
      {"even-set example", criterion2},
      {"observation: elements are disjoint unions of atoms", criterion3},
      {"order lemma classification", criterion4},
      {"PR-states are exactly the states", criterion5},
      {"non-signalling polytope", criterion6},
      {"order-determining vertex states", criterion7},
      {"localized propositions", criterion8},
      {"single-box pasting", criterion9},
      {"uncertainty relations fail", criterion10},
      {"deterministic reports", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail.str() << std::endl;
    failed += o.passed ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
