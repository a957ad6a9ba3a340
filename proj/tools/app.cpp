#include "app.hpp"

#include <boxlogic/compatibility.hpp>
#include <boxlogic/errors.hpp>
#include <boxlogic/export.hpp>
#include <boxlogic/logic.hpp>
#include <boxlogic/observables.hpp>
#include <boxlogic/polytope.hpp>
#include <boxlogic/states.hpp>
#include <boxlogic/version.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace boxlogic::app {

namespace {

using nlohmann::json;

json to_json(const CheckResult& c) {
  json notes = json::object();
  for (const auto& [k, v] : c.notes) notes[k] = v;
  return {{"name", c.name},
          {"passed", c.passed},
          {"checked", c.checked},
          {"failures", c.failures},
          {"counterexample", c.counterexample ? json(*c.counterexample) : json(nullptr)},
          {"notes", std::move(notes)}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << text;
}

std::filesystem::path out_path(const RunConfig& config, const std::string& name) {
  return std::filesystem::path(config.out_dir.value_or(".")) / name;
}

/// Round trips P -> rho -> P and rho -> P -> rho for every table.
CheckResult check_state_correspondence(const StateExtension& ext, std::span<const PRState> tables) {
  CheckResult r("state_correspondence");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    ++r.checked;
    try {
      const LogicState rho = ext.extend(tables[i]);
      if (auto d = ext.defect(rho)) {
        r.fail("table " + std::to_string(i) + ": extension is not a state: " + *d);
        continue;
      }
      const PRState back = ext.restrict(rho);
      if (!(back == tables[i])) r.fail("table " + std::to_string(i) + ": P -> rho -> P differs");
      if (!(ext.extend(back) == rho)) r.fail("table " + std::to_string(i) + ": rho -> P -> rho differs");
    } catch (const WellDefinednessViolation& e) {
      r.fail("table " + std::to_string(i) + ": " + e.what());
    }
  }
  r.note("method", "lowest_point_branching");
  return r;
}

CheckResult check_heisenberg(const Logic& logic) {
  CheckResult r("heisenberg_failure");
  const auto& spec = logic.gamma()->spec();
  std::vector<Observable> all;
  for (std::size_t a = 0; a < spec.left_inputs(); ++a)
    for (std::size_t b = 0; b < spec.right_inputs(); ++b) {
      auto obs = input_pair_observables(logic, a, b);
      all.insert(all.end(), std::make_move_iterator(obs.begin()), std::make_move_iterator(obs.end()));
    }
  constexpr std::size_t kExplicitPairs = 500;
  if (all.size() <= kExplicitPairs) {
    for (const auto& x : all)
      for (const auto& y : all) {
        ++r.checked;
        const auto w = heisenberg_infimum_witness(logic, x, y);
        if (w.product != 0) r.fail("non-zero variance product at point " + std::to_string(w.point));
      }
    r.note("pairs", "explicit");
  } else {
    // A zero factor makes every product through that observable zero.
    const LogicState rho = point_state(logic, 0);
    for (const auto& x : all) {
      ++r.checked;
      if (variance(x, rho) != 0) r.fail("non-zero variance at point 0");
    }
    r.note("pairs", "per_observable_zero_factor");
  }
  r.note("observables", std::to_string(all.size()));

  // Contrast: the uniform state is not dispersion-free.
  const LogicState uniform = state_from_pr(logic, uniform_pr_state(spec));
  const auto& x = all.size() > 1 ? all[1] : all[0];
  r.note("uniform_variance_product", to_string(variance(x, uniform) * variance(x, uniform)));
  return r;
}

json check_list(const std::vector<CheckResult>& checks) {
  json list = json::array();
  for (const auto& c : checks) list.push_back(to_json(c));
  return list;
}

}  // namespace

std::string scenario_hash(const BoxWorldSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : spec.to_json()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json report_header(const RunConfig& config, const BoxWorldSpec* spec) {
  json j;
  j["tool"] = "boxlogic";
  j["version"] = kVersion;
  j["command"] = config.command;
  j["scenario_hash"] = spec ? json(scenario_hash(*spec)) : json(nullptr);
  j["caps"] = {{"gamma", config.limits.max_gamma},
               {"closure", config.limits.max_closure},
               {"polytope_vars", config.limits.max_polytope_vars}};
  j["seed"] = config.seed;
  return j;
}

json build_summary(const RunConfig& config, const BoxWorldSpec& spec) {
  const Logic logic = close_logic(spec, config.limits);
  json j = report_header(config, &spec);
  j["gamma_size"] = logic.ground_size();
  j["elements"] = logic.size();
  j["atoms"] = logic.atoms().size();
  const bool lattice = is_lattice(logic);
  j["lattice"] = lattice;
  if (!lattice) {
    j["boolean"] = false;
  } else if (logic.size() <= 512) {
    j["boolean"] = is_boolean(logic);
  } else {
    j["boolean"] = nullptr;
  }
  if (config.out_dir) write_file(out_path(config, "logic.json"), logic_to_json(logic) + "\n");
  return j;
}

json verify_report(const RunConfig& config, const BoxWorldSpec& spec) {
  const Logic logic = close_logic(spec, config.limits);
  json j = report_header(config, &spec);
  j["samples"] = config.samples;
  j["logic"] = {{"gamma_size", logic.ground_size()},
                {"elements", logic.size()},
                {"atoms", logic.atoms().size()},
                {"lattice", is_lattice(logic)}};

  std::vector<CheckResult> checks = verify_axioms(logic);
  checks.push_back(verify_observation(logic, config.limits));
  checks.push_back(verify_order_lemma(logic));
  for (auto& c : verify_localized_propositions(logic)) checks.push_back(std::move(c));

  json pasting = json::object();
  for (Side side : {Side::Left, Side::Right}) {
    const SingleBoxLogic box = single_box_logic(spec, side, config.limits);
    pasting[std::string(to_string(side))] = json::parse(pasting_report_json(box.report));
    CheckResult structure("pasting_" + std::string(to_string(side)) + "_structure");
    ++structure.checked;
    if (box.report.element_count != box.report.expected_count) {
      structure.fail(std::to_string(box.report.element_count) + " elements, expected " +
                     std::to_string(box.report.expected_count));
    }
    if (!box.report.blocks_boolean) structure.fail("a block is not Boolean");
    if (!box.report.blocks_intersect_trivially) structure.fail("two blocks share more than 0 and 1");
    if (!box.report.cross_block_meet_join) structure.fail("a cross-block meet or join is not 0 or 1");
    if (!box.report.orthomodular_lattice) structure.fail("not an orthomodular lattice");
    checks.push_back(std::move(structure));
    for (auto c : box.report.checks) {
      c.name = "pasting_" + std::string(to_string(side)) + "_" + c.name;
      checks.push_back(std::move(c));
    }
    CheckResult embed = embeds_in(box, logic);
    embed.name = "pasting_" + std::string(to_string(side)) + "_" + embed.name;
    checks.push_back(std::move(embed));
  }
  j["pasting"] = std::move(pasting);

  const HRepresentation h = ns_polytope(spec, config.limits);
  const VertexEnumeration v = enumerate_vertices(h);
  std::vector<PRState> tables;
  std::size_t deterministic = 0;
  for (const auto& x : v.vertices) {
    tables.push_back(to_pr_state(h, x));
    deterministic += is_deterministic(x) ? 1 : 0;
  }
  j["polytope"] = {{"variables", h.dimension()},
                   {"vertices", v.vertices.size()},
                   {"deterministic", deterministic},
                   {"affine_dimension", v.affine_dimension}};
  const StateExtension ext(logic);
  std::vector<LogicState> vertex_states;
  for (const auto& t : tables) vertex_states.push_back(ext.extend(t));
  const auto sampled = sample_pr_states(tables, config.samples, config.seed);
  CheckResult samples_valid("sampled_states_valid");
  for (const auto& s : sampled) {
    ++samples_valid.checked;
    if (!validate_pr_state(s).empty()) samples_valid.fail("a convex combination of vertices is invalid");
  }
  checks.push_back(std::move(samples_valid));
  tables.insert(tables.end(), sampled.begin(), sampled.end());
  checks.push_back(check_state_correspondence(ext, tables));
  checks.push_back(check_order_determining(logic, vertex_states));
  checks.push_back(check_heisenberg(logic));

  j["checks"] = check_list(checks);
  j["passed"] = all_passed(checks);
  return j;
}

json even_set_report(const RunConfig& config, std::size_t k) {
  const EvenSetLogic fixture = even_set_logic(k);
  const Logic& logic = fixture.logic;
  json j = report_header(config, nullptr);
  j["k"] = k;
  j["elements"] = logic.size();
  const auto axioms = verify_axioms(logic);
  bool l5 = false;
  for (const auto& c : axioms)
    if (c.name == "L5") l5 = c.passed;
  const LatticeCheck lattice = check_lattice(logic);
  const bool boolean = lattice.is_lattice && is_boolean(logic);
  j["lattice"] = lattice.is_lattice;
  j["orthomodular_lattice"] = lattice.is_lattice && l5;
  j["distributive"] = boolean;
  j["boolean"] = boolean;
  if (lattice.witness) {
    j["missing_bound"] = {{"kind", lattice.missing_join ? "join" : "meet"},
                          {"pair", {describe(logic, lattice.witness->first),
                                    describe(logic, lattice.witness->second)}}};
  }
  j["checks"] = check_list(axioms);
  j["passed"] = all_passed(axioms);
  return j;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Quantum logics of two-box worlds"};
  cli.set_version_flag("--version", std::string(kVersion));
  cli.require_subcommand(1);
  RunConfig config;
  cli.add_option("--cap-gamma", config.limits.max_gamma, "Largest ground set")
      ->check(CLI::PositiveNumber);
  cli.add_option("--cap-closure", config.limits.max_closure, "Largest logic")
      ->check(CLI::PositiveNumber);
  cli.add_option("--cap-vars", config.limits.max_polytope_vars, "Most polytope variables")
      ->check(CLI::PositiveNumber);
  cli.add_option("--seed", config.seed, "Seed for sampled states");
  cli.add_option("--out", config.out_dir, "Directory for exported files");

  auto* build = cli.add_subcommand("build", "Close the atoms of a scenario into its logic");
  build->add_option("scenario", config.scenario)->required();

  auto* verify = cli.add_subcommand("verify", "Run every check on a scenario");
  verify->add_option("scenario", config.scenario)->required();
  verify->add_option("--samples", config.samples, "Random states on top of the vertices");

  auto* states = cli.add_subcommand("states", "Non-signalling polytope and PR-state files");
  states->require_subcommand(1);
  auto* vertices = states->add_subcommand("vertices", "Enumerate polytope vertices as CSV");
  vertices->add_option("scenario", config.scenario)->required();
  std::string table_path;
  auto* check = states->add_subcommand("check", "Validate a PR-state file");
  check->add_option("table", table_path)->required();
  check->add_option("--scenario", config.scenario, "Scenario the table belongs to");

  auto* exp = cli.add_subcommand("export", "Write logic, diagram or vertex files");
  exp->require_subcommand(1);
  auto* exp_json = exp->add_subcommand("json", "logic.json and polytope.json");
  exp_json->add_option("scenario", config.scenario)->required();
  auto* exp_dot = exp->add_subcommand("dot", "hasse.dot and one pasting diagram per box");
  exp_dot->add_option("scenario", config.scenario)->required();
  auto* exp_csv = exp->add_subcommand("csv", "vertices.csv");
  exp_csv->add_option("scenario", config.scenario)->required();

  auto* fixtures = cli.add_subcommand("fixtures", "Built-in example logics");
  fixtures->require_subcommand(1);
  std::size_t k = 1;
  auto* even = fixtures->add_subcommand("even-set", "Even subsets of a 2k-point set");
  even->add_option("--k", k, "Half the ground set size")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    json report;
    std::string report_name;
    if (*build) {
      config.command = "build";
      report = build_summary(config, BoxWorldSpec::load(config.scenario));
      report_name = "summary.json";
    } else if (*verify) {
      config.command = "verify";
      report = verify_report(config, BoxWorldSpec::load(config.scenario));
      report_name = "report.json";
    } else if (*vertices) {
      config.command = "states vertices";
      const auto spec = BoxWorldSpec::load(config.scenario);
      const auto h = ns_polytope(spec, config.limits);
      const std::string csv = vertices_csv(h, enumerate_vertices(h));
      if (config.out_dir) {
        write_file(out_path(config, "vertices.csv"), csv);
      } else {
        out << csv;
      }
      return kOk;
    } else if (*check) {
      config.command = "states check";
      const PRState table = PRState::load(table_path);
      std::optional<BoxWorldSpec> spec;
      if (!config.scenario.empty()) {
        spec = BoxWorldSpec::load(config.scenario);
      } else {
        spec = BoxWorldSpec::from_sizes(table.left_sizes(), table.right_sizes());
      }
      const auto violations = validate_pr_state(*spec, table);
      report = report_header(config, &*spec);
      json list = json::array();
      for (const auto& v : violations) {
        list.push_back({{"kind", std::string(to_string(v.kind))},
                        {"where", v.where},
                        {"residual", to_string(v.residual)}});
      }
      report["valid"] = violations.empty();
      report["violations"] = std::move(list);
      if (violations.empty()) {
        const Logic logic = close_logic(*spec, config.limits);
        const LogicState rho = state_from_pr(logic, table);
        report["well_defined"] = true;
        report["elements"] = logic.size();
        report["value_of_one"] = to_string(rho[*logic.one()]);
      }
      out << report.dump(2) << "\n";
      return violations.empty() ? kOk : kInvalidInput;
    } else if (*exp_json || *exp_dot || *exp_csv) {
      const auto spec = BoxWorldSpec::load(config.scenario);
      json written = json::array();
      auto emit = [&](const std::string& name, const std::string& text) {
        const auto path = out_path(config, name);
        write_file(path, text);
        written.push_back(path.string());
      };
      if (*exp_json) {
        config.command = "export json";
        emit("logic.json", logic_to_json(close_logic(spec, config.limits)) + "\n");
        emit("polytope.json", ns_polytope(spec, config.limits).to_json() + "\n");
      } else if (*exp_dot) {
        config.command = "export dot";
        emit("hasse.dot", hasse_dot(close_logic(spec, config.limits)));
        emit("pasting-left.dot", pasting_dot(single_box_logic(spec, Side::Left, config.limits)));
        emit("pasting-right.dot", pasting_dot(single_box_logic(spec, Side::Right, config.limits)));
      } else {
        config.command = "export csv";
        const auto h = ns_polytope(spec, config.limits);
        emit("vertices.csv", vertices_csv(h, enumerate_vertices(h)));
      }
      report = report_header(config, &spec);
      report["written"] = std::move(written);
    } else if (*even) {
      config.command = "fixtures even-set";
      report = even_set_report(config, k);
      report_name = "even-set-" + std::to_string(k) + ".json";
    }
    const std::string text = report.dump(2) + "\n";
    if (config.out_dir && !report_name.empty()) write_file(out_path(config, report_name), text);
    out << text;
    if (report.contains("passed") && !report["passed"].get<bool>()) return kTheoremViolation;
    return kOk;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << "\n";
    return kTheoremViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace boxlogic::app
