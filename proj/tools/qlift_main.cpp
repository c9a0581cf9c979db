// qlift: decide Quillen lifting properties between morphisms of finite
// groups by exhaustive search, and verify the diagram characterizations of
// group properties against classical oracles.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "qlift/expr.hpp"
#include "qlift/verify.hpp"

namespace {

using namespace qlift;

constexpr int kExitPass = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitBudget = 4;

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
  out << j.dump(2) << "\n";
}

int cmd_classify(const std::string& expr, const std::string& json_path, int max_order) {
  auto obj = parse_group_object(expr, max_order);
  if (!obj.is_finite())
    throw Error(ErrorKind::unsupported_square, "classify needs a finite group, got " + expr);
  const auto& g = obj.finite();

  auto derived = derived_series(g);
  auto lower = lower_central_series(g);
  ordered_json j;
  j["name"] = g->name();
  j["order"] = g->order();
  j["abelian"] = is_abelian(*g);
  j["perfect"] = is_perfect(g);
  j["solvable"] = is_solvable(g);
  j["nilpotent"] = is_nilpotent(g);
  j["odd_order"] = has_odd_order(*g);
  ordered_json pj = ordered_json::array();
  for (int p : primes_up_to(g->order()))
    if (g->order() % p == 0) {
      ordered_json entry;
      entry["p"] = p;
      entry["p_group"] = is_p_group(*g, p);
      pj.push_back(std::move(entry));
    }
  j["prime_analysis"] = std::move(pj);
  j["derived_series_orders"] = derived.term_orders();
  j["lower_central_series_orders"] = lower.term_orders();

  if (!json_path.empty()) write_json_file(json_path, j);
  std::cout << g->name() << ": order " << g->order() << "\n"
            << "  abelian: " << (is_abelian(*g) ? "true" : "false")
            << ", perfect: " << (is_perfect(g) ? "true" : "false")
            << ", solvable: " << (is_solvable(g) ? "true" : "false")
            << ", nilpotent: " << (is_nilpotent(g) ? "true" : "false")
            << ", odd order: " << (has_odd_order(*g) ? "true" : "false") << "\n";
  std::cout << "  derived series orders:";
  for (int o : derived.term_orders()) std::cout << " " << o;
  std::cout << "\n  lower central series orders:";
  for (int o : lower.term_orders()) std::cout << " " << o;
  std::cout << "\n  p-groups:";
  for (const auto& entry : j["prime_analysis"])
    std::cout << " p=" << entry["p"] << ":" << (entry["p_group"].get<bool>() ? "yes" : "no");
  std::cout << "\n";
  return kExitPass;
}

int cmd_lift(const std::string& f_expr, const std::string& g_expr, const std::string& json_path,
             long long budget_limit, int max_order) {
  Morphism f = parse_morphism_expr(f_expr, max_order);
  Morphism g = parse_morphism_expr(g_expr, max_order);
  SearchBudget budget(budget_limit);
  auto result = lifts(f, g, budget);

  ordered_json j;
  j["f"] = morphism_brief_json(f);
  j["g"] = morphism_brief_json(g);
  j["holds"] = result.holds;
  if (result.counterexample) {
    ordered_json sq;
    sq["i"] = morphism_brief_json(result.counterexample->i);
    sq["j"] = morphism_brief_json(result.counterexample->j);
    j["counterexample"] = std::move(sq);
  }
  if (result.witness_lift) j["witness_lift"] = morphism_brief_json(*result.witness_lift);
  if (!json_path.empty()) write_json_file(json_path, j);

  if (result.holds) {
    std::cout << f_expr << "  ⋔  " << g_expr << ": holds\n";
    if (result.witness_lift)
      std::cout << "  last lift: " << result.witness_lift->describe() << "\n";
  } else {
    std::cout << f_expr << "  ⋔  " << g_expr << ": fails\n";
    const auto& sq = *result.counterexample;
    std::cout << "  counterexample square:\n"
              << "    f: " << sq.f.describe() << "\n"
              << "    g: " << sq.g.describe() << "\n"
              << "    i: " << sq.i.describe() << "\n"
              << "    j: " << sq.j.describe() << "\n";
  }
  return kExitPass;
}

int cmd_negation(const std::string& side_name, const std::vector<std::string>& class_exprs,
                 int max_order, long long budget_limit) {
  UniverseConfig config;
  config.max_order = max_order;
  auto u = build_universe(config);
  morphism_pool(u);

  // the given morphisms are appended to the pool so ids stay uniform
  std::vector<int> p_ids;
  for (const auto& e : class_exprs) {
    u.morphisms.push_back(PoolEntry{parse_morphism_expr(e, max_order),
                                    MorphismKind::standard, "cli class"});
    p_ids.push_back(static_cast<int>(u.morphisms.size()) - 1);
  }
  std::vector<int> universe_ids;
  for (std::size_t i = 0; i + class_exprs.size() < u.morphisms.size(); ++i)
    if (u.morphisms[i].m.finite_ends()) universe_ids.push_back(static_cast<int>(i));

  Side side = side_name == "left" ? Side::left : Side::right;
  auto table = u.morphism_table();
  HomCache cache;
  auto result = negation_class(p_ids, side, universe_ids, table, budget_limit, &cache);
  std::cout << "negation class (" << side_name << ") has " << result.size() << " of "
            << universe_ids.size() << " pool morphisms:\n";
  for (int id : result)
    std::cout << "  m" << id << ": " << u.morphisms[id].m.label << "\n";
  return kExitPass;
}

int cmd_universe(const UniverseConfig& config, const std::string& out_path) {
  auto u = build_universe(config);
  morphism_pool(u);
  if (!out_path.empty()) save_universe(u, out_path);
  std::cout << "universe: " << u.groups.size() << " groups, " << u.morphisms.size()
            << " morphisms, digest " << universe_digest(u) << "\n";
  std::map<int, int> by_order;
  for (const auto& g : u.groups) ++by_order[g->order()];
  std::cout << "  orders:";
  for (const auto& [o, c] : by_order) std::cout << " " << o << ":" << c;
  std::cout << "\n";
  // coverage against the known group counts at small orders
  const std::map<int, int> known = {{1, 1}, {2, 1},  {3, 1}, {4, 2},  {5, 1},  {6, 2},
                                    {7, 1}, {8, 5},  {9, 2}, {10, 2}, {12, 5}, {16, 14},
                                    {24, 15}};
  std::cout << "  coverage:";
  for (const auto& [o, total] : known) {
    if (o > config.max_order) break;
    std::cout << " " << o << ":" << by_order[o] << "/" << total;
    if (by_order[o] < total) std::cout << "(short)";
  }
  std::cout << "\n";
  if (!u.notes.empty())
    std::cout << "  notes: " << u.notes.size() << " (first: " << u.notes.front() << ")\n";
  if (!out_path.empty()) std::cout << "saved to " << out_path << "\n";
  return kExitPass;
}

int cmd_verify(VerifyOptions options, const std::string& json_path) {
  auto report = run_verification(options);
  if (!json_path.empty()) write_json_file(json_path, report_to_json(report));
  std::cout << render_report_text(report);
  return report.pass ? kExitPass : kExitDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quillen lifting properties over finite groups"};
  app.require_subcommand(1);

  std::string group_expr, f_expr, g_expr, json_path, out_path, universe_file, side = "right";
  std::string seeds_csv, diagrams_csv, subject;
  std::vector<std::string> class_exprs;
  int max_order = 16;
  int closure_depth = 2;
  long long budget = 100'000'000;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;

  auto* classify = app.add_subcommand("classify", "oracle classification of a finite group");
  classify->add_option("group", group_expr)->required();
  classify->add_option("--json", json_path);
  classify->add_option("--max-order", max_order)->default_val(kGroupCoreMaxOrder);

  auto* lift = app.add_subcommand("lift", "decide f ⋔ g for two morphism expressions");
  lift->add_option("f", f_expr)->required();
  lift->add_option("g", g_expr)->required();
  lift->add_option("--json", json_path);
  lift->add_option("--budget", budget);
  lift->add_option("--max-order", max_order)->default_val(kGroupCoreMaxOrder);

  auto* negation = app.add_subcommand("negation", "restricted Quillen negation over the pool");
  negation->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
  negation->add_option("--class", class_exprs, "morphism expressions")->required();
  negation->add_option("--max-order", max_order);
  negation->add_option("--budget", budget);

  auto* universe = app.add_subcommand("universe", "build and save a universe");
  universe->add_option("--max-order", max_order);
  universe->add_option("--closure-depth", closure_depth);
  universe->add_option("--seeds", seeds_csv, "comma-separated group expressions");
  universe->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "run the diagram verification sweep");
  verify->add_option("--max-order", max_order);
  verify->add_option("--closure-depth", closure_depth);
  verify->add_option("--seeds", seeds_csv);
  verify->add_option("--diagram", diagrams_csv, "comma-separated diagram ids (a..m)");
  verify->add_option("--subject", subject, "restrict group subjects by name");
  verify->add_option("--json", json_path);
  verify->add_option("--universe-file", universe_file, "load a saved universe");
  verify->add_option("--budget", budget);
  verify->add_option("--jobs", jobs);

  CLI11_PARSE(app, argc, argv);

  auto parse_seeds = [&]() {
    std::vector<GroupSpec> seeds;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= seeds_csv.size(); ++i)
      if (i == seeds_csv.size() || seeds_csv[i] == ',') {
        if (i > start) seeds.push_back(parse_group_spec(seeds_csv.substr(start, i - start)));
        start = i + 1;
      }
    return seeds;
  };

  try {
    if (classify->parsed()) return cmd_classify(group_expr, json_path, max_order);
    if (lift->parsed()) return cmd_lift(f_expr, g_expr, json_path, budget, max_order);
    if (negation->parsed()) return cmd_negation(side, class_exprs, max_order, budget);
    if (universe->parsed()) {
      UniverseConfig config;
      config.max_order = max_order;
      config.closure_depth = closure_depth;
      config.seeds = parse_seeds();
      return cmd_universe(config, out_path);
    }
    if (verify->parsed()) {
      VerifyOptions options;
      options.universe.max_order = max_order;
      options.universe.closure_depth = closure_depth;
      options.universe.seeds = parse_seeds();
      options.sweep.budget = budget;
      options.sweep.jobs = jobs;
      options.sweep.subject_filter = subject;
      options.universe_file = universe_file;
      std::size_t start = 0;
      for (std::size_t i = 0; i <= diagrams_csv.size(); ++i)
        if (i == diagrams_csv.size() || diagrams_csv[i] == ',') {
          if (i > start) {
            auto id = diagram_from_name(diagrams_csv.substr(start, i - start));
            if (!id)
              throw Error(ErrorKind::parse_error,
                          "unknown diagram '" + diagrams_csv.substr(start, i - start) + "'");
            options.sweep.diagrams.push_back(*id);
          }
          start = i + 1;
        }
      return cmd_verify(std::move(options), json_path);
    }
  } catch (const Error& e) {
    std::cerr << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::parse_error:
      case ErrorKind::invalid_spec: return kExitParse;
      case ErrorKind::unsupported_square:
      case ErrorKind::arity_mismatch: return kExitUnsupported;
      case ErrorKind::search_budget_exceeded: return kExitBudget;
      default: return kExitDisagreement;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDisagreement;
  }
  return kExitPass;
}
