#include "qlift/verify.hpp"

#include <chrono>
#include <map>
#include <sstream>

namespace qlift {

namespace {

bool needs_pool(const std::vector<DiagramId>& diagrams) {
  auto list = diagrams.empty() ? all_diagrams() : diagrams;
  for (DiagramId id : list)
    switch (id) {
      case DiagramId::a_surjective:
      case DiagramId::b_injective:
      case DiagramId::k_normal_closure:
      case DiagramId::l_subnormal:
      case DiagramId::m_nilpotent:
        return true;
      default:
        break;
    }
  return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Report run_verification(const VerifyOptions& options) {
  Report report;
  report.options = options;

  auto t0 = std::chrono::steady_clock::now();
  Universe u;
  if (!options.universe_file.empty()) {
    u = load_universe(options.universe_file);
  } else {
    u = build_universe(options.universe);
    report.timing.emplace_back("build_universe", seconds_since(t0));
    if (needs_pool(options.sweep.diagrams)) {
      auto t1 = std::chrono::steady_clock::now();
      morphism_pool(u);
      report.timing.emplace_back("morphism_pool", seconds_since(t1));
    }
  }
  report.universe_digest = universe_digest(u);
  report.group_count = static_cast<int>(u.groups.size());
  report.morphism_count = static_cast<int>(u.morphisms.size());

  auto t2 = std::chrono::steady_clock::now();
  report.verdicts = verify_universe(u, options.sweep);
  report.timing.emplace_back("sweep", seconds_since(t2));
  report.timing.emplace_back("total", seconds_since(t0));
  report.pass = overall_pass(report.verdicts);
  return report;
}

ordered_json morphism_brief_json(const Morphism& m) {
  ordered_json j;
  j["source"] = m.source.name();
  j["target"] = m.target.name();
  if (!m.label.empty()) j["label"] = m.label;
  if (m.target.is_finite()) {
    j["gen_images"] = m.gen_images;
  } else {
    ordered_json words = ordered_json::array();
    for (const auto& w : m.word_images) words.push_back(w.letters);
    j["word_images"] = std::move(words);
  }
  return j;
}

ordered_json verdict_to_json(const Verdict& v) {
  ordered_json j;
  j["diagram"] = diagram_name(v.diagram);
  j["subject"] = v.subject;
  if (!v.error.empty()) {
    j["error"] = v.error;
    return j;
  }
  j["via_lifting"] = v.via_lifting;
  j["via_oracle"] = v.via_oracle;
  j["agree"] = v.agree;
  j["witnesses"] = v.witnesses;
  if (v.counterexample) {
    ordered_json sq;
    sq["f"] = morphism_brief_json(v.counterexample->f);
    sq["g"] = morphism_brief_json(v.counterexample->g);
    sq["i"] = morphism_brief_json(v.counterexample->i);
    sq["j"] = morphism_brief_json(v.counterexample->j);
    j["counterexample"] = std::move(sq);
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

ordered_json report_to_json(const Report& r, bool include_timing) {
  ordered_json j;
  j["version"] = r.tool_version;
  ordered_json cfg;
  cfg["max_order"] = r.options.universe.max_order;
  cfg["closure_depth"] = r.options.universe.closure_depth;
  cfg["subgroup_max_generators"] = r.options.universe.subgroup_max_generators;
  ordered_json seeds = ordered_json::array();
  for (const auto& s : r.options.universe.seeds) seeds.push_back(s.display());
  cfg["seeds"] = std::move(seeds);
  ordered_json diagram_list = ordered_json::array();
  for (DiagramId id : r.options.sweep.diagrams) diagram_list.push_back(diagram_name(id));
  cfg["diagrams"] = std::move(diagram_list);
  cfg["budget"] = r.options.sweep.budget;
  cfg["jobs"] = r.options.sweep.jobs;
  if (!r.options.sweep.subject_filter.empty())
    cfg["subject"] = r.options.sweep.subject_filter;
  if (!r.options.universe_file.empty()) cfg["universe_file"] = r.options.universe_file;
  j["config"] = std::move(cfg);

  ordered_json uni;
  uni["digest"] = r.universe_digest;
  uni["group_count"] = r.group_count;
  uni["morphism_count"] = r.morphism_count;
  j["universe"] = std::move(uni);

  ordered_json verdicts = ordered_json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_to_json(v));
  j["verdicts"] = std::move(verdicts);

  if (include_timing) {
    ordered_json timing;
    for (const auto& [phase, secs] : r.timing) timing[phase] = secs;
    j["timing"] = std::move(timing);
  }
  j["overall_pass"] = r.pass;
  return j;
}

std::string render_report_text(const Report& r) {
  std::ostringstream os;
  os << "universe: " << r.group_count << " groups, " << r.morphism_count
     << " morphisms (digest " << r.universe_digest << ")\n";

  std::map<DiagramId, std::pair<int, int>> tally;  // diagram -> (agree, total)
  std::vector<const Verdict*> failures, errors;
  for (const auto& v : r.verdicts) {
    if (!v.error.empty()) {
      errors.push_back(&v);
      continue;
    }
    auto& t = tally[v.diagram];
    ++t.second;
    if (v.agree) ++t.first;
    if (!v.agree && is_definitional(v.diagram)) failures.push_back(&v);
    if (v.diagram == DiagramId::i_feit_thompson) os << "feit-thompson: " << v.note << "\n";
  }
  for (const auto& [id, t] : tally)
    os << "  " << diagram_name(id) << ": " << t.first << "/" << t.second << " agree\n";
  for (const Verdict* v : failures)
    os << "DISAGREE " << diagram_name(v->diagram) << " subject " << v->subject
       << " lifting=" << v->via_lifting << " oracle=" << v->via_oracle << "\n";
  for (const Verdict* v : errors)
    os << "ERROR " << diagram_name(v->diagram) << " subject " << v->subject << ": " << v->error
       << "\n";
  os << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace qlift
