#pragma once

#include "qlift/universe.hpp"

namespace qlift {

enum class DiagramId {
  a_surjective,
  b_injective,
  c_abelian,
  d_perfect,
  e_solvable,
  f_coprime,
  g_pgroup,
  h_odd,
  i_feit_thompson,
  k_normal_closure,
  l_subnormal,
  m_nilpotent,
};

const char* diagram_name(DiagramId id);
/// Accepts the short letter ("a") or the full name ("a_surjective").
std::optional<DiagramId> diagram_from_name(std::string_view name);
std::vector<DiagramId> all_diagrams();
/// Diagram i is a theorem check, not a definition; it is excluded from the
/// agreement gate.
bool is_definitional(DiagramId id);

/// What a diagram is checked against: a catalog group, a pool morphism, a
/// prime parameter where applicable, or the whole universe (diagram i).
struct Subject {
  std::optional<int> group_id;
  std::optional<int> morphism_id;
  std::optional<int> prime;
};

struct Verdict {
  DiagramId diagram;
  std::string subject;
  bool via_lifting = false;
  bool via_oracle = false;
  bool agree = false;
  std::vector<std::string> witnesses;
  std::optional<LiftingSquare> counterexample;
  std::string note;
  std::string error;  // nonempty when the check failed to run
};

/// Pool morphisms N -> H whose image has normal closure H (the left class of
/// diagrams l and m). Finite targets are verified by the oracle; presented
/// targets qualify when trivial or surjective by construction.
std::vector<int> normal_closure_morphisms(const Universe& u);

/// Evaluate one diagram: the lifting side with its witness class (exact
/// witnesses first, then the universe class) against the classical oracle.
Verdict check_diagram(DiagramId id, const Subject& subject, const Universe& u, HomCache& cache,
                      long long budget_limit = 100'000'000,
                      const std::vector<int>* ncl_ids = nullptr);

struct SweepOptions {
  std::vector<DiagramId> diagrams;  // empty = all
  int jobs = 1;
  long long budget = 100'000'000;
  std::string subject_filter;  // restrict group subjects by exact name
};

/// One verdict per (diagram, subject) pair, in canonical order. Errors are
/// embedded per verdict; the sweep never aborts.
std::vector<Verdict> verify_universe(const Universe& u, const SweepOptions& opts);

/// All definitional verdicts agree and nothing errored.
bool overall_pass(const std::vector<Verdict>& verdicts);

}  // namespace qlift
