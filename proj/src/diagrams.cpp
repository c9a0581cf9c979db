#include "qlift/diagrams.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace qlift {

const char* diagram_name(DiagramId id) {
  switch (id) {
    case DiagramId::a_surjective: return "a_surjective";
    case DiagramId::b_injective: return "b_injective";
    case DiagramId::c_abelian: return "c_abelian";
    case DiagramId::d_perfect: return "d_perfect";
    case DiagramId::e_solvable: return "e_solvable";
    case DiagramId::f_coprime: return "f_coprime";
    case DiagramId::g_pgroup: return "g_pgroup";
    case DiagramId::h_odd: return "h_odd";
    case DiagramId::i_feit_thompson: return "i_feit_thompson";
    case DiagramId::k_normal_closure: return "k_normal_closure";
    case DiagramId::l_subnormal: return "l_subnormal";
    case DiagramId::m_nilpotent: return "m_nilpotent";
  }
  return "?";
}

std::vector<DiagramId> all_diagrams() {
  return {DiagramId::a_surjective, DiagramId::b_injective, DiagramId::c_abelian,
          DiagramId::d_perfect, DiagramId::e_solvable, DiagramId::f_coprime,
          DiagramId::g_pgroup, DiagramId::h_odd, DiagramId::i_feit_thompson,
          DiagramId::k_normal_closure, DiagramId::l_subnormal, DiagramId::m_nilpotent};
}

std::optional<DiagramId> diagram_from_name(std::string_view name) {
  for (DiagramId id : all_diagrams()) {
    std::string_view full = diagram_name(id);
    if (name == full || (name.size() == 1 && name[0] == full[0])) return id;
  }
  return std::nullopt;
}

bool is_definitional(DiagramId id) { return id != DiagramId::i_feit_thompson; }

std::vector<int> normal_closure_morphisms(const Universe& u) {
  std::vector<int> out;
  for (std::size_t id = 0; id < u.morphisms.size(); ++id) {
    const Morphism& m = u.morphisms[id].m;
    if (m.target.is_finite()) {
      if (normal_closure(m.target.finite(), m.gen_images).is_whole_group())
        out.push_back(static_cast<int>(id));
      continue;
    }
    if (m.target.is_trivial()) {
      out.push_back(static_cast<int>(id));
      continue;
    }
    // presented non-trivial target: qualifies only when surjective by
    // construction (every target generator is hit by a single-letter image)
    std::vector<char> hit(m.target.presented()->arity(), 0);
    for (const Word& w : m.word_images)
      if (w.letters.size() == 1 && w.letters[0] > 0) hit[w.letters[0] - 1] = 1;
    if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }))
      out.push_back(static_cast<int>(id));
  }
  return out;
}

namespace {

// Commutator-subgroup inclusions [S,S] -> S are shared across d-checks.
const Morphism& commutator_inclusion(const FiniteGroupPtr& s) {
  static std::mutex mu;
  static std::map<std::uint64_t, Morphism> memo;
  std::lock_guard lock(mu);
  auto it = memo.find(s->uid());
  if (it != memo.end()) return it->second;
  auto mat = materialize_subgroup(commutator_subgroup(s), "[" + s->name() + "," + s->name() + "]");
  auto [pos, ok] = memo.emplace(s->uid(), std::move(mat.inclusion));
  return pos->second;
}

bool perfect_memo(const FiniteGroupPtr& g) {
  static std::mutex mu;
  static std::map<std::uint64_t, bool> memo;
  {
    std::lock_guard lock(mu);
    auto it = memo.find(g->uid());
    if (it != memo.end()) return it->second;
  }
  bool value = is_perfect(g);
  std::lock_guard lock(mu);
  memo.emplace(g->uid(), value);
  return value;
}

struct Checker {
  const Universe& u;
  HomCache& cache;
  SearchBudget budget;
  const std::vector<int>* ncl_ids;

  Checker(const Universe& u_, HomCache& cache_, long long limit, const std::vector<int>* ncl)
      : u(u_), cache(cache_), budget(limit), ncl_ids(ncl) {}

  Morphism zero_to(const FiniteGroupPtr& g) const {
    auto m = trivial_morphism(GroupObject(u.trivial_group()), GroupObject(g));
    m.label = "0->" + g->name();
    return m;
  }
  Morphism to_zero(const FiniteGroupPtr& g) const {
    auto m = trivial_morphism(GroupObject(g), GroupObject(u.trivial_group()));
    m.label = g->name() + "->0";
    return m;
  }

  bool run_lift(const Morphism& f, const Morphism& g, Verdict& v, const std::string& witness) {
    v.witnesses.push_back(witness);
    auto r = lifts(f, g, budget, &cache);
    if (!r.holds && !v.counterexample) v.counterexample = r.counterexample;
    return r.holds;
  }

  // --- diagram bodies ---------------------------------------------------

  void check_a(const Morphism& subj, Verdict& v) {
    Morphism f = trivial_morphism(GroupObject(presented_trivial()), GroupObject(presented_z()));
    f.label = "0->Z";
    v.via_lifting = run_lift(f, subj, v, "0->Z");
    v.via_oracle = classify_hom(subj).surjective;
  }

  void check_b(const Morphism& subj, Verdict& v) {
    Morphism f = trivial_morphism(GroupObject(presented_z()), GroupObject(presented_trivial()));
    f.label = "Z->0";
    v.via_lifting = run_lift(f, subj, v, "Z->0");
    v.via_oracle = classify_hom(subj).injective;
  }

  void check_c(const FiniteGroupPtr& g, Verdict& v) {
    v.via_lifting = run_lift(abelianization_morphism(), to_zero(g), v, "F2->ZxZ");
    v.via_oracle = is_abelian(*g);
  }

  bool perfect_via_lifting(const FiniteGroupPtr& g, Verdict& v) {
    // form 1: G->0 lifts against A->0 for the abelianization of G, then
    // every abelian catalog group
    bool form1 = true;
    Morphism g_to_zero = to_zero(g);
    {
      auto ab = quotient(g, commutator_subgroup(g));
      form1 = run_lift(g_to_zero, to_zero(ab.group), v, "ab(" + g->name() + ")");
    }
    for (const auto& a : u.groups) {
      if (!is_abelian(*a)) continue;
      if (!form1) break;
      form1 = run_lift(g_to_zero, to_zero(a), v, a->name() + "->0");
    }
    // form 2: 0->G lifts against [S,S]->S for every catalog S (G included)
    bool form2 = true;
    Morphism zero_to_g = zero_to(g);
    for (const auto& s : u.groups) {
      if (!form2) break;
      form2 = run_lift(zero_to_g, commutator_inclusion(s), v,
                       "[S,S]->S for S=" + s->name());
    }
    if (form1 != form2)
      v.note += "form disagreement: abelian-targets=" + std::to_string(form1) +
                " commutator-inclusions=" + std::to_string(form2) + "; ";
    return form1 && form2;
  }

  void check_d(const FiniteGroupPtr& g, Verdict& v) {
    v.via_lifting = perfect_via_lifting(g, v);
    v.via_oracle = is_perfect(g);
  }

  bool solvable_via_lifting(const FiniteGroupPtr& h, Verdict& v) {
    Morphism h_to_zero = to_zero(h);
    auto core = perfect_core(h);
    bool all = true;
    if (!core.is_trivial()) {
      auto mat = materialize_subgroup(core, h->name() + "^inf");
      all = run_lift(to_zero(mat.group), h_to_zero, v, h->name() + "^inf->0");
    }
    for (const auto& g : u.groups) {
      if (!all) break;
      if (!perfect_memo(g)) continue;
      all = run_lift(to_zero(g), h_to_zero, v, g->name() + "->0");
    }
    return all;
  }

  void check_e(const FiniteGroupPtr& h, Verdict& v) {
    v.via_lifting = solvable_via_lifting(h, v);
    v.via_oracle = is_solvable(h);
  }

  bool coprime_via_lifting(const FiniteGroupPtr& h, int p, Verdict& v) {
    auto zp = presented_z_mod(p);
    Morphism f1 = trivial_morphism(GroupObject(presented_trivial()), GroupObject(zp));
    f1.label = "0->Z/" + std::to_string(p);
    bool form1 = run_lift(f1, zero_to(h), v, "0->Z/" + std::to_string(p));
    Morphism f2 = trivial_morphism(GroupObject(zp), GroupObject(presented_trivial()));
    f2.label = "Z/" + std::to_string(p) + "->0";
    bool form2 = run_lift(f2, to_zero(h), v, "Z/" + std::to_string(p) + "->0");
    if (form1 != form2)
      v.note += "form disagreement on p=" + std::to_string(p) + "; ";
    return form1 && form2;
  }

  void check_f(const FiniteGroupPtr& h, int p, Verdict& v) {
    v.via_lifting = coprime_via_lifting(h, p, v);
    v.via_oracle = order_coprime_to(*h, p);
  }

  void check_g(const FiniteGroupPtr& g, int p, Verdict& v) {
    bool all = true;
    // exact witnesses: Z/q for the other primes dividing |G|
    int n = g->order();
    for (int q = 2; q <= n && all; ++q) {
      if (q == p || n % q != 0) continue;
      bool is_prime = true;
      for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) is_prime = false;
      if (!is_prime) continue;
      auto cq = build_group(GroupSpec::cyclic(q));
      all = run_lift(zero_to(cq), zero_to(g), v, "0->C" + std::to_string(q));
    }
    for (const auto& h : u.groups) {
      if (!all) break;
      if (h->order() % p == 0) continue;
      all = run_lift(zero_to(h), zero_to(g), v, "0->" + h->name());
    }
    v.via_lifting = all;
    v.via_oracle = is_p_group(*g, p);
  }

  void check_h(const FiniteGroupPtr& h, Verdict& v) {
    v.via_lifting = coprime_via_lifting(h, 2, v);
    v.via_oracle = has_odd_order(*h);
  }

  void check_i(Verdict& v) {
    int odd_count = 0, nonabelian_odd = 0;
    std::string lifting_ce, oracle_ce;
    for (const auto& h : u.groups) {
      Verdict scratch;
      bool odd_lift = coprime_via_lifting(h, 2, scratch);
      bool odd_orac = has_odd_order(*h);
      if (odd_orac) {
        ++odd_count;
        if (!is_abelian(*h)) ++nonabelian_odd;
        if (!is_solvable(h) && oracle_ce.empty()) oracle_ce = h->name();
      }
      if (odd_lift) {
        Verdict sub;
        sub.diagram = DiagramId::e_solvable;
        if (!solvable_via_lifting(h, sub) && lifting_ce.empty()) {
          lifting_ce = h->name();
          if (sub.counterexample && !v.counterexample)
            v.counterexample = sub.counterexample;
        }
      }
    }
    v.via_lifting = lifting_ce.empty();
    v.via_oracle = oracle_ce.empty();
    std::ostringstream note;
    note << "odd-order groups checked: " << odd_count << " (non-abelian: " << nonabelian_odd
         << "); ";
    if (v.via_lifting && v.via_oracle) note << "corroborated";
    else note << "counterexample: " << (lifting_ce.empty() ? oracle_ce : lifting_ce);
    v.note += note.str();
    v.witnesses.push_back("all odd-order catalog groups");
  }

  void check_k(const Morphism& subj, Verdict& v) {
    const auto& h = subj.target.finite();
    auto closure = normal_closure(h, subj.gen_images);
    v.via_oracle = closure.is_whole_group();
    bool all = true;
    if (!closure.is_whole_group()) {
      auto q = quotient(h, closure);
      all = run_lift(subj, zero_to(q.group), v, "0->" + h->name() + "/ncl");
    }
    for (const auto& g : u.groups) {
      if (!all) break;
      all = run_lift(subj, zero_to(g), v, "0->" + g->name());
    }
    v.via_lifting = all;
  }

  // Shared by diagrams l and m: does `subj` right-lift against every
  // normal-closure morphism? When the oracle refutes subnormality of the
  // image, the witness square against D -> D' (the minimal subnormal
  // overgroup) is checked first; it is the exact witness that keeps the
  // finite class decisive.
  bool right_lifts_against_ncl_class(const Morphism& subj, const Subgroup& image, Verdict& v) {
    bool all = true;
    std::optional<SeriesReport> chain = subnormal_oracle(image);
    if (!chain) {
      auto dprime = minimal_subnormal_over(image);
      auto mat = materialize_subgroup(dprime, subj.target.name() + ".D'");
      std::vector<int> emap(subj.source.is_finite() ? subj.source.finite()->order() : 0);
      for (std::size_t a = 0; a < emap.size(); ++a)
        emap[a] = mat.from_parent[subj.elem_map[a]];
      auto witness = morphism_from_elem_map(subj.source.finite(), mat.group, std::move(emap),
                                            "D->D'");
      bool ncl_ok = normal_closure(mat.group, witness.gen_images).is_whole_group();
      v.note += std::string("witness D->D' (|D'|=") + std::to_string(dprime.size()) +
                ") normal-closure " + (ncl_ok ? "verified" : "FAILED") + "; ";
      all = run_lift(witness, subj, v, "D->D' (|D'|=" + std::to_string(dprime.size()) + ")");
    }
    std::vector<int> local;
    const std::vector<int>* ids = ncl_ids;
    if (!ids) {
      local = normal_closure_morphisms(u);
      ids = &local;
    }
    for (int id : *ids) {
      if (!all) break;
      all = run_lift(u.morphisms[id].m, subj, v,
                     "m" + std::to_string(id) + ":" + u.morphisms[id].m.label);
    }
    return all;
  }

  void check_l(const Morphism& subj, Verdict& v) {
    auto flags = classify_hom(subj);
    auto image = image_subgroup(subj);
    v.via_oracle = flags.injective && subnormal_oracle(image).has_value();
    v.via_lifting = right_lifts_against_ncl_class(subj, image, v);
    if (v.via_lifting && !flags.injective)
      v.note += "WARNING: lifting held for a non-injective subject; ";
  }

  void check_m(const FiniteGroupPtr& g, Verdict& v) {
    long long sq = static_cast<long long>(g->order()) * g->order();
    if (sq > kGroupCoreMaxOrder)
      throw Error(ErrorKind::order_bound_exceeded,
                  "diagonal target order " + std::to_string(sq) + " exceeds the group bound");
    auto prod = direct_product(g, g);
    Morphism diag = *prod.diagonal;
    diag.label = "diag:" + g->name();
    auto image = image_subgroup(diag);
    v.via_oracle = is_nilpotent(g);
    v.via_lifting = right_lifts_against_ncl_class(diag, image, v);
  }
};

std::string subject_description(DiagramId id, const Subject& s, const Universe& u) {
  std::ostringstream os;
  if (id == DiagramId::i_feit_thompson) return "universe";
  if (s.prime) os << "p=" << *s.prime << " ";
  if (s.group_id) os << u.groups[*s.group_id]->name();
  if (s.morphism_id)
    os << "m" << *s.morphism_id << ":" << u.morphisms[*s.morphism_id].m.label;
  return os.str();
}

}  // namespace

namespace {

void require_subject(DiagramId id, const Subject& s) {
  bool needs_group = false, needs_morphism = false;
  switch (id) {
    case DiagramId::a_surjective:
    case DiagramId::b_injective:
    case DiagramId::k_normal_closure:
    case DiagramId::l_subnormal:
      needs_morphism = true;
      break;
    case DiagramId::i_feit_thompson:
      break;
    default:
      needs_group = true;
      break;
  }
  if (needs_group && !s.group_id)
    throw Error(ErrorKind::arity_mismatch,
                std::string(diagram_name(id)) + " takes a group subject");
  if (needs_morphism && !s.morphism_id)
    throw Error(ErrorKind::arity_mismatch,
                std::string(diagram_name(id)) + " takes a morphism subject");
}

}  // namespace

Verdict check_diagram(DiagramId id, const Subject& subject, const Universe& u, HomCache& cache,
                      long long budget_limit, const std::vector<int>* ncl_ids) {
  Verdict v;
  v.diagram = id;
  Checker checker(u, cache, budget_limit, ncl_ids);
  try {
    require_subject(id, subject);
    v.subject = subject_description(id, subject, u);
    switch (id) {
      case DiagramId::a_surjective:
        checker.check_a(u.morphisms.at(*subject.morphism_id).m, v);
        break;
      case DiagramId::b_injective:
        checker.check_b(u.morphisms.at(*subject.morphism_id).m, v);
        break;
      case DiagramId::c_abelian:
        checker.check_c(u.groups.at(*subject.group_id), v);
        break;
      case DiagramId::d_perfect:
        checker.check_d(u.groups.at(*subject.group_id), v);
        break;
      case DiagramId::e_solvable:
        checker.check_e(u.groups.at(*subject.group_id), v);
        break;
      case DiagramId::f_coprime:
        checker.check_f(u.groups.at(*subject.group_id), subject.prime.value_or(2), v);
        break;
      case DiagramId::g_pgroup:
        checker.check_g(u.groups.at(*subject.group_id), subject.prime.value_or(2), v);
        break;
      case DiagramId::h_odd:
        checker.check_h(u.groups.at(*subject.group_id), v);
        break;
      case DiagramId::i_feit_thompson:
        checker.check_i(v);
        break;
      case DiagramId::k_normal_closure:
        checker.check_k(u.morphisms.at(*subject.morphism_id).m, v);
        break;
      case DiagramId::l_subnormal:
        checker.check_l(u.morphisms.at(*subject.morphism_id).m, v);
        break;
      case DiagramId::m_nilpotent:
        checker.check_m(u.groups.at(*subject.group_id), v);
        break;
    }
    v.agree = v.via_lifting == v.via_oracle;
  } catch (const Error& e) {
    v.error = std::string(error_kind_name(e.kind())) + ": " + e.what();
    v.agree = false;
  } catch (const std::exception& e) {
    v.error = e.what();
    v.agree = false;
  }
  return v;
}

std::vector<Verdict> verify_universe(const Universe& u, const SweepOptions& opts) {
  auto diagrams = opts.diagrams.empty() ? all_diagrams() : opts.diagrams;
  auto primes = u.prime_list();

  bool needs_ncl = false;
  for (DiagramId id : diagrams)
    if (id == DiagramId::l_subnormal || id == DiagramId::m_nilpotent) needs_ncl = true;
  std::vector<int> ncl_ids;
  if (needs_ncl) ncl_ids = normal_closure_morphisms(u);

  auto group_selected = [&](int gid) {
    return opts.subject_filter.empty() || u.groups[gid]->name() == opts.subject_filter;
  };
  auto morphism_selected = [&](int mid) {
    return opts.subject_filter.empty() ||
           u.morphisms[mid].m.label.find(opts.subject_filter) != std::string::npos;
  };

  std::vector<std::pair<DiagramId, Subject>> tasks;
  for (DiagramId id : diagrams) {
    switch (id) {
      case DiagramId::a_surjective:
      case DiagramId::b_injective:
      case DiagramId::k_normal_closure:
        for (std::size_t mid = 0; mid < u.morphisms.size(); ++mid)
          if (u.morphisms[mid].m.finite_ends() && morphism_selected(static_cast<int>(mid)))
            tasks.push_back({id, Subject{{}, static_cast<int>(mid), {}}});
        break;
      case DiagramId::c_abelian:
      case DiagramId::d_perfect:
      case DiagramId::e_solvable:
      case DiagramId::h_odd:
        for (std::size_t gid = 0; gid < u.groups.size(); ++gid)
          if (group_selected(static_cast<int>(gid)))
            tasks.push_back({id, Subject{static_cast<int>(gid), {}, {}}});
        break;
      case DiagramId::f_coprime:
      case DiagramId::g_pgroup:
        for (int p : primes)
          for (std::size_t gid = 0; gid < u.groups.size(); ++gid)
            if (group_selected(static_cast<int>(gid)))
              tasks.push_back({id, Subject{static_cast<int>(gid), {}, p}});
        break;
      case DiagramId::i_feit_thompson:
        tasks.push_back({id, Subject{}});
        break;
      case DiagramId::l_subnormal:
        for (std::size_t mid = 0; mid < u.morphisms.size(); ++mid)
          if (u.morphisms[mid].kind == MorphismKind::inclusion &&
              morphism_selected(static_cast<int>(mid)))
            tasks.push_back({id, Subject{{}, static_cast<int>(mid), {}}});
        break;
      case DiagramId::m_nilpotent:
        for (std::size_t gid = 0; gid < u.groups.size(); ++gid) {
          long long sq = static_cast<long long>(u.groups[gid]->order()) * u.groups[gid]->order();
          if (sq <= kGroupCoreMaxOrder && group_selected(static_cast<int>(gid)))
            tasks.push_back({id, Subject{static_cast<int>(gid), {}, {}}});
        }
        break;
    }
  }

  std::vector<Verdict> verdicts(tasks.size());
  HomCache cache;
  std::atomic<std::size_t> next{0};
  int jobs = std::max(1, opts.jobs);
  auto worker = [&] {
    while (true) {
      std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) break;
      verdicts[t] = check_diagram(tasks[t].first, tasks[t].second, u, cache, opts.budget,
                                  needs_ncl ? &ncl_ids : nullptr);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }
  return verdicts;
}

bool overall_pass(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (!v.error.empty()) return false;
    if (is_definitional(v.diagram) && !v.agree) return false;
  }
  return true;
}

}  // namespace qlift
