#include <doctest.h>

#include <map>
#include <set>

#include "qlift/diagrams.hpp"

using namespace qlift;

namespace {

struct Fixture {
  Universe u;
  HomCache cache;

  explicit Fixture(int max_order, bool pool = true) {
    UniverseConfig config;
    config.max_order = max_order;
    u = build_universe(std::move(config));
    if (pool) morphism_pool(u);
  }

  int group_id(const GroupSpec& spec) {
    int id = u.find_isomorphic_id(*build_group(spec));
    REQUIRE(id >= 0);
    return id;
  }

  Verdict group_check(DiagramId d, const GroupSpec& spec, std::optional<int> p = {}) {
    Subject s;
    s.group_id = group_id(spec);
    s.prime = p;
    return check_diagram(d, s, u, cache);
  }
};

}  // namespace

TEST_CASE("diagram c: abelian") {
  Fixture fx(8, false);
  auto s3 = fx.group_check(DiagramId::c_abelian, GroupSpec::symmetric(3));
  CHECK_FALSE(s3.via_lifting);
  CHECK_FALSE(s3.via_oracle);
  CHECK(s3.agree);
  REQUIRE(s3.counterexample.has_value());
  auto imgs = s3.counterexample->i.gen_images;
  const auto& g = fx.u.groups[fx.group_id(GroupSpec::symmetric(3))];
  CHECK(g->mul(imgs[0], imgs[1]) != g->mul(imgs[1], imgs[0]));

  CHECK(fx.group_check(DiagramId::c_abelian, GroupSpec::cyclic(8)).via_lifting);
  CHECK(fx.group_check(DiagramId::c_abelian, GroupSpec::cyclic(8)).agree);
}

TEST_CASE("diagram e: solvable, with the derived-core exact witness") {
  Fixture fx(8, false);
  auto v = fx.group_check(DiagramId::e_solvable, GroupSpec::symmetric(3));
  CHECK(v.via_lifting);
  CHECK(v.via_oracle);
  CHECK(v.agree);
}

TEST_CASE("diagram m: nilpotent") {
  Fixture fx(8);
  auto q8 = fx.group_check(DiagramId::m_nilpotent, GroupSpec::dicyclic(8));
  CHECK(q8.via_lifting);
  CHECK(q8.via_oracle);
  CHECK(q8.agree);

  auto s3 = fx.group_check(DiagramId::m_nilpotent, GroupSpec::symmetric(3));
  CHECK_FALSE(s3.via_lifting);
  CHECK_FALSE(s3.via_oracle);
  CHECK(s3.agree);
  CHECK(s3.note.find("normal-closure verified") != std::string::npos);
}

TEST_CASE("diagram d: both formulations agree on every subject") {
  Fixture fx(8, false);
  for (std::size_t gid = 0; gid < fx.u.groups.size(); ++gid) {
    Subject s;
    s.group_id = static_cast<int>(gid);
    auto v = check_diagram(DiagramId::d_perfect, s, fx.u, fx.cache);
    CAPTURE(fx.u.groups[gid]->name());
    CHECK(v.error.empty());
    CHECK(v.note.find("form disagreement") == std::string::npos);
    CHECK(v.agree);
  }
}

TEST_CASE("diagram f: both formulations agree on every subject and prime") {
  Fixture fx(8, false);
  for (std::size_t gid = 0; gid < fx.u.groups.size(); ++gid)
    for (int p : {2, 3, 5}) {
      Subject s;
      s.group_id = static_cast<int>(gid);
      s.prime = p;
      auto v = check_diagram(DiagramId::f_coprime, s, fx.u, fx.cache);
      CHECK(v.note.find("form disagreement") == std::string::npos);
      CHECK(v.agree);
    }
}

TEST_CASE("full sweep agrees on a small universe") {
  Fixture fx(8);
  SweepOptions opts;
  opts.jobs = 2;
  auto verdicts = verify_universe(fx.u, opts);
  CHECK(overall_pass(verdicts));
  int count = 0;
  for (const auto& v : verdicts) {
    CHECK(v.error.empty());
    if (is_definitional(v.diagram)) CHECK(v.agree);
    ++count;
  }
  CHECK(count > 100);
}

TEST_CASE("diagram l matches the subnormality oracle and witnesses verify") {
  Fixture fx(8);
  auto ncl = normal_closure_morphisms(fx.u);
  int checked = 0, not_subnormal = 0;
  for (std::size_t mid = 0; mid < fx.u.morphisms.size(); ++mid) {
    if (fx.u.morphisms[mid].kind != MorphismKind::inclusion) continue;
    Subject s;
    s.morphism_id = static_cast<int>(mid);
    auto v = check_diagram(DiagramId::l_subnormal, s, fx.u, fx.cache, 100'000'000, &ncl);
    CHECK(v.error.empty());
    CHECK(v.agree);
    ++checked;
    if (!v.via_oracle) {
      ++not_subnormal;
      REQUIRE(v.counterexample.has_value());
      CHECK(v.note.find("normal-closure verified") != std::string::npos);
      // the counterexample's left morphism has the normal-closure property
      const auto& ce = *v.counterexample;
      CHECK(normal_closure(ce.f.target.finite(), ce.f.gen_images).is_whole_group());
    }
    if (v.via_lifting) CHECK(classify_hom(fx.u.morphisms[mid].m).injective);
  }
  CHECK(checked > 20);
  CHECK(not_subnormal > 0);
}

TEST_CASE("exact witnesses alone decide e and g") {
  Fixture fx(8, false);
  SearchBudget budget;
  for (std::size_t gid = 0; gid < fx.u.groups.size(); ++gid) {
    const auto& h = fx.u.groups[gid];
    Subject s;
    s.group_id = static_cast<int>(gid);

    // e: the witness core(H) -> 0 alone gives the full verdict
    auto full = check_diagram(DiagramId::e_solvable, s, fx.u, fx.cache);
    auto core = perfect_core(h);
    bool witness_only = true;
    if (!core.is_trivial()) {
      auto mat = materialize_subgroup(core);
      auto zero = fx.u.trivial_group();
      witness_only = lifts(trivial_morphism(GroupObject(mat.group), GroupObject(zero)),
                           trivial_morphism(GroupObject(h), GroupObject(zero)), budget,
                           &fx.cache)
                         .holds;
    }
    CHECK(witness_only == full.via_lifting);

    // g: the cyclic q-witnesses alone give the full verdict
    for (int p : {2, 3}) {
      Subject sp;
      sp.group_id = static_cast<int>(gid);
      sp.prime = p;
      auto gfull = check_diagram(DiagramId::g_pgroup, sp, fx.u, fx.cache);
      bool cyclic_only = true;
      for (int q = 2; q <= h->order(); ++q) {
        if (q == p || h->order() % q != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= q; ++d)
          if (q % d == 0) prime = false;
        if (!prime) continue;
        auto cq = build_group(GroupSpec::cyclic(q));
        cyclic_only =
            cyclic_only &&
            lifts(trivial_morphism(GroupObject(fx.u.trivial_group()), GroupObject(cq)),
                  trivial_morphism(GroupObject(fx.u.trivial_group()), GroupObject(h)), budget,
                  &fx.cache)
                .holds;
      }
      CHECK(cyclic_only == gfull.via_lifting);
    }
  }
}

TEST_CASE("exact witnesses alone decide k and l") {
  Fixture fx(8);
  SearchBudget budget;
  auto ncl = normal_closure_morphisms(fx.u);
  int k_checked = 0, l_checked = 0;
  for (std::size_t mid = 0; mid < fx.u.morphisms.size(); ++mid) {
    const auto& entry = fx.u.morphisms[mid];
    if (!entry.m.finite_ends()) continue;
    Subject s;
    s.morphism_id = static_cast<int>(mid);

    // k: the quotient by the normal closure of the image is decisive
    if (k_checked < 40) {
      ++k_checked;
      auto full = check_diagram(DiagramId::k_normal_closure, s, fx.u, fx.cache);
      const auto& h = entry.m.target.finite();
      auto closure = normal_closure(h, entry.m.gen_images);
      bool witness_only = true;
      if (!closure.is_whole_group()) {
        auto q = quotient(h, closure);
        witness_only = lifts(entry.m,
                             trivial_morphism(GroupObject(fx.u.trivial_group()),
                                              GroupObject(q.group)),
                             budget, &fx.cache)
                           .holds;
      }
      CHECK(witness_only == full.via_lifting);
    }

    // l: the square D -> D' is decisive whenever the oracle refutes
    if (entry.kind == MorphismKind::inclusion && l_checked < 40) {
      ++l_checked;
      auto full = check_diagram(DiagramId::l_subnormal, s, fx.u, fx.cache, 100'000'000, &ncl);
      auto image = image_subgroup(entry.m);
      bool witness_only = true;
      if (!subnormal_oracle(image)) {
        auto mat = materialize_subgroup(minimal_subnormal_over(image));
        std::vector<int> emap(entry.m.source.finite()->order());
        for (std::size_t a = 0; a < emap.size(); ++a)
          emap[a] = mat.from_parent[entry.m.elem_map[a]];
        auto witness = morphism_from_elem_map(entry.m.source.finite(), mat.group,
                                              std::move(emap), "D->D'");
        witness_only = lifts(witness, entry.m, budget, &fx.cache).holds;
      }
      CHECK(witness_only == full.via_lifting);
    }
  }
  CHECK(k_checked == 40);
  CHECK(l_checked > 20);
}

TEST_CASE("right-quantified verdicts never flip false to true in a larger universe") {
  Fixture small(6);
  Fixture big(12);
  for (DiagramId d : {DiagramId::d_perfect, DiagramId::e_solvable, DiagramId::m_nilpotent}) {
    for (std::size_t gid = 0; gid < small.u.groups.size(); ++gid) {
      const auto& g = small.u.groups[gid];
      if (d == DiagramId::m_nilpotent &&
          static_cast<long long>(g->order()) * g->order() > kGroupCoreMaxOrder)
        continue;
      int big_id = big.u.find_isomorphic_id(*g);
      REQUIRE(big_id >= 0);
      Subject ss, sb;
      ss.group_id = static_cast<int>(gid);
      sb.group_id = big_id;
      auto vs = check_diagram(d, ss, small.u, small.cache);
      auto vb = check_diagram(d, sb, big.u, big.cache);
      if (!vs.via_lifting) CHECK_FALSE(vb.via_lifting);
    }
  }
}

TEST_CASE("feit-thompson corroboration on a small universe") {
  Fixture fx(15, false);
  Subject s;
  auto v = check_diagram(DiagramId::i_feit_thompson, s, fx.u, fx.cache);
  CHECK(v.via_lifting);
  CHECK(v.via_oracle);
  CHECK(v.note.find("corroborated") != std::string::npos);
  CHECK_FALSE(is_definitional(DiagramId::i_feit_thompson));
}

TEST_CASE("diagram names round trip") {
  for (DiagramId id : all_diagrams()) {
    auto back = diagram_from_name(diagram_name(id));
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK(diagram_from_name("l") == DiagramId::l_subnormal);
  CHECK_FALSE(diagram_from_name("z").has_value());
}

TEST_CASE("normal_closure_morphisms contains identities and the abelianization") {
  Fixture fx(8);
  auto ncl = normal_closure_morphisms(fx.u);
  std::set<int> in_class(ncl.begin(), ncl.end());
  std::map<std::string, bool> found;
  for (int id : ncl) {
    const auto& m = fx.u.morphisms[id].m;
    if (m.label == "ab") found["ab"] = true;
    if (fx.u.morphisms[id].kind == MorphismKind::inclusion && m.finite_ends() &&
        m.source.finite()->order() == m.target.finite()->order())
      found["identity"] = true;
  }
  CHECK(found["ab"]);
  CHECK(found["identity"]);

  // every member has the property; a transposition normally generates S3 but
  // the proper normal A3 does not
  int s3 = fx.group_id(GroupSpec::symmetric(3));
  const auto& s3g = fx.u.groups[s3];
  bool saw_order2_into_s3 = false, saw_order3_into_s3 = false;
  for (std::size_t id = 0; id < fx.u.morphisms.size(); ++id) {
    const auto& e = fx.u.morphisms[id];
    if (e.kind != MorphismKind::inclusion || !e.m.finite_ends()) continue;
    if (in_class.contains(static_cast<int>(id)))
      CHECK(normal_closure(e.m.target.finite(), e.m.gen_images).is_whole_group());
    if (e.m.target.uid() != s3g->uid()) continue;
    int src_order = e.m.source.finite()->order();
    if (src_order == 2) {
      CHECK(in_class.contains(static_cast<int>(id)));
      saw_order2_into_s3 = true;
    }
    if (src_order == 3) {
      CHECK_FALSE(in_class.contains(static_cast<int>(id)));
      saw_order3_into_s3 = true;
    }
  }
  CHECK(saw_order2_into_s3);
  CHECK(saw_order3_into_s3);
}
