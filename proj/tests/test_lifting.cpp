#include <doctest.h>

#include <random>
#include <set>

#include "qlift/lifting.hpp"
#include "qlift/oracles.hpp"
#include "qlift/universe.hpp"

using namespace qlift;

namespace {

FiniteGroupPtr make(const GroupSpec& s) { return build_group(s); }

Morphism zero_to_presented(const PresentedGroupPtr& p) {
  return trivial_morphism(GroupObject(presented_trivial()), GroupObject(p));
}
Morphism presented_to_zero(const PresentedGroupPtr& p) {
  return trivial_morphism(GroupObject(p), GroupObject(presented_trivial()));
}

Morphism sign_map(const FiniteGroupPtr& s3) {
  int r = -1;
  for (int a = 0; a < s3->order(); ++a)
    if (s3->element_order(a) == 3) {
      r = a;
      break;
    }
  auto a3 = normal_closure(s3, std::vector<int>{r});
  return quotient(s3, a3).projection;
}

Morphism first_subgroup_inclusion_of_order(const FiniteGroupPtr& g, int order) {
  for (const auto& s : all_subgroups(g))
    if (s.size() == order) return materialize_subgroup(s).inclusion;
  throw std::runtime_error("no such subgroup");
}

}  // namespace

TEST_CASE("find_lift") {
  auto s3 = make(GroupSpec::symmetric(3));
  SearchBudget budget;

  SUBCASE("identity on the left always lifts via i") {
    auto f = identity_morphism(s3);
    auto g = sign_map(s3);
    auto i = identity_morphism(s3);
    auto j = compose(i, g);
    LiftingSquare sq{f, g, i, j};
    REQUIRE(square_commutes(sq));
    auto lift = find_lift(sq, budget);
    REQUIRE(lift.has_value());
    CHECK(lift->elem_map == i.elem_map);
  }

  SUBCASE("surjectivity square: preimage of the C2 generator") {
    auto f = zero_to_presented(presented_z());
    auto g = sign_map(s3);
    auto c2 = g.target.finite();
    auto i = trivial_morphism(f.source, g.source);
    auto j = presented_morphism(presented_z(), c2, {1});
    LiftingSquare sq{f, g, i, j};
    REQUIRE(square_commutes(sq));
    auto lift = find_lift(sq, budget);
    REQUIRE(lift.has_value());
    // the lift picks an odd permutation, so one of order 2
    CHECK(s3->element_order(lift->gen_images[0]) == 2);
  }

  SUBCASE("commutativity is required") {
    auto f = presented_to_zero(presented_z());
    auto g = first_subgroup_inclusion_of_order(s3, 2);
    int transposition = g.elem_map[1];
    auto i = presented_morphism(presented_z(), g.source.finite(), {1});
    auto j = trivial_morphism(f.target, GroupObject(s3));
    LiftingSquare bad{f, g, i, j};
    CHECK_FALSE(square_commutes(bad));
    CHECK_THROWS_AS(find_lift(bad, budget), Error);
    CHECK(transposition != 0);

    // with trivial i the square commutes and the trivial lift works
    auto i0 = trivial_morphism(GroupObject(presented_z()), g.source);
    LiftingSquare good{f, g, i0, j};
    REQUIRE(square_commutes(good));
    CHECK(find_lift(good, budget).has_value());
  }
}

TEST_CASE("lifts: surjectivity and abelianness probes") {
  auto s3 = make(GroupSpec::symmetric(3));
  SearchBudget budget;

  SUBCASE("0->Z against a surjection holds") {
    auto r = lifts(zero_to_presented(presented_z()), sign_map(s3), budget);
    CHECK(r.holds);
  }

  SUBCASE("0->Z against a non-surjective inclusion fails") {
    auto incl = first_subgroup_inclusion_of_order(s3, 2);
    auto r = lifts(zero_to_presented(presented_z()), incl, budget);
    REQUIRE_FALSE(r.holds);
    REQUIRE(r.counterexample.has_value());
    // the failing j picks an element with no preimage in the subgroup
    int elt = r.counterexample->j.gen_images[0];
    for (int v : incl.elem_map) CHECK(v != elt);
  }

  SUBCASE("abelianization against C2->0 holds") {
    auto c2 = make(GroupSpec::cyclic(2));
    auto r = lifts(abelianization_morphism(),
                   trivial_morphism(GroupObject(c2), GroupObject(make(GroupSpec::cyclic(1)))),
                   budget);
    CHECK(r.holds);
  }

  SUBCASE("abelianization against S3->0 fails on a non-commuting pair") {
    auto r = lifts(abelianization_morphism(),
                   trivial_morphism(GroupObject(s3), GroupObject(make(GroupSpec::cyclic(1)))),
                   budget);
    REQUIRE_FALSE(r.holds);
    REQUIRE(r.counterexample.has_value());
    auto imgs = r.counterexample->i.gen_images;
    REQUIRE(imgs.size() == 2);
    CHECK(s3->mul(imgs[0], imgs[1]) != s3->mul(imgs[1], imgs[0]));
  }
}

TEST_CASE("lifts rejects presented right-hand sides") {
  SearchBudget budget;
  auto f = zero_to_presented(presented_z());
  try {
    lifts(f, abelianization_morphism(), budget);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported_square);
  }
}

TEST_CASE("injectivity characterization via Z->0") {
  SearchBudget budget;
  auto s3 = make(GroupSpec::symmetric(3));
  auto f = presented_to_zero(presented_z());
  CHECK(lifts(f, first_subgroup_inclusion_of_order(s3, 2), budget).holds);
  CHECK(lifts(f, identity_morphism(s3), budget).holds);
  CHECK_FALSE(lifts(f, sign_map(s3), budget).holds);
}

namespace {

struct PoolFixture {
  Universe u;
  std::vector<Morphism> table;
  std::vector<int> finite_ids;
  HomCache cache;

  explicit PoolFixture(int max_order) {
    UniverseConfig config;
    config.max_order = max_order;
    u = build_universe(std::move(config));
    morphism_pool(u);
    table = u.morphism_table();
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table[i].finite_ends()) finite_ids.push_back(static_cast<int>(i));
  }

  int id_by_label(const std::string& label) const {
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table[i].label == label) return static_cast<int>(i);
    throw std::runtime_error("missing pool morphism " + label);
  }
};

}  // namespace

TEST_CASE("negation classes over a small pool") {
  PoolFixture fx(8);
  const long long budget = 100'000'000;

  SUBCASE("right negation of {0->Z} is exactly the surjections") {
    std::vector<int> p = {fx.id_by_label("0->Z")};
    auto result = negation_class(p, Side::right, fx.finite_ids, fx.table, budget, &fx.cache);
    std::set<int> got(result.begin(), result.end());
    for (int id : fx.finite_ids)
      CHECK(got.contains(id) == classify_hom(fx.table[id]).surjective);
  }

  SUBCASE("right negation of {Z->0} is exactly the injections") {
    std::vector<int> p = {fx.id_by_label("Z->0")};
    auto result = negation_class(p, Side::right, fx.finite_ids, fx.table, budget, &fx.cache);
    std::set<int> got(result.begin(), result.end());
    for (int id : fx.finite_ids)
      CHECK(got.contains(id) == classify_hom(fx.table[id]).injective);
  }

  SUBCASE("empty class gives the whole universe") {
    auto result =
        negation_class(std::vector<int>{}, Side::right, fx.finite_ids, fx.table, budget, &fx.cache);
    CHECK(result == fx.finite_ids);
  }

  SUBCASE("antitone in the class") {
    std::vector<int> p1 = {fx.id_by_label("0->Z")};
    std::vector<int> p2 = {fx.id_by_label("0->Z"), fx.id_by_label("Z->0")};
    auto n1 = negation_class(p1, Side::right, fx.finite_ids, fx.table, budget, &fx.cache);
    auto n2 = negation_class(p2, Side::right, fx.finite_ids, fx.table, budget, &fx.cache);
    std::set<int> s1(n1.begin(), n1.end());
    for (int id : n2) CHECK(s1.contains(id));
  }
}

TEST_CASE("restrict_to_terminal") {
  PoolFixture fx(8);
  std::vector<int> all_ids(fx.table.size());
  for (std::size_t i = 0; i < all_ids.size(); ++i) all_ids[i] = static_cast<int>(i);

  auto from_zero = restrict_to_terminal(all_ids, TerminalMode::from_zero, fx.table);
  auto to_zero = restrict_to_terminal(all_ids, TerminalMode::to_zero, fx.table);
  for (int id : from_zero) CHECK(fx.table[id].source.is_trivial());
  for (int id : to_zero) CHECK(fx.table[id].target.is_trivial());
  CHECK(restrict_to_terminal(std::vector<int>{}, TerminalMode::from_zero, fx.table).empty());

  // exactly one morphism to the terminal object per catalog object
  int objects = static_cast<int>(fx.u.groups.size()) + 3 +
                static_cast<int>(fx.u.std_objects.z_mod_p.size());
  std::size_t to_zero_count = 0;
  for (int id : to_zero)
    if (fx.u.morphisms[id].kind == MorphismKind::standard &&
        fx.table[id].label.find("->0") != std::string::npos)
      ++to_zero_count;
  CHECK(to_zero_count == static_cast<std::size_t>(objects));
}

TEST_CASE("identity lifts on both sides") {
  PoolFixture fx(8);
  SearchBudget budget;
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(fx.finite_ids.size()) - 1);
  for (int trial = 0; trial < 25; ++trial) {
    const auto& m = fx.table[fx.finite_ids[pick(rng)]];
    auto id_src = identity_morphism(m.source.finite());
    auto id_tgt = identity_morphism(m.target.finite());
    CHECK(lifts(id_src, m, budget, &fx.cache).holds);
    CHECK(lifts(m, id_tgt, budget, &fx.cache).holds);
  }
}

TEST_CASE("composition closure of right lifts (sampled)") {
  PoolFixture fx(8);
  SearchBudget budget;
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(fx.finite_ids.size()) - 1);
  int done = 0;
  while (done < 40) {
    const auto& f = fx.table[fx.finite_ids[pick(rng)]];
    const auto& g1 = fx.table[fx.finite_ids[pick(rng)]];
    const auto& g2 = fx.table[fx.finite_ids[pick(rng)]];
    if (!g1.target.same_object(g2.source)) continue;
    ++done;
    if (lifts(f, g1, budget, &fx.cache).holds && lifts(f, g2, budget, &fx.cache).holds)
      CHECK(lifts(f, compose(g1, g2), budget, &fx.cache).holds);
  }
}

TEST_CASE("double negation inflates") {
  PoolFixture fx(6);
  const long long budget = 100'000'000;
  // P = the surjections among the pool (finite ends)
  std::vector<int> p;
  for (int id : fx.finite_ids)
    if (classify_hom(fx.table[id]).surjective) p.push_back(id);
  auto pr = negation_class(p, Side::right, fx.finite_ids, fx.table, budget, &fx.cache);
  auto prl = negation_class(pr, Side::left, fx.finite_ids, fx.table, budget, &fx.cache);
  std::set<int> closure(prl.begin(), prl.end());
  for (int id : p) CHECK(closure.contains(id));
}

TEST_CASE("lifting verdicts are isomorphism invariant (sampled)") {
  PoolFixture fx(8);
  SearchBudget budget;
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(fx.finite_ids.size()) - 1);

  auto automorphism_of = [&](const FiniteGroupPtr& g) -> std::optional<Morphism> {
    SearchBudget b;
    std::optional<Morphism> found;
    for_each_hom(GroupObject(g), g, b, [&](const Morphism& m) {
      auto flags = classify_hom(m);
      if (flags.injective && flags.surjective && !m.is_identity_shape()) {
        found = m;
        return false;
      }
      return true;
    });
    return found;
  };

  int done = 0, trials = 0;
  while (done < 12 && trials < 400) {
    ++trials;
    const auto& f = fx.table[fx.finite_ids[pick(rng)]];
    const auto& g = fx.table[fx.finite_ids[pick(rng)]];
    if (f.source.finite()->order() > 8 || g.source.finite()->order() > 8) continue;
    auto sigma = automorphism_of(f.source.finite());
    auto tau = automorphism_of(g.target.finite());
    if (!sigma && !tau) continue;
    ++done;
    bool base = lifts(f, g, budget, &fx.cache).holds;
    if (sigma) CHECK(lifts(compose(*sigma, f), g, budget, &fx.cache).holds == base);
    if (tau) CHECK(lifts(f, compose(g, *tau), budget, &fx.cache).holds == base);
  }
  CHECK(done > 0);
}
