#include <doctest.h>

#include <random>

#include "qlift/presented.hpp"

using namespace qlift;

TEST_CASE("eval_word basics") {
  auto s3 = build_group(GroupSpec::symmetric(3));
  int e = s3->identity();

  CHECK(eval_word(Word{}, std::vector<int>{}, *s3) == e);

  int t = -1;
  for (int a = 0; a < 6; ++a)
    if (s3->element_order(a) == 2) {
      t = a;
      break;
    }
  CHECK(eval_word(Word{{1, 1}}, std::vector<int>{t}, *s3) == e);

  // commutator of two non-commuting elements is not the identity
  int u = -1;
  for (int a = 0; a < 6; ++a)
    if (s3->mul(t, a) != s3->mul(a, t)) {
      u = a;
      break;
    }
  REQUIRE(u >= 0);
  CHECK(eval_word(Word{{1, 2, -1, -2}}, std::vector<int>{t, u}, *s3) != e);
}

TEST_CASE("eval_word respects concatenation") {
  auto s4 = build_group(GroupSpec::symmetric(4));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> letter(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  std::uniform_int_distribution<int> image(0, s4->order() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    Word w1, w2;
    for (int i = 0; i < trial % 5; ++i)
      w1.letters.push_back(sign(rng) ? letter(rng) : -letter(rng));
    for (int i = 0; i < (trial + 2) % 4; ++i)
      w2.letters.push_back(sign(rng) ? letter(rng) : -letter(rng));
    std::vector<int> images = {image(rng), image(rng), image(rng)};
    CHECK(eval_word(w1.concat(w2), images, *s4) ==
          s4->mul(eval_word(w1, images, *s4), eval_word(w2, images, *s4)));
  }
}

TEST_CASE("word inverse evaluates to the inverse") {
  auto q8 = build_group(GroupSpec::dicyclic(8));
  Word w{{1, 2, -1, 2}};
  std::vector<int> images = {1, 5};
  CHECK(q8->mul(eval_word(w, images, *q8), eval_word(w.inverse(), images, *q8)) ==
        q8->identity());
}

TEST_CASE("standard objects") {
  std::vector<int> primes = {2, 3, 5};
  auto std_objects = standard_objects(primes);

  CHECK(std_objects.trivial->arity() == 0);
  CHECK(std_objects.z->arity() == 1);
  CHECK(std_objects.z->relators().empty());
  CHECK(std_objects.f2->arity() == 2);
  CHECK(std_objects.f2->relators().empty());
  CHECK(std_objects.z2->arity() == 2);
  REQUIRE(std_objects.z2->relators().size() == 1);
  CHECK(std_objects.z2->relators()[0] == Word{{1, 2, -1, -2}});

  REQUIRE(std_objects.z_mod_p.size() == 3);
  CHECK(std_objects.z_mod_p[0].first == 2);
  CHECK(std_objects.z_mod_p[0].second->relators()[0] == Word{{1, 1}});
  CHECK(std_objects.z_mod_p[1].second->relators()[0] == Word{{1, 1, 1}});
}

TEST_CASE("relator validation") {
  CHECK_THROWS_AS(PresentedGroup("bad", 1, {Word{{2}}}), Error);
  CHECK_THROWS_AS(PresentedGroup("bad", 0, {Word{{1}}}), Error);
  CHECK_NOTHROW(PresentedGroup("ok", 2, {Word{{1, 2, -1, -2}}}));
}

TEST_CASE("group objects") {
  auto s3 = build_group(GroupSpec::symmetric(3));
  GroupObject finite(s3);
  GroupObject presented(presented_z());

  CHECK(finite.is_finite());
  CHECK_FALSE(presented.is_finite());
  CHECK(finite.generator_count() == static_cast<int>(s3->generators().size()));
  CHECK(presented.generator_count() == 1);
  CHECK(GroupObject(presented_trivial()).is_trivial());
  CHECK(GroupObject(build_group(GroupSpec::cyclic(1))).is_trivial());
  CHECK_FALSE(finite.is_trivial());

  CHECK(finite.same_object(GroupObject(s3)));
  // a structurally identical copy counts as the same object
  auto copy = std::make_shared<FiniteGroup>("other", s3->order(), s3->table());
  CHECK(finite.same_object(GroupObject(FiniteGroupPtr(copy))));
  CHECK_FALSE(finite.same_object(presented));
}
