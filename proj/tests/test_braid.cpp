#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "knotflow/braid.hpp"

using namespace knotflow;

TEST_CASE("torus braid word shape") {
  BraidWord b = torus_braid(3, 4);
  CHECK(b.strands == 3);
  CHECK(b.letters.size() == 8);
  CHECK(b.letters[0] == 1);
  CHECK(b.letters[1] == 2);
  CHECK(b.positive());
  CHECK_THROWS_AS(torus_braid(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(torus_braid(3, 0), std::invalid_argument);
}

TEST_CASE("knm braid word shape") {
  // m blocks of n descending letters on n+m strands
  BraidWord b = knm_braid(3, 2);
  CHECK(b.strands == 5);
  REQUIRE(b.letters.size() == 6);
  CHECK(b.letters == std::vector<int>{3, 2, 1, 4, 3, 2});
  CHECK(knm_braid(1, 1).letters == std::vector<int>{1});
  CHECK_THROWS_AS(knm_braid(0, 2), std::invalid_argument);
}

TEST_CASE("closure component count is the gcd for torus braids") {
  for (int n = 2; n <= 7; ++n)
    for (int p = 1; p <= 7; ++p)
      CHECK(closure_info(torus_braid(n, p)).components == std::gcd(n, p));
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= 5; ++m)
      CHECK(closure_info(knm_braid(n, m)).components == std::gcd(n, m));
}

TEST_CASE("closure permutation and writhe") {
  // sigma_1 on 2 strands closes to the unknot
  ClosureInfo one = closure_info(BraidWord{2, {1}});
  CHECK(one.components == 1);
  CHECK(one.writhe == 1);
  CHECK(one.permutation == std::vector<int>{1, 0});

  ClosureInfo t = closure_info(torus_braid(3, 2));
  CHECK(t.crossings == 4);
  CHECK(t.writhe == 4);
  // (s1 s2)^2 sends strand 0->2? bottom strand i exits at permutation[i]
  int moved = 0;
  for (int i = 0; i < 3; ++i) moved += t.permutation[i] != i;
  CHECK(moved == 3);

  CHECK(closure_info(BraidWord{3, {1, -1}}).writhe == 0);
}

TEST_CASE("mirror and disjoint union") {
  BraidWord b = torus_braid(3, 5);
  BraidWord m = mirror_braid(b);
  CHECK(m.letters[0] == -1);
  CHECK(closure_info(m).writhe == -closure_info(b).writhe);

  BraidWord du = disjoint_union(torus_braid(2, 3), torus_braid(2, 2));
  CHECK(du.strands == 4);
  CHECK(du.letters == std::vector<int>{1, 1, 1, 3, 3});
  CHECK(closure_info(du).components == 3);
  CHECK_FALSE(connected_closure(du));
  CHECK(connected_closure(torus_braid(2, 3)));
  // an untouched strand splits the closure even though letters are connected
  CHECK_FALSE(connected_closure(BraidWord{3, {1, 1}}));
}

TEST_CASE("braid text round trip") {
  BraidWord b{4, {1, -2, 3, -1}};
  CHECK(parse_braid_text(format_braid_text(b), 4).letters == b.letters);
  CHECK_THROWS_AS(parse_braid_text("1 0 2", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_braid_text("1 4", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_braid_text("1 2x", 3), std::invalid_argument);
  CHECK(parse_braid_text("  1   -2 ", 3).letters == std::vector<int>{1, -2});
}

TEST_CASE("validate_braid rejects out of range letters") {
  CHECK_THROWS_AS(validate_braid(BraidWord{2, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_braid(BraidWord{0, {}}), std::invalid_argument);
  CHECK_NOTHROW(validate_braid(BraidWord{1, {}}));
}
