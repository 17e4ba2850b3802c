#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "knotflow/braid.hpp"
#include "knotflow/diagram.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/seifert.hpp"
#include "knotflow/util.hpp"
#include "knotflow/vogel.hpp"

using namespace knotflow;

namespace {

BraidWord rand_word(Rng& rng, int strands, int len) {
  BraidWord w{strands, {}};
  for (int i = 0; i < len; ++i) {
    int g = rng.uniform_int(1, strands - 1);
    w.letters.push_back(rng.uniform() < 0.5 ? g : -g);
  }
  return w;
}

// both words must present the same link
void check_same_link(const BraidWord& a, const BraidWord& b) {
  CHECK(closure_info(a).components == closure_info(b).components);
  CHECK(signature(a) == signature(b));
  OmegaSignature oa = omega_signature(a, Rational{1, 3});
  OmegaSignature ob = omega_signature(b, Rational{1, 3});
  CHECK(oa.value == ob.value);
  CHECK(oa.nullity == ob.nullity);
  CHECK(alexander_det(seifert_matrix(a)) == alexander_det(seifert_matrix(b)));
}

}  // namespace

TEST_CASE("braid closures are already braided") {
  std::vector<BraidWord> words = {
      torus_braid(2, 3), torus_braid(3, 4), torus_braid(4, 2), knm_braid(3, 2),
      BraidWord{3, {1, -2, 1, -2}}, BraidWord{2, {1}}, BraidWord{4, {1, 1, 1}}};
  for (const BraidWord& w : words) {
    CAPTURE(format_braid_text(w));
    Diagram d = braid_to_diagram(w);
    CHECK(defect_face_count(d) == 0);
    Diagram copy = d;
    CHECK_FALSE(vogel_step(copy));
    SeifertCircles sc = seifert_circles(d);
    CHECK(sc.count + d.free_loops == w.strands);
  }
}

TEST_CASE("circle labels cover alive edges only") {
  Diagram d = braid_to_diagram(torus_braid(2, 3));
  SeifertCircles sc = seifert_circles(d);
  CHECK(sc.count == 2);
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    CHECK(sc.circle_of_edge[e] >= 0);
    CHECK(sc.circle_of_edge[e] < sc.count);
  }
  smooth_crossing(d, 0);
  sc = seifert_circles(d);
  CHECK(sc.count == 2);  // oriented smoothing never changes the circles
}

TEST_CASE("read-off round trips braid diagrams") {
  std::vector<BraidWord> words = {
      torus_braid(2, 3), torus_braid(2, 5), torus_braid(3, 4), torus_braid(4, 2),
      knm_braid(3, 2),   knm_braid(2, 4),   BraidWord{3, {1, -2, 1, -2}},
      BraidWord{2, {1}}, BraidWord{2, {-1, -1, -1}}};
  for (const BraidWord& w : words) {
    CAPTURE(format_braid_text(w));
    BraidWord back = vogel_braid(braid_to_diagram(w));
    CHECK(back.letters.size() == w.letters.size());
    check_same_link(w, back);
  }
}

TEST_CASE("trefoil signature survives with its sign") {
  BraidWord back = vogel_braid(braid_to_diagram(torus_braid(2, 3)));
  CHECK(signature(back) == -2);
  CHECK(signature(vogel_braid(braid_to_diagram(mirror_braid(torus_braid(2, 3))))) == 2);
}

TEST_CASE("free loops come back as idle strands") {
  BraidWord w{4, {1, 1, 1}};  // strands 3 and 4 untouched
  Diagram d = braid_to_diagram(w);
  CHECK(d.free_loops == 2);
  BraidWord back = vogel_braid(d);
  CHECK(back.strands == 4);  // two working strands plus two idle ones
  CHECK(closure_info(back).components == 3);
  CHECK(signature(back) == -2);
}

TEST_CASE("random round trips") {
  Rng rng = make_rng(20260815, 7, 0, 0);
  for (int trial = 0; trial < 40; ++trial) {
    int strands = rng.uniform_int(2, 4);
    BraidWord w = rand_word(rng, strands, rng.uniform_int(1, 9));
    CAPTURE(format_braid_text(w));
    BraidWord back = vogel_braid(braid_to_diagram(w));
    CHECK(back.letters.size() == w.letters.size());
    check_same_link(w, back);
  }
}

TEST_CASE("split unions read off additively") {
  BraidWord a = torus_braid(2, 3);
  BraidWord b = torus_braid(3, 4);
  Diagram d = braid_to_diagram(disjoint_union(a, b));
  CHECK(defect_face_count(d) == 0);
  BraidWord back = vogel_braid(d);
  CHECK(signature(back) == signature(a) + signature(b));
  CHECK(closure_info(back).components == 2);

  BraidWord m = disjoint_union(a, mirror_braid(a));
  BraidWord back2 = vogel_braid(braid_to_diagram(m));
  CHECK(signature(back2) == 0);
  CHECK(closure_info(back2).components == 2);
}

TEST_CASE("band joins change the signature by at most one") {
  Rng rng = make_rng(20260815, 7, 1, 0);
  int pokes_seen = 0, bands_done = 0, bands_rejected = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int strands = rng.uniform_int(2, 4);
    BraidWord w = rand_word(rng, strands, rng.uniform_int(2, 8));
    Diagram d = braid_to_diagram(w);
    std::vector<int> alive;
    for (std::size_t e = 0; e < d.edges.size(); ++e)
      if (d.edges[e].alive) alive.push_back(static_cast<int>(e));
    int ea = alive[rng.uniform_int(0, static_cast<int>(alive.size()) - 1)];
    int eb = alive[rng.uniform_int(0, static_cast<int>(alive.size()) - 1)];
    if (ea == eb) continue;
    try {
      join_components(d, ea, eb);
    } catch (const std::invalid_argument&) {
      ++bands_rejected;  // no planar band between these edges
      continue;
    }
    ++bands_done;
    pokes_seen += defect_face_count(d) > 0;
    CAPTURE(format_braid_text(w));
    BraidWord back = vogel_braid(d);
    int before = closure_info(w).components;
    int after = closure_info(back).components;
    CHECK(std::abs(after - before) == 1);
    CHECK(std::abs(signature(back) - signature(w)) <= 1);
  }
  CHECK(bands_done > 0);
  CHECK(bands_rejected > 0);
  CHECK(pokes_seen > 0);  // the sample must actually exercise the R2 moves
}

TEST_CASE("non planar bands are rejected") {
  // the two middle edges of the Hopf braid face each other across a bigon
  // from opposite sides; no planar band joins them
  Diagram d = braid_to_diagram(BraidWord{2, {1, 1}});
  CHECK_THROWS_AS(join_components(d, 0, 1), std::invalid_argument);
  // an edge and its own closure arc share a side of the column circle
  CHECK_NOTHROW(join_components(d, 0, 2));
  CHECK_NOTHROW(validate_diagram(d));
}

TEST_CASE("joining two split closures is a band sum") {
  // join the two pieces of a split union; the signature may move by one
  Rng rng = make_rng(20260815, 7, 2, 0);
  for (int trial = 0; trial < 20; ++trial) {
    BraidWord a = rand_word(rng, 2, rng.uniform_int(2, 5));
    BraidWord b = rand_word(rng, 3, rng.uniform_int(2, 5));
    Diagram d = braid_to_diagram(disjoint_union(a, b));
    // crossings of the first word come first; edges follow their tail crossing
    int ca = static_cast<int>(a.letters.size());
    std::vector<int> first, second;
    for (std::size_t e = 0; e < d.edges.size(); ++e)
      (d.edges[e].from.crossing < ca ? first : second).push_back(static_cast<int>(e));
    REQUIRE(!first.empty());
    REQUIRE(!second.empty());
    int ea = first[rng.uniform_int(0, static_cast<int>(first.size()) - 1)];
    int eb = second[rng.uniform_int(0, static_cast<int>(second.size()) - 1)];
    join_components(d, ea, eb);
    BraidWord back = vogel_braid(d);
    int split_sig = signature(a) + signature(b);
    CHECK(std::abs(signature(back) - split_sig) <= 1);
    CHECK(closure_info(back).components ==
          closure_info(a).components + closure_info(b).components - 1);
  }
}

TEST_CASE("split schedules replay into two torus closures") {
  for (int n1 = 2; n1 <= 3; ++n1)
    for (int n2 = n1; n2 <= 3; ++n2)
      for (int m = 2; m <= 3; ++m) {
        CAPTURE(n1);
        CAPTURE(n2);
        CAPTURE(m);
        SplitSchedule s = split_knm(n1, n2, m);
        Diagram d = replay(braid_to_diagram(s.before), s.schedule);
        BraidWord back = vogel_braid(d);
        BraidWord target = disjoint_union(torus_braid(n1, m), torus_braid(n2, m));
        CHECK(closure_info(back).components == closure_info(target).components);
        CHECK(signature(back) == signature(target));
      }
}

TEST_CASE("degenerate diagrams") {
  Diagram empty;
  CHECK_THROWS_AS(vogel_braid(empty), std::invalid_argument);
  Diagram loops;
  loops.free_loops = 3;
  BraidWord w = vogel_braid(loops);
  CHECK(w.strands == 3);
  CHECK(w.letters.empty());
}

TEST_CASE("vogel output is deterministic") {
  Diagram d = braid_to_diagram(disjoint_union(torus_braid(2, 3), torus_braid(2, 3)));
  std::vector<int> alive;
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (d.edges[e].alive) alive.push_back(static_cast<int>(e));
  join_components(d, alive[0], alive[alive.size() - 1]);
  BraidWord w1 = vogel_braid(d);
  BraidWord w2 = vogel_braid(d);
  CHECK(w1.strands == w2.strands);
  CHECK(w1.letters == w2.letters);
}
