#include <doctest.h>

#include <stdexcept>
#include <random>

#include "rlcan/frames.hpp"

using namespace rlcan;

namespace {

FinitePoset two_chain() {
  return take(FinitePoset::make(2, {{0, 0}, {1, 1}, {0, 1}}));
}

FinitePoset discrete(int n) {
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i) leq.emplace_back(i, i);
  return take(FinitePoset::make(n, leq));
}

PairSet pairs(int n, std::initializer_list<std::pair<int, int>> ps) {
  PairSet s(n);
  for (auto [x, y] : ps) s.set(x, y);
  return s;
}

}  // namespace

TEST_CASE("Egli-Milner order on singletons, reflexivity, empty sets") {
  FinitePoset w = two_chain();
  PairSet u = pairs(2, {{0, 0}});
  PairSet v = pairs(2, {{1, 1}});
  CHECK(egli_milner_leq(w, kPolTensor, u, v));
  // Reversed coordinates flip the verdict.
  CHECK(!egli_milner_leq(w, PairPolarity{true, true}, u, v));
  CHECK(egli_milner_leq(w, kPolTensor, u, u));
  PairSet empty(2);
  // First clause is vacuous, the second fails.
  CHECK(!egli_milner_leq(w, kPolTensor, empty, v));
}

TEST_CASE("egli_milner_leq rejects base mismatches") {
  CHECK_THROWS_AS(
      egli_milner_leq(two_chain(), kPolTensor, PairSet(2), PairSet(3)),
      std::invalid_argument);
}

TEST_CASE("convexity under polarized products") {
  FinitePoset c3 = take(FinitePoset::make(3, {{0, 0}, {1, 1}, {2, 2},
                                              {0, 1}, {1, 2}, {0, 2}}));
  // A column is convex; the diagonal misses the pairs between its corners.
  CHECK(is_convex(c3, kPolTensor, pairs(3, {{0, 0}, {0, 1}, {0, 2}})));
  CHECK(!is_convex(c3, kPolTensor, pairs(3, {{0, 0}, {2, 2}, {1, 1}})));
  CHECK(!is_convex(c3, kPolTensor, pairs(3, {{0, 0}, {2, 2}})));
  // Everything is convex over a discrete base.
  CHECK(is_convex(discrete(3), kPolTensor, pairs(3, {{0, 0}, {2, 2}})));
}

TEST_CASE("closures: the spec's 2-chain example, idempotence, empty set") {
  FinitePoset w = two_chain();
  SuccessorMap g(2, PairSet(2));
  g[0] = pairs(2, {{1, 1}});
  auto closed = close_tensor(w, g);
  CHECK(closed[0] == pairs(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(close_tensor(w, closed) == closed);  // idempotent
  CHECK(closed[1].empty());
}

TEST_CASE("close_* is a closure operator on sampled frames") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + int(rng() % 3);
    auto posets = enumerate_posets(n);
    const FinitePoset& w = posets[rng() % posets.size()];
    SuccessorMap g(n, PairSet(n)), h(n, PairSet(n));
    for (int x = 0; x < n; ++x)
      for (int p = 0; p < n * n; ++p) {
        if (rng() % 3 == 0) g[x].set(p / n, p % n);
        if (rng() % 3 == 0) h[x].set(p / n, p % n);
      }
    // h := g u h makes g pointwise smaller.
    for (int x = 0; x < n; ++x) h[x].bits() |= g[x].bits();
    auto cg = close_tensor(w, g), ch = close_tensor(w, h);
    for (int x = 0; x < n; ++x) {
      CHECK(g[x].subset_of(cg[x]));                        // extensive
      CHECK(close_tensor(w, cg)[x] == cg[x]);              // idempotent
      CHECK(cg[x].subset_of(ch[x]));                       // monotone
    }
  }
}

TEST_CASE("overline and underline transposes") {
  FinitePoset w = two_chain();
  SuccessorMap g(2, PairSet(2));
  g[1] = pairs(2, {{0, 1}});  // (y, z) in gamma(x = 1)
  auto over = overline(w, g);
  auto under = underline(w, g);
  CHECK(over[1] == pairs(2, {{0, 1}}));   // z = 1 -> (y, x) = (0, 1)
  CHECK(over[0].empty());
  CHECK(under[0] == pairs(2, {{1, 1}}));  // y = 0 -> (x, z) = (1, 1)
  CHECK(under[1].empty());
  SuccessorMap none(2, PairSet(2));
  CHECK(overline(w, none) == none);
  CHECK(underline(w, none) == none);
}

TEST_CASE("check_rcc: discrete frames trivially pass; a monotone chain can fail") {
  FinitePoset d3 = discrete(3);
  std::mt19937_64 rng(12);
  SuccessorMap g(3, PairSet(3));
  for (int x = 0; x < 3; ++x)
    for (int p = 0; p < 9; ++p)
      if (rng() & 1) g[x].set(p / 3, p % 3);
  CHECK(check_rcc(d3, g).ok);

  // gamma(a) = {(a,a)}, gamma(b) = {(b,b)} on the 2-chain is Egli-Milner
  // monotone but its overline transpose is not: the upper clause fails
  // at a <= b since (b,b) in overline(b) has nothing below it.
  FinitePoset w = two_chain();
  SuccessorMap h(2, PairSet(2));
  h[0] = pairs(2, {{0, 0}});
  h[1] = pairs(2, {{1, 1}});
  CHECK(egli_milner_leq(w, kPolTensor, h[0], h[1]));
  auto rep = check_rcc(w, h);
  REQUIRE(!rep.ok);
  CHECK(rep.witness == std::vector<int>{0, 1, 0});
}

TEST_CASE("validate_frame flags shrinking tensors and accepts discrete data") {
  FinitePoset w = two_chain();
  ResourceFrame f;
  f.worlds = w;
  f.gammaI = {0, 1};
  f.tensor = {pairs(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}), PairSet(2)};
  f.lres.assign(2, PairSet(2));
  f.rres.assign(2, PairSet(2));
  auto r = validate_frame(f);
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "NotMonotone");

  ResourceFrame g;
  g.worlds = discrete(2);
  g.gammaI = {1, 0};
  g.tensor = {pairs(2, {{1, 0}}), pairs(2, {{0, 1}, {1, 1}})};
  g.lres = {pairs(2, {{0, 1}}), PairSet(2)};
  g.rres = {PairSet(2), pairs(2, {{1, 0}})};
  CHECK(is_ok(validate_frame(g)));  // everything is convex and monotone
}

TEST_CASE("frame_from_tensor reconstructs residuals, rejects RCC failures") {
  // Heap fragment: composition of prior oracles.
  auto heap = take(heap_frame(1, 1));
  CHECK(is_tensor_reconstructed(heap, ReconstructionMode::Exact));
  CHECK(is_tensor_reconstructed(heap, ReconstructionMode::UpToClosure));

  // Discrete poset with an arbitrary ternary relation: the classical case.
  FinitePoset d2 = discrete(2);
  SuccessorMap g(2, PairSet(2));
  g[0] = pairs(2, {{1, 1}});
  g[1] = pairs(2, {{0, 1}, {1, 0}});
  CHECK(is_ok(frame_from_tensor(d2, {0, 1}, g)));

  // The RCC-failing monotone chain from above.
  FinitePoset w = two_chain();
  SuccessorMap h(2, PairSet(2));
  h[0] = pairs(2, {{0, 0}});
  h[1] = pairs(2, {{1, 1}});
  auto r = frame_from_tensor(w, {0, 0}, h);
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "RCCViolated");
}

TEST_CASE("structural rules on the heap fragment and a reflexive point") {
  auto heap = take(heap_frame(1, 1));
  CHECK(take(check_structural(heap, "e")).ok);
  auto con = take(check_structural(heap, "c"));
  REQUIRE(!con.ok);
  CHECK(con.witness.front() == 1);  // the singleton heap

  ResourceFrame pt;
  pt.worlds = discrete(1);
  pt.gammaI = {0};
  pt.tensor = {pairs(1, {{0, 0}})};
  pt.lres = {pairs(1, {{0, 0}})};
  pt.rres = {pairs(1, {{0, 0}})};
  pt = take(validate_frame(pt));
  CHECK(take(check_structural(pt, "c")).ok);
  CHECK(take(check_structural(pt, "lw")).ok);
  auto rw = check_structural(pt, "rw");
  REQUIRE(!is_ok(rw));
  CHECK(error(rw).code == "DualBlockMissing");
}

TEST_CASE("heap_frame matches the set comprehension read directly") {
  auto heap = take(heap_frame(1, 1));
  REQUIRE(heap.size() == 2);
  CHECK(heap.gammaI == std::vector<int>{0, 1});
  CHECK(heap.tensor[0] == pairs(2, {{0, 0}}));
  CHECK(heap.tensor[1] == pairs(2, {{0, 0}, {0, 1}, {1, 0}}));

  auto single = take(heap_frame(0, 5));
  REQUIRE(single.size() == 1);
  CHECK(single.tensor[0] == pairs(1, {{0, 0}}));
}

TEST_CASE("heap invariants: closure shapes, monotonicity, RCC") {
  for (auto [a, v] : {std::pair{2, 2}, std::pair{1, 2}, std::pair{2, 1},
                      std::pair{3, 1}}) {
    auto fr = heap_frame(a, v, Mask{2}, 27);
    REQUIRE(is_ok(fr));
    const ResourceFrame& f = value(fr);
    for (int w = 0; w < f.size(); ++w) {
      // tensor values down-closed, par values convex.
      CHECK(close_tensor(f.worlds, f.tensor)[w] == f.tensor[w]);
      CHECK(is_convex(f.worlds, kPolTensor, f.par[w]));
    }
    CHECK(check_rcc(f.worlds, f.tensor).ok);
    CHECK(check_rcc_dual(f.worlds, f.par).ok);
  }
}

TEST_CASE("heap_frame respects the world cap") {
  auto r = heap_frame(3, 3, std::nullopt, 16);
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "SizeLimitExceeded");
}

TEST_CASE("unit orientation diagnostics on the heap") {
  auto heap = take(heap_frame(1, 1));
  auto rep = unit_orientation_report(heap, false);
  CHECK(rep.monotone_01);
  CHECK(!rep.monotone_10);
  CHECK(!rep.unit_set_is_upset);  // [[I]] = {empty heap} is not up-closed
}

TEST_CASE("transposing commutes with closing on reconstructed frames") {
  // overline(close_tensor(g)) = close_lres(overline(g)) and the underline
  // analogue, for frames admitted by frame_from_tensor (the equalities
  // depend on monotonicity + RCC). Exhaustive
  // over 1- and 2-world posets, sampled for 3 worlds.
  auto check_chains = [](const FinitePoset& w, const SuccessorMap& g) {
    if (!is_ok(frame_from_tensor(w, std::vector<int>(w.size(), 1), g)))
      return;
    CHECK(overline(w, close_tensor(w, g)) == close_lres(w, overline(w, g)));
    CHECK(underline(w, close_tensor(w, g)) == close_rres(w, underline(w, g)));
  };
  for (int n = 1; n <= 2; ++n) {
    for (const auto& w : enumerate_posets(n)) {
      auto downs = pair_downsets(w, kPolTensor);
      for (const auto& d0 : downs)
        for (const auto& d1 : downs) {
          SuccessorMap g{d0};
          if (n == 2) g.push_back(d1);
          check_chains(w, g);
          if (n == 1) break;
        }
    }
  }
  std::mt19937_64 rng(13);
  auto posets = enumerate_posets(3);
  for (int trial = 0; trial < 3000; ++trial) {
    const FinitePoset& w = posets[rng() % posets.size()];
    SuccessorMap g(3, PairSet(3));
    for (int x = 0; x < 3; ++x)
      for (int p = 0; p < 9; ++p)
        if (rng() % 3 == 0) g[x].set(p / 3, p % 3);
    check_chains(w, close_tensor(w, g));
  }
}

TEST_CASE("pair_downsets enumerates downsets of the polarized product") {
  auto w = two_chain();
  auto downs = pair_downsets(w, kPolTensor);
  // Downsets of the 2-chain square: isomorphic to order ideals of a 2x2
  // grid, of which there are binomial(4, 2) = 6.
  CHECK(downs.size() == 6);
  for (const auto& d : downs) CHECK(close_tensor(w, {d})[0] == d);
}
