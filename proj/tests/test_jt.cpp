#include <doctest.h>

#include <random>

#include "rlcan/jt.hpp"

using namespace rlcan;

namespace {

Formula form(const char* s) { return take(parse_formula(s)); }

PairSet pairs(int n, std::initializer_list<std::pair<int, int>> ps) {
  PairSet s(n);
  for (auto [x, y] : ps) s.set(x, y);
  return s;
}

}  // namespace

TEST_CASE("canonical frame of the two-element Boolean algebra") {
  auto cf = take(canonical_frame(two_element_boolean()));
  REQUIRE(cf.frame.size() == 1);
  CHECK(cf.frame.gammaI[0] == 0);
  CHECK(cf.frame.tensor[0] == pairs(1, {{0, 0}}));
}

TEST_CASE("canonical frame of the Lukasiewicz chain: clause-scan regression") {
  // Worlds: {top} c {m, top}; tables frozen from the exhaustive clause
  // evaluation (hand-checked against the membership clauses).
  auto cf = take(canonical_frame(three_chain_lukasiewicz()));
  REQUIRE(cf.frame.size() == 2);
  CHECK(cf.pf.filters[0] == (bit(2)));
  CHECK(cf.pf.filters[1] == (bit(1) | bit(2)));
  CHECK(cf.frame.gammaI == std::vector<int>{0, 0});  // I = top lies in both
  CHECK(cf.frame.tensor[0] == pairs(2, {{0, 0}}));
  CHECK(cf.frame.tensor[1] == pairs(2, {{0, 0}, {0, 1}, {1, 0}}));
  CHECK(cf.frame.lres[0] == pairs(2, {{0, 0}, {0, 1}, {1, 1}}));
  CHECK(cf.frame.lres[1] == pairs(2, {{0, 1}}));
  CHECK(cf.frame.rres[0] == pairs(2, {{0, 0}, {1, 0}, {1, 1}}));
  CHECK(cf.frame.rres[1] == pairs(2, {{1, 0}}));
}

TEST_CASE("canonical frame of the diamond meet algebra is discrete and diagonal") {
  auto cf = take(canonical_frame(diamond_boolean_meet()));
  REQUIRE(cf.frame.size() == 2);
  CHECK(!cf.frame.worlds.leq(0, 1));
  CHECK(!cf.frame.worlds.leq(1, 0));
  CHECK(cf.frame.tensor[0] == pairs(2, {{0, 0}}));
  CHECK(cf.frame.tensor[1] == pairs(2, {{1, 1}}));
}

TEST_CASE("canonical_frame requires residuation") {
  DLE j;
  j.carrier = take(FiniteDL::validate(2, {{0, 0}, {1, 1}, {0, 1}}, false));
  j.signature = kFragRL;
  j.unit_i = 0;
  j.fuse = {0, 1, 1, 1};
  j.lres = {1, 1, 1, 1};
  j.rres = {1, 1, 1, 1};
  auto r = canonical_frame(take(validate_dle(j)));
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "NotResiduated");
}

TEST_CASE("canonical frames satisfy RCC and the residuation correspondence") {
  for (const DLE& a : {two_element_boolean(), three_chain_lukasiewicz(),
                       diamond_boolean_meet()}) {
    auto cf = take(canonical_frame(a));
    const ResourceFrame& f = cf.frame;
    CHECK(check_rcc(f.worlds, f.tensor).ok);
    // Residuation correspondence biconditional, pointwise over closures.
    const int k = f.size();
    auto cl_t = close_tensor(f.worlds, f.tensor);
    auto cl_l = close_lres(f.worlds, f.lres);
    auto cl_r = close_rres(f.worlds, f.rres);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y)
        for (int z = 0; z < k; ++z) {
          bool l1 = cl_t[x].test(y, z);
          bool l2 = cl_l[z].test(y, x);
          bool l3 = cl_r[y].test(x, z);
          CHECK(l1 == l2);
          CHECK(l2 == l3);
        }
  }
}

TEST_CASE("existence lemmas hold exhaustively on the fixtures") {
  for (const DLE& a : {two_element_boolean(), three_chain_lukasiewicz(),
                       diamond_boolean_meet()})
    CHECK(take(verify_existence_lemmas(a)).ok);
  // One-element algebra: no prime filters, vacuously fine.
  auto one = enumerate_residuated(
      take(FiniteDL::validate(1, {{0, 0}}, true))).front();
  CHECK(take(verify_existence_lemmas(one)).ok);
}

TEST_CASE("jt extension of the Boolean algebra is an isomorphic copy") {
  DLE b = two_element_boolean();
  DLE jt = take(jt_extension(b));
  REQUIRE(jt.size() == 2);
  CHECK(jt.fuse == b.fuse);
  CHECK(jt.lres == b.lres);
  CHECK(jt.rres == b.rres);
  CHECK(jt.unit_i == b.unit_i);
}

TEST_CASE("jt extension of the Lukasiewicz chain: frozen table cells") {
  DLE jt = take(jt_extension(three_chain_lukasiewicz()));
  REQUIRE(jt.size() == 3);
  // Upsets of the 2-chain of prime filters, ascending: {}, {w1}, {w0,w1};
  // index 1 is the image of the middle element. m (x) m = 0:
  CHECK(jt.fuse[1 * 3 + 1] == 0);
  CHECK(jt.unit_i == 2);
  CHECK(jt.lres[1 * 3 + 0] == 1);  // m -* 0 = m
  CHECK(jt.lres[2 * 3 + 1] == 1);  // 1 -* m = m
}

TEST_CASE("compare_jt_canext on the fixtures") {
  for (const DLE& a : {two_element_boolean(), three_chain_lukasiewicz(),
                       diamond_boolean_meet()}) {
    auto rep = compare_jt_canext(a);
    REQUIRE(is_ok(rep));
    CHECK(value(rep).equal);
  }
}

TEST_CASE("truth_lemma_check separates and reports inconsistency") {
  DLE dm = diamond_boolean_meet();
  auto out = truth_lemma_check(dm, {form("p")}, {form("q")},
                               {{"p", 1}, {"q", 2}});
  REQUIRE(is_ok(out));
  REQUIRE(value(out).consistent);
  CHECK(value(out).world == 0);  // up(x), first in enumeration order

  auto bad = truth_lemma_check(dm, {form("p")}, {form("p")}, {{"p", 1}});
  REQUIRE(is_ok(bad));
  REQUIRE(!value(bad).consistent);
  CHECK(value(bad).meet_phi == 1);
  CHECK(value(bad).join_psi == 1);

  DLE b = two_element_boolean();
  auto unit = truth_lemma_check(b, {form("I")}, {}, {});
  REQUIRE(is_ok(unit));
  REQUIRE(value(unit).consistent);
  CHECK(value(unit).world == 0);
}

TEST_CASE("truth lemma: denotation matches evaluation at every world") {
  std::mt19937_64 rng(31);
  std::vector<DLE> algebras{two_element_boolean(), three_chain_lukasiewicz(),
                            diamond_boolean_meet()};
  for (const auto& L : enumerate_distributive_lattices(3))
    for (auto& d : enumerate_residuated(L)) algebras.push_back(std::move(d));

  std::vector<Formula> pool;
  for (const char* s :
       {"p", "I", "T", "_|_", "p * q", "p -* q", "q *- p", "p /\\ q",
        "p \\/ q", "p * (q -* r)", "(p * q) -* r", "I -* p", "p *- I",
        "(p \\/ q) * r", "p -* (q /\\ r)", "T *- p", "p * I * q"})
    pool.push_back(form(s));

  for (const auto& a : algebras) {
    auto cf = take(canonical_frame(a));
    for (int t = 0; t < 10; ++t) {
      Valuation v{{"p", int(rng() % a.size())},
                  {"q", int(rng() % a.size())},
                  {"r", int(rng() % a.size())}};
      Model m{cf.frame, canonical_valuation(cf, v)};
      for (const auto& phi : pool) {
        int e = take(eval_term(phi, a, v));
        Mask d = take(denote(phi, m));
        for (size_t w = 0; w < cf.pf.filters.size(); ++w)
          CHECK(has(d, int(w)) == has(cf.pf.filters[w], e));
      }
    }
  }
}

TEST_CASE("canonical frames pass validate_frame across the enumerated suite") {
  for (const auto& L : enumerate_distributive_lattices(4))
    for (const auto& d : enumerate_residuated(L)) {
      auto cf = canonical_frame(d);
      REQUIRE(is_ok(cf));
      CHECK(is_ok(validate_frame(value(cf).frame)));
    }
}
