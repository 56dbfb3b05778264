#include <doctest.h>

#include "rlcan/lattice.hpp"

using namespace rlcan;

namespace {

FiniteDL chain(int n) {
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq.emplace_back(i, j);
  return take(FiniteDL::validate(n, leq, true));
}

// 0 = bottom, 1 = x, 2 = y, 3 = top
FiniteDL diamond() {
  return take(FiniteDL::validate(
      4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}},
      true));
}

// Independent oracle: prime filters recomputed from first principles.
std::vector<Mask> prime_filters_oracle(const FiniteDL& a) {
  std::vector<Mask> out;
  const int n = a.size();
  for (Mask f = 0; f < (Mask{1} << n); ++f) {
    if (f == 0 || f == full_mask(n)) continue;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      if (!has(f, x)) continue;
      for (int y = 0; y < n && ok; ++y) {
        if (a.leq(x, y) && !has(f, y)) ok = false;             // upward closed
        if (has(f, y) && !has(f, a.meet(x, y))) ok = false;    // meet closed
      }
    }
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (has(f, a.join(x, y)) && !has(f, x) && !has(f, y)) ok = false;
    if (ok) out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("validate_dl accepts the one-point lattice") {
  auto r = FiniteDL::validate(1, {{0, 0}}, true);
  REQUIRE(is_ok(r));
  CHECK(value(r).bottom() == 0);
  CHECK(value(r).top() == 0);
}

TEST_CASE("validate_dl reads the diamond off its Hasse diagram") {
  FiniteDL d = diamond();
  CHECK(d.meet(1, 2) == 0);
  CHECK(d.join(1, 2) == 3);
  CHECK(d.is_boolean());
}

TEST_CASE("validate_dl rejects the pentagon with a concrete witness") {
  // 0 < x(1) < z(2) < 1(4), 0 < y(3) < 1, y incomparable to x and z.
  const std::vector<std::pair<int, int>> n5 = {
      {0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {0, 1}, {0, 2}, {0, 3}, {0, 4},
      {1, 2}, {1, 4}, {2, 4}, {3, 4}};
  auto r = FiniteDL::validate(5, n5, true);
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "NotDistributive");
  // The witness triple must genuinely violate distributivity; recompute
  // glb/lub directly off the order relation.
  auto p = take(FinitePoset::make(5, n5));
  auto glb = [&](int a, int b) {
    Mask lower = p.below(a) & p.below(b);
    int best = -1;
    for_each_bit(lower, [&](int c) {
      if ((lower & ~p.below(c)) == 0 && best < 0) best = c;
    });
    return best;
  };
  auto lub = [&](int a, int b) {
    Mask upper = p.above(a) & p.above(b);
    int best = -1;
    for_each_bit(upper, [&](int c) {
      if ((upper & ~p.above(c)) == 0 && best < 0) best = c;
    });
    return best;
  };
  const auto& w = error(r).witness;
  REQUIRE(w.size() == 3);
  CHECK(glb(w[0], lub(w[1], w[2])) != lub(glb(w[0], w[1]), glb(w[0], w[2])));
}

TEST_CASE("validate_dl rejects non-orders and non-lattices") {
  auto r1 = FiniteDL::validate(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}}, true);
  REQUIRE(!is_ok(r1));
  CHECK(error(r1).code == "NotAPartialOrder");
  auto r2 = FiniteDL::validate(2, {{0, 0}, {1, 1}}, true);  // no lub
  REQUIRE(!is_ok(r2));
  CHECK(error(r2).code == "NotALattice");
}

TEST_CASE("prime filters of the 3-chain form a 2-chain") {
  auto pf = prime_filters(chain(3));
  REQUIRE(pf.filters.size() == 2);
  CHECK(pf.filters[0] == bit(2));             // {top}
  CHECK(pf.filters[1] == (bit(1) | bit(2)));  // {m, top}
  CHECK(pf.order.leq(0, 1));
  CHECK(!pf.order.leq(1, 0));
}

TEST_CASE("prime filters of the diamond are two incomparable ultrafilters") {
  auto pf = prime_filters(diamond());
  REQUIRE(pf.filters.size() == 2);
  CHECK(pf.filters[0] == (bit(1) | bit(3)));  // up(x)
  CHECK(pf.filters[1] == (bit(2) | bit(3)));  // up(y)
  CHECK(!pf.order.leq(0, 1));
  CHECK(!pf.order.leq(1, 0));
}

TEST_CASE("the one-point lattice has no prime filters") {
  CHECK(prime_filters(chain(1)).filters.empty());
}

TEST_CASE("prime filter enumeration agrees with the definitional oracle") {
  for (const auto& a : enumerate_distributive_lattices(5)) {
    auto got = prime_filters(a).filters;
    auto want = prime_filters_oracle(a);
    CHECK(got == want);
    for (Mask f : got) CHECK(is_prime_filter(a, f));
  }
}

TEST_CASE("upset lattices of small posets") {
  auto p2 = take(FinitePoset::make(2, {{0, 0}, {1, 1}, {0, 1}}));
  auto u2 = take(upset_lattice(p2));
  CHECK(u2.upsets == std::vector<Mask>{0, 2, 3});
  CHECK(u2.lattice.size() == 3);
  CHECK(u2.lattice.leq(0, 1));
  CHECK(u2.lattice.leq(1, 2));

  auto pd = take(FinitePoset::make(2, {{0, 0}, {1, 1}}));
  auto ud = take(upset_lattice(pd));
  CHECK(ud.lattice.size() == 4);
  CHECK(ud.lattice.is_boolean());

  auto pe = take(FinitePoset::make(0, {}));
  auto ue = take(upset_lattice(pe));
  CHECK(ue.lattice.size() == 1);
}

TEST_CASE("upset_lattice enforces the element cap") {
  auto pd = take(FinitePoset::make(4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
  auto r = upset_lattice(pd, 8);
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "SizeLimitExceeded");
}

TEST_CASE("separate finds a prime filter through a filter-ideal gap") {
  FiniteDL d = diamond();
  auto r = separate(d, principal_filter(d, 1), principal_ideal(d, 2));
  REQUIRE(is_ok(r));
  CHECK(value(r).members == (bit(1) | bit(3)));  // up(x) itself

  FiniteDL c3 = chain(3);
  auto r2 = separate(c3, principal_filter(c3, 2), principal_ideal(c3, 0));
  REQUIRE(is_ok(r2));
  CHECK(value(r2).members == bit(2));  // first in enumeration order

  for (const auto& a : enumerate_distributive_lattices(5, 2)) {
    auto s = separate(a, principal_filter(a, a.top()),
                      principal_ideal(a, a.bottom()));
    REQUIRE(is_ok(s));
    CHECK(is_prime_filter(a, value(s).members));
    CHECK(has(value(s).members, a.top()));
    CHECK(!has(value(s).members, a.bottom()));
  }
}

TEST_CASE("separate rejects overlapping filter-ideal pairs") {
  FiniteDL c3 = chain(3);
  auto r = separate(c3, principal_filter(c3, 1), principal_ideal(c3, 1));
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "NotDisjoint");
}

TEST_CASE("separate output is prime, extends the filter, avoids the ideal") {
  for (const auto& a : enumerate_distributive_lattices(5, 2)) {
    for (int e = 0; e < a.size(); ++e)
      for (int i = 0; i < a.size(); ++i) {
        Mask f = principal_filter(a, e), id = principal_ideal(a, i);
        if (f & id) continue;
        auto r = separate(a, f, id);
        REQUIRE(is_ok(r));
        CHECK(is_prime_filter(a, value(r).members));
        CHECK((f & ~value(r).members) == 0);
        CHECK((value(r).members & id) == 0);
      }
  }
}

TEST_CASE("finite Birkhoff duality on all lattices up to 5 elements") {
  for (const auto& a : enumerate_distributive_lattices(5)) {
    auto pf = prime_filters(a);
    auto ul = take(upset_lattice(pf.order));
    REQUIRE(ul.lattice.size() == a.size());
    for (int x = 0; x < a.size(); ++x)
      for (int y = 0; y < a.size(); ++y) {
        Mask mx = 0, my = 0;
        for (size_t i = 0; i < pf.filters.size(); ++i) {
          if (has(pf.filters[i], x)) mx |= bit(int(i));
          if (has(pf.filters[i], y)) my |= bit(int(i));
        }
        CHECK(a.leq(x, y) == ((mx & ~my) == 0));
      }
  }
}

TEST_CASE("filters and ideals behave definitionally") {
  FiniteDL d = diamond();
  CHECK(is_filter(d, principal_filter(d, 1)));
  CHECK(is_ideal(d, principal_ideal(d, 2)));
  CHECK(!is_filter(d, bit(1) | bit(2)));
  CHECK(filter_generated(d, bit(1) | bit(2)) == principal_filter(d, 0));
  CHECK(ideal_generated(d, bit(1) | bit(2)) == full_mask(4));
  CHECK(filter_generated(d, 0) == principal_filter(d, d.top()));
  CHECK(ideal_generated(d, 0) == principal_ideal(d, d.bottom()));
}
