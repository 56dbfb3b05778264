#include <doctest.h>

#include <random>

#include "rlcan/syntax.hpp"

using namespace rlcan;

namespace {

Formula fv(const char* n) { return Formula::var(n); }

// Structural generator over the full fused signature.
Formula gen_formula(std::mt19937_64& rng, int depth, unsigned frag) {
  std::vector<Formula> atoms{fv("p"), fv("q"), fv("r")};
  if (frag & kFragBounds) {
    atoms.push_back(Formula::top());
    atoms.push_back(Formula::bot());
  }
  if (frag & kFragRL) atoms.push_back(Formula::unit_i());
  if (frag & kFragDual) atoms.push_back(Formula::unit_j());
  if (depth == 0 || rng() % 4 == 0) return atoms[rng() % atoms.size()];
  std::vector<Kind> ops{Kind::And, Kind::Or};
  if (frag & kFragRL) {
    ops.push_back(Kind::Fuse);
    ops.push_back(Kind::LRes);
    ops.push_back(Kind::RRes);
  }
  if (frag & kFragDual) {
    ops.push_back(Kind::Par);
    ops.push_back(Kind::DLRes);
    ops.push_back(Kind::DRRes);
  }
  if (frag & kFragML) {
    ops.push_back(Kind::Dia);
    ops.push_back(Kind::Box);
  }
  Kind k = ops[rng() % ops.size()];
  if (is_unary(k)) return Formula::make(k, gen_formula(rng, depth - 1, frag));
  return Formula::make(k, gen_formula(rng, depth - 1, frag),
                       gen_formula(rng, depth - 1, frag));
}

}  // namespace

TEST_CASE("parse basics") {
  auto i = parse_formula("I");
  REQUIRE(is_ok(i));
  CHECK(value(i).kind() == Kind::UnitI);

  auto f = parse_formula("a * (b -* c)");
  REQUIRE(is_ok(f));
  Formula want = Formula::make(Kind::Fuse, fv("a"),
                               Formula::make(Kind::LRes, fv("b"), fv("c")));
  CHECK(value(f) == want);
}

TEST_CASE("the FC4 string parses to the FC4 schema shape") {
  auto e = parse_inequation("(c *- b) * a <= c *- (a * b)");
  REQUIRE(is_ok(e));
  CHECK(value(e) == find_schema("FC4")->shape.front());
}

TEST_CASE("printing uses minimal parentheses") {
  CHECK(print(Formula::make(Kind::Fuse, fv("a"), fv("b"))) == "a * b");
  CHECK(print(Formula::make(Kind::And,
                            Formula::make(Kind::Or, fv("a"), fv("b")),
                            fv("c"))) == "(a \\/ b) /\\ c");
  CHECK(print(Formula::make(Kind::Box, Formula::make(Kind::Dia, fv("p")))) ==
        "[]<>p");
  // Associativity sides.
  Formula l = Formula::make(Kind::Fuse,
                            Formula::make(Kind::Fuse, fv("a"), fv("b")),
                            fv("c"));
  CHECK(print(l) == "a * b * c");
  Formula r = Formula::make(Kind::Fuse, fv("a"),
                            Formula::make(Kind::Fuse, fv("b"), fv("c")));
  CHECK(print(r) == "a * (b * c)");
  Formula res = Formula::make(Kind::LRes, fv("a"),
                              Formula::make(Kind::LRes, fv("b"), fv("c")));
  CHECK(print(res) == "a -* b -* c");
}

TEST_CASE("precedence: unary, products, lattice, residuals") {
  auto f1 = parse_formula("<>p /\\ q");
  REQUIRE(is_ok(f1));
  CHECK(value(f1).kind() == Kind::And);
  auto f2 = parse_formula("a * b \\/ c");
  REQUIRE(is_ok(f2));
  CHECK(value(f2).kind() == Kind::Or);
  auto f3 = parse_formula("a -* b /\\ c");
  REQUIRE(is_ok(f3));
  CHECK(value(f3).kind() == Kind::LRes);
  auto f4 = parse_formula("a -* b -* c");
  REQUIRE(is_ok(f4));
  CHECK(value(f4).right().kind() == Kind::LRes);  // right-associative
  auto f5 = parse_formula("a * b + c");
  REQUIRE(is_ok(f5));
  CHECK(value(f5).kind() == Kind::Par);  // same level, left-associative
  CHECK(value(f5).left().kind() == Kind::Fuse);
}

TEST_CASE("mixed residuals need parentheses") {
  auto bad = parse_formula("a -* b *- c");
  REQUIRE(!is_ok(bad));
  CHECK(error(bad).code == "SyntaxError");
  auto good = parse_formula("a -* (b *- c)");
  CHECK(is_ok(good));
}

TEST_CASE("parse errors carry positions and codes") {
  auto r = parse_formula("a * ");
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "SyntaxError");
  CHECK(!error(r).witness.empty());

  std::vector<std::string> declared{"p"};
  ParseOptions opts;
  opts.declared_vars = &declared;
  auto u = parse_formula("p * q", opts);
  REQUIRE(!is_ok(u));
  CHECK(error(u).code == "UnknownVariable");

  ParseOptions rl_only;
  rl_only.fragment = kFragRL | kFragBounds;
  auto fv2 = parse_formula("a + b", rl_only);
  REQUIRE(!is_ok(fv2));
  CHECK(error(fv2).code == "FragmentViolation");
}

TEST_CASE("round trip: parse(print(f)) == f for generated formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 600; ++i) {
    Formula f = gen_formula(rng, 6, kFragAll | kFragBounds);
    auto back = parse_formula(print(f));
    REQUIRE(is_ok(back));
    CHECK(value(back) == f);
  }
}

TEST_CASE("inequation round trip") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    Inequation e{gen_formula(rng, 4, kFragAll), gen_formula(rng, 4, kFragAll),
                 i % 2 == 0};
    auto back = parse_inequation(print(e));
    REQUIRE(is_ok(back));
    CHECK(value(back) == e);
  }
}

TEST_CASE("instantiate FC2, contraction and exchange") {
  std::map<std::string, Formula> a_to_p{{"a", fv("p")}};
  auto fc2 = instantiate(*find_schema("FC2"), a_to_p);
  REQUIRE(is_ok(fc2));
  REQUIRE(value(fc2).size() == 2);
  CHECK(print(value(fc2)[0]) == "I <= p -* p");
  CHECK(print(value(fc2)[1]) == "I <= p *- p");

  auto c = instantiate(*find_schema("c"), a_to_p);
  REQUIRE(is_ok(c));
  CHECK(print(value(c)[0]) == "p <= p * p");

  auto e = instantiate(*find_schema("e"),
                       {{"a", fv("p")}, {"b", fv("q")}});
  REQUIRE(is_ok(e));
  CHECK(print(value(e)[0]) == "p * q == q * p");
}

TEST_CASE("instantiate reports missing metavariables") {
  auto r = instantiate(*find_schema("FC3"), {{"a", fv("p")}});
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "MissingMetavariable");
}

TEST_CASE("fragment soundness under instantiation") {
  std::mt19937_64 rng(9);
  const unsigned rl = kFragRL | kFragBounds;
  for (int i = 0; i < 100; ++i) {
    std::map<std::string, Formula> asg;
    for (const char* mv : {"a", "b", "c"}) asg[mv] = gen_formula(rng, 3, rl);
    for (const char* name : {"FC3", "FC5", "e", "c"}) {
      auto insts = instantiate(*find_schema(name), asg);
      REQUIRE(is_ok(insts));
      for (const auto& e : value(insts)) CHECK((e.fragment() & ~rl) == 0);
    }
  }
}

TEST_CASE("FCd2 is printed with I, and with J under the switch") {
  CHECK(print(find_schema("FCd2")->shape[0]) == "I <= a -+ a");
  CHECK(print(find_schema("FCd2", {true})->shape[0]) == "J <= a -+ a");
}

TEST_CASE("schema registry covers the axiom families") {
  for (const char* name :
       {"DL1", "DL2", "DL3", "DL4", "DL5", "DL6", "ML1", "ML2", "DLd1",
        "DLd2", "DLd3", "DLd4", "DLd5", "DLd6", "FC1", "FC2", "FC3", "FC4",
        "FC5", "FC6", "FCd1", "FCd2", "FCd3", "FCd4", "FCd5", "FCd6", "e",
        "c", "lw", "rw", "wd", "exchange", "contraction", "weak-distribution"})
    CHECK(find_schema(name) != nullptr);
  CHECK(find_schema("FC1")->shape.size() == 2);
  CHECK(find_schema("FCd1")->shape.size() == 2);
}
