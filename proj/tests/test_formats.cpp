#include <doctest.h>

#include <random>

#include "rlcan/json_io.hpp"
#include "rlcan/jt.hpp"

using namespace rlcan;

TEST_CASE("lattice JSON round trip and validation failures") {
  for (const auto& a : enumerate_distributive_lattices(5)) {
    Json j = lattice_to_json(a);
    auto back = lattice_from_json(j);
    REQUIRE(is_ok(back));
    CHECK(value(back) == a);
    CHECK(lattice_to_json(value(back)).dump() == j.dump());
  }
  Json bad = Json::parse(R"({"size": 2, "leq": [[0,0],[1,1]]})");
  auto r = lattice_from_json(bad);
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "NotALattice");
}

TEST_CASE("dle JSON round trip") {
  for (const DLE& a : {two_element_boolean(), three_chain_lukasiewicz(),
                       diamond_boolean_meet()}) {
    Json j = dle_to_json(a);
    auto back = dle_from_json(j);
    REQUIRE(is_ok(back));
    CHECK(value(back).fuse == a.fuse);
    CHECK(value(back).lres == a.lres);
    CHECK(value(back).rres == a.rres);
    CHECK(value(back).unit_i == a.unit_i);
    CHECK(dle_to_json(value(back)).dump() == j.dump());
  }
}

TEST_CASE("frame JSON round trip, including dual blocks") {
  auto frames = {take(heap_frame(1, 1)), take(heap_frame(2, 1, Mask{2}, 16)),
                 take(canonical_frame(three_chain_lukasiewicz())).frame};
  for (const ResourceFrame& f : frames) {
    Json j = frame_to_json(f);
    auto back = frame_from_json(j);
    REQUIRE(is_ok(back));
    CHECK(value(back).gammaI == f.gammaI);
    CHECK(value(back).tensor == f.tensor);
    CHECK(value(back).lres == f.lres);
    CHECK(value(back).rres == f.rres);
    CHECK(value(back).has_dual == f.has_dual);
    if (f.has_dual) {
      CHECK(value(back).par == f.par);
      CHECK(value(back).dlres == f.dlres);
    }
    CHECK(frame_to_json(value(back)).dump() == j.dump());
  }
}

TEST_CASE("frame JSON without residual components reconstructs transposes") {
  ResourceFrame heap = take(heap_frame(1, 1));
  Json j = frame_to_json(heap);
  j.erase("gammaLRes");
  j.erase("gammaRRes");
  auto back = frame_from_json(j);
  REQUIRE(is_ok(back));
  CHECK(value(back).lres == heap.lres);
  CHECK(value(back).rres == heap.rres);
}

TEST_CASE("frame JSON validation failures surface typed errors") {
  Json j = frame_to_json(take(heap_frame(1, 1)));
  j["gammaTensor"] = Json::array({Json::array({0, Json::array()}),
                                  Json::array({1, Json::array()})});
  // Tensor gone while residuals reference it: still a validation question;
  // here lres keeps pairs, so its upper-clause monotonicity may fail or the
  // frame may just validate differently. Use a malformed world index instead.
  Json bad = frame_to_json(take(heap_frame(1, 1)));
  bad["gammaTensor"][0][0] = 7;
  auto r = frame_from_json(bad);
  REQUIRE(!is_ok(r));
  CHECK(error(r).code == "BadInput");
}

TEST_CASE("valuation JSON round trip rejects out-of-range worlds") {
  std::map<std::string, Mask> v{{"p", bit(0) | bit(1)}, {"q", 0}};
  Json j = valuation_to_json(v);
  auto back = valuation_from_json(j, 2);
  REQUIRE(is_ok(back));
  CHECK(value(back) == v);
  auto bad = valuation_from_json(Json::parse(R"({"p": [5]})"), 2);
  REQUIRE(!is_ok(bad));
}

TEST_CASE("model JSON embeds a reloadable frame and valuation") {
  ResourceFrame f = take(heap_frame(1, 1));
  std::map<std::string, Mask> v{{"p", bit(1)}};
  Json j = model_to_json(f, v);
  auto fr = frame_from_json(j["frame"]);
  REQUIRE(is_ok(fr));
  auto vr = valuation_from_json(j["valuation"], value(fr).size());
  REQUIRE(is_ok(vr));
  CHECK(value(vr) == v);
}

TEST_CASE("identical inputs dump byte-identically") {
  ResourceFrame f = take(heap_frame(2, 1, Mask{1}, 16));
  CHECK(frame_to_json(f).dump(2) == frame_to_json(f).dump(2));
  auto f2 = take(frame_from_json(frame_to_json(f)));
  CHECK(frame_to_json(f2).dump(2) == frame_to_json(f).dump(2));
}

TEST_CASE("modal blocks survive the frame JSON round trip") {
  ResourceFrame f;
  f.worlds = take(FinitePoset::make(2, {{0, 0}, {1, 1}}));
  f.gammaI = {1, 0};
  f.tensor.assign(2, PairSet(2));
  f.lres.assign(2, PairSet(2));
  f.rres.assign(2, PairSet(2));
  f.has_modal = true;
  f.dia = {bit(1), bit(0)};
  f.box = {0, bit(0) | bit(1)};
  f = take(validate_frame(f));
  auto back = frame_from_json(frame_to_json(f));
  REQUIRE(is_ok(back));
  CHECK(value(back).has_modal);
  CHECK(value(back).dia == f.dia);
  CHECK(value(back).box == f.box);
}
