// Serialization layer: exact JSON round-trips for every wire type, the
// big-integer escape hatch, the error envelope, and text-renderer contracts
// that the command-line output relies on.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "steinitz/chain.hpp"
#include "steinitz/dynamics.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/factored.hpp"
#include "steinitz/families.hpp"
#include "steinitz/json_io.hpp"
#include "steinitz/render.hpp"
#include "steinitz/solenoid.hpp"

using namespace steinitz;
namespace sj = steinitz::json;

TEST_CASE("factored integers: small values stay numbers, big ones stay factored") {
  Factored small = Factored::from_integer(360);
  std::string js = sj::to_json(small);
  CHECK(js == "360");
  CHECK(sj::factored_from_json(js) == small);

  Factored big = Factored::prime_power(2, 80).times(Factored::prime_power(3, 40));
  std::string jb = sj::to_json(big);
  // 2^80 does not fit a double-safe integer; the factor list must be used.
  CHECK(jb.find("factored") != std::string::npos);
  CHECK(sj::factored_from_json(jb) == big);
  CHECK(sj::factored_from_json("1") == Factored::one());
  CHECK_THROWS_AS(sj::factored_from_json("0"), Error);
  CHECK_THROWS_AS(sj::factored_from_json("{\"factored\":[[4,1]]}"), Error);
}

TEST_CASE("steinitz numbers round-trip with tails, exclusions, and infinity") {
  std::vector<SteinitzNumber> cases = {
      SteinitzNumber::one(),
      SteinitzNumber::make({{2, Exponent(3)}, {5, Exponent::infinity()}}),
      SteinitzNumber::make({{3, Exponent(1)}},
                           TailRule{PrimeStream::all_primes_excluding({3, 7}), Exponent(2)}),
      SteinitzNumber::make({}, TailRule{PrimeStream::residue_class(3, 4, 7), Exponent(1)}),
  };
  for (const auto& s : cases) {
    std::string j = sj::to_json(s);
    CAPTURE(j);
    CHECK(sj::steinitz_from_json(j) == s);
  }
  CHECK_THROWS_AS(sj::steinitz_from_json("{\"entries\":[[2,0]]}"), Error);
  CHECK_THROWS_AS(sj::steinitz_from_json("{\"entries\":[[2,\"oops\"]]}"), Error);
}

TEST_CASE("chain specs round-trip: family rules and explicit levels") {
  ChainSpec wild = build_chain(HeisenbergWild{{2, 3, 5}, 2, 1, {}}, 3);
  ChainSpec wild2 = sj::chain_spec_from_json(sj::to_json(wild));
  // Rule specs compare through their computed reports.
  CHECK(chain_report(wild) == chain_report(wild2));
  CHECK(wild2.family == wild.family);

  ChainSpec expl = ChainSpec::explicit_chain(
      GroupDescriptor::heisenberg(),
      {HeisenbergScales{Factored::from_integer(2), Factored::from_integer(2),
                        Factored::from_integer(4)},
       HeisenbergScales{Factored::from_integer(4), Factored::from_integer(4),
                        Factored::from_integer(16)}});
  ChainSpec expl2 = sj::chain_spec_from_json(sj::to_json(expl));
  CHECK(chain_report(expl) == chain_report(expl2));

  ChainSpec ab = build_chain(ToralDiagonal{{{2, 1}}, {3}}, 3);
  CHECK(chain_report(sj::chain_spec_from_json(sj::to_json(ab))) == chain_report(ab));

  CHECK_THROWS_AS(sj::chain_spec_from_json("{\"group\":\"heisenberg\"}"), Error);
  CHECK_THROWS_AS(sj::chain_spec_from_json("not json at all"), Error);
}

TEST_CASE("chain reports and witnesses survive the wire byte-exactly") {
  for (std::size_t depth : {1, 3}) {
    ChainSpec spec = build_chain(HeisenbergSelfEmbed{2}, depth);
    ChainReport rep = chain_report(spec);
    CHECK(sj::chain_report_from_json(sj::to_json(rep)) == rep);
  }
  ChainSpec stable = build_chain(
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}}, 3);
  ChainReport srep = chain_report(stable);
  CHECK(sj::chain_report_from_json(sj::to_json(srep, 2)) == srep);

  ChainSpec wild = build_chain(HeisenbergWild{{2, 3, 5}, 2, 1, {}}, 3);
  auto w = wild_witness_search(wild, 1, 3, 100000);
  REQUIRE(w.has_value());
  WildnessWitness rt = sj::witness_from_json(sj::to_json(*w));
  CHECK(rt == *w);
  // The round-tripped witness still verifies against the chain.
  CHECK(verify_witness(wild, rt));
}

TEST_CASE("solenoid presentations round-trip in both continuation forms") {
  SolenoidPresentation rep;
  rep.degrees = {2, 3, 2, 3};
  rep.continuation.kind = SolenoidContinuation::Kind::RepeatBlock;
  rep.continuation.block = 2;
  CHECK(sj::solenoid_from_json(sj::to_json(rep)) == rep);

  SolenoidPresentation str;
  str.degrees = {4};
  str.continuation.kind = SolenoidContinuation::Kind::PrimeStream;
  str.continuation.stream =
      TailRule{PrimeStream::all_primes_excluding({2}), Exponent(1)};
  str.dimension = 1;
  CHECK(sj::solenoid_from_json(sj::to_json(str)) == str);

  SolenoidPresentation fin;
  fin.degrees = {6, 10};
  CHECK(sj::solenoid_from_json(sj::to_json(fin)) == fin);

  CHECK_THROWS_AS(sj::solenoid_from_json("{\"degrees\":[1]}"), Error);
}

TEST_CASE("serialized documents are valid json and the envelope is uniform") {
  ChainSpec spec = build_chain(HeisenbergSelfEmbed{2}, 2);
  StabilityReport srep = classify_stability(spec, 100000);
  FreenessProbeReport frep = topological_freeness_probe(spec, 2, 1, 100000);
  for (const std::string& doc :
       {sj::to_json(chain_report(spec)), sj::to_json(srep), sj::to_json(frep),
        sj::to_json(spectra(chain_report(spec).steinitz_G))}) {
    CAPTURE(doc);
    CHECK(nlohmann::json::accept(doc));
  }

  try {
    fail(ErrorKind::InvalidInput, "three is not four");
  } catch (const Error& e) {
    nlohmann::json env = nlohmann::json::parse(sj::error_to_json(e));
    CHECK(env["error"]["kind"] == "invalid-input");
    CHECK(env["error"]["message"] == "three is not four");
  }
}

TEST_CASE("text rendering: stable vocabulary the cli output depends on") {
  SteinitzNumber s = SteinitzNumber::make(
      {{2, Exponent(3)}, {5, Exponent::infinity()}},
      TailRule{PrimeStream::all_primes_excluding({2, 5}), Exponent(2)});
  std::string txt = render::steinitz(s);
  CHECK(txt.find("2^3") != std::string::npos);
  CHECK(txt.find("5^inf") != std::string::npos);
  CHECK(txt.find("every prime") != std::string::npos);

  ChainSpec spec = build_chain(HeisenbergSelfEmbed{2}, 2);
  ChainReport rep = chain_report(spec);
  std::string table = render::chain_report(rep);
  CHECK(table.find("level") != std::string::npos);
  CHECK(table.find("k*") != std::string::npos);
  CHECK(table.find("Lagrange") != std::string::npos);
  CHECK(table.find("ok") != std::string::npos);

  ChainSpec toral = build_chain(ToralDiagonal{{{2, 1}}, {3}}, 2);
  std::string stxt = render::stability(classify_stability(toral, 100000));
  CHECK(stxt.find("stable") != std::string::npos);
}
