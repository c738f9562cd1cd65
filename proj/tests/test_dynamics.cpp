// Coset actions and the stability machinery: action laws and transitivity,
// stabilizer identification, the wildness witness golden case with its
// verification, freeness probes, the classifier grid, and resource honesty.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <queue>
#include <set>
#include <vector>

#include "steinitz/dynamics.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/families.hpp"
#include "steinitz/finite_quotient.hpp"

using namespace steinitz;

namespace {

using Vec = std::vector<std::int64_t>;

// Ambient twisted product, used to state the action law independently.
Vec hmul(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
}

ChainSpec toy_spec() { return build_chain(ToyModel{2, 2, 1}, 1); }

ChainSpec wild_spec(std::size_t depth) {
  return build_chain(HeisenbergWild{{2, 3, 5}, 2, 1, {}}, depth);
}

}  // namespace

TEST_CASE("level action: laws, transitivity, and the stabilizer of the basepoint") {
  ChainSpec spec = toy_spec();
  LevelAction act(spec, 1);
  CHECK(act.size() == Factored::from_integer(32));

  const Vec base = act.canon({0, 0, 0});
  std::vector<Vec> gens = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                           {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};

  // Action law g.(h.x) = (gh).x and identity act trivially.
  std::vector<Vec> samples = {{0, 0, 0}, {1, 2, 3}, {-5, 7, 11}, {3, -1, 2}};
  for (const Vec& g : samples) {
    for (const Vec& h : samples) {
      for (const Vec& x : act.cosets(100)) {
        CHECK(act.act(g, act.act(h, x)) == act.act(hmul(g, h), x));
      }
    }
    CHECK(act.act({0, 0, 0}, act.canon(g)) == act.canon(g));
    CHECK(act.canon(act.canon(g)) == act.canon(g));
  }

  // Transitivity: the generator orbit of the basepoint is the whole space.
  std::set<Vec> seen{base};
  std::queue<Vec> todo;
  todo.push(base);
  while (!todo.empty()) {
    Vec cur = todo.front();
    todo.pop();
    for (const Vec& g : gens) {
      Vec nxt = act.act(g, cur);
      if (seen.insert(nxt).second) todo.push(nxt);
    }
  }
  CHECK(seen.size() == 32);

  // In the core quotient, exactly the image of the level subgroup fixes the
  // basepoint coset.
  FiniteQuotient q = quotient(spec.group, normal_core(spec.at(1)));
  QuotientSubgroup img = image_in_quotient(q, spec.at(1));
  std::size_t stab = 0;
  for (const QElem& x : q.elements(100000)) {
    bool fixes = act.act(x, base) == base;
    CHECK(fixes == q.subgroup_member(img, x));
    if (fixes) ++stab;
  }
  CHECK(Factored::from_integer(stab) == img.order);
}

TEST_CASE("fixed-point counts are conjugation invariant") {
  ChainSpec spec = toy_spec();
  LevelAction act(spec, 1);
  FiniteQuotient q = quotient(spec.group, normal_core(spec.at(1)));
  std::vector<Vec> probes = {{1, 0, 0}, {0, 1, 0}, {2, 0, 0}, {1, 1, 1}, {0, 2, 2}};
  std::vector<Vec> conjugators = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 2, 3}, {3, 1, 2}};
  CHECK(fixed_cosets(act, {0, 0, 0}, 100000).size() == 32);
  for (const Vec& g : probes) {
    std::size_t n = fixed_cosets(act, g, 100000).size();
    for (const Vec& h : conjugators) {
      QElem hg = q.conj(h, q.canon(g));
      CHECK(fixed_cosets(act, hg, 100000).size() == n);
    }
  }
}

TEST_CASE("wildness witness golden case: found at (1,2), fully re-verified") {
  ChainSpec spec = wild_spec(3);
  auto w = wild_witness_search(spec, 1, 3, 100000);
  REQUIRE(w.has_value());
  CHECK(w->shallow_level == 1);
  CHECK(w->deep_level == 2);
  CHECK(w->verify_depth >= 3);
  CHECK(w->moduli == std::vector<std::uint64_t>{36, 36, 36});
  CHECK(w->fixed_cylinders_checked == 3125);
  CHECK(!w->transcript.empty());
  CHECK(verify_witness(spec, *w));

  // The element genuinely moves the named cylinder at the deep level.
  LevelAction deep(spec, w->deep_level);
  CHECK(deep.act(w->element, w->moved_cylinder) != w->moved_cylinder);

  // Tampered witnesses are rejected: wrong element, wrong cylinder, and a
  // verification depth shallower than claimed.
  WildnessWitness bad = *w;
  bad.element = {13, 0, 0};
  CHECK(!verify_witness(spec, bad));
  bad = *w;
  bad.moved_cylinder = deep.canon({0, 0, 0});
  CHECK(!verify_witness(spec, bad));
  bad = *w;
  bad.verify_depth = bad.deep_level;
  CHECK(!verify_witness(spec, bad));
  bad = *w;
  bad.element = {18, 0, 0};  // in the deep isotropy, but fixes the named cylinder
  REQUIRE(deep.act(bad.element, bad.moved_cylinder) == bad.moved_cylinder);
  CHECK(!verify_witness(spec, bad));
}

TEST_CASE("no witness exists for the stable, self-embedding, or rank-1 chains") {
  ChainSpec stable = build_chain(
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}}, 3);
  CHECK(!wild_witness_search(stable, 1, 3, 100000).has_value());

  ChainSpec self2 = build_chain(HeisenbergSelfEmbed{2}, 4);
  CHECK(!wild_witness_search(self2, 1, 4, 100000).has_value());

  ChainSpec toral = build_chain(ToralDiagonal{{{2, 1}, {3, 2}}, {5}}, 3);
  CHECK(!wild_witness_search(toral, 1, 3, 100000).has_value());
}

TEST_CASE("freeness probes: the finite model violates, the wild chain does not") {
  FreenessProbeReport toy = topological_freeness_probe(toy_spec(), 2, 1, 100000);
  CHECK(!toy.violations.empty());
  LevelAction act(toy_spec(), 1);
  for (const FreenessViolation& v : toy.violations) {
    // Violating elements are nonidentity yet fix a whole cylinder.
    bool nonzero = false;
    for (std::int64_t c : v.element) nonzero = nonzero || c != 0;
    CHECK(nonzero);
    CHECK(!fixed_cosets(act, v.element, 100000).empty());
  }

  FreenessProbeReport wild = topological_freeness_probe(wild_spec(2), 4, 2, 200000);
  CHECK(wild.violations.empty());
  CHECK(wild.elements_tested > 0);

  FreenessProbeReport toral = topological_freeness_probe(
      build_chain(ToralDiagonal{{{2, 1}}, {3}}, 2), 3, 2, 100000);
  CHECK(toral.violations.empty());
}

TEST_CASE("classifier grid: verdicts never contradict the construction") {
  std::vector<FamilyDescriptor> grid = {
      HeisenbergSelfEmbed{2},
      HeisenbergSelfEmbed{3},
      ToyModel{2, 2, 1},
      ToyModel{3, 2, 1},
      ToyModel{2, 3, 2},
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}},
      HeisenbergStable{{PiFEntry{2, 2, 2}}, {3}},
      HeisenbergWild{{2, 3, 5}, 2, 1, {}},
      HeisenbergWild{{2, 3}, 2, 1, {7}},
      ToralDiagonal{{{2, 1}, {3, 2}}, {5}},
      ToralProduct{{ToralDiagonal{{{2, 1}}, {3}}, ToralDiagonal{{{5, 1}}, {7}}}},
  };
  for (const auto& f : grid) {
    std::size_t depth = std::holds_alternative<ToyModel>(f) ? 1 : 3;
    ChainSpec spec = build_chain(f, depth);
    CAPTURE(spec.family);
    // Throws InvariantViolation if a certificate and a witness ever coexist.
    StabilityReport rep = classify_stability(spec, 100000);
    ExpectedClassification want = expected_classification(f);
    if (want.stable == Tri::True) CHECK(rep.verdict != StabilityVerdict::Wild);
    if (want.stable == Tri::False) CHECK(rep.verdict != StabilityVerdict::Stable);
    if (rep.verdict == StabilityVerdict::Wild) {
      REQUIRE(rep.witness.has_value());
      CHECK(verify_witness(spec, *rep.witness));
    }
    CHECK(!rep.reason.empty());
  }
}

TEST_CASE("classifier goldens: stable cites the finite spectrum, wild shows a witness") {
  ChainSpec stable = build_chain(
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}}, 3);
  StabilityReport srep = classify_stability(stable, 100000);
  CHECK(srep.verdict == StabilityVerdict::Stable);
  CHECK(srep.finite_spectrum_certificate);
  CHECK(srep.reason.find("finite") != std::string::npos);

  StabilityReport wrep = classify_stability(wild_spec(3), 100000);
  CHECK(wrep.verdict == StabilityVerdict::Wild);
  REQUIRE(wrep.witness.has_value());
  CHECK(wrep.witness->shallow_level == 1);
  CHECK(wrep.witness->deep_level == 2);

  StabilityReport trep =
      classify_stability(build_chain(ToralDiagonal{{{2, 1}}, {3}}, 3), 100000);
  CHECK(trep.verdict == StabilityVerdict::Stable);
}

TEST_CASE("enumeration thresholds are honest: tight budgets surface, never lie") {
  ChainSpec spec = wild_spec(3);
  CHECK_THROWS_AS(wild_witness_search(spec, 1, 3, 10), Error);
  StabilityReport rep = classify_stability(spec, 10);
  CHECK(rep.verdict == StabilityVerdict::Unknown);
  CHECK(rep.reason.find("threshold") != std::string::npos);
}
