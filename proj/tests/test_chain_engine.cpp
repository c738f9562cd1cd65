// Chain invariants: golden values for the self-embedding tower and the
// single-level finite models, discriminant stabilization, Lagrange and
// monotonicity laws across every family, subsequence invariance of the
// asymptotic orders, and corrupted-report detection.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "steinitz/chain.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/factored.hpp"
#include "steinitz/families.hpp"
#include "steinitz/finite_quotient.hpp"
#include "steinitz/subgroup.hpp"

using namespace steinitz;

namespace {

Factored F(std::uint64_t v) { return Factored::from_integer(v); }
Factored P(std::uint64_t p, std::uint64_t e) { return Factored::prime_power(p, e); }

bool all_oracles_passed(const std::vector<OracleCheck>& checks) {
  for (const auto& c : checks) {
    if (c.status != OracleCheck::Status::Passed) {
      MESSAGE("oracle ", c.name, " -> ", c.note);
      return false;
    }
  }
  return !checks.empty();
}

bool no_oracle_failed(const std::vector<OracleCheck>& checks) {
  for (const auto& c : checks) {
    if (c.status == OracleCheck::Status::Failed) {
      MESSAGE("oracle ", c.name, " FAILED: ", c.note);
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("self-embedding tower at p=2: exact orders and trivial discriminant limit") {
  ChainSpec spec = build_chain(HeisenbergSelfEmbed{2}, 3);
  ChainReport rep = chain_report(spec);
  REQUIRE(rep.levels.size() == 3);
  for (std::size_t l = 1; l <= 3; ++l) {
    const LevelInvariants& lv = rep.levels[l - 1];
    CHECK(lv.level == l);
    CHECK(lv.m == P(2, 4 * l));
    CHECK(lv.n == P(2, 6 * l));
    CHECK(lv.k == P(2, 2 * l));
    CHECK(lv.k_star.value == Factored::one());
    CHECK(lv.k_star.status == KStarStatus::Stabilized);
    CHECK(lv.k_star.stabilized_depth == 2 * l);
    // The core of (2^l, 2^l, 4^l) is the cube of 2^{2l}.
    SubgroupDescriptor core = normal_core(spec.at(l));
    CHECK(subgroup_equal(core,
                         HeisenbergScales{P(2, 2 * l), P(2, 2 * l), P(2, 2 * l)}));
  }
  CHECK(rep.lagrange_ok);
  CHECK(lagrange_check(rep));
  CHECK(rep.steinitz_D == SteinitzNumber::one());
  CHECK(rep.steinitz_D_all_stabilized);
  CHECK(rep.prediction_consistent != Tri::False);
}

TEST_CASE("single-level finite models: orders, trivial cores, oracle agreement") {
  struct Golden {
    std::uint64_t p;
    std::uint32_t n, k;
  };
  for (Golden g : {Golden{2, 2, 1}, Golden{3, 2, 1}, Golden{2, 3, 2}}) {
    CAPTURE(g.p);
    CAPTURE(g.n);
    CAPTURE(g.k);
    ChainSpec spec = build_chain(ToyModel{g.p, g.n, g.k}, 1);
    ChainReport rep = chain_report(spec);
    REQUIRE(rep.levels.size() == 1);
    const LevelInvariants& lv = rep.levels[0];
    // Quotient of order p^{3n}; the stabilizer image has order p^{n-k}.
    CHECK(lv.n == P(g.p, 3 * g.n));
    CHECK(lv.k == P(g.p, g.n - g.k));
    CHECK(lv.m == P(g.p, 2 * g.n + g.k));
    CHECK(rep.lagrange_ok);

    // The level subgroup contains no nontrivial normal subgroup of the
    // quotient: its closed-form core is the chain core itself.
    FiniteQuotient q = quotient(spec.group, normal_core(spec.at(1)));
    QuotientSubgroup img = image_in_quotient(q, spec.at(1));
    ElementSet members = q.enumerate_subgroup(img, 100000);
    ElementSet core = brute_force_core_of_set(q, members);
    CHECK(core.size() == 1);

    // Every exhaustive cross-check must run (nothing skipped) and pass.
    CHECK(all_oracles_passed(oracle_verify_level(spec, 1, 100000)));
  }
}

TEST_CASE("stable chain stabilizes the discriminant at 6; rank-1 chains keep it trivial") {
  ChainSpec stable = build_chain(
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}}, 3);
  ChainReport rep = chain_report(stable);
  for (const LevelInvariants& lv : rep.levels) {
    CHECK(lv.k == F(6));
    CHECK(lv.k_star.value == F(6));
    CHECK(lv.k_star.status == KStarStatus::Stabilized);
  }
  CHECK(rep.steinitz_D == SteinitzNumber::from_factored(F(6)));
  CHECK(rep.steinitz_D_all_stabilized);
  CHECK(normal_form_check(stable, 3).verdict == Tri::True);

  ChainSpec toral = build_chain(ToralDiagonal{{{2, 1}, {3, 2}}, {5}}, 4);
  ChainReport trep = chain_report(toral);
  for (const LevelInvariants& lv : trep.levels) {
    CHECK(lv.k == Factored::one());
    CHECK(lv.k_star.value == Factored::one());
    CHECK(lv.k_star.status == KStarStatus::Stabilized);
  }
  CHECK(trep.steinitz_D == SteinitzNumber::one());
}

TEST_CASE("normal form: true when k* = k everywhere, false from level 1 on the tower") {
  ChainSpec self2 = build_chain(HeisenbergSelfEmbed{2}, 2);
  NormalFormResult nf = normal_form_check(self2, 2);
  CHECK(nf.verdict == Tri::False);
  CHECK(nf.fail_level == 1);
}

TEST_CASE("lagrange identity and monotone laws hold for every family to depth 4") {
  std::vector<FamilyDescriptor> fams = {
      HeisenbergSelfEmbed{2},
      HeisenbergSelfEmbed{3},
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}},
      HeisenbergWild{{2, 3, 5}, 2, 1, {}},
      HeisenbergWild{{2, 3}, 2, 1, {7}},
      ToralDiagonal{{{2, 1}, {3, 2}}, {5}},
      ToralProduct{{ToralDiagonal{{{2, 1}}, {3}}, ToralDiagonal{{{5, 1}}, {7}}}},
      ToyModel{2, 2, 1},
      ToyModel{3, 2, 1},
      ToyModel{2, 3, 2},
  };
  for (const auto& f : fams) {
    std::size_t depth = std::holds_alternative<ToyModel>(f) ? 1 : 4;
    ChainSpec spec = build_chain(f, depth);
    CAPTURE(spec.family);
    ChainReport rep = chain_report(spec);
    CHECK(rep.lagrange_ok);
    CHECK(lagrange_check(rep));
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
      const LevelInvariants& lv = rep.levels[i];
      // Lagrange at each level: n = m * k exactly.
      CHECK(lv.n == lv.m.times(lv.k));
      // k* divides k.
      CHECK(lv.k_star.value.divides(lv.k));
      if (i > 0) {
        const LevelInvariants& prev = rep.levels[i - 1];
        // Coset spaces grow strictly; quotient orders and stabilized
        // discriminants grow monotonically in the divisibility order.
        CHECK(prev.m.divides(lv.m));
        CHECK(prev.m != lv.m);
        CHECK(prev.n.divides(lv.n));
        CHECK(prev.k_star.value.divides(lv.k_star.value));
      }
    }
    // No exhaustive check may contradict the closed forms at level 1.
    CHECK(no_oracle_failed(oracle_verify_level(spec, 1, 100000)));
  }
}

TEST_CASE("asymptotic orders are invariant under passing to a subsequence") {
  ChainSpec full = build_chain(HeisenbergSelfEmbed{2}, 6);
  ChainSpec sub = ChainSpec::explicit_chain(
      full.group, {full.at(2), full.at(4), full.at(6)});
  ChainReport frep = chain_report(full);
  ChainReport srep = chain_report(sub);
  CHECK(srep.lagrange_ok);
  CHECK(frep.steinitz_G == srep.steinitz_G);
  CHECK(frep.steinitz_rel == srep.steinitz_rel);
  CHECK(asymptotically_equivalent(frep.steinitz_D, srep.steinitz_D) == Tri::True);
}

TEST_CASE("corrupted reports are rejected by the lagrange re-check") {
  ChainSpec spec = build_chain(HeisenbergSelfEmbed{2}, 2);
  ChainReport good = chain_report(spec);
  REQUIRE(lagrange_check(good));

  ChainReport bad = good;
  bad.levels[0].n = bad.levels[0].n.times(F(2));
  CHECK(!lagrange_check(bad));

  ChainReport bad2 = good;
  bad2.steinitz_G = mul(bad2.steinitz_G, SteinitzNumber::from_factored(F(3)));
  CHECK(!lagrange_check(bad2));

  ChainReport bad3 = good;
  bad3.levels[1].k = Factored::one();
  CHECK(!lagrange_check(bad3));
}

TEST_CASE("chain construction rejects malformed towers") {
  GroupDescriptor g = GroupDescriptor::heisenberg();
  // Not closed under the group law: p does not divide m*n.
  CHECK_THROWS_AS(
      chain_report(ChainSpec::explicit_chain(g, {HeisenbergScales{F(2), F(2), F(8)}})),
      Error);
  // Second level is not contained in the first.
  ChainSpec skew = ChainSpec::explicit_chain(
      g, {HeisenbergScales{F(2), F(2), F(4)}, HeisenbergScales{F(3), F(3), F(9)}});
  CHECK_THROWS_AS(skew.validate_nesting(2), Error);
  // Repeated level: nesting must be strict.
  ChainSpec rep = ChainSpec::explicit_chain(
      g, {HeisenbergScales{F(2), F(2), F(4)}, HeisenbergScales{F(2), F(2), F(4)}});
  CHECK_THROWS_AS(rep.validate_nesting(2), Error);
  // Level 0 is the whole group.
  ChainSpec self2 = build_chain(HeisenbergSelfEmbed{2}, 2);
  CHECK(index(self2.at(0)) == Factored::one());
}

TEST_CASE("family descriptors round-trip through their parameter lists") {
  std::vector<FamilyDescriptor> fams = {
      HeisenbergSelfEmbed{3},
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}},
      HeisenbergWild{{2, 3, 5}, 2, 1, {}},
      ToralDiagonal{{{2, 1}, {3, 2}}, {5}},
      ToralProduct{{ToralDiagonal{{{2, 1}}, {3}}, ToralDiagonal{{{5, 1}}, {7}}}},
      ToyModel{2, 3, 2},
  };
  for (const auto& f : fams) {
    std::string name = family_name(f);
    CAPTURE(name);
    FamilyDescriptor back = descriptor_from_params(name, descriptor_to_params(f));
    CHECK(back == f);
  }
  CHECK(family_names().size() == 6);
}
