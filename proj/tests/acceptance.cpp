// End-to-end acceptance runner. Each numbered criterion prints exactly one
// PASS/FAIL line on stdout with its runtime; diagnostics go to stderr. The
// process exits nonzero if any criterion fails or overruns its time budget.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "steinitz/chain.hpp"
#include "steinitz/dynamics.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/factored.hpp"
#include "steinitz/families.hpp"
#include "steinitz/finite_quotient.hpp"
#include "steinitz/solenoid.hpp"
#include "steinitz/steinitz_number.hpp"
#include "steinitz/subgroup.hpp"

using namespace steinitz;

namespace {

struct Criterion {
  bool ok = true;
  std::ostringstream log;
};

#define EXPECT(c, cond)                                              \
  do {                                                               \
    if (!(cond)) {                                                   \
      (c).ok = false;                                                \
      (c).log << "    expectation failed: " << #cond << "\n";        \
    }                                                                \
  } while (0)

Factored P2(std::uint64_t e) { return Factored::prime_power(2, e); }

// ---- criterion 1: self-embedding tower goldens ----------------------------

void criterion_1(Criterion& c) {
  ChainSpec spec = build_chain(HeisenbergSelfEmbed{2}, 3);
  ChainReport rep = chain_report(spec);
  EXPECT(c, rep.levels.size() == 3);
  for (std::size_t l = 1; l <= 3 && l <= rep.levels.size(); ++l) {
    const LevelInvariants& lv = rep.levels[l - 1];
    EXPECT(c, lv.n == P2(6 * l));
    EXPECT(c, lv.k == P2(2 * l));
    EXPECT(c, lv.k_star.value == Factored::one());
    EXPECT(c, lv.k_star.status == KStarStatus::Stabilized);
    EXPECT(c, lv.k_star.stabilized_depth <= 2 * l);
    EXPECT(c, subgroup_equal(normal_core(spec.at(l)),
                             HeisenbergScales{P2(2 * l), P2(2 * l), P2(2 * l)}));
    EXPECT(c, lv.n == lv.m.times(lv.k));
  }
  EXPECT(c, rep.lagrange_ok);
  EXPECT(c, lagrange_check(rep));
}

// ---- criterion 2: single-level finite models -------------------------------

void criterion_2(Criterion& c) {
  struct T {
    std::uint64_t p;
    std::uint32_t n, k;
  };
  for (T t : {T{2, 2, 1}, T{3, 2, 1}, T{2, 3, 2}}) {
    ChainSpec spec = build_chain(ToyModel{t.p, t.n, t.k}, 1);
    ChainReport rep = chain_report(spec);
    EXPECT(c, rep.levels.size() == 1);
    EXPECT(c, rep.levels[0].n == Factored::prime_power(t.p, 3 * t.n));
    EXPECT(c, rep.levels[0].k == Factored::prime_power(t.p, t.n - t.k));
    FiniteQuotient q = quotient(spec.group, normal_core(spec.at(1)));
    ElementSet members =
        q.enumerate_subgroup(image_in_quotient(q, spec.at(1)), 100000);
    EXPECT(c, brute_force_core_of_set(q, members).size() == 1);
    for (const OracleCheck& chk : oracle_verify_level(spec, 1, 100000)) {
      EXPECT(c, chk.status == OracleCheck::Status::Passed);
      if (chk.status != OracleCheck::Status::Passed) {
        c.log << "    oracle " << chk.name << ": " << chk.note << "\n";
      }
    }
  }
}

// ---- criterion 3: wildness witness ------------------------------------------

void criterion_3(Criterion& c) {
  ChainSpec spec = build_chain(HeisenbergWild{{2, 3, 5}, 2, 1, {}}, 2);
  auto w = wild_witness_search(spec, 1, 2, 100000);
  EXPECT(c, w.has_value());
  if (!w) return;
  EXPECT(c, w->shallow_level == 1);
  EXPECT(c, w->deep_level == 2);
  EXPECT(c, verify_witness(spec, *w));
  LevelAction deep(spec, 2);
  EXPECT(c, deep.act(w->element, w->moved_cylinder) != w->moved_cylinder);
}

// ---- criterion 4: stable classification -------------------------------------

void criterion_4(Criterion& c) {
  ChainSpec stable = build_chain(
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}}, 3);
  StabilityReport rep = classify_stability(stable, 100000);
  EXPECT(c, rep.verdict == StabilityVerdict::Stable);
  EXPECT(c, rep.finite_spectrum_certificate);
  EXPECT(c, rep.reason.find("finite") != std::string::npos);
  ChainReport crep = chain_report(stable);
  for (const LevelInvariants& lv : crep.levels) {
    EXPECT(c, lv.k_star.value == Factored::from_integer(6));
    EXPECT(c, lv.k_star.status == KStarStatus::Stabilized);
  }

  ChainSpec toral = build_chain(ToralDiagonal{{{2, 1}, {3, 2}}, {5}}, 4);
  ChainReport trep = chain_report(toral);
  for (const LevelInvariants& lv : trep.levels) {
    EXPECT(c, lv.k == Factored::one());
    EXPECT(c, lv.k_star.value == Factored::one());
  }
}

// ---- criterion 5: solenoid homeomorphism goldens ----------------------------

void criterion_5(Criterion& c) {
  auto rep = [](std::vector<std::uint64_t> d, std::size_t block) {
    SolenoidPresentation p;
    p.degrees = std::move(d);
    p.continuation.kind = SolenoidContinuation::Kind::RepeatBlock;
    p.continuation.block = block;
    return p;
  };
  SolenoidPresentation two = rep({2}, 1), four = rep({4}, 1), alt = rep({2, 3}, 2);
  EXPECT(c, solenoids_homeomorphic_1d(two, four) == Tri::True);
  EXPECT(c, solenoids_homeomorphic_1d(two, alt) == Tri::False);
  EXPECT(c, orders_asymptotically_equivalent(two, four) == Tri::True);
  EXPECT(c, orders_asymptotically_equivalent(two, alt) == Tri::False);
  SolenoidPresentation padded = rep({7, 10, 6, 2, 3}, 2);
  EXPECT(c, solenoids_homeomorphic_1d(padded, drop_first(padded, 3)) == Tri::True);
}

// ---- criterion 6: property suites -------------------------------------------

using Naive = std::map<std::uint64_t, std::uint64_t>;
constexpr std::uint64_t kInf = ~0ull;
constexpr std::uint64_t kPool[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

Naive to_naive(const SteinitzNumber& s) {
  Naive m;
  for (const auto& [p, e] : s.explicit_entries())
    m[p] = e.is_infinite() ? kInf : e.finite_value();
  return m;
}

SteinitzNumber rand_steinitz(std::mt19937& rng) {
  std::uniform_int_distribution<int> nprimes(0, 5), pick(0, 9), expo(1, 6), coin(0, 9);
  std::set<std::uint64_t> chosen;
  int n = nprimes(rng);
  while (static_cast<int>(chosen.size()) < n) chosen.insert(kPool[pick(rng)]);
  std::vector<SteinitzNumber::Entry> es;
  for (std::uint64_t p : chosen) {
    es.push_back({p, coin(rng) == 0 ? Exponent::infinity()
                                    : Exponent(static_cast<std::uint64_t>(expo(rng)))});
  }
  return SteinitzNumber::make(std::move(es));
}

void criterion_6(Criterion& c) {
  // (a) arithmetic laws on 1000 random explicit numbers.
  std::mt19937 rng(0xC0FFEE);
  for (int i = 0; i < 1000 && c.ok; ++i) {
    SteinitzNumber a = rand_steinitz(rng), b = rand_steinitz(rng);
    Naive na = to_naive(a), nb = to_naive(b);
    Naive want_mul = na, want_lcm = na;
    for (const auto& [p, e] : nb) {
      std::uint64_t& m = want_mul[p];
      m = (m == kInf || e == kInf) ? kInf : m + e;
      std::uint64_t& l = want_lcm[p];
      l = std::max(l, e);
    }
    EXPECT(c, to_naive(mul(a, b)) == want_mul);
    EXPECT(c, to_naive(lcm(a, b)) == want_lcm);
    EXPECT(c, mul(a, b) == mul(b, a));
    EXPECT(c, divides(a, mul(a, b)));
    EXPECT(c, divides(lcm(a, b), mul(a, b)));
  }

  // (b) Lagrange identity and monotone laws for every family to depth 4.
  std::vector<FamilyDescriptor> fams = {
      HeisenbergSelfEmbed{2},
      HeisenbergSelfEmbed{3},
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}},
      HeisenbergWild{{2, 3, 5}, 2, 1, {}},
      ToralDiagonal{{{2, 1}, {3, 2}}, {5}},
      ToralProduct{{ToralDiagonal{{{2, 1}}, {3}}, ToralDiagonal{{{5, 1}}, {7}}}},
      ToyModel{2, 2, 1},
  };
  for (const auto& f : fams) {
    std::size_t depth = std::holds_alternative<ToyModel>(f) ? 1 : 4;
    ChainSpec spec = build_chain(f, depth);
    ChainReport rep = chain_report(spec);
    EXPECT(c, rep.lagrange_ok && lagrange_check(rep));
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
      const LevelInvariants& lv = rep.levels[i];
      EXPECT(c, lv.n == lv.m.times(lv.k));
      EXPECT(c, lv.k_star.value.divides(lv.k));
      if (i > 0) {
        EXPECT(c, rep.levels[i - 1].m.divides(lv.m) && rep.levels[i - 1].m != lv.m);
        EXPECT(c, rep.levels[i - 1].n.divides(lv.n));
        EXPECT(c, rep.levels[i - 1].k_star.value.divides(lv.k_star.value));
      }
    }
    if (!c.ok) {
      c.log << "    family " << spec.family << " broke a chain law\n";
      return;
    }
  }

  // (c) conjugation invariance of the brute-force core, 50 conjugators.
  FiniteQuotient q = FiniteQuotient::heisenberg_mod(16, 16, 16);
  QuotientSubgroup img = image_in_quotient(
      q, HeisenbergScales{P2(1), P2(1), P2(2)});
  ElementSet s = q.enumerate_subgroup(img, 100000);
  ElementSet core = brute_force_core_of_set(q, s);
  std::uniform_int_distribution<std::uint64_t> dq(0, 4095);
  for (int i = 0; i < 50; ++i) {
    QElem g = q.decode(dq(rng));
    ElementSet sg = conjugate_set(q, s, g);
    EXPECT(c, sg.size() == s.size());
    EXPECT(c, brute_force_core_of_set(q, sg) == core);
  }

  // (d) Sylow recombination in a mixed quotient below the bound.
  FiniteQuotient m36 = FiniteQuotient::heisenberg_mod(36, 36, 36);
  auto parts = sylow_decompose(m36);
  Factored prod = Factored::one();
  for (const auto& f : parts) prod = prod.times(f.part.order());
  EXPECT(c, prod == m36.order());
  std::uniform_int_distribution<std::uint64_t> dm(0, 46655);
  for (int i = 0; i < 100; ++i) {
    QElem x = m36.decode(dm(rng)), y = m36.decode(dm(rng));
    for (const auto& f : parts) {
      EXPECT(c, project_to_sylow(f, m36.mul(x, y)) ==
                    f.part.mul(project_to_sylow(f, x), project_to_sylow(f, y)));
    }
  }

  // (e) closed-form cores against the exhaustive oracle below the bound.
  struct Probe {
    FamilyDescriptor fam;
    std::size_t level;
  };
  for (const Probe& pr : {Probe{HeisenbergSelfEmbed{2}, 1}, Probe{HeisenbergSelfEmbed{2}, 2},
                          Probe{ToyModel{2, 3, 2}, 1}, Probe{HeisenbergWild{{2, 3, 5}, 2, 1, {}}, 2}}) {
    ChainSpec spec = build_chain(pr.fam, pr.level);
    for (const OracleCheck& chk : oracle_verify_level(spec, pr.level, 100000)) {
      EXPECT(c, chk.status != OracleCheck::Status::Failed);
    }
  }
}

// ---- criterion 7: negative controls ------------------------------------------

void criterion_7(Criterion& c) {
  ChainReport good = chain_report(build_chain(HeisenbergSelfEmbed{2}, 2));
  EXPECT(c, lagrange_check(good));
  ChainReport bad = good;
  bad.levels[0].n = bad.levels[0].n.times(Factored::from_integer(2));
  EXPECT(c, !lagrange_check(bad));
  ChainReport bad2 = good;
  bad2.steinitz_rel = mul(bad2.steinitz_rel, SteinitzNumber::from_factored(
                                                 Factored::from_integer(3)));
  EXPECT(c, !lagrange_check(bad2));

  // The classifier must never contradict the construction across the grid,
  // and a certificate plus a witness throws rather than returning.
  std::vector<FamilyDescriptor> grid = {
      HeisenbergSelfEmbed{2},
      HeisenbergSelfEmbed{3},
      ToyModel{2, 2, 1},
      ToyModel{3, 2, 1},
      ToyModel{2, 3, 2},
      HeisenbergStable{{PiFEntry{2, 2, 1}, PiFEntry{3, 2, 1}}, {5}},
      HeisenbergWild{{2, 3, 5}, 2, 1, {}},
      HeisenbergWild{{2, 3}, 2, 1, {7}},
      ToralDiagonal{{{2, 1}, {3, 2}}, {5}},
      ToralProduct{{ToralDiagonal{{{2, 1}}, {3}}, ToralDiagonal{{{5, 1}}, {7}}}},
  };
  for (const auto& f : grid) {
    std::size_t depth = std::holds_alternative<ToyModel>(f) ? 1 : 3;
    ChainSpec spec = build_chain(f, depth);
    try {
      StabilityReport rep = classify_stability(spec, 100000);
      ExpectedClassification want = expected_classification(f);
      if (want.stable == Tri::True) EXPECT(c, rep.verdict != StabilityVerdict::Wild);
      if (want.stable == Tri::False) EXPECT(c, rep.verdict != StabilityVerdict::Stable);
      if (rep.verdict == StabilityVerdict::Wild) {
        EXPECT(c, rep.witness.has_value() && verify_witness(spec, *rep.witness));
      }
    } catch (const Error& e) {
      c.ok = false;
      c.log << "    classifier threw for " << spec.family << ": " << e.what() << "\n";
    }
  }
}

}  // namespace

int main() {
  struct Row {
    int number;
    const char* title;
    double limit_s;  // 0 = no budget
    void (*fn)(Criterion&);
  };
  const Row rows[] = {
      {1, "self-embedding tower invariants (p=2, depth 3)", 5.0, criterion_1},
      {2, "single-level finite models vs exhaustive oracles", 10.0, criterion_2},
      {3, "wildness witness found and re-verified at (1,2)", 30.0, criterion_3},
      {4, "stable chain certified; discriminants stabilize", 0.0, criterion_4},
      {5, "solenoid homeomorphism goldens", 0.0, criterion_5},
      {6, "property suites (arithmetic, chains, cores, sylow)", 180.0, criterion_6},
      {7, "negative controls and classifier consistency", 0.0, criterion_7},
  };
  bool all_ok = true;
  for (const Row& row : rows) {
    Criterion c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      row.fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "    unexpected exception: " << e.what() << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = row.limit_s == 0.0 || secs <= row.limit_s;
    bool ok = c.ok && in_budget;
    all_ok = all_ok && ok;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (ok ? "PASS" : "FAIL") << "  criterion " << row.number << ": " << row.title
         << " (" << secs << "s";
    if (row.limit_s > 0) line << " / budget " << row.limit_s << "s";
    line << ")";
    std::cout << line.str() << "\n";
    if (!ok) {
      std::cerr << line.str() << "\n" << c.log.str();
      if (!in_budget) std::cerr << "    over time budget\n";
    }
  }
  return all_ok ? 0 : 1;
}
