#include "steinitz/chain.hpp"

#include <algorithm>
#include <string>

#include "steinitz/errors.hpp"
#include "steinitz/finite_quotient.hpp"

namespace steinitz {

namespace {

SubgroupDescriptor whole_group(const GroupDescriptor& g) {
  if (g.kind == GroupDescriptor::Kind::Heisenberg) {
    return HeisenbergScales{Factored::one(), Factored::one(), Factored::one()};
  }
  return AbelianDiagonal(g.rank, Factored::one());
}

// Order of the image of the scale subgroup `sub` in H / (a, b, c) where
// (a, b, c) are the scales of a normal subgroup: coordinatewise index of the
// gcd-reduced multiples.
Factored heis_image_order(const HeisenbergScales& core, const HeisenbergScales& sub) {
  Factored out = Factored::one();
  const Factored* mods[3] = {&core.m, &core.n, &core.p};
  const Factored* subs[3] = {&sub.m, &sub.n, &sub.p};
  for (int i = 0; i < 3; ++i) {
    out = out.times(mods[i]->divide_exact(mods[i]->gcd(*subs[i])));
  }
  return out;
}

Factored image_order_in_core_quotient(const ChainSpec& spec, std::size_t level,
                                      std::size_t deeper) {
  SubgroupDescriptor gamma = spec.at(level);
  if (const auto* h = std::get_if<HeisenbergScales>(&gamma)) {
    auto core = std::get<HeisenbergScales>(normal_core(gamma));
    auto sub = std::get<HeisenbergScales>(spec.at(deeper));
    (void)h;
    return heis_image_order(core, sub);
  }
  // Abelian: the chain is nested inside the (normal) level subgroup, so
  // every deeper image is trivial.
  return Factored::one();
}

}  // namespace

ChainSpec ChainSpec::explicit_chain(GroupDescriptor g,
                                    std::vector<SubgroupDescriptor> levels) {
  if (levels.empty()) {
    fail(ErrorKind::InvalidInput, "explicit chain needs at least one level");
  }
  ChainSpec s;
  s.group = g;
  s.max_depth = levels.size();
  s.levels_ = std::move(levels);
  for (const auto& l : s.levels_) validate_subgroup(g, l);
  return s;
}

ChainSpec ChainSpec::rule_chain(GroupDescriptor g, std::size_t max_depth, LevelRule rule) {
  if (max_depth == 0) fail(ErrorKind::InvalidInput, "chain depth must be at least 1");
  if (!rule) fail(ErrorKind::InvalidInput, "chain rule must be callable");
  ChainSpec s;
  s.group = g;
  s.max_depth = max_depth;
  s.rule_ = std::move(rule);
  return s;
}

std::size_t ChainSpec::deepest_reachable(std::size_t wanted) const {
  return extendable() ? wanted : std::min(wanted, levels_.size());
}

SubgroupDescriptor ChainSpec::at(std::size_t level) const {
  if (level == 0) return whole_group(group);
  SubgroupDescriptor s = [&] {
    if (rule_) return rule_(level);
    if (level > levels_.size()) {
      fail(ErrorKind::InvalidInput,
           "level " + std::to_string(level) + " beyond the explicit chain depth " +
               std::to_string(levels_.size()));
    }
    return levels_[level - 1];
  }();
  validate_subgroup(group, s);
  return s;
}

void ChainSpec::validate_nesting(std::size_t depth) const {
  for (std::size_t l = 1; l <= deepest_reachable(depth); ++l) {
    SubgroupDescriptor outer = at(l - 1);
    SubgroupDescriptor inner = at(l);
    Factored ratio = index_between(outer, inner);  // NestingViolation if not nested
    if (ratio.is_one()) {
      fail(ErrorKind::NestingViolation,
           "chain is not properly nested: level " + std::to_string(l) +
               " equals level " + std::to_string(l - 1));
    }
  }
}

std::size_t default_k_star_cap(const ChainSpec& spec, std::size_t level) {
  std::size_t cap = spec.k_star_cap ? *spec.k_star_cap : 2 * level;
  return std::max(cap, level);
}

KStarResult k_star_compute(const ChainSpec& spec, std::size_t level, std::size_t cap) {
  if (level == 0) return {Factored::one(), KStarStatus::Stabilized, 0};
  cap = std::max(cap, level);
  std::size_t reach = spec.deepest_reachable(cap);
  KStarResult r;
  r.value = image_order_in_core_quotient(spec, level, level);
  r.status = KStarStatus::UpperBoundOnly;
  std::size_t first_at = level;
  if (r.value.is_one()) {
    // The image always contains the identity, so a trivial image is a floor.
    return {r.value, KStarStatus::Stabilized, level};
  }
  for (std::size_t d = level + 1; d <= reach; ++d) {
    Factored next = image_order_in_core_quotient(spec, level, d);
    if (!next.divides(r.value)) {
      fail(ErrorKind::InvariantViolation,
           "bonding images must be nested: level " + std::to_string(level) +
               " image order grew at depth " + std::to_string(d));
    }
    if (next == r.value) {
      if (spec.monotone_image_guarantee) {
        return {next, KStarStatus::Stabilized, first_at};
      }
      continue;
    }
    r.value = next;
    first_at = d;
    if (next.is_one()) {
      return {next, KStarStatus::Stabilized, d};
    }
  }
  r.stabilized_depth = 0;
  return r;
}

LevelInvariants level_invariants(const ChainSpec& spec, std::size_t level) {
  LevelInvariants inv;
  inv.level = level;
  SubgroupDescriptor gamma = spec.at(level);
  inv.m = index(gamma);
  SubgroupDescriptor core = normal_core(gamma);
  inv.n = index(core);
  if (const auto* h = std::get_if<HeisenbergScales>(&gamma)) {
    inv.k = heis_image_order(std::get<HeisenbergScales>(core), *h);
  } else {
    inv.k = Factored::one();
  }
  inv.k_star = k_star_compute(spec, level, default_k_star_cap(spec, level));
  if (!inv.k_star.value.divides(inv.k)) {
    fail(ErrorKind::InvariantViolation,
         "stabilized discriminant order must divide the full discriminant order");
  }
  return inv;
}

ChainReport chain_report(const ChainSpec& spec) {
  if (spec.max_depth == 0) fail(ErrorKind::InvalidInput, "chain depth must be at least 1");
  spec.validate_nesting(spec.max_depth);
  ChainReport rep;
  rep.steinitz_G = SteinitzNumber::one();
  rep.steinitz_rel = SteinitzNumber::one();
  rep.steinitz_D = SteinitzNumber::one();
  rep.steinitz_D_full = SteinitzNumber::one();
  rep.steinitz_D_all_stabilized = true;
  Factored prev_m = Factored::one(), prev_n = Factored::one(), prev_ks = Factored::one();
  for (std::size_t l = 1; l <= spec.max_depth; ++l) {
    LevelInvariants inv = level_invariants(spec, l);
    if (!prev_m.divides(inv.m) || prev_m == inv.m) {
      fail(ErrorKind::InvariantViolation, "subgroup indexes must strictly increase");
    }
    if (!prev_n.divides(inv.n)) {
      fail(ErrorKind::InvariantViolation, "core quotient orders must be non-decreasing");
    }
    if (inv.k_star.status == KStarStatus::Stabilized && prev_ks != inv.k_star.value &&
        !prev_ks.divides(inv.k_star.value)) {
      fail(ErrorKind::InvariantViolation, "stabilized discriminant orders must be nested");
    }
    prev_m = inv.m;
    prev_n = inv.n;
    if (inv.k_star.status == KStarStatus::Stabilized) prev_ks = inv.k_star.value;
    rep.steinitz_G = lcm(rep.steinitz_G, SteinitzNumber::from_factored(inv.n));
    rep.steinitz_rel = lcm(rep.steinitz_rel, SteinitzNumber::from_factored(inv.m));
    rep.steinitz_D = lcm(rep.steinitz_D, SteinitzNumber::from_factored(inv.k_star.value));
    rep.steinitz_D_full = lcm(rep.steinitz_D_full, SteinitzNumber::from_factored(inv.k));
    if (inv.k_star.status != KStarStatus::Stabilized) rep.steinitz_D_all_stabilized = false;
    rep.levels.push_back(std::move(inv));
  }
  rep.spectra_G = spectra(rep.steinitz_G);
  rep.spectra_rel = spectra(rep.steinitz_rel);
  rep.spectra_D = spectra(rep.steinitz_D);

  bool levelwise = true;
  for (const auto& inv : rep.levels) {
    if (!(inv.n == inv.m.times(inv.k))) levelwise = false;
  }
  bool identity = rep.steinitz_G == mul(rep.steinitz_rel, rep.steinitz_D_full);
  rep.lagrange_ok = levelwise && identity;
  if (!levelwise) {
    rep.lagrange_note = "level identity n = m*k violated";
  } else if (!identity) {
    rep.lagrange_note =
        "aggregated identity uses the full discriminant orders; the per-level "
        "lcm does not match";
  } else if (rep.steinitz_D == rep.steinitz_D_full && rep.steinitz_D_all_stabilized) {
    rep.lagrange_note = "holds with the stabilized discriminant";
  } else if (rep.steinitz_D == rep.steinitz_D_full) {
    rep.lagrange_note =
        "holds with the full discriminant orders k; some levels carry only an "
        "upper bound for k*, which happens to agree with k";
  } else {
    rep.lagrange_note =
        "holds with the full discriminant orders k; the stabilized orders k* "
        "are smaller, so the discriminant Steinitz order uses k* separately";
  }

  rep.normal_form.verdict = Tri::True;
  for (const auto& inv : rep.levels) {
    bool definite_gap = !(inv.k_star.value == inv.k);
    if (definite_gap) {
      // k* <= value, so value < k already certifies a gap even when the
      // stabilization search was cut off.
      rep.normal_form.verdict = Tri::False;
      rep.normal_form.fail_level = inv.level;
      break;
    }
    if (inv.k_star.status != KStarStatus::Stabilized) {
      rep.normal_form.verdict = Tri::Unknown;
    }
  }

  if (!spec.prediction) {
    rep.prediction_consistent = Tri::Unknown;
    rep.prediction_note = "no symbolic prediction attached";
    return rep;
  }
  const ChainPrediction& pred = *spec.prediction;
  struct Pair {
    const SteinitzNumber* trunc;
    const SteinitzNumber* pred;
    const char* name;
  } pairs[] = {{&rep.steinitz_G, &pred.steinitz_G, "order"},
               {&rep.steinitz_rel, &pred.steinitz_rel, "relative order"},
               {&rep.steinitz_D, &pred.steinitz_D, "discriminant order"}};
  rep.prediction_consistent = Tri::True;
  for (const auto& pr : pairs) {
    if (!divides(*pr.trunc, *pr.pred)) {
      rep.prediction_consistent = Tri::False;
      rep.prediction_note = std::string(pr.name) + " truncation does not divide the prediction";
      break;
    }
    // Finite explicit exponents of the prediction must eventually be
    // reproduced exactly; until then the comparison stays open.
    for (const auto& [p, e] : pr.pred->explicit_entries()) {
      if (e.is_infinite()) continue;
      if (!(pr.trunc->exponent_of(p) == e)) {
        rep.prediction_consistent = Tri::Unknown;
        rep.prediction_note = std::string(pr.name) + " has not yet reached the predicted exponent at prime " +
                              std::to_string(p);
      }
    }
    if (pr.pred->has_tail() && !pr.pred->tail()->exponent.is_infinite()) {
      if (rep.prediction_consistent == Tri::True) {
        rep.prediction_consistent = Tri::Unknown;
        rep.prediction_note = std::string(pr.name) +
                              " predicts infinitely many finite exponents; a truncation can "
                              "only ever witness finitely many";
      }
    }
  }
  if (rep.prediction_consistent == Tri::True) {
    rep.prediction_note = "truncation divides the prediction and reproduces its finite part";
  }
  return rep;
}

bool lagrange_check(const ChainReport& report) {
  for (const auto& inv : report.levels) {
    if (!(inv.n == inv.m.times(inv.k))) return false;
  }
  SteinitzNumber g = SteinitzNumber::one(), m = SteinitzNumber::one(),
                 k = SteinitzNumber::one();
  for (const auto& inv : report.levels) {
    g = lcm(g, SteinitzNumber::from_factored(inv.n));
    m = lcm(m, SteinitzNumber::from_factored(inv.m));
    k = lcm(k, SteinitzNumber::from_factored(inv.k));
  }
  if (!(g == report.steinitz_G) || !(m == report.steinitz_rel) ||
      !(k == report.steinitz_D_full)) {
    return false;
  }
  return g == mul(m, k);
}

NormalFormResult normal_form_check(const ChainSpec& spec, std::size_t depth) {
  NormalFormResult r;
  r.verdict = Tri::True;
  for (std::size_t l = 1; l <= depth; ++l) {
    LevelInvariants inv = level_invariants(spec, l);
    if (!(inv.k_star.value == inv.k)) {
      return {Tri::False, l};
    }
    if (inv.k_star.status != KStarStatus::Stabilized) {
      r.verdict = Tri::Unknown;
      r.fail_level = 0;
    }
  }
  return r;
}

std::vector<OracleCheck> oracle_verify_level(const ChainSpec& spec, std::size_t level,
                                             std::uint64_t bound) {
  std::vector<OracleCheck> out;
  auto add = [&](std::string name, OracleCheck::Status st, std::string note) {
    out.push_back({std::move(name), st, std::move(note)});
  };
  auto guarded = [&](std::string name, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ResourceBound) {
        add(std::move(name), OracleCheck::Status::Skipped, e.what());
      } else {
        add(std::move(name), OracleCheck::Status::Failed, e.what());
      }
    }
  };

  LevelInvariants inv = level_invariants(spec, level);
  SubgroupDescriptor gamma = spec.at(level);
  SubgroupDescriptor core = normal_core(gamma);

  guarded("nesting", [&] {
    Factored ratio = index_between(spec.at(level - 1), gamma);
    add("nesting", ratio.is_one() ? OracleCheck::Status::Failed : OracleCheck::Status::Passed,
        "level ratio " + ratio.factor_string());
  });

  if (!is_normal(core) || !subgroup_contains(gamma, core)) {
    add("core-soundness", OracleCheck::Status::Failed,
        "closed-form core is not a normal subgroup inside the level");
  } else {
    add("core-soundness", OracleCheck::Status::Passed, "normal and contained");
  }

  guarded("core-maximality", [&] {
    FiniteQuotient q = quotient(spec.group, core);
    QuotientSubgroup d = image_in_quotient(q, gamma);
    ElementSet brute = brute_force_core_oracle(q, d, bound);
    add("core-maximality",
        brute.size() == 1 ? OracleCheck::Status::Passed : OracleCheck::Status::Failed,
        "core of the level image has " + std::to_string(brute.size()) + " elements");
  });

  guarded("quotient-order", [&] {
    FiniteQuotient q = quotient(spec.group, core);
    auto elems = q.elements(bound);
    add("quotient-order",
        Factored::from_integer(elems.size()) == inv.n ? OracleCheck::Status::Passed
                                                      : OracleCheck::Status::Failed,
        std::to_string(elems.size()) + " elements enumerated");
  });

  guarded("discriminant-order", [&] {
    FiniteQuotient q = quotient(spec.group, core);
    QuotientSubgroup d = image_in_quotient(q, gamma);
    ElementSet set = q.enumerate_subgroup(d, bound);
    add("discriminant-order",
        Factored::from_integer(set.size()) == inv.k ? OracleCheck::Status::Passed
                                                    : OracleCheck::Status::Failed,
        std::to_string(set.size()) + " image elements enumerated");
  });

  guarded("lagrange-counts", [&] {
    bool ok = inv.n == inv.m.times(inv.k);
    add("lagrange-counts", ok ? OracleCheck::Status::Passed : OracleCheck::Status::Failed,
        inv.m.factor_string() + " * " + inv.k.factor_string() + " vs " + inv.n.factor_string());
  });

  guarded("bonding-images", [&] {
    FiniteQuotient q = quotient(spec.group, core);
    std::size_t cap = spec.deepest_reachable(default_k_star_cap(spec, level));
    ElementSet prev;
    bool first = true;
    for (std::size_t d = level; d <= cap; ++d) {
      QuotientSubgroup img = image_in_quotient(q, spec.at(d));
      Factored closed = image_order_in_core_quotient(spec, level, d);
      if (!(img.order == closed)) {
        add("bonding-images", OracleCheck::Status::Failed,
            "closed-form image order mismatch at depth " + std::to_string(d));
        return;
      }
      ElementSet set = q.enumerate_subgroup(img, bound);
      if (!first) {
        for (auto c : set.codes) {
          if (!prev.contains_code(c)) {
            add("bonding-images", OracleCheck::Status::Failed,
                "images are not nested at depth " + std::to_string(d));
            return;
          }
        }
      }
      prev = std::move(set);
      first = false;
    }
    add("bonding-images", OracleCheck::Status::Passed,
        "nested with matching orders through depth " + std::to_string(cap));
  });

  return out;
}

}  // namespace steinitz
