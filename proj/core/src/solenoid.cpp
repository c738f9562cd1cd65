#include "steinitz/solenoid.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "steinitz/chain.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/factored.hpp"

namespace steinitz {

void validate_presentation(const SolenoidPresentation& p) {
  for (auto d : p.degrees) {
    if (d < 2) {
      fail(ErrorKind::InvalidInput,
           "solenoid covering degrees must be at least 2, got " + std::to_string(d));
    }
  }
  if (p.dimension == 0) {
    fail(ErrorKind::InvalidInput, "solenoid dimension must be positive");
  }
  switch (p.continuation.kind) {
    case SolenoidContinuation::Kind::None:
      if (p.continuation.block != 0 || p.continuation.stream) {
        fail(ErrorKind::InvalidInput,
             "a finite presentation carries no repeat block or prime stream");
      }
      break;
    case SolenoidContinuation::Kind::RepeatBlock:
      if (p.continuation.stream) {
        fail(ErrorKind::InvalidInput,
             "a repeating presentation carries no prime stream");
      }
      if (p.continuation.block == 0 || p.continuation.block > p.degrees.size()) {
        fail(ErrorKind::InvalidInput,
             "the repeat block must cover between 1 and all listed degrees");
      }
      break;
    case SolenoidContinuation::Kind::PrimeStream:
      if (p.continuation.block != 0) {
        fail(ErrorKind::InvalidInput,
             "a prime-stream presentation carries no repeat block");
      }
      if (!p.continuation.stream) {
        fail(ErrorKind::InvalidInput, "a prime-stream continuation needs its stream");
      }
      p.continuation.stream->stream.validate();
      if (p.continuation.stream->exponent.is_zero() ||
          p.continuation.stream->exponent.is_infinite()) {
        // Each tail level is one covering map of a finite degree p^e; an
        // infinite exponent cannot occur at a single level. Towers whose
        // order has infinite exponents arise from repeat blocks instead.
        fail(ErrorKind::InvalidInput,
             "prime-stream covering degrees need a finite positive exponent");
      }
      break;
  }
}

namespace {

Factored explicit_product(const SolenoidPresentation& p) {
  Factored total = Factored::one();
  for (auto d : p.degrees) total = total.times(Factored::from_integer(d));
  return total;
}

// Concrete covering degree of 1-based level `level`, when the presentation
// determines one. Levels past the explicit prefix exist for repeating and
// prime-stream continuations only.
std::optional<Factored> degree_at(const SolenoidPresentation& p, std::size_t level) {
  if (level == 0) return std::nullopt;
  std::size_t i = level - 1;
  if (i < p.degrees.size()) return Factored::from_integer(p.degrees[i]);
  std::size_t j = i - p.degrees.size();
  switch (p.continuation.kind) {
    case SolenoidContinuation::Kind::None:
      return std::nullopt;
    case SolenoidContinuation::Kind::RepeatBlock: {
      std::size_t start = p.degrees.size() - p.continuation.block;
      return Factored::from_integer(p.degrees[start + j % p.continuation.block]);
    }
    case SolenoidContinuation::Kind::PrimeStream: {
      std::uint64_t q = p.continuation.stream->stream.nth(j);
      return Factored::prime_power(q, p.continuation.stream->exponent.finite_value());
    }
  }
  return std::nullopt;
}

}  // namespace

SteinitzNumber presentation_order(const SolenoidPresentation& p) {
  validate_presentation(p);
  Factored total = explicit_product(p);
  switch (p.continuation.kind) {
    case SolenoidContinuation::Kind::None:
      return SteinitzNumber::from_factored(total);
    case SolenoidContinuation::Kind::RepeatBlock: {
      // The block repeats forever, so each of its primes reaches every power.
      Factored block = Factored::one();
      std::size_t start = p.degrees.size() - p.continuation.block;
      for (std::size_t i = start; i < p.degrees.size(); ++i) {
        block = block.times(Factored::from_integer(p.degrees[i]));
      }
      std::vector<SteinitzNumber::Entry> entries;
      for (const auto& [q, e] : total.entries()) {
        if (block.exponent_of(q) > 0) {
          entries.push_back({q, Exponent::infinity()});
        } else {
          entries.push_back({q, Exponent(e)});
        }
      }
      return SteinitzNumber::make(std::move(entries));
    }
    case SolenoidContinuation::Kind::PrimeStream: {
      // Every stream prime appears once more in the tail; primes the prefix
      // already used accumulate both contributions.
      const TailRule& rule = *p.continuation.stream;
      std::vector<SteinitzNumber::Entry> entries;
      for (const auto& [q, e] : total.entries()) {
        Exponent exp{e};
        if (rule.stream.contains(q)) exp = exp.plus(rule.exponent);
        entries.push_back({q, exp});
      }
      return SteinitzNumber::make(std::move(entries), rule);
    }
  }
  fail(ErrorKind::InvalidInput, "unhandled solenoid continuation kind");
}

SolenoidPresentation drop_first(const SolenoidPresentation& p, std::size_t k) {
  validate_presentation(p);
  std::size_t keep_for_continuation =
      p.continuation.kind == SolenoidContinuation::Kind::RepeatBlock
          ? p.continuation.block
          : 0;
  if (k + keep_for_continuation > p.degrees.size()) {
    fail(ErrorKind::InvalidInput,
         "cannot drop " + std::to_string(k) + " degrees: the presentation lists " +
             std::to_string(p.degrees.size()) +
             (keep_for_continuation
                  ? " and the repeating block needs the last " +
                        std::to_string(keep_for_continuation)
                  : ""));
  }
  SolenoidPresentation out = p;
  out.degrees.erase(out.degrees.begin(),
                    out.degrees.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

Tri orders_asymptotically_equivalent(const SolenoidPresentation& a,
                                     const SolenoidPresentation& b) {
  return asymptotically_equivalent(presentation_order(a), presentation_order(b));
}

Tri solenoids_homeomorphic_1d(const SolenoidPresentation& a,
                              const SolenoidPresentation& b) {
  if (a.dimension != 1 || b.dimension != 1) {
    // Above dimension one equal orders do not force a homeomorphism, so the
    // decision is refused rather than answered.
    fail(ErrorKind::Not1Dimensional,
         "the order comparison decides homeomorphism only for 1-dimensional "
         "solenoids; got dimensions " +
             std::to_string(a.dimension) + " and " + std::to_string(b.dimension));
  }
  return orders_asymptotically_equivalent(a, b);
}

PresentationChainConsistency presentation_to_chain(const SolenoidPresentation& p,
                                                   const ChainReport& report) {
  validate_presentation(p);
  PresentationChainConsistency out;
  Factored cumulative = Factored::one();
  SteinitzNumber running = SteinitzNumber::one();
  for (const auto& inv : report.levels) {
    auto deg = degree_at(p, inv.level);
    if (!deg) break;
    cumulative = cumulative.times(*deg);
    if (!(cumulative == inv.m)) {
      fail(ErrorKind::MismatchAtLevel,
           "level " + std::to_string(inv.level) + ": cumulative covering degree " +
               cumulative.decimal() + " does not equal the chain index " +
               inv.m.decimal());
    }
    running = lcm(running, SteinitzNumber::from_factored(cumulative));
    ++out.levels_compared;
  }
  if (out.levels_compared == report.levels.size() && !report.levels.empty()) {
    // With every level matched the degree products and the chain indices
    // have identical least common multiples; disagreement here means the
    // report itself is inconsistent.
    if (!(running == report.steinitz_rel)) {
      fail(ErrorKind::InvariantViolation,
           "matched covering degrees but the relative order truncation differs");
    }
  }
  out.prefix_consistent = true;
  if (report.levels.empty()) {
    out.note = "the chain report carries no levels; nothing to compare";
  } else if (out.levels_compared == report.levels.size()) {
    out.note = "cumulative covering degrees match the chain indices at all " +
               std::to_string(out.levels_compared) + " report levels";
  } else {
    out.note = "cumulative covering degrees match the chain indices at the " +
               std::to_string(out.levels_compared) +
               " levels the presentation determines; the report continues deeper";
  }
  return out;
}

}  // namespace steinitz
