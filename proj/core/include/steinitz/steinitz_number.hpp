#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steinitz/factored.hpp"
#include "steinitz/primes.hpp"

namespace steinitz {

// Three-valued logic for decisions that truncated or tail-bearing data may
// legitimately leave open. `Unknown` is an answer, never an error.
enum class Tri { False = 0, True = 1, Unknown = 2 };

const char* tri_name(Tri t);

// An exponent in N union {infinity}. Addition and max saturate at infinity.
class Exponent {
 public:
  constexpr Exponent() : v_(0) {}
  constexpr explicit Exponent(std::uint64_t n) : v_(n) {}
  static constexpr Exponent infinity() { return Exponent(kInf, 0); }

  constexpr bool is_infinite() const { return v_ == kInf; }
  constexpr bool is_zero() const { return v_ == 0; }
  // Finite value; callers must check is_infinite() first.
  std::uint64_t finite_value() const;

  Exponent plus(Exponent o) const;
  Exponent max(Exponent o) const;
  bool leq(Exponent o) const;

  bool operator==(const Exponent& o) const = default;

 private:
  constexpr Exponent(std::uint64_t v, int) : v_(v) {}
  static constexpr std::uint64_t kInf = ~0ull;
  std::uint64_t v_;
};

// A tail attaches one constant exponent to every prime of a deterministic
// stream, giving infinite-support numbers an exact, comparable description.
// The closed rule set (full prime stream or a coprime residue class, above a
// starting point, minus finitely many exclusions) is deliberately small: it
// covers exactly the infinite families this library constructs, and it keeps
// disjointness and equality of tails decidable by inspection.
struct TailRule {
  PrimeStream stream;
  Exponent exponent;  // never zero

  bool operator==(const TailRule& o) const = default;
};

class SteinitzNumber {
 public:
  using Entry = std::pair<std::uint64_t, Exponent>;

  SteinitzNumber() = default;  // the number 1

  static SteinitzNumber one();
  static SteinitzNumber from_factored(const Factored& f);
  // Entries: strictly increasing primes, no zero exponents. The optional tail
  // must have support disjoint from the explicit entries (decidable for the
  // closed rule set; verified exactly at construction).
  static SteinitzNumber make(std::vector<Entry> entries,
                             std::optional<TailRule> tail = std::nullopt);

  const std::vector<Entry>& explicit_entries() const { return entries_; }
  const std::optional<TailRule>& tail() const { return tail_; }
  bool has_tail() const { return tail_.has_value(); }
  bool is_one() const { return entries_.empty() && !tail_; }

  // Exponent of an individual prime, tail included.
  Exponent exponent_of(std::uint64_t p) const;

  bool operator==(const SteinitzNumber& o) const = default;

 private:
  std::vector<Entry> entries_;
  std::optional<TailRule> tail_;
};

// Exponent at p is the total multiplicity of p over the first `truncation`
// factors of the sequence. Factors must be >= 2 and truncation in
// [1, factors.size()].
SteinitzNumber steinitz_from_factor_sequence(const std::vector<std::uint64_t>& factors,
                                             std::size_t truncation);

// Exponent-wise sum / max / comparison, with infinity absorbing. Throws
// IncompatibleTails when two tails can neither be merged (same stream) nor
// proven disjoint.
SteinitzNumber mul(const SteinitzNumber& a, const SteinitzNumber& b);
SteinitzNumber lcm(const SteinitzNumber& a, const SteinitzNumber& b);
bool divides(const SteinitzNumber& a, const SteinitzNumber& b);

// Equivalence up to finite integer multipliers on both sides: the infinite
// parts must agree exactly and the finite exponents may differ at only
// finitely many primes by a finite total amount. Always decides for purely
// explicit numbers; answers Unknown when tail rules cannot be aligned.
Tri asymptotically_equivalent(const SteinitzNumber& a, const SteinitzNumber& b);

// A possibly-infinite set of primes: explicit members plus an optional
// stream.
struct PrimeSet {
  std::vector<std::uint64_t> explicit_primes;  // sorted
  std::optional<PrimeStream> stream;

  bool contains(std::uint64_t p) const;
  bool is_empty() const { return explicit_primes.empty() && !stream; }
  bool operator==(const PrimeSet& o) const = default;
};

struct PrimeSpectrumReport {
  PrimeSet pi;        // primes with positive exponent
  PrimeSet pi_f;      // finite positive exponent
  PrimeSet pi_infty;  // infinite exponent
  Tri pi_f_is_infinite = Tri::False;

  bool operator==(const PrimeSpectrumReport& o) const = default;
};

PrimeSpectrumReport spectra(const SteinitzNumber& n);

}  // namespace steinitz
