#pragma once

#include <cstdint>
#include <vector>

namespace steinitz {

// All prime inputs are desk-scale: primality is decided by deterministic
// trial division, so primes must stay below 2^31.
inline constexpr std::uint64_t kMaxPrimeInput = (1ull << 31);

bool is_prime(std::uint64_t n);

// Throws InvalidInput unless p is a prime below kMaxPrimeInput.
void require_prime(std::uint64_t p, const char* what);

// Smallest prime strictly greater than n (n + result below 2^31 assumed).
std::uint64_t next_prime_after(std::uint64_t n);

// A deterministic, strictly increasing stream of primes: all primes p with
// p >= min_prime and (modulus == 1 or p % modulus == residue), excluding an
// explicit finite set. Streams with modulus > 1 require gcd(residue, modulus)
// = 1 so the stream is provably infinite; that keeps every cardinality
// question about tails decidable.
struct PrimeStream {
  std::uint64_t min_prime = 2;
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> excluded;  // sorted, deduplicated

  static PrimeStream all_primes();
  static PrimeStream all_primes_excluding(std::vector<std::uint64_t> excl);
  static PrimeStream residue_class(std::uint64_t residue, std::uint64_t modulus,
                                   std::uint64_t min_prime = 2);

  void validate() const;  // throws InvalidInput on a malformed stream
  bool contains(std::uint64_t p) const;
  // Class membership ignoring the exclusion list.
  bool raw_contains(std::uint64_t p) const;
  // Unique representative per (residue class, emitted set): min_prime is
  // pinned at the smallest prime of the class, a raised starting point is
  // rewritten as exclusions, vacuous exclusions are dropped, and the odd
  // class (1 mod 2) collapses to modulus 1 with 2 excluded. Streams over the
  // same residue class emit equal sets iff their canonical forms are equal.
  PrimeStream canonicalized() const;
  // i-th emitted prime, 0-based.
  std::uint64_t nth(std::size_t i) const;
  std::vector<std::uint64_t> prefix(std::size_t count) const;

  bool operator==(const PrimeStream& o) const = default;

  // True when the two streams describe provably disjoint sets of primes.
  static bool provably_disjoint(const PrimeStream& a, const PrimeStream& b);
  // True when the streams agree up to a finite, explicitly computable
  // difference; the symmetric difference is then returned through out.
  static bool same_up_to_finite(const PrimeStream& a, const PrimeStream& b,
                                std::vector<std::uint64_t>* only_in_a,
                                std::vector<std::uint64_t>* only_in_b);
};

}  // namespace steinitz
