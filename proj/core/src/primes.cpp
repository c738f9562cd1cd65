#include "steinitz/primes.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "steinitz/errors.hpp"

namespace steinitz {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_prime(std::uint64_t p, const char* what) {
  if (p >= kMaxPrimeInput) {
    fail(ErrorKind::InvalidInput,
         std::string(what) + ": " + std::to_string(p) + " exceeds the 2^31 prime bound");
  }
  if (!is_prime(p)) {
    fail(ErrorKind::InvalidInput,
         std::string(what) + ": " + std::to_string(p) + " is not prime");
  }
}

std::uint64_t next_prime_after(std::uint64_t n) {
  std::uint64_t c = n + 1;
  if (c <= 2) return 2;
  if (c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

PrimeStream PrimeStream::all_primes() { return PrimeStream{}; }

PrimeStream PrimeStream::all_primes_excluding(std::vector<std::uint64_t> excl) {
  PrimeStream s;
  std::sort(excl.begin(), excl.end());
  excl.erase(std::unique(excl.begin(), excl.end()), excl.end());
  s.excluded = std::move(excl);
  s.validate();
  return s;
}

PrimeStream PrimeStream::residue_class(std::uint64_t residue, std::uint64_t modulus,
                                       std::uint64_t min_prime) {
  PrimeStream s;
  s.residue = residue;
  s.modulus = modulus;
  s.min_prime = min_prime;
  s.validate();
  return s;
}

void PrimeStream::validate() const {
  if (modulus == 0) fail(ErrorKind::InvalidInput, "prime stream: modulus must be >= 1");
  if (modulus > 1) {
    if (residue >= modulus) {
      fail(ErrorKind::InvalidInput, "prime stream: residue must be < modulus");
    }
    if (std::gcd(residue, modulus) != 1) {
      // A class sharing a factor with the modulus holds at most one prime;
      // such streams are rejected so every stream is infinite by Dirichlet.
      fail(ErrorKind::InvalidInput,
           "prime stream: residue class must be coprime to the modulus");
    }
  }
  if (min_prime < 2) fail(ErrorKind::InvalidInput, "prime stream: min_prime must be >= 2");
  if (!std::is_sorted(excluded.begin(), excluded.end())) {
    fail(ErrorKind::InvalidInput, "prime stream: exclusions must be sorted");
  }
  for (auto p : excluded) require_prime(p, "prime stream exclusion");
}

bool PrimeStream::contains(std::uint64_t p) const {
  if (!raw_contains(p)) return false;
  return !std::binary_search(excluded.begin(), excluded.end(), p);
}

bool PrimeStream::raw_contains(std::uint64_t p) const {
  if (!is_prime(p) || p < min_prime) return false;
  return modulus == 1 || p % modulus == residue;
}

PrimeStream PrimeStream::canonicalized() const {
  PrimeStream s = *this;
  std::uint64_t first = 1;
  do {
    first = next_prime_after(first);
  } while (s.modulus > 1 && first % s.modulus != s.residue);
  if (s.min_prime > first) {
    if (s.min_prime - first > 1000000) {
      fail(ErrorKind::ResourceBound,
           "prime stream: starting point too far above the class minimum to normalize");
    }
    for (std::uint64_t p = first; p < s.min_prime; ++p) {
      if (is_prime(p) && (s.modulus == 1 || p % s.modulus == s.residue)) {
        s.excluded.push_back(p);
      }
    }
  }
  s.min_prime = first;
  std::vector<std::uint64_t> kept;
  for (auto p : s.excluded) {
    if (s.raw_contains(p)) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  s.excluded = std::move(kept);
  if (s.modulus == 2) {
    // The odd primes are all primes but 2, so this class collapses to
    // modulus 1; without the collapse equal sets would compare unequal.
    s.modulus = 1;
    s.residue = 0;
    s.min_prime = 2;
    if (!std::binary_search(s.excluded.begin(), s.excluded.end(), 2ull)) {
      s.excluded.insert(s.excluded.begin(), 2ull);
    }
  }
  return s;
}

std::uint64_t PrimeStream::nth(std::size_t i) const {
  std::uint64_t p = min_prime - 1;
  for (std::size_t seen = 0;; ) {
    p = next_prime_after(p);
    if (!contains(p)) continue;
    if (seen++ == i) return p;
  }
}

std::vector<std::uint64_t> PrimeStream::prefix(std::size_t count) const {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::uint64_t p = min_prime - 1;
  while (out.size() < count) {
    p = next_prime_after(p);
    if (contains(p)) out.push_back(p);
  }
  return out;
}

bool PrimeStream::provably_disjoint(const PrimeStream& a, const PrimeStream& b) {
  if (a.modulus > 1 && b.modulus > 1) {
    // Two residue classes are disjoint exactly when they are incompatible
    // modulo the gcd of the moduli.
    std::uint64_t g = std::gcd(a.modulus, b.modulus);
    if (a.residue % g != b.residue % g) return true;
  }
  return false;
}

bool PrimeStream::same_up_to_finite(const PrimeStream& a, const PrimeStream& b,
                                    std::vector<std::uint64_t>* only_in_a,
                                    std::vector<std::uint64_t>* only_in_b) {
  // Comparable only when the residue descriptions coincide; then the streams
  // differ by the primes between the two starting points plus the exclusion
  // difference, all finite and enumerable.
  if (a.modulus != b.modulus || (a.modulus > 1 && a.residue != b.residue)) {
    return false;
  }
  only_in_a->clear();
  only_in_b->clear();
  std::uint64_t lo = std::min(a.min_prime, b.min_prime);
  std::uint64_t hi = std::max(a.min_prime, b.min_prime);
  // Cap the gap scan; starting points in practice are tiny.
  if (hi - lo > 1000000) return false;
  for (std::uint64_t p = lo; p < hi; ++p) {
    if (a.contains(p) && !b.contains(p)) only_in_a->push_back(p);
    if (b.contains(p) && !a.contains(p)) only_in_b->push_back(p);
  }
  auto scan_exclusions = [&](const PrimeStream& x, const PrimeStream& y,
                             std::vector<std::uint64_t>* only_in_y) {
    for (auto p : x.excluded) {
      if (p >= hi && y.contains(p) && !x.contains(p)) only_in_y->push_back(p);
    }
  };
  // A prime excluded from one stream but present in the other differs; both
  // exclusion lists are finite.
  scan_exclusions(a, b, only_in_b);
  scan_exclusions(b, a, only_in_a);
  std::sort(only_in_a->begin(), only_in_a->end());
  std::sort(only_in_b->begin(), only_in_b->end());
  return true;
}

}  // namespace steinitz
