#include "steinitz/factored.hpp"

#include <algorithm>

#include "steinitz/errors.hpp"
#include "steinitz/primes.hpp"

namespace steinitz {

Factored Factored::one() { return Factored{}; }

Factored Factored::prime_power(std::uint64_t p, std::uint64_t e) {
  require_prime(p, "prime power base");
  Factored r;
  if (e > 0) r.f_.push_back({p, e});
  return r;
}

Factored Factored::from_integer(std::uint64_t n) {
  if (n == 0) fail(ErrorKind::InvalidInput, "cannot factor 0");
  if (n >= (1ull << 62)) {
    fail(ErrorKind::InvalidInput, "integer too large to factor by trial division");
  }
  Factored r;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    std::uint64_t e = 0;
    while (n % d == 0) { n /= d; ++e; }
    r.f_.push_back({d, e});
  }
  if (n > 1) {
    if (n >= kMaxPrimeInput) {
      fail(ErrorKind::InvalidInput,
           "integer has a prime factor above the 2^31 bound: " + std::to_string(n));
    }
    r.f_.push_back({n, 1});
  }
  return r;
}

Factored Factored::from_entries(std::vector<Entry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    require_prime(entries[i].first, "factored entry");
    if (entries[i].second == 0) {
      fail(ErrorKind::InvalidInput, "factored entry with zero exponent");
    }
    if (i > 0 && entries[i - 1].first >= entries[i].first) {
      fail(ErrorKind::InvalidInput, "factored entries must be strictly increasing");
    }
  }
  Factored r;
  r.f_ = std::move(entries);
  return r;
}

std::uint64_t Factored::exponent_of(std::uint64_t p) const {
  auto it = std::lower_bound(f_.begin(), f_.end(), p,
                             [](const Entry& e, std::uint64_t v) { return e.first < v; });
  if (it != f_.end() && it->first == p) return it->second;
  return 0;
}

// Shared exponent-wise merge; combine(ea, eb) == 0 drops the prime.
template <typename F>
static std::vector<Factored::Entry> merge(const std::vector<Factored::Entry>& a,
                                          const std::vector<Factored::Entry>& b,
                                          F combine) {
  std::vector<Factored::Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::uint64_t p;
    std::uint64_t ea = 0, eb = 0;
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      p = a[i].first; ea = a[i].second; ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      p = b[j].first; eb = b[j].second; ++j;
    } else {
      p = a[i].first; ea = a[i].second; eb = b[j].second; ++i; ++j;
    }
    std::uint64_t e = combine(ea, eb);
    if (e > 0) out.push_back({p, e});
  }
  return out;
}

Factored Factored::times(const Factored& o) const {
  Factored r;
  r.f_ = merge(f_, o.f_, [](std::uint64_t a, std::uint64_t b) { return a + b; });
  return r;
}

Factored Factored::pow(std::uint64_t e) const {
  Factored r;
  if (e == 0) return r;
  r.f_ = f_;
  for (auto& en : r.f_) en.second *= e;
  return r;
}

Factored Factored::gcd(const Factored& o) const {
  Factored r;
  r.f_ = merge(f_, o.f_, [](std::uint64_t a, std::uint64_t b) { return std::min(a, b); });
  return r;
}

Factored Factored::lcm(const Factored& o) const {
  Factored r;
  r.f_ = merge(f_, o.f_, [](std::uint64_t a, std::uint64_t b) { return std::max(a, b); });
  return r;
}

bool Factored::divides(const Factored& o) const {
  for (const auto& [p, e] : f_) {
    if (o.exponent_of(p) < e) return false;
  }
  return true;
}

Factored Factored::divide_exact(const Factored& d) const {
  if (!d.divides(*this)) {
    fail(ErrorKind::InvariantViolation,
         "exact division requested for non-divisible factored integers");
  }
  Factored r;
  r.f_ = merge(f_, d.f_, [](std::uint64_t a, std::uint64_t b) { return a - b; });
  return r;
}

std::optional<std::uint64_t> Factored::value_u64() const {
  // 128-bit accumulation detects overflow without extra bookkeeping.
  unsigned __int128 acc = 1;
  for (const auto& [p, e] : f_) {
    for (std::uint64_t i = 0; i < e; ++i) {
      acc *= p;
      if (acc > UINT64_MAX) return std::nullopt;
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::string Factored::decimal() const {
  if (auto v = value_u64()) return std::to_string(*v);
  // Little-endian base-10^9 limbs; multiplications are by single primes.
  std::vector<std::uint64_t> limbs{1};
  auto mul_small = [&](std::uint64_t m) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs) {
      unsigned __int128 cur = (unsigned __int128)limb * m + carry;
      limb = (std::uint64_t)(cur % 1000000000ull);
      carry = (std::uint64_t)(cur / 1000000000ull);
    }
    while (carry) {
      limbs.push_back(carry % 1000000000ull);
      carry /= 1000000000ull;
    }
  };
  for (const auto& [p, e] : f_) {
    for (std::uint64_t i = 0; i < e; ++i) mul_small(p);
  }
  std::string out = std::to_string(limbs.back());
  for (auto it = limbs.rbegin() + 1; it != limbs.rend(); ++it) {
    std::string part = std::to_string(*it);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

std::string Factored::factor_string() const {
  if (f_.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : f_) {
    if (!out.empty()) out += "*";
    out += std::to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace steinitz
