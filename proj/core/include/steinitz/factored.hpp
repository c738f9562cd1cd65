#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace steinitz {

// A positive integer kept in fully factored form. Group orders and subgroup
// indices are always products of small prime powers but quickly overflow
// machine words at depth, so all order arithmetic in the engine is done on
// this type; conversion to a plain integer is available exactly when the
// value fits.
class Factored {
 public:
  using Entry = std::pair<std::uint64_t, std::uint64_t>;  // (prime, exponent>0)

  Factored() = default;  // the integer 1

  static Factored one();
  static Factored prime_power(std::uint64_t p, std::uint64_t e);
  // Factors n by trial division. Requires 1 <= n < 2^62 with every prime
  // factor below 2^31.
  static Factored from_integer(std::uint64_t n);
  // Entries must be sorted by prime, distinct, with positive exponents.
  static Factored from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return f_; }
  bool is_one() const { return f_.empty(); }
  std::uint64_t exponent_of(std::uint64_t p) const;

  Factored times(const Factored& o) const;
  Factored pow(std::uint64_t e) const;
  Factored gcd(const Factored& o) const;
  Factored lcm(const Factored& o) const;
  bool divides(const Factored& o) const;  // this | o
  // Exact quotient; throws InvariantViolation when not divisible.
  Factored divide_exact(const Factored& d) const;

  bool operator==(const Factored& o) const = default;

  // The plain value when it fits in 64 bits.
  std::optional<std::uint64_t> value_u64() const;
  // Exact decimal rendering regardless of size.
  std::string decimal() const;
  // Compact factor rendering, e.g. "2^3*5"; "1" for the empty product.
  std::string factor_string() const;

 private:
  std::vector<Entry> f_;
};

}  // namespace steinitz
