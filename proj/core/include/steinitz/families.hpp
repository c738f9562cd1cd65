#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "steinitz/chain.hpp"

namespace steinitz {

// Local parameters of one finite Heisenberg factor: the quotient is taken
// mod q^n and the level subgroup scales the first coordinate by q^r.
struct PiFEntry {
  std::uint64_t q = 2;
  std::uint32_t n = 1;
  std::uint32_t r = 1;  // 1 <= r <= n

  bool operator==(const PiFEntry& o) const = default;
};

// Rank-1 odometer with prescribed spectrum: level l is the subgroup
// q_1^{n_1} ... q_l^{n_l} * p_1^l ... p_l^l * Z, primes past the end of a
// list contributing the factor 1.
struct ToralDiagonal {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> pi_f;  // (prime, multiplicity)
  std::vector<std::uint64_t> pi_infty;

  bool operator==(const ToralDiagonal& o) const = default;
};

// Product of independent rank-1 diagonal odometers, one per coordinate.
struct ToralProduct {
  std::vector<ToralDiagonal> coordinates;

  bool operator==(const ToralProduct& o) const = default;
};

// Tower of a proper self-embedding of the integer Heisenberg group:
// level l is the scale subgroup (p^l, p^l, p^2l).
struct HeisenbergSelfEmbed {
  std::uint64_t p = 2;

  bool operator==(const HeisenbergSelfEmbed& o) const = default;
};

// Finitely many finite local factors plus a nonempty set of primes whose
// towers go all the way down: level l is (M_l, N_l, N_l) with
// M_l = prod q_i^{r_i} * prod_{j<=l} p_j^l, N_l the same with n_i.
struct HeisenbergStable {
  std::vector<PiFEntry> pi_f;
  std::vector<std::uint64_t> pi_infty;

  bool operator==(const HeisenbergStable& o) const = default;
};

// Infinitely many finite local factors: the stream starts with the listed
// primes and continues through every remaining prime in increasing order
// (excluding pi_infty), all sharing the local parameters (n, r). A new
// prime enters the scales at each level.
struct HeisenbergWild {
  std::vector<std::uint64_t> leading_primes;
  std::uint32_t n = 2;
  std::uint32_t r = 1;  // must satisfy r < n, else no wild local factors
  std::vector<std::uint64_t> pi_infty;

  bool operator==(const HeisenbergWild& o) const = default;
};

// One finite action: the Heisenberg group mod p^n acting on the cosets of
// the cyclic subgroup generated by p^k on the first coordinate. Presented
// as a single-level chain (p^k, p^n, p^n).
struct ToyModel {
  std::uint64_t p = 2;
  std::uint32_t n = 1;
  std::uint32_t k = 0;  // 0 <= k < n

  bool operator==(const ToyModel& o) const = default;
};

using FamilyDescriptor = std::variant<ToralDiagonal, ToralProduct, HeisenbergSelfEmbed,
                                      HeisenbergStable, HeisenbergWild, ToyModel>;

// Ground-truth classification each family is constructed to realize, used
// as golden data by the classifier tests. Unknown means the construction
// does not pin the property down.
struct ExpectedClassification {
  Tri stable = Tri::Unknown;
  Tri topologically_free = Tri::Unknown;
  Tri discriminant_trivial = Tri::Unknown;
  std::string rationale;
};

// Chain with the family's level rule, symbolic Steinitz predictions and
// provenance params attached. Rejects descriptors whose chain could not be
// properly nested through max_depth.
ChainSpec build_chain(const FamilyDescriptor& f, std::size_t max_depth);

ExpectedClassification expected_classification(const FamilyDescriptor& f);

// The name under which build_chain registers the family on the spec.
std::string family_name(const FamilyDescriptor& f);

// Key=value parameter list that round-trips through descriptor_from_params.
std::vector<std::pair<std::string, std::string>> descriptor_to_params(const FamilyDescriptor& f);
FamilyDescriptor descriptor_from_params(
    const std::string& family,
    const std::vector<std::pair<std::string, std::string>>& params);

// Stable listing order for the CLI.
std::vector<std::string> family_names();

}  // namespace steinitz
