#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "steinitz/factored.hpp"
#include "steinitz/lattice.hpp"
#include "steinitz/subgroup.hpp"

namespace steinitz {

// Element of a finite quotient, as canonical integer coordinates.
using QElem = std::vector<std::int64_t>;

// Image of a subgroup descriptor inside a finite quotient, in closed form.
// For the Heisenberg kind the image of a scale subgroup is the product set
// of coordinate multiples of `divisors`; for the abelian kind it is the
// sublattice `lat` (containing the quotient's own lattice) modulo it.
struct QuotientSubgroup {
  std::array<std::int64_t, 3> divisors{1, 1, 1};
  std::optional<Lattice> lat;
  Factored order;
};

// Explicitly enumerated set of quotient elements (as sorted encodings), used
// by the exhaustive oracles.
struct ElementSet {
  std::vector<std::uint64_t> codes;

  bool contains_code(std::uint64_t c) const;
  std::size_t size() const { return codes.size(); }
  bool operator==(const ElementSet& o) const = default;
};

class FiniteQuotient {
 public:
  enum class Kind { Heisenberg, Abelian };

  // The Heisenberg group modulo the scale subgroup (a, b, c); requires
  // c | a and c | b (normality) so the twisted law descends.
  static FiniteQuotient heisenberg_mod(std::int64_t a, std::int64_t b, std::int64_t c);
  static FiniteQuotient abelian_mod(Lattice l);

  Kind kind() const { return kind_; }
  std::size_t rank() const;
  const std::array<std::int64_t, 3>& moduli() const { return mod_; }
  const Lattice& lattice() const;
  Factored order() const;

  QElem identity_elem() const;
  QElem canon(QElem v) const;
  QElem mul(const QElem& x, const QElem& y) const;
  QElem inv(const QElem& x) const;
  QElem conj(const QElem& g, const QElem& x) const;
  bool is_identity(const QElem& x) const;

  std::uint64_t encode(const QElem& x) const;
  QElem decode(std::uint64_t code) const;

  // All elements in encoding order; ResourceBound when the order exceeds
  // `bound`.
  std::vector<QElem> elements(std::uint64_t bound) const;

  // True when this quotient is a further quotient of `finer` (the natural
  // projection exists), so elements push forward by reduction.
  bool can_project_from(const FiniteQuotient& finer) const;
  QElem project_from(const FiniteQuotient& finer, const QElem& x) const;

  bool subgroup_member(const QuotientSubgroup& s, const QElem& x) const;
  ElementSet enumerate_subgroup(const QuotientSubgroup& s, std::uint64_t bound) const;
  // Subgroup generated by `gens`; ResourceBound if it grows past `bound`.
  ElementSet closure(const std::vector<QElem>& gens, std::uint64_t bound) const;

  bool operator==(const FiniteQuotient& o) const = default;

 private:
  FiniteQuotient() = default;
  Kind kind_ = Kind::Heisenberg;
  std::array<std::int64_t, 3> mod_{1, 1, 1};
  std::optional<Lattice> lat_;
};

// G/N for a normal finite-index subgroup. Throws NotNormal when N is not
// normal in G, ResourceBound when its scales exceed element arithmetic range.
FiniteQuotient quotient(const GroupDescriptor& g, const SubgroupDescriptor& n);

// Closed-form image of a subgroup under G -> Q.
QuotientSubgroup image_in_quotient(const FiniteQuotient& q, const SubgroupDescriptor& sub);

// Reduce an ambient group element into the quotient.
QElem project_element(const FiniteQuotient& q, const std::vector<std::int64_t>& g);

// The set {g x g^{-1} : x in s}; conjugating a subgroup set gives a subgroup.
ElementSet conjugate_set(const FiniteQuotient& q, const ElementSet& s, const QElem& g);

// Exhaustive normal core of an explicitly listed subgroup: the elements
// whose whole conjugacy class stays inside the set.
ElementSet brute_force_core_of_set(const FiniteQuotient& q, const ElementSet& members);

// Exhaustive normal core of an enumerable subgroup: the elements whose whole
// conjugacy class stays inside. Enumerates conjugation orbits, so both the
// subgroup and the quotient order must stay within `bound`.
ElementSet brute_force_core_oracle(const FiniteQuotient& q, const QuotientSubgroup& sub,
                                   std::uint64_t bound);

struct SylowFactor {
  std::uint64_t prime;
  FiniteQuotient part;
};

// Q as the direct product of its Sylow parts; the splitting is coordinatewise
// (Chinese remainders), valid because the central modulus divides the other
// two. Abelian quotients must be diagonal.
std::vector<SylowFactor> sylow_decompose(const FiniteQuotient& q);
QElem project_to_sylow(const SylowFactor& f, const QElem& x);
// p-part of a closed-form subgroup (Heisenberg kind only).
QuotientSubgroup sylow_part_of_subgroup(const SylowFactor& f, const QuotientSubgroup& s);

}  // namespace steinitz
