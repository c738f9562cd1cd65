#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "steinitz/factored.hpp"
#include "steinitz/heisenberg.hpp"
#include "steinitz/lattice.hpp"

namespace steinitz {

struct GroupDescriptor {
  enum class Kind { Heisenberg, Abelian };
  Kind kind = Kind::Heisenberg;
  std::size_t rank = 3;  // coordinate count; always 3 for Heisenberg

  static GroupDescriptor heisenberg() { return {Kind::Heisenberg, 3}; }
  static GroupDescriptor abelian(std::size_t rank) { return {Kind::Abelian, rank}; }

  bool operator==(const GroupDescriptor& o) const = default;
};

// The scale subgroup {(a m, b n, c p)} of the Heisenberg group. It is closed
// under the group law iff p | m n (the twist a m * b' n must land in p Z).
// Scales are kept factored because chain levels push them far past 64 bits.
struct HeisenbergScales {
  Factored m, n, p;

  bool operator==(const HeisenbergScales& o) const = default;
};

// Diagonal sublattice diag(d1..dr) of Z^r in factored form; the shape every
// lattice family in this library produces, workable at any depth.
using AbelianDiagonal = std::vector<Factored>;

// A finite-index subgroup of the ambient group.
using SubgroupDescriptor = std::variant<HeisenbergScales, Lattice, AbelianDiagonal>;

// Checks internal consistency and compatibility with the ambient group
// (closure condition for scales, rank match for lattices).
void validate_subgroup(const GroupDescriptor& g, const SubgroupDescriptor& s);

// Index in the ambient group: m n p for scales, |det| for lattices.
Factored index(const SubgroupDescriptor& s);

bool is_normal(const SubgroupDescriptor& s);

// Largest normal subgroup of the ambient group inside s. For scales
// (m, n, p) this is (lcm(m,p), lcm(n,p), p); lattices are already normal.
SubgroupDescriptor normal_core(const SubgroupDescriptor& s);

bool subgroup_contains(const SubgroupDescriptor& outer, const SubgroupDescriptor& inner);
bool subgroup_equal(const SubgroupDescriptor& a, const SubgroupDescriptor& b);

// [outer : inner]; requires containment, else NestingViolation.
Factored index_between(const SubgroupDescriptor& outer, const SubgroupDescriptor& inner);

// Membership of a coordinate vector ((a,b,c) for the Heisenberg kind).
bool contains_element(const SubgroupDescriptor& s, const std::vector<std::int64_t>& v);

// True when d divides v as integers; decided without factoring v.
bool factored_divides_int(const Factored& d, std::int64_t v);

// Diagonal descriptor as a machine-size lattice; ResourceBound when entries
// do not fit element-level arithmetic.
Lattice diagonal_to_lattice(const AbelianDiagonal& d);

std::string subgroup_to_string(const SubgroupDescriptor& s);

}  // namespace steinitz
