#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steinitz/chain.hpp"

namespace steinitz {

// The finite coset space of one chain level, with canonical representatives
// and the left translation action. Elements are coordinate vectors: (a,b,c)
// for the Heisenberg group, one entry per rank for abelian groups.
class LevelAction {
 public:
  LevelAction(const ChainSpec& spec, std::size_t level);

  std::size_t level() const { return level_; }
  const Factored& size() const { return size_; }  // number of cosets = m_level

  // Canonical representative of g's coset (any integer coordinates).
  std::vector<std::int64_t> canon(const std::vector<std::int64_t>& g) const;
  // Image of the coset of `rep` under left translation by g.
  std::vector<std::int64_t> act(const std::vector<std::int64_t>& g,
                                const std::vector<std::int64_t>& rep) const;
  // All canonical representatives; ResourceBound if the space exceeds bound.
  std::vector<std::vector<std::int64_t>> cosets(std::uint64_t bound) const;

  bool heisenberg() const { return heis_; }

 private:
  std::size_t level_;
  bool heis_;
  Factored size_;
  // Heisenberg path: scale triple of the level subgroup.
  std::uint64_t m_ = 1, n_ = 1, p_ = 1;
  // Abelian path: HNF lattice of the level subgroup.
  std::optional<Lattice> lat_;
};

// Exact fixed-point set of g's permutation of the level-l coset space.
std::vector<std::vector<std::int64_t>> fixed_cosets(const LevelAction& action,
                                                    const std::vector<std::int64_t>& g,
                                                    std::uint64_t bound);

// Certificate that the chain's action fails local rigidity at truncation:
// a nontrivial element of the deep-level isotropy whose action is trivial
// on every verify_depth cylinder inside the deep cylinder (witnessed by a
// lift into the relative kernel) yet moves a deep-level coset inside the
// shallow cylinder.
struct WildnessWitness {
  std::size_t shallow_level = 0;
  std::size_t deep_level = 0;
  std::size_t verify_depth = 0;  // depth at which kernel membership was certified
  std::vector<std::int64_t> element;  // coordinates mod the deep core
  std::vector<std::uint64_t> moduli;  // deep core moduli, one per coordinate
  std::vector<std::int64_t> moved_cylinder;  // canonical deep-level coset rep
  std::uint64_t fixed_cylinders_checked = 0;
  std::vector<std::string> transcript;

  bool operator==(const WildnessWitness& o) const = default;
};

// Deterministic search over deep levels in (shallow, max_deep]; each probe
// verifies kernel membership one level deeper than the probed level, so the
// chain must reach deep+1. Elements of the newest local factor are tried
// first. Returns the first witness or nothing; absence is evidence of
// stability at the examined depths, not a proof.
std::optional<WildnessWitness> wild_witness_search(const ChainSpec& spec,
                                                   std::size_t shallow,
                                                   std::size_t max_deep,
                                                   std::uint64_t bound);

// Re-derives every claim of a witness from the chain alone, off the search
// path: deep isotropy membership, kernel-lift existence at verify_depth,
// and the moved coset.
bool verify_witness(const ChainSpec& spec, const WildnessWitness& w);

// One element that fixes an entire cylinder pointwise at the deepest
// computed level: a non-freeness certificate at truncation.
struct FreenessViolation {
  std::vector<std::int64_t> element;
  std::size_t cylinder_level = 0;

  bool operator==(const FreenessViolation& o) const = default;
};

struct FreenessProbeReport {
  std::size_t word_radius = 0;
  std::size_t depth = 0;
  std::uint64_t elements_tested = 0;
  std::vector<FreenessViolation> violations;
  std::string note;
};

// Tests every nonidentity group element in the word ball of the given
// radius (standard generators) against every cylinder level <= depth,
// checking pointwise fixing at depth. Empty violations is consistency
// evidence for topological freeness, relative to the radius and depth.
FreenessProbeReport topological_freeness_probe(const ChainSpec& spec,
                                               std::size_t word_radius,
                                               std::size_t depth,
                                               std::uint64_t bound);

enum class StabilityVerdict { Stable, Wild, Unknown };

const char* stability_verdict_name(StabilityVerdict v);

struct StabilityReport {
  StabilityVerdict verdict = StabilityVerdict::Unknown;
  std::string reason;
  // Certificates derived from the symbolic prediction, when one is present.
  bool finite_spectrum_certificate = false;     // discriminant spectrum is finite
  bool bounded_multiplicity_certificate = false;  // order multiplicities <= 2 a.e.
  std::optional<WildnessWitness> witness;
  std::size_t witness_depth_searched = 0;
};

// Stable on a certificate, wild on a verified witness, unknown otherwise.
// A certificate and a witness for the same spec contradict a theorem and
// raise InvariantViolation: that combination always means a bug here.
StabilityReport classify_stability(const ChainSpec& spec, std::uint64_t bound);

}  // namespace steinitz
