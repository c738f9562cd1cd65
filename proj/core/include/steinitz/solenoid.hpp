#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steinitz/steinitz_number.hpp"

namespace steinitz {

struct ChainReport;

// A one-dimensional solenoid presented as an inverse limit of degree-d_i
// covering maps of the circle. The explicit prefix lists finitely many
// degrees; the continuation says how the tower goes on from there.
struct SolenoidContinuation {
  enum class Kind {
    None,         // the listed degrees are followed by degree-1 maps (finite data)
    RepeatBlock,  // the last `block` listed degrees repeat forever
    PrimeStream,  // one new prime per level, drawn from a described stream
  };
  Kind kind = Kind::None;
  std::size_t block = 0;                 // RepeatBlock only
  std::optional<TailRule> stream;        // PrimeStream only

  bool operator==(const SolenoidContinuation& o) const = default;
};

struct SolenoidPresentation {
  std::vector<std::uint64_t> degrees;  // each >= 2
  SolenoidContinuation continuation;
  std::size_t dimension = 1;

  bool operator==(const SolenoidPresentation& o) const = default;
};

// Structural validity: degrees at least 2, a realizable continuation, a
// positive dimension. Throws InvalidInput; every operation below runs this
// first, and parsers run it on ingest.
void validate_presentation(const SolenoidPresentation& p);

// The Steinitz order of the presentation: the supernatural product of all
// covering degrees, explicit prefix and continuation combined.
SteinitzNumber presentation_order(const SolenoidPresentation& p);

// Same presentation with the first k degrees removed (continuation kept).
// Dropping into or past the continuation region raises InvalidInput.
SolenoidPresentation drop_first(const SolenoidPresentation& p, std::size_t k);

Tri orders_asymptotically_equivalent(const SolenoidPresentation& a,
                                     const SolenoidPresentation& b);

// Homeomorphism test for 1-dimensional solenoids: the orders must agree up
// to finite multiplicative error. Presentations of other dimensions are
// rejected (the order is a complete invariant only in dimension one).
Tri solenoids_homeomorphic_1d(const SolenoidPresentation& a,
                              const SolenoidPresentation& b);

// Cross-check between a presentation and a computed chain report: the
// cumulative covering degree must equal the chain index m_l at every level
// both sides reach. Throws MismatchAtLevel on the first disagreement.
struct PresentationChainConsistency {
  std::size_t levels_compared = 0;
  bool prefix_consistent = false;
  std::string note;
};

PresentationChainConsistency presentation_to_chain(const SolenoidPresentation& p,
                                                   const ChainReport& report);

}  // namespace steinitz
