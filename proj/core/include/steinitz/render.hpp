#pragma once

#include <string>
#include <vector>

#include "steinitz/chain.hpp"
#include "steinitz/dynamics.hpp"
#include "steinitz/solenoid.hpp"
#include "steinitz/steinitz_number.hpp"

namespace steinitz::render {

// Plain-text renderers for terminal output. Multi-line results end with a
// trailing newline; single-value results do not.

std::string factored(const Factored& f);
std::string steinitz(const SteinitzNumber& s);
std::string spectrum(const PrimeSpectrumReport& r);
std::string chain_report(const ChainReport& r);
std::string oracle_checks(std::size_t level, const std::vector<OracleCheck>& checks);
std::string witness(const WildnessWitness& w);
std::string freeness(const FreenessProbeReport& r);
std::string stability(const StabilityReport& r);
std::string presentation(const SolenoidPresentation& p);
std::string consistency(const PresentationChainConsistency& c);

}  // namespace steinitz::render
