#pragma once

#include <string>

#include "steinitz/chain.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/dynamics.hpp"
#include "steinitz/solenoid.hpp"
#include "steinitz/steinitz_number.hpp"

namespace steinitz::json {

// Serializers produce compact single-line JSON; pass indent >= 0 for pretty
// output. Parsers throw InvalidInput with a path-annotated message on any
// malformed document.

std::string to_json(const Factored& f, int indent = -1);
Factored factored_from_json(const std::string& text);

std::string to_json(const Exponent& e, int indent = -1);
std::string to_json(const SteinitzNumber& s, int indent = -1);
SteinitzNumber steinitz_from_json(const std::string& text);

std::string to_json(const PrimeSpectrumReport& r, int indent = -1);

std::string to_json(const ChainSpec& spec, int indent = -1);
ChainSpec chain_spec_from_json(const std::string& text);

std::string to_json(const ChainReport& r, int indent = -1);
ChainReport chain_report_from_json(const std::string& text);

std::string to_json(const WildnessWitness& w, int indent = -1);
WildnessWitness witness_from_json(const std::string& text);

std::string to_json(const FreenessProbeReport& r, int indent = -1);

std::string to_json(const StabilityReport& r, int indent = -1);

std::string to_json(const SolenoidPresentation& p, int indent = -1);
SolenoidPresentation solenoid_from_json(const std::string& text);

std::string to_json(const PresentationChainConsistency& c, int indent = -1);

// Uniform error envelope for tools: {"error": {"kind": ..., "message": ...}}.
std::string error_to_json(const Error& e);

}  // namespace steinitz::json
