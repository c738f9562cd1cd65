#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steinitz/factored.hpp"
#include "steinitz/steinitz_number.hpp"
#include "steinitz/subgroup.hpp"

namespace steinitz {

// Symbolic limits a chain family predicts for its three Steinitz orders,
// together with the mathematical basis for the prediction.
struct ChainPrediction {
  SteinitzNumber steinitz_G;    // limit of the quotient orders n
  SteinitzNumber steinitz_rel;  // limit of the subgroup indexes m
  SteinitzNumber steinitz_D;    // limit of the stabilized discriminant orders k*
  std::string basis;            // machine id, e.g. "finite_discriminant_spectrum"
  std::string detail;           // one human sentence

  bool operator==(const ChainPrediction& o) const = default;
};

// A descending chain of finite-index subgroups of a fixed ambient group,
// either from an explicit list or from a level rule that can be evaluated at
// any depth (families). Level 0 is the whole group.
class ChainSpec {
 public:
  using LevelRule = std::function<SubgroupDescriptor(std::size_t)>;

  GroupDescriptor group;
  std::size_t max_depth = 0;
  std::optional<ChainPrediction> prediction;
  // Set by families whose bonding-image sequences provably stay constant
  // once two consecutive images agree; enables "stabilized" verdicts beyond
  // the unconditional trivial-image rule.
  bool monotone_image_guarantee = false;
  // Absolute lookahead cap for k*; when absent the cap is 2 * level.
  std::optional<std::size_t> k_star_cap;
  std::string family;  // empty for explicit chains
  std::vector<std::pair<std::string, std::string>> family_params;

  static ChainSpec explicit_chain(GroupDescriptor g,
                                  std::vector<SubgroupDescriptor> levels);
  static ChainSpec rule_chain(GroupDescriptor g, std::size_t max_depth, LevelRule rule);

  // Family rules extend past max_depth (k* lookahead); lists cannot.
  bool extendable() const { return static_cast<bool>(rule_); }
  std::size_t deepest_reachable(std::size_t wanted) const;
  // Subgroup at a level (0 = whole group). Validates the descriptor.
  SubgroupDescriptor at(std::size_t level) const;

  // Verifies proper nesting at levels 1..depth; NestingViolation otherwise.
  void validate_nesting(std::size_t depth) const;

 private:
  LevelRule rule_;
  std::vector<SubgroupDescriptor> levels_;
};

enum class KStarStatus { Stabilized, UpperBoundOnly };

struct KStarResult {
  Factored value;
  KStarStatus status = KStarStatus::UpperBoundOnly;
  // Level at which the stabilized value first appeared (when stabilized).
  std::size_t stabilized_depth = 0;

  bool operator==(const KStarResult& o) const = default;
};

struct LevelInvariants {
  std::size_t level = 0;
  Factored m;       // [G : Gamma_l], the coset space size
  Factored n;       // order of the quotient by the normal core
  Factored k;       // order of the discriminant Gamma_l / C_l
  KStarResult k_star;

  bool operator==(const LevelInvariants& o) const = default;
};

struct NormalFormResult {
  Tri verdict = Tri::Unknown;
  std::size_t fail_level = 0;  // meaningful when verdict is False

  bool operator==(const NormalFormResult& o) const = default;
};

struct ChainReport {
  std::vector<LevelInvariants> levels;
  SteinitzNumber steinitz_G;
  SteinitzNumber steinitz_rel;
  SteinitzNumber steinitz_D;       // lcm of stabilized k* values
  bool steinitz_D_all_stabilized = false;
  SteinitzNumber steinitz_D_full;  // lcm of the full discriminant orders k
  PrimeSpectrumReport spectra_G;
  PrimeSpectrumReport spectra_rel;
  PrimeSpectrumReport spectra_D;
  bool lagrange_ok = false;
  std::string lagrange_note;
  NormalFormResult normal_form;
  Tri prediction_consistent = Tri::Unknown;
  std::string prediction_note;

  bool operator==(const ChainReport& o) const = default;
};

std::size_t default_k_star_cap(const ChainSpec& spec, std::size_t level);

// Per-level invariants: m by index, the core by the closed form, n as the
// core's index, k as the closed-form order of the image of Gamma_l in the
// core quotient, k* by the bonding-image procedure.
LevelInvariants level_invariants(const ChainSpec& spec, std::size_t level);

// Orders of the decreasing images of Gamma_d in the level quotient for
// d = level..cap. Stabilized when the image becomes trivial (unconditional)
// or two consecutive orders agree under a monotone-image guarantee.
KStarResult k_star_compute(const ChainSpec& spec, std::size_t level, std::size_t cap);

ChainReport chain_report(const ChainSpec& spec);

// Re-verifies a finished report: the per-level Lagrange identity
// n = m * k and the aggregated Steinitz identity between the three orders.
bool lagrange_check(const ChainReport& report);

// Whether the chain is in normal form (stabilized k* equals k) at all
// levels up to depth; False carries the first failing level; Unknown when
// some level could not certify stabilization.
NormalFormResult normal_form_check(const ChainSpec& spec, std::size_t depth);

// Exhaustive cross-checks of the closed forms at one level, inside the
// finite core quotient. Checks that would enumerate more than `bound`
// elements are reported as skipped, not failed.
struct OracleCheck {
  enum class Status { Passed, Skipped, Failed };
  std::string name;
  Status status = Status::Skipped;
  std::string note;
};

std::vector<OracleCheck> oracle_verify_level(const ChainSpec& spec, std::size_t level,
                                             std::uint64_t bound);

}  // namespace steinitz
