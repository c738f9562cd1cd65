#include "steinitz/render.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace steinitz::render {

namespace {

std::string stream_desc(const PrimeStream& s) {
  std::string out = "every prime";
  if (s.modulus != 1) {
    out += " = " + std::to_string(s.residue) + " mod " + std::to_string(s.modulus);
  }
  if (s.min_prime > 2) out += " >= " + std::to_string(s.min_prime);
  if (!s.excluded.empty()) {
    out += " except ";
    for (std::size_t i = 0; i < s.excluded.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(s.excluded[i]);
    }
  }
  return out;
}

std::string exp_str(const Exponent& e) {
  return e.is_infinite() ? "inf" : std::to_string(e.finite_value());
}

std::string prime_set(const PrimeSet& s) {
  if (s.is_empty()) return "{}";
  std::string out;
  if (!s.explicit_primes.empty()) {
    out = "{";
    for (std::size_t i = 0; i < s.explicit_primes.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(s.explicit_primes[i]);
    }
    out += "}";
  }
  if (s.stream) {
    if (!out.empty()) out += " and ";
    out += stream_desc(*s.stream);
  }
  return out;
}

// Table cell for a factored count: plain decimal when it fits a machine
// word, factored form beyond that.
std::string cell(const Factored& f) {
  if (auto v = f.value_u64()) return std::to_string(*v);
  return f.factor_string();
}

std::string k_star_status(const KStarResult& k) {
  if (k.status == KStarStatus::Stabilized) {
    return "stabilized-at-depth " + std::to_string(k.stabilized_depth);
  }
  return "upper-bound-only";
}

void pad_row(std::vector<std::string>& row, const std::vector<std::size_t>& widths,
             std::string& out) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += "  ";
    out += row[i];
    if (i + 1 < row.size()) out += std::string(widths[i] - row[i].size(), ' ');
  }
  out += "\n";
}

std::string tri_str(Tri t) { return tri_name(t); }

}  // namespace

std::string factored(const Factored& f) { return f.factor_string(); }

std::string steinitz(const SteinitzNumber& s) {
  if (s.is_one()) return "1";
  std::string out;
  for (const auto& [p, e] : s.explicit_entries()) {
    if (!out.empty()) out += " * ";
    out += std::to_string(p);
    if (!(e == Exponent(1))) out += "^" + exp_str(e);
  }
  if (s.has_tail()) {
    if (!out.empty()) out += " * ";
    std::string power = "p";
    if (!(s.tail()->exponent == Exponent(1))) power += "^" + exp_str(s.tail()->exponent);
    out += "(" + power + " : " + stream_desc(s.tail()->stream) + ")";
  }
  return out;
}

std::string spectrum(const PrimeSpectrumReport& r) {
  std::string out;
  out += "pi       : " + prime_set(r.pi) + "\n";
  out += "pi_f     : " + prime_set(r.pi_f) + "\n";
  out += "pi_infty : " + prime_set(r.pi_infty) + "\n";
  out += "pi_f infinite: " + tri_str(r.pi_f_is_infinite) + "\n";
  return out;
}

std::string chain_report(const ChainReport& r) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"level", "m", "n", "k", "k*", "status"});
  for (const auto& inv : r.levels) {
    rows.push_back({std::to_string(inv.level), cell(inv.m), cell(inv.n), cell(inv.k),
                    cell(inv.k_star.value), k_star_status(inv.k_star)});
  }
  std::vector<std::size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::string out;
  for (auto& row : rows) pad_row(row, widths, out);
  out += "quotient order     : " + steinitz(r.steinitz_G) + "\n";
  out += "relative order     : " + steinitz(r.steinitz_rel) + "\n";
  out += "discriminant order : " + steinitz(r.steinitz_D);
  if (!r.steinitz_D_all_stabilized) {
    out += "  (some levels carry only an upper bound";
    if (!(r.steinitz_D == r.steinitz_D_full)) {
      out += "; full discriminant orders give " + steinitz(r.steinitz_D_full);
    }
    out += ")";
  }
  out += "\n";
  out += "Lagrange n = m * k : ";
  out += r.lagrange_ok ? "ok" : "FAILED";
  if (!r.lagrange_note.empty()) out += " (" + r.lagrange_note + ")";
  out += "\n";
  out += "normal form        : " + tri_str(r.normal_form.verdict);
  if (r.normal_form.verdict == Tri::False) {
    out += " (first failure at level " + std::to_string(r.normal_form.fail_level) + ")";
  }
  out += "\n";
  out += "prediction         : " + tri_str(r.prediction_consistent);
  if (!r.prediction_note.empty()) out += " (" + r.prediction_note + ")";
  out += "\n";
  return out;
}

std::string oracle_checks(std::size_t level, const std::vector<OracleCheck>& checks) {
  std::string out = "oracle checks at level " + std::to_string(level) + ":\n";
  for (const auto& c : checks) {
    out += "  " + c.name + ": ";
    switch (c.status) {
      case OracleCheck::Status::Passed: out += "passed"; break;
      case OracleCheck::Status::Skipped: out += "skipped"; break;
      case OracleCheck::Status::Failed: out += "FAILED"; break;
    }
    if (!c.note.empty()) out += " (" + c.note + ")";
    out += "\n";
  }
  return out;
}

namespace {

std::string coords(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::string coords_u(const std::vector<std::uint64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace

std::string witness(const WildnessWitness& w) {
  std::string out = "wildness witness between levels " + std::to_string(w.shallow_level) +
                    " and " + std::to_string(w.deep_level) + " (kernel tests through depth " +
                    std::to_string(w.verify_depth) + "):\n";
  out += "  element " + coords(w.element) + " mod " + coords_u(w.moduli) + "\n";
  out += "  moved cylinder " + coords(w.moved_cylinder) + " at level " +
         std::to_string(w.deep_level) + "; fixed cylinders checked: " +
         std::to_string(w.fixed_cylinders_checked) + "\n";
  if (!w.transcript.empty()) {
    out += "  transcript:\n";
    for (const auto& line : w.transcript) out += "    | " + line + "\n";
  }
  return out;
}

std::string freeness(const FreenessProbeReport& r) {
  std::string out = "freeness probe: word radius " + std::to_string(r.word_radius) +
                    ", depth " + std::to_string(r.depth) + ", " +
                    std::to_string(r.elements_tested) + " elements tested\n";
  if (r.violations.empty()) {
    out += "  no violation found";
  } else {
    out += "  " + std::to_string(r.violations.size()) + " violation(s); first: element " +
           coords(r.violations.front().element) + " fixes every depth-" +
           std::to_string(r.depth) + " cylinder from level " +
           std::to_string(r.violations.front().cylinder_level);
  }
  if (!r.note.empty()) out += "\n  " + r.note;
  out += "\n";
  return out;
}

std::string stability(const StabilityReport& r) {
  std::string out = "stability verdict: " + std::string(stability_verdict_name(r.verdict)) + "\n";
  out += "  reason: " + r.reason + "\n";
  out += "  finite discriminant spectrum certificate: ";
  out += r.finite_spectrum_certificate ? "yes" : "no";
  out += "\n  bounded multiplicity certificate: ";
  out += r.bounded_multiplicity_certificate ? "yes" : "no";
  out += "\n  witness search depth: " + std::to_string(r.witness_depth_searched) + "\n";
  if (r.witness) out += witness(*r.witness);
  return out;
}

std::string presentation(const SolenoidPresentation& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.degrees.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(p.degrees[i]);
  }
  switch (p.continuation.kind) {
    case SolenoidContinuation::Kind::None:
      break;
    case SolenoidContinuation::Kind::RepeatBlock:
      out += " | last " + std::to_string(p.continuation.block) + " repeat forever";
      break;
    case SolenoidContinuation::Kind::PrimeStream: {
      const TailRule& t = *p.continuation.stream;
      std::string power = "p";
      if (!(t.exponent == Exponent(1))) power += "^" + exp_str(t.exponent);
      out += " | then " + power + " for " + stream_desc(t.stream);
      break;
    }
  }
  out += ")";
  if (p.dimension != 1) out += " [dimension " + std::to_string(p.dimension) + "]";
  return out;
}

std::string consistency(const PresentationChainConsistency& c) {
  std::string out = c.prefix_consistent ? "consistent" : "inconsistent";
  out += ": " + c.note + " (levels compared: " + std::to_string(c.levels_compared) + ")";
  return out;
}

}  // namespace steinitz::render
