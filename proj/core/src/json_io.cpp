#include "steinitz/json_io.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/families.hpp"

namespace steinitz::json {

namespace {

using nlohmann::ordered_json;

// Largest integer a double-backed JSON consumer reads exactly.
constexpr std::uint64_t kSafeInteger = 1ull << 53;

std::string dump(const ordered_json& j, int indent) {
  return indent >= 0 ? j.dump(indent) : j.dump();
}

ordered_json parse(const std::string& text, const char* what) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": not valid JSON");
  }
  return j;
}

[[noreturn]] void bad(const std::string& context, const std::string& message) {
  fail(ErrorKind::InvalidInput, context + ": " + message);
}

const ordered_json& need(const ordered_json& j, const char* key,
                         const std::string& context) {
  if (!j.is_object() || !j.contains(key)) bad(context, std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::uint64_t as_u64(const ordered_json& j, const std::string& context) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  bad(context, "expected a nonnegative integer");
}

std::int64_t as_i64(const ordered_json& j, const std::string& context) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_unsigned() && j.get<std::uint64_t>() <= std::uint64_t(INT64_MAX)) {
    return static_cast<std::int64_t>(j.get<std::uint64_t>());
  }
  bad(context, "expected an integer");
}

bool as_bool(const ordered_json& j, const std::string& context) {
  if (!j.is_boolean()) bad(context, "expected a boolean");
  return j.get<bool>();
}

std::string as_str(const ordered_json& j, const std::string& context) {
  if (!j.is_string()) bad(context, "expected a string");
  return j.get<std::string>();
}

// ---- factored integers -------------------------------------------------

ordered_json jfactored(const Factored& f) {
  if (auto v = f.value_u64(); v && *v <= kSafeInteger) return ordered_json(*v);
  ordered_json pairs = ordered_json::array();
  for (const auto& [p, e] : f.entries()) pairs.push_back({p, e});
  return ordered_json{{"factored", std::move(pairs)}};
}

Factored pfactored(const ordered_json& j, const std::string& context) {
  if (j.is_number()) return Factored::from_integer(as_u64(j, context));
  if (j.is_object() && j.contains("factored")) {
    const auto& arr = j.at("factored");
    if (!arr.is_array()) bad(context, "\"factored\" must be an array of [prime, exp] pairs");
    std::vector<Factored::Entry> entries;
    for (const auto& pr : arr) {
      if (!pr.is_array() || pr.size() != 2) {
        bad(context, "each factored entry is a [prime, exp] pair");
      }
      entries.push_back({as_u64(pr.at(0), context), as_u64(pr.at(1), context)});
    }
    return Factored::from_entries(std::move(entries));
  }
  bad(context, "expected an integer or {\"factored\": [[p, e], ...]}");
}

// ---- exponents, streams, steinitz numbers ------------------------------

ordered_json jexp(const Exponent& e) {
  if (e.is_infinite()) return ordered_json("inf");
  return ordered_json(e.finite_value());
}

Exponent pexp(const ordered_json& j, const std::string& context) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Exponent::infinity();
    bad(context, "the only string exponent is \"inf\"");
  }
  return Exponent(as_u64(j, context));
}

ordered_json jstream(const PrimeStream& s) {
  ordered_json j{{"min_prime", s.min_prime}};
  if (s.modulus != 1) {
    j["residue"] = s.residue;
    j["modulus"] = s.modulus;
  }
  if (!s.excluded.empty()) j["excluded"] = s.excluded;
  return j;
}

PrimeStream pstream(const ordered_json& j, const std::string& context) {
  if (!j.is_object()) bad(context, "a prime stream is an object");
  PrimeStream s = PrimeStream::all_primes();
  if (j.contains("min_prime")) s.min_prime = as_u64(j.at("min_prime"), context);
  if (j.contains("modulus")) {
    s.modulus = as_u64(j.at("modulus"), context);
    s.residue = as_u64(need(j, "residue", context), context);
  }
  if (j.contains("excluded")) {
    const auto& arr = j.at("excluded");
    if (!arr.is_array()) bad(context, "\"excluded\" must be an array");
    s.excluded.clear();
    for (const auto& p : arr) s.excluded.push_back(as_u64(p, context));
  }
  s.validate();
  return s;
}

ordered_json jtail(const TailRule& t) {
  return ordered_json{{"stream", jstream(t.stream)}, {"exponent", jexp(t.exponent)}};
}

TailRule ptail(const ordered_json& j, const std::string& context) {
  return TailRule{pstream(need(j, "stream", context), context),
                  pexp(need(j, "exponent", context), context)};
}

ordered_json jsteinitz(const SteinitzNumber& s) {
  ordered_json entries = ordered_json::array();
  for (const auto& [p, e] : s.explicit_entries()) entries.push_back({p, jexp(e)});
  ordered_json j{{"entries", std::move(entries)}};
  if (s.has_tail()) j["tail"] = jtail(*s.tail());
  return j;
}

SteinitzNumber psteinitz(const ordered_json& j, const std::string& context) {
  if (!j.is_object()) bad(context, "a steinitz number is an object");
  std::vector<SteinitzNumber::Entry> entries;
  if (j.contains("entries")) {
    const auto& arr = j.at("entries");
    if (!arr.is_array()) bad(context, "\"entries\" must be an array");
    for (const auto& pr : arr) {
      if (!pr.is_array() || pr.size() != 2) {
        bad(context, "each entry is a [prime, exponent] pair");
      }
      entries.push_back({as_u64(pr.at(0), context), pexp(pr.at(1), context)});
    }
  }
  std::optional<TailRule> tail;
  if (j.contains("tail")) tail = ptail(j.at("tail"), context);
  return SteinitzNumber::make(std::move(entries), std::move(tail));
}

ordered_json jpset(const PrimeSet& s) {
  ordered_json j{{"primes", s.explicit_primes}};
  if (s.stream) j["stream"] = jstream(*s.stream);
  return j;
}

PrimeSet ppset(const ordered_json& j, const std::string& context) {
  PrimeSet s;
  const auto& arr = need(j, "primes", context);
  if (!arr.is_array()) bad(context, "\"primes\" must be an array");
  for (const auto& p : arr) s.explicit_primes.push_back(as_u64(p, context));
  if (j.contains("stream")) s.stream = pstream(j.at("stream"), context);
  return s;
}

ordered_json jtri(Tri t) { return ordered_json(tri_name(t)); }

Tri ptri(const ordered_json& j, const std::string& context) {
  std::string s = as_str(j, context);
  if (s == "true") return Tri::True;
  if (s == "false") return Tri::False;
  if (s == "unknown") return Tri::Unknown;
  bad(context, "a three-valued verdict is \"true\", \"false\" or \"unknown\"");
}

ordered_json jspectra(const PrimeSpectrumReport& r) {
  return ordered_json{{"pi", jpset(r.pi)},
                      {"pi_f", jpset(r.pi_f)},
                      {"pi_infty", jpset(r.pi_infty)},
                      {"pi_f_is_infinite", jtri(r.pi_f_is_infinite)}};
}

PrimeSpectrumReport pspectra(const ordered_json& j, const std::string& context) {
  PrimeSpectrumReport r;
  r.pi = ppset(need(j, "pi", context), context);
  r.pi_f = ppset(need(j, "pi_f", context), context);
  r.pi_infty = ppset(need(j, "pi_infty", context), context);
  r.pi_f_is_infinite = ptri(need(j, "pi_f_is_infinite", context), context);
  return r;
}

// ---- subgroups and chain specs ------------------------------------------

ordered_json jsubgroup(const SubgroupDescriptor& d) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HeisenbergScales>) {
          return ordered_json{
              {"scales", {jfactored(v.m), jfactored(v.n), jfactored(v.p)}}};
        } else if constexpr (std::is_same_v<T, AbelianDiagonal>) {
          ordered_json diag = ordered_json::array();
          for (const auto& f : v) diag.push_back(jfactored(f));
          return ordered_json{{"diagonal", std::move(diag)}};
        } else {
          return ordered_json{{"columns", v.cols()}};
        }
      },
      d);
}

SubgroupDescriptor psubgroup(const ordered_json& j, const std::string& context) {
  if (!j.is_object()) bad(context, "a subgroup is an object");
  if (j.contains("scales")) {
    const auto& arr = j.at("scales");
    if (!arr.is_array() || arr.size() != 3) {
      bad(context, "\"scales\" must be a [m, n, p] triple");
    }
    return HeisenbergScales{pfactored(arr.at(0), context), pfactored(arr.at(1), context),
                            pfactored(arr.at(2), context)};
  }
  if (j.contains("diagonal")) {
    AbelianDiagonal diag;
    for (const auto& f : j.at("diagonal")) diag.push_back(pfactored(f, context));
    return diag;
  }
  if (j.contains("columns")) {
    const auto& arr = j.at("columns");
    if (!arr.is_array() || arr.empty()) bad(context, "\"columns\" must be a nonempty array");
    std::vector<std::vector<std::int64_t>> cols;
    for (const auto& col : arr) {
      std::vector<std::int64_t> c;
      for (const auto& e : col) c.push_back(as_i64(e, context));
      cols.push_back(std::move(c));
    }
    return Lattice::from_columns(cols.size(), cols);
  }
  bad(context, "a subgroup needs \"scales\", \"diagonal\" or \"columns\"");
}

ordered_json jgroup(const GroupDescriptor& g) {
  if (g.kind == GroupDescriptor::Kind::Heisenberg) return ordered_json("heisenberg");
  return ordered_json{{"abelian", g.rank}};
}

GroupDescriptor pgroup(const ordered_json& j, const std::string& context) {
  if (j.is_string()) {
    if (j.get<std::string>() == "heisenberg") return GroupDescriptor::heisenberg();
    bad(context, "the only named group is \"heisenberg\"");
  }
  if (j.is_object() && j.contains("abelian")) {
    return GroupDescriptor::abelian(as_u64(j.at("abelian"), context));
  }
  bad(context, "a group is \"heisenberg\" or {\"abelian\": rank}");
}

ordered_json jprediction(const ChainPrediction& p) {
  return ordered_json{{"order_G", jsteinitz(p.steinitz_G)},
                      {"order_rel", jsteinitz(p.steinitz_rel)},
                      {"order_D", jsteinitz(p.steinitz_D)},
                      {"basis", p.basis},
                      {"detail", p.detail}};
}

ChainPrediction pprediction(const ordered_json& j, const std::string& context) {
  ChainPrediction p;
  p.steinitz_G = psteinitz(need(j, "order_G", context), context);
  p.steinitz_rel = psteinitz(need(j, "order_rel", context), context);
  p.steinitz_D = psteinitz(need(j, "order_D", context), context);
  p.basis = as_str(need(j, "basis", context), context);
  p.detail = as_str(need(j, "detail", context), context);
  return p;
}

ordered_json jkstar(const KStarResult& k) {
  ordered_json j{{"value", jfactored(k.value)}};
  if (k.status == KStarStatus::Stabilized) {
    j["status"] = "stabilized-at-depth";
    j["depth"] = k.stabilized_depth;
  } else {
    j["status"] = "upper-bound-only";
  }
  return j;
}

KStarResult pkstar(const ordered_json& j, const std::string& context) {
  KStarResult k;
  k.value = pfactored(need(j, "value", context), context);
  std::string status = as_str(need(j, "status", context), context);
  if (status == "stabilized-at-depth") {
    k.status = KStarStatus::Stabilized;
    k.stabilized_depth = as_u64(need(j, "depth", context), context);
  } else if (status == "upper-bound-only") {
    k.status = KStarStatus::UpperBoundOnly;
  } else {
    bad(context, "k* status is \"stabilized-at-depth\" or \"upper-bound-only\"");
  }
  return k;
}

}  // namespace

// ---- factored ------------------------------------------------------------

std::string to_json(const Factored& f, int indent) { return dump(jfactored(f), indent); }

Factored factored_from_json(const std::string& text) {
  return pfactored(parse(text, "factored integer"), "factored integer");
}

// ---- exponent / steinitz ---------------------------------------------------

std::string to_json(const Exponent& e, int indent) { return dump(jexp(e), indent); }

std::string to_json(const SteinitzNumber& s, int indent) {
  return dump(jsteinitz(s), indent);
}

SteinitzNumber steinitz_from_json(const std::string& text) {
  return psteinitz(parse(text, "steinitz number"), "steinitz number");
}

std::string to_json(const PrimeSpectrumReport& r, int indent) {
  return dump(jspectra(r), indent);
}

// ---- chain spec -------------------------------------------------------------

std::string to_json(const ChainSpec& spec, int indent) {
  ordered_json j{{"group", jgroup(spec.group)}, {"max_depth", spec.max_depth}};
  if (!spec.family.empty()) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : spec.family_params) params[k] = v;
    j["family-rule"] = ordered_json{{"name", spec.family}, {"params", std::move(params)}};
  } else {
    ordered_json levels = ordered_json::array();
    for (std::size_t l = 1; l <= spec.max_depth; ++l) {
      levels.push_back(jsubgroup(spec.at(l)));
    }
    j["explicit"] = std::move(levels);
    if (spec.monotone_image_guarantee) j["monotone_image_guarantee"] = true;
    if (spec.prediction) j["prediction"] = jprediction(*spec.prediction);
  }
  if (spec.k_star_cap) j["k_star_cap"] = *spec.k_star_cap;
  return dump(j, indent);
}

ChainSpec chain_spec_from_json(const std::string& text) {
  const std::string ctx = "chain spec";
  ordered_json j = parse(text, "chain spec");
  std::size_t depth = as_u64(need(j, "max_depth", ctx), ctx);
  ChainSpec spec;
  if (j.contains("family-rule")) {
    const auto& fr = j.at("family-rule");
    std::string name = as_str(need(fr, "name", ctx), ctx);
    std::vector<std::pair<std::string, std::string>> params;
    if (fr.contains("params")) {
      const auto& po = fr.at("params");
      if (!po.is_object()) bad(ctx, "family params must be an object");
      for (const auto& [k, v] : po.items()) {
        params.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
      }
    }
    spec = build_chain(descriptor_from_params(name, params), depth);
    if (j.contains("group") && !(pgroup(j.at("group"), ctx) == spec.group)) {
      bad(ctx, "the declared group does not match the family's group");
    }
  } else if (j.contains("explicit")) {
    GroupDescriptor g = pgroup(need(j, "group", ctx), ctx);
    std::vector<SubgroupDescriptor> levels;
    for (const auto& lv : j.at("explicit")) levels.push_back(psubgroup(lv, ctx));
    if (levels.size() != depth) {
      bad(ctx, "\"explicit\" must list exactly max_depth levels");
    }
    spec = ChainSpec::explicit_chain(g, std::move(levels));
    if (j.contains("monotone_image_guarantee")) {
      spec.monotone_image_guarantee =
          as_bool(j.at("monotone_image_guarantee"), ctx);
    }
    if (j.contains("prediction")) spec.prediction = pprediction(j.at("prediction"), ctx);
  } else {
    bad(ctx, "a chain spec needs \"family-rule\" or \"explicit\"");
  }
  if (j.contains("k_star_cap")) spec.k_star_cap = as_u64(j.at("k_star_cap"), ctx);
  return spec;
}

// ---- chain report -----------------------------------------------------------

std::string to_json(const ChainReport& r, int indent) {
  ordered_json levels = ordered_json::array();
  for (const auto& inv : r.levels) {
    levels.push_back(ordered_json{{"level", inv.level},
                                  {"m", jfactored(inv.m)},
                                  {"n", jfactored(inv.n)},
                                  {"k", jfactored(inv.k)},
                                  {"k_star", jkstar(inv.k_star)}});
  }
  ordered_json nf{{"verdict", jtri(r.normal_form.verdict)}};
  if (r.normal_form.fail_level) nf["fail_level"] = r.normal_form.fail_level;
  ordered_json j{{"levels", std::move(levels)},
                 {"order_G", jsteinitz(r.steinitz_G)},
                 {"order_rel", jsteinitz(r.steinitz_rel)},
                 {"order_D", jsteinitz(r.steinitz_D)},
                 {"order_D_full", jsteinitz(r.steinitz_D_full)},
                 {"order_D_all_stabilized", r.steinitz_D_all_stabilized},
                 {"spectra_G", jspectra(r.spectra_G)},
                 {"spectra_rel", jspectra(r.spectra_rel)},
                 {"spectra_D", jspectra(r.spectra_D)},
                 {"lagrange_ok", r.lagrange_ok},
                 {"lagrange_note", r.lagrange_note},
                 {"normal_form", std::move(nf)},
                 {"prediction_consistent", jtri(r.prediction_consistent)},
                 {"prediction_note", r.prediction_note}};
  return dump(j, indent);
}

ChainReport chain_report_from_json(const std::string& text) {
  const std::string ctx = "chain report";
  ordered_json j = parse(text, "chain report");
  ChainReport r;
  const auto& levels = need(j, "levels", ctx);
  if (!levels.is_array()) bad(ctx, "\"levels\" must be an array");
  for (const auto& lv : levels) {
    LevelInvariants inv;
    inv.level = as_u64(need(lv, "level", ctx), ctx);
    inv.m = pfactored(need(lv, "m", ctx), ctx);
    inv.n = pfactored(need(lv, "n", ctx), ctx);
    inv.k = pfactored(need(lv, "k", ctx), ctx);
    inv.k_star = pkstar(need(lv, "k_star", ctx), ctx);
    r.levels.push_back(std::move(inv));
  }
  r.steinitz_G = psteinitz(need(j, "order_G", ctx), ctx);
  r.steinitz_rel = psteinitz(need(j, "order_rel", ctx), ctx);
  r.steinitz_D = psteinitz(need(j, "order_D", ctx), ctx);
  r.steinitz_D_full = psteinitz(need(j, "order_D_full", ctx), ctx);
  r.steinitz_D_all_stabilized = as_bool(need(j, "order_D_all_stabilized", ctx), ctx);
  r.spectra_G = pspectra(need(j, "spectra_G", ctx), ctx);
  r.spectra_rel = pspectra(need(j, "spectra_rel", ctx), ctx);
  r.spectra_D = pspectra(need(j, "spectra_D", ctx), ctx);
  r.lagrange_ok = as_bool(need(j, "lagrange_ok", ctx), ctx);
  r.lagrange_note = as_str(need(j, "lagrange_note", ctx), ctx);
  const auto& nf = need(j, "normal_form", ctx);
  r.normal_form.verdict = ptri(need(nf, "verdict", ctx), ctx);
  if (nf.contains("fail_level")) {
    r.normal_form.fail_level = as_u64(nf.at("fail_level"), ctx);
  }
  r.prediction_consistent = ptri(need(j, "prediction_consistent", ctx), ctx);
  r.prediction_note = as_str(need(j, "prediction_note", ctx), ctx);
  return r;
}

// ---- dynamics reports ---------------------------------------------------------

std::string to_json(const WildnessWitness& w, int indent) {
  ordered_json j{{"shallow_level", w.shallow_level},
                 {"deep_level", w.deep_level},
                 {"verify_depth", w.verify_depth},
                 {"element", w.element},
                 {"moduli", w.moduli},
                 {"moved_cylinder", w.moved_cylinder},
                 {"fixed_cylinders_checked", w.fixed_cylinders_checked},
                 {"transcript", w.transcript}};
  return dump(j, indent);
}

WildnessWitness witness_from_json(const std::string& text) {
  const std::string ctx = "witness";
  ordered_json j = parse(text, "witness");
  WildnessWitness w;
  w.shallow_level = as_u64(need(j, "shallow_level", ctx), ctx);
  w.deep_level = as_u64(need(j, "deep_level", ctx), ctx);
  w.verify_depth = as_u64(need(j, "verify_depth", ctx), ctx);
  for (const auto& v : need(j, "element", ctx)) w.element.push_back(as_i64(v, ctx));
  for (const auto& v : need(j, "moduli", ctx)) w.moduli.push_back(as_u64(v, ctx));
  for (const auto& v : need(j, "moved_cylinder", ctx)) {
    w.moved_cylinder.push_back(as_i64(v, ctx));
  }
  w.fixed_cylinders_checked = as_u64(need(j, "fixed_cylinders_checked", ctx), ctx);
  if (j.contains("transcript")) {
    for (const auto& line : j.at("transcript")) w.transcript.push_back(as_str(line, ctx));
  }
  return w;
}

std::string to_json(const FreenessProbeReport& r, int indent) {
  ordered_json vio = ordered_json::array();
  for (const auto& v : r.violations) {
    vio.push_back(ordered_json{{"element", v.element}, {"cylinder_level", v.cylinder_level}});
  }
  ordered_json j{{"word_radius", r.word_radius},
                 {"depth", r.depth},
                 {"elements_tested", r.elements_tested},
                 {"violations", std::move(vio)},
                 {"note", r.note}};
  return dump(j, indent);
}

std::string to_json(const StabilityReport& r, int indent) {
  ordered_json j{{"verdict", stability_verdict_name(r.verdict)},
                 {"reason", r.reason},
                 {"finite_spectrum_certificate", r.finite_spectrum_certificate},
                 {"bounded_multiplicity_certificate", r.bounded_multiplicity_certificate},
                 {"witness_depth_searched", r.witness_depth_searched}};
  if (r.witness) {
    j["witness"] = ordered_json::parse(to_json(*r.witness));
  }
  return dump(j, indent);
}

// ---- solenoids ---------------------------------------------------------------

std::string to_json(const SolenoidPresentation& p, int indent) {
  ordered_json j{{"degrees", p.degrees}};
  switch (p.continuation.kind) {
    case SolenoidContinuation::Kind::None:
      break;
    case SolenoidContinuation::Kind::RepeatBlock:
      j["tail"] = ordered_json{{"repeat", p.continuation.block}};
      break;
    case SolenoidContinuation::Kind::PrimeStream:
      j["tail"] = jtail(*p.continuation.stream);
      break;
  }
  if (p.dimension != 1) j["dim"] = p.dimension;
  return dump(j, indent);
}

SolenoidPresentation solenoid_from_json(const std::string& text) {
  const std::string ctx = "solenoid presentation";
  ordered_json j = parse(text, "solenoid presentation");
  SolenoidPresentation p;
  const auto& deg = need(j, "degrees", ctx);
  if (!deg.is_array()) bad(ctx, "\"degrees\" must be an array");
  for (const auto& d : deg) p.degrees.push_back(as_u64(d, ctx));
  if (j.contains("tail")) {
    const auto& t = j.at("tail");
    if (t.is_object() && t.contains("repeat")) {
      p.continuation.kind = SolenoidContinuation::Kind::RepeatBlock;
      p.continuation.block = as_u64(t.at("repeat"), ctx);
    } else {
      p.continuation.kind = SolenoidContinuation::Kind::PrimeStream;
      p.continuation.stream = ptail(t, ctx);
    }
  }
  if (j.contains("dim")) p.dimension = as_u64(j.at("dim"), ctx);
  validate_presentation(p);
  return p;
}

std::string to_json(const PresentationChainConsistency& c, int indent) {
  ordered_json j{{"levels_compared", c.levels_compared},
                 {"prefix_consistent", c.prefix_consistent},
                 {"note", c.note}};
  return dump(j, indent);
}

std::string error_to_json(const Error& e) {
  ordered_json j{{"error", {{"kind", kind_name(e.kind())}, {"message", e.what()}}}};
  return j.dump();
}

}  // namespace steinitz::json
