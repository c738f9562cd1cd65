#include "steinitz/families.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "steinitz/errors.hpp"
#include "steinitz/primes.hpp"

namespace steinitz {

namespace {

void require_all_primes(const std::vector<std::uint64_t>& ps, const char* what) {
  for (auto p : ps) require_prime(p, what);
  std::set<std::uint64_t> seen(ps.begin(), ps.end());
  if (seen.size() != ps.size()) {
    fail(ErrorKind::InvalidInput, std::string(what) + " must be distinct primes");
  }
}

void require_disjoint(const std::vector<std::uint64_t>& a,
                      const std::vector<std::uint64_t>& b, const char* msg) {
  std::set<std::uint64_t> seen(a.begin(), a.end());
  for (auto p : b) {
    if (seen.count(p)) {
      fail(ErrorKind::InvalidInput,
           std::string(msg) + ": prime " + std::to_string(p) + " appears in both");
    }
  }
}

// Entries may arrive unsorted and may contain zero exponents; duplicates are
// a caller bug (the families keep their prime sets disjoint).
SteinitzNumber assemble(std::vector<SteinitzNumber::Entry> entries,
                        std::optional<TailRule> tail = std::nullopt) {
  std::erase_if(entries, [](const auto& e) { return e.second.is_zero(); });
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return SteinitzNumber::make(std::move(entries), std::move(tail));
}

std::vector<std::uint64_t> sorted_union(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out(a);
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- toral odometers -------------------------------------------------------

void validate_toral_params(const ToralDiagonal& d, const char* who) {
  std::vector<std::uint64_t> qs;
  for (const auto& [q, mult] : d.pi_f) {
    require_prime(q, who);
    if (mult == 0) {
      fail(ErrorKind::InvalidInput,
           std::string(who) + ": multiplicity of prime " + std::to_string(q) +
               " must be positive");
    }
    qs.push_back(q);
  }
  require_all_primes(qs, who);
  require_all_primes(d.pi_infty, who);
  require_disjoint(qs, d.pi_infty, who);
}

Factored toral_level_scale(const ToralDiagonal& d, std::size_t level) {
  Factored f = Factored::one();
  for (std::size_t i = 0; i < d.pi_f.size() && i < level; ++i) {
    f = f.times(Factored::prime_power(d.pi_f[i].first, d.pi_f[i].second));
  }
  for (std::size_t j = 0; j < d.pi_infty.size() && j < level; ++j) {
    f = f.times(Factored::prime_power(d.pi_infty[j], level));
  }
  return f;
}

SteinitzNumber toral_limit(const ToralDiagonal& d) {
  std::vector<SteinitzNumber::Entry> es;
  for (const auto& [q, mult] : d.pi_f) es.push_back({q, Exponent(mult)});
  for (auto p : d.pi_infty) es.push_back({p, Exponent::infinity()});
  return assemble(std::move(es));
}

ChainSpec build_impl(const ToralDiagonal& d, std::size_t max_depth) {
  validate_toral_params(d, "toral-diagonal");
  if (d.pi_infty.empty() && max_depth > d.pi_f.size()) {
    fail(ErrorKind::InvalidInput,
         "toral-diagonal: with no full-tower primes the chain stops descending after level " +
             std::to_string(d.pi_f.size()) + "; lower max_depth or add pi-inf primes");
  }
  auto spec = ChainSpec::rule_chain(
      GroupDescriptor::abelian(1), max_depth,
      [d](std::size_t level) -> SubgroupDescriptor {
        return AbelianDiagonal{toral_level_scale(d, level)};
      });
  spec.monotone_image_guarantee = true;
  ChainPrediction pred;
  pred.steinitz_G = toral_limit(d);
  pred.steinitz_rel = pred.steinitz_G;
  pred.steinitz_D = SteinitzNumber::one();
  pred.basis = "abelian_normal_chain";
  pred.detail =
      "every level subgroup of an abelian group is normal, so the quotient order "
      "equals the index and all discriminant orders are trivial";
  spec.prediction = std::move(pred);
  return spec;
}

ChainSpec build_impl(const ToralProduct& d, std::size_t max_depth) {
  if (d.coordinates.empty()) {
    fail(ErrorKind::InvalidInput, "toral-product needs at least one coordinate");
  }
  std::size_t longest_finite = 0;
  bool some_tower = false;
  for (const auto& c : d.coordinates) {
    validate_toral_params(c, "toral-product");
    longest_finite = std::max(longest_finite, c.pi_f.size());
    some_tower = some_tower || !c.pi_infty.empty();
  }
  if (!some_tower && max_depth > longest_finite) {
    fail(ErrorKind::InvalidInput,
         "toral-product: every coordinate stops descending after level " +
             std::to_string(longest_finite) + "; lower max_depth or add pi-inf primes");
  }
  auto coords = d.coordinates;
  auto spec = ChainSpec::rule_chain(
      GroupDescriptor::abelian(coords.size()), max_depth,
      [coords](std::size_t level) -> SubgroupDescriptor {
        AbelianDiagonal diag;
        diag.reserve(coords.size());
        for (const auto& c : coords) diag.push_back(toral_level_scale(c, level));
        return diag;
      });
  spec.monotone_image_guarantee = true;
  ChainPrediction pred;
  pred.steinitz_G = SteinitzNumber::one();
  for (const auto& c : d.coordinates) pred.steinitz_G = mul(pred.steinitz_G, toral_limit(c));
  pred.steinitz_rel = pred.steinitz_G;
  pred.steinitz_D = SteinitzNumber::one();
  pred.basis = "abelian_normal_chain";
  pred.detail =
      "a product of independent rank-1 towers; the order is the product of the "
      "coordinate orders and every discriminant is trivial by normality";
  spec.prediction = std::move(pred);
  return spec;
}

// ---- Heisenberg towers -----------------------------------------------------

ChainSpec build_impl(const HeisenbergSelfEmbed& d, std::size_t max_depth) {
  require_prime(d.p, "heis-selfembed");
  const std::uint64_t p = d.p;
  auto spec = ChainSpec::rule_chain(
      GroupDescriptor::heisenberg(), max_depth,
      [p](std::size_t level) -> SubgroupDescriptor {
        return HeisenbergScales{Factored::prime_power(p, level),
                                Factored::prime_power(p, level),
                                Factored::prime_power(p, 2 * level)};
      });
  spec.monotone_image_guarantee = true;
  ChainPrediction pred;
  pred.steinitz_G = assemble({{p, Exponent::infinity()}});
  pred.steinitz_rel = pred.steinitz_G;
  pred.steinitz_D = SteinitzNumber::one();
  pred.basis = "vanishing_bonding_images";
  pred.detail =
      "each level rescales all three coordinates by the same prime; deeper levels "
      "map into the center of every fixed core quotient, so the bonding images "
      "shrink to the identity and the discriminant order is trivial in the limit";
  spec.prediction = std::move(pred);
  return spec;
}

void validate_pi_f_entries(const std::vector<PiFEntry>& pi_f, const char* who) {
  std::vector<std::uint64_t> qs;
  for (const auto& e : pi_f) {
    require_prime(e.q, who);
    if (e.r < 1 || e.r > e.n) {
      fail(ErrorKind::InvalidInput,
           std::string(who) + ": local parameters at prime " + std::to_string(e.q) +
               " need 1 <= r <= n, got r=" + std::to_string(e.r) +
               " n=" + std::to_string(e.n));
    }
    qs.push_back(e.q);
  }
  require_all_primes(qs, who);
}

HeisenbergScales stable_level_scales(const HeisenbergStable& d, std::size_t level) {
  Factored m = Factored::one(), n = Factored::one();
  for (const auto& e : d.pi_f) {
    m = m.times(Factored::prime_power(e.q, e.r));
    n = n.times(Factored::prime_power(e.q, e.n));
  }
  for (std::size_t j = 0; j < d.pi_infty.size() && j < level; ++j) {
    Factored t = Factored::prime_power(d.pi_infty[j], level);
    m = m.times(t);
    n = n.times(t);
  }
  return {m, n, n};
}

ChainSpec build_impl(const HeisenbergStable& d, std::size_t max_depth) {
  validate_pi_f_entries(d.pi_f, "heis-stable");
  require_all_primes(d.pi_infty, "heis-stable");
  std::vector<std::uint64_t> qs;
  for (const auto& e : d.pi_f) qs.push_back(e.q);
  require_disjoint(qs, d.pi_infty, "heis-stable");
  if (d.pi_infty.empty()) {
    fail(ErrorKind::InvalidInput,
         "heis-stable: the finite local factors enter at level 1 and nothing else "
         "descends, so at least one pi-inf prime is required");
  }
  auto spec = ChainSpec::rule_chain(
      GroupDescriptor::heisenberg(), max_depth,
      [d](std::size_t level) -> SubgroupDescriptor {
        return stable_level_scales(d, level);
      });
  spec.monotone_image_guarantee = true;
  ChainPrediction pred;
  std::vector<SteinitzNumber::Entry> g_es, rel_es, d_es;
  for (const auto& e : d.pi_f) {
    g_es.push_back({e.q, Exponent(3ull * e.n)});
    rel_es.push_back({e.q, Exponent(std::uint64_t(e.r) + 2ull * e.n)});
    d_es.push_back({e.q, Exponent(std::uint64_t(e.n) - e.r)});
  }
  for (auto p : d.pi_infty) {
    g_es.push_back({p, Exponent::infinity()});
    rel_es.push_back({p, Exponent::infinity()});
  }
  pred.steinitz_G = assemble(std::move(g_es));
  pred.steinitz_rel = assemble(std::move(rel_es));
  pred.steinitz_D = assemble(std::move(d_es));
  pred.basis = "finite_discriminant_spectrum";
  pred.detail =
      "only the finitely many listed primes survive in the discriminant orders; "
      "the full-tower primes enter index and quotient order with matching "
      "exponents and cancel";
  spec.prediction = std::move(pred);
  return spec;
}

std::uint64_t wild_prime_at(const HeisenbergWild& d, std::size_t i) {
  if (i < d.leading_primes.size()) return d.leading_primes[i];
  PrimeStream rest =
      PrimeStream::all_primes_excluding(sorted_union(d.leading_primes, d.pi_infty));
  return rest.nth(i - d.leading_primes.size());
}

HeisenbergScales wild_level_scales(const HeisenbergWild& d, std::size_t level) {
  Factored m = Factored::one(), n = Factored::one();
  for (std::size_t i = 0; i < level; ++i) {
    std::uint64_t q = wild_prime_at(d, i);
    m = m.times(Factored::prime_power(q, d.r));
    n = n.times(Factored::prime_power(q, d.n));
  }
  for (std::size_t j = 0; j < d.pi_infty.size() && j < level; ++j) {
    Factored t = Factored::prime_power(d.pi_infty[j], level);
    m = m.times(t);
    n = n.times(t);
  }
  return {m, n, n};
}

ChainSpec build_impl(const HeisenbergWild& d, std::size_t max_depth) {
  require_all_primes(d.leading_primes, "heis-wild");
  require_all_primes(d.pi_infty, "heis-wild");
  require_disjoint(d.leading_primes, d.pi_infty, "heis-wild");
  if (d.r < 1 || d.r >= d.n) {
    fail(ErrorKind::InvalidInput,
         "heis-wild: the shared local parameters need 1 <= r < n (r = n leaves no "
         "local discriminant factor), got r=" + std::to_string(d.r) +
             " n=" + std::to_string(d.n));
  }
  auto spec = ChainSpec::rule_chain(
      GroupDescriptor::heisenberg(), max_depth,
      [d](std::size_t level) -> SubgroupDescriptor {
        return wild_level_scales(d, level);
      });
  spec.monotone_image_guarantee = true;
  PrimeStream finite_stream =
      PrimeStream::all_primes_excluding({d.pi_infty.begin(), d.pi_infty.end()});
  std::vector<SteinitzNumber::Entry> inf_es;
  for (auto p : d.pi_infty) inf_es.push_back({p, Exponent::infinity()});
  ChainPrediction pred;
  pred.steinitz_G =
      assemble(inf_es, TailRule{finite_stream, Exponent(3ull * d.n)});
  pred.steinitz_rel =
      assemble(inf_es, TailRule{finite_stream, Exponent(std::uint64_t(d.r) + 2ull * d.n)});
  pred.steinitz_D =
      assemble({}, TailRule{finite_stream, Exponent(std::uint64_t(d.n) - d.r)});
  pred.basis = "unbounded_discriminant_spectrum";
  pred.detail =
      "a new prime enters the scales at every level and contributes a permanent "
      "factor to each later discriminant order, so the discriminant spectrum "
      "grows without bound";
  spec.prediction = std::move(pred);
  return spec;
}

ChainSpec build_impl(const ToyModel& d, std::size_t max_depth) {
  require_prime(d.p, "toy-model");
  if (d.n < 1 || d.k >= d.n) {
    fail(ErrorKind::InvalidInput,
         "toy-model: parameters need 0 <= k < n, got k=" + std::to_string(d.k) +
             " n=" + std::to_string(d.n));
  }
  if (max_depth != 1) {
    fail(ErrorKind::InvalidInput,
         "toy-model is a single finite action; build it with max_depth = 1");
  }
  auto spec = ChainSpec::explicit_chain(
      GroupDescriptor::heisenberg(),
      {HeisenbergScales{Factored::prime_power(d.p, d.k), Factored::prime_power(d.p, d.n),
                        Factored::prime_power(d.p, d.n)}});
  ChainPrediction pred;
  pred.steinitz_G = assemble({{d.p, Exponent(3ull * d.n)}});
  pred.steinitz_rel = assemble({{d.p, Exponent(std::uint64_t(d.k) + 2ull * d.n)}});
  pred.steinitz_D = assemble({{d.p, Exponent(std::uint64_t(d.n) - d.k)}});
  pred.basis = "single_finite_level";
  pred.detail = "one finite quotient whose three orders follow from the scale triple";
  spec.prediction = std::move(pred);
  return spec;
}

// ---- parameter strings -----------------------------------------------------

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& where) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    fail(ErrorKind::InvalidInput, where + ": expected a nonnegative integer, got '" + s + "'");
  }
  errno = 0;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) {
    fail(ErrorKind::InvalidInput, where + ": integer out of range: '" + s + "'");
  }
  return v;
}

std::vector<std::uint64_t> parse_prime_list(const std::string& s, const std::string& where) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_u64(part, where));
  return out;
}

// "q:n" pairs for toral pi-f lists.
std::string format_qn(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i].first << ':' << v[i].second;
  }
  return os.str();
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> parse_qn(const std::string& s,
                                                              const std::string& where) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) {
    auto bits = split(part, ':');
    if (bits.size() != 2) {
      fail(ErrorKind::InvalidInput, where + ": expected prime:multiplicity, got '" + part + "'");
    }
    out.push_back({parse_u64(bits[0], where),
                   static_cast<std::uint32_t>(parse_u64(bits[1], where))});
  }
  return out;
}

// "q:n:r" triples for Heisenberg pi-f lists.
std::string format_qnr(const std::vector<PiFEntry>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i].q << ':' << v[i].n << ':' << v[i].r;
  }
  return os.str();
}

std::vector<PiFEntry> parse_qnr(const std::string& s, const std::string& where) {
  std::vector<PiFEntry> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) {
    auto bits = split(part, ':');
    if (bits.size() != 3) {
      fail(ErrorKind::InvalidInput, where + ": expected prime:n:r, got '" + part + "'");
    }
    PiFEntry e;
    e.q = parse_u64(bits[0], where);
    e.n = static_cast<std::uint32_t>(parse_u64(bits[1], where));
    e.r = static_cast<std::uint32_t>(parse_u64(bits[2], where));
    out.push_back(e);
  }
  return out;
}

using Params = std::vector<std::pair<std::string, std::string>>;

const std::string* find_param(const Params& params, const std::string& key) {
  for (const auto& [k, v] : params) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string need_param(const Params& params, const std::string& key, const std::string& who) {
  const std::string* v = find_param(params, key);
  if (!v) fail(ErrorKind::InvalidInput, who + ": missing parameter '" + key + "'");
  return *v;
}

std::string param_or(const Params& params, const std::string& key, const std::string& dflt) {
  const std::string* v = find_param(params, key);
  return v ? *v : dflt;
}

}  // namespace

ChainSpec build_chain(const FamilyDescriptor& f, std::size_t max_depth) {
  ChainSpec spec =
      std::visit([&](const auto& d) { return build_impl(d, max_depth); }, f);
  spec.family = family_name(f);
  spec.family_params = descriptor_to_params(f);
  return spec;
}

ExpectedClassification expected_classification(const FamilyDescriptor& f) {
  ExpectedClassification ec;
  if (std::holds_alternative<ToralDiagonal>(f) || std::holds_alternative<ToralProduct>(f)) {
    ec.stable = Tri::True;
    ec.topologically_free = Tri::True;
    ec.discriminant_trivial = Tri::True;
    ec.rationale =
        "abelian chains are normal at every level, so the discriminant orders are "
        "trivial, the odometer acts freely, and the action is stable";
    return ec;
  }
  if (std::holds_alternative<HeisenbergSelfEmbed>(f)) {
    ec.stable = Tri::True;
    ec.topologically_free = Tri::True;
    ec.discriminant_trivial = Tri::True;
    ec.rationale =
        "the bonding images collapse to the identity, so the stabilized "
        "discriminant orders are trivial and the chain is equivalent to a normal "
        "one; normal chains give free, stable actions";
    return ec;
  }
  if (const auto* toy = std::get_if<ToyModel>(&f)) {
    ec.stable = Tri::True;
    ec.topologically_free = Tri::False;
    ec.discriminant_trivial = toy->k < toy->n ? Tri::False : Tri::True;
    ec.rationale =
        "a single finite level is stable outright; the level subgroup is not "
        "normal, so some quotient elements fix the basepoint coset while moving "
        "others, which rules out a free action";
    return ec;
  }
  if (const auto* st = std::get_if<HeisenbergStable>(&f)) {
    bool trivial = true;
    for (const auto& e : st->pi_f) trivial = trivial && e.r == e.n;
    ec.stable = Tri::True;
    ec.discriminant_trivial = trivial ? Tri::True : Tri::False;
    ec.topologically_free = trivial ? Tri::True : Tri::Unknown;
    ec.rationale =
        "the discriminant orders stabilize to one fixed finite value, so the "
        "discriminant spectrum is finite, which forces stability; freeness is "
        "pinned down only when that value is trivial";
    return ec;
  }
  const auto& w = std::get<HeisenbergWild>(f);
  ec.stable = Tri::False;
  ec.discriminant_trivial = Tri::False;
  ec.topologically_free = w.pi_infty.empty() ? Tri::True : Tri::Unknown;
  ec.rationale =
      "a fresh prime joins the discriminant order at every level, so no deeper "
      "truncation is normal over a shallower one and the action is wild; when "
      "every prime has finite multiplicity the ambient group is residually "
      "realized with torsion-free isotropy, which keeps the action "
      "topologically free";
  return ec;
}

std::string family_name(const FamilyDescriptor& f) {
  struct Visitor {
    std::string operator()(const ToralDiagonal&) const { return "toral-diagonal"; }
    std::string operator()(const ToralProduct&) const { return "toral-product"; }
    std::string operator()(const HeisenbergSelfEmbed&) const { return "heis-selfembed"; }
    std::string operator()(const HeisenbergStable&) const { return "heis-stable"; }
    std::string operator()(const HeisenbergWild&) const { return "heis-wild"; }
    std::string operator()(const ToyModel&) const { return "toy-model"; }
  };
  return std::visit(Visitor{}, f);
}

std::vector<std::pair<std::string, std::string>> descriptor_to_params(
    const FamilyDescriptor& f) {
  Params out;
  if (const auto* d = std::get_if<ToralDiagonal>(&f)) {
    out.push_back({"pi-f", format_qn(d->pi_f)});
    out.push_back({"pi-inf", join_u64(d->pi_infty)});
  } else if (const auto* d = std::get_if<ToralProduct>(&f)) {
    out.push_back({"coordinates", std::to_string(d->coordinates.size())});
    for (std::size_t i = 0; i < d->coordinates.size(); ++i) {
      out.push_back({"pi-f-" + std::to_string(i + 1), format_qn(d->coordinates[i].pi_f)});
      out.push_back({"pi-inf-" + std::to_string(i + 1), join_u64(d->coordinates[i].pi_infty)});
    }
  } else if (const auto* d = std::get_if<HeisenbergSelfEmbed>(&f)) {
    out.push_back({"p", std::to_string(d->p)});
  } else if (const auto* d = std::get_if<HeisenbergStable>(&f)) {
    out.push_back({"pi-f", format_qnr(d->pi_f)});
    out.push_back({"pi-inf", join_u64(d->pi_infty)});
  } else if (const auto* d = std::get_if<HeisenbergWild>(&f)) {
    out.push_back({"primes", join_u64(d->leading_primes)});
    out.push_back({"n", std::to_string(d->n)});
    out.push_back({"r", std::to_string(d->r)});
    out.push_back({"pi-inf", join_u64(d->pi_infty)});
  } else {
    const auto& toy = std::get<ToyModel>(f);
    out.push_back({"p", std::to_string(toy.p)});
    out.push_back({"n", std::to_string(toy.n)});
    out.push_back({"k", std::to_string(toy.k)});
  }
  return out;
}

FamilyDescriptor descriptor_from_params(const std::string& family, const Params& params) {
  if (family == "toral-diagonal") {
    ToralDiagonal d;
    d.pi_f = parse_qn(param_or(params, "pi-f", ""), family);
    d.pi_infty = parse_prime_list(param_or(params, "pi-inf", ""), family);
    return d;
  }
  if (family == "toral-product") {
    ToralProduct d;
    std::size_t count = parse_u64(need_param(params, "coordinates", family), family);
    for (std::size_t i = 1; i <= count; ++i) {
      ToralDiagonal c;
      c.pi_f = parse_qn(param_or(params, "pi-f-" + std::to_string(i), ""), family);
      c.pi_infty =
          parse_prime_list(param_or(params, "pi-inf-" + std::to_string(i), ""), family);
      d.coordinates.push_back(std::move(c));
    }
    return d;
  }
  if (family == "heis-selfembed") {
    HeisenbergSelfEmbed d;
    d.p = parse_u64(need_param(params, "p", family), family);
    return d;
  }
  if (family == "heis-stable") {
    HeisenbergStable d;
    d.pi_f = parse_qnr(param_or(params, "pi-f", ""), family);
    d.pi_infty = parse_prime_list(param_or(params, "pi-inf", ""), family);
    return d;
  }
  if (family == "heis-wild") {
    HeisenbergWild d;
    d.leading_primes = parse_prime_list(param_or(params, "primes", ""), family);
    d.n = static_cast<std::uint32_t>(parse_u64(need_param(params, "n", family), family));
    d.r = static_cast<std::uint32_t>(parse_u64(need_param(params, "r", family), family));
    d.pi_infty = parse_prime_list(param_or(params, "pi-inf", ""), family);
    return d;
  }
  if (family == "toy-model") {
    ToyModel d;
    d.p = parse_u64(need_param(params, "p", family), family);
    d.n = static_cast<std::uint32_t>(parse_u64(need_param(params, "n", family), family));
    d.k = static_cast<std::uint32_t>(parse_u64(need_param(params, "k", family), family));
    return d;
  }
  fail(ErrorKind::InvalidInput,
       "unknown family '" + family + "'; known families: " + [] {
         std::string names;
         for (const auto& n : family_names()) {
           if (!names.empty()) names += ", ";
           names += n;
         }
         return names;
       }());
}

std::vector<std::string> family_names() {
  return {"toral-diagonal", "toral-product", "heis-selfembed",
          "heis-stable",    "heis-wild",     "toy-model"};
}

}  // namespace steinitz
