#include "steinitz/steinitz_number.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "steinitz/errors.hpp"

namespace steinitz {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    default: return "unknown";
  }
}

std::uint64_t Exponent::finite_value() const {
  if (is_infinite()) {
    fail(ErrorKind::InvariantViolation, "finite_value() called on an infinite exponent");
  }
  return v_;
}

Exponent Exponent::plus(Exponent o) const {
  if (is_infinite() || o.is_infinite()) return infinity();
  if (v_ > ~0ull - 1 - o.v_) {
    fail(ErrorKind::InvalidInput, "exponent addition overflow");
  }
  return Exponent(v_ + o.v_);
}

Exponent Exponent::max(Exponent o) const {
  if (is_infinite() || o.is_infinite()) return infinity();
  return Exponent(std::max(v_, o.v_));
}

bool Exponent::leq(Exponent o) const {
  if (o.is_infinite()) return true;
  if (is_infinite()) return false;
  return v_ <= o.v_;
}

namespace {

// Rebuilds the unique representation: tail streams canonical, explicit
// entries only where the exponent is positive and differs from the tail's
// generic value, exclusions exactly at class primes whose exponent differs
// from the generic value. Accepts zero-exponent entries as "this class prime
// is absent" markers.
SteinitzNumber normalize(std::vector<SteinitzNumber::Entry> entries,
                         std::optional<TailRule> tail) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].first == entries[i - 1].first) {
      fail(ErrorKind::InvalidInput, "steinitz number: duplicate prime " +
                                        std::to_string(entries[i].first));
    }
  }
  std::vector<SteinitzNumber::Entry> kept;
  if (!tail) {
    for (const auto& [p, e] : entries) {
      if (!e.is_zero()) kept.push_back({p, e});
    }
    return SteinitzNumber::make(std::move(kept), std::nullopt);
  }
  PrimeStream stream = tail->stream.canonicalized();
  std::vector<std::uint64_t> excl(stream.excluded.begin(), stream.excluded.end());
  for (const auto& [p, e] : entries) {
    if (!stream.raw_contains(p)) {
      if (!e.is_zero()) kept.push_back({p, e});
      continue;
    }
    auto it = std::lower_bound(excl.begin(), excl.end(), p);
    bool excluded = it != excl.end() && *it == p;
    if (e == tail->exponent) {
      if (excluded) excl.erase(it);
    } else {
      if (!excluded) excl.insert(it, p);
      if (!e.is_zero()) kept.push_back({p, e});
    }
  }
  stream.excluded = std::move(excl);
  return SteinitzNumber::make(std::move(kept), TailRule{std::move(stream), tail->exponent});
}

// Primes at which a or b may deviate from tail-generic behavior: explicit
// entries and tail exclusions on both sides. With canonical tails over the
// same class this list covers every possible disagreement prime.
std::vector<std::uint64_t> deviation_primes(const SteinitzNumber& a, const SteinitzNumber& b) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : a.explicit_entries()) out.push_back(p);
  for (const auto& [p, e] : b.explicit_entries()) out.push_back(p);
  if (a.has_tail()) {
    for (auto p : a.tail()->stream.excluded) out.push_back(p);
  }
  if (b.has_tail()) {
    for (auto p : b.tail()->stream.excluded) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool same_class(const PrimeStream& a, const PrimeStream& b) {
  return a.modulus == b.modulus && (a.modulus == 1 || a.residue == b.residue);
}

// Decides whether the raw class of `a` is contained in the raw class of `b`
// as sets of primes, pushing the finitely many primes that sit in residue
// classes mod lcm sharing a factor with the modulus (each such class holds at
// most one prime) onto `specials` for individual inspection. Unknown only
// when the combined modulus is too large to scan.
Tri class_contained(const PrimeStream& a, const PrimeStream& b,
                    std::vector<std::uint64_t>* specials) {
  if (b.modulus == 1) return Tri::True;
  std::uint64_t l = std::lcm(a.modulus, b.modulus);
  if (l > 1000000) return Tri::Unknown;
  for (std::uint64_t c = 0; c < l; ++c) {
    if (a.modulus > 1 && c % a.modulus != a.residue) continue;
    std::uint64_t g = std::gcd(c, l);
    if (g == 1) {
      if (c % b.modulus != b.residue) return Tri::False;
    } else {
      if (is_prime(c)) specials->push_back(c);
      if (c == 0 && is_prime(l)) specials->push_back(l);
    }
  }
  return Tri::True;
}

enum class TailAlignment {
  NoTails,        // neither side has a tail
  LeftOnly,       // only a has a tail
  RightOnly,      // only b has a tail
  SameClass,      // both tails, identical residue class
  EqualSets,      // different classes proven equal outside `specials`
  LeftEscapes,    // infinitely many a-tail primes proven outside b's tail
  RightEscapes,   // infinitely many b-tail primes proven outside a's tail
  Undecidable,    // classes too large to compare
};

TailAlignment align_tails(const SteinitzNumber& a, const SteinitzNumber& b,
                          std::vector<std::uint64_t>* specials) {
  if (!a.has_tail() && !b.has_tail()) return TailAlignment::NoTails;
  if (a.has_tail() && !b.has_tail()) return TailAlignment::LeftOnly;
  if (!a.has_tail() && b.has_tail()) return TailAlignment::RightOnly;
  const PrimeStream& sa = a.tail()->stream;
  const PrimeStream& sb = b.tail()->stream;
  if (same_class(sa, sb)) return TailAlignment::SameClass;
  Tri ab = class_contained(sa, sb, specials);
  if (ab == Tri::False) return TailAlignment::LeftEscapes;
  Tri ba = class_contained(sb, sa, specials);
  if (ba == Tri::False) return TailAlignment::RightEscapes;
  if (ab == Tri::True && ba == Tri::True) return TailAlignment::EqualSets;
  return TailAlignment::Undecidable;
}

SteinitzNumber combine(const SteinitzNumber& a, const SteinitzNumber& b,
                       Exponent (Exponent::*op)(Exponent) const, const char* opname) {
  std::vector<std::uint64_t> specials;
  std::optional<TailRule> tail;
  switch (align_tails(a, b, &specials)) {
    case TailAlignment::NoTails:
      break;
    case TailAlignment::LeftOnly:
      tail = a.tail();
      break;
    case TailAlignment::RightOnly:
      tail = b.tail();
      break;
    case TailAlignment::SameClass:
    case TailAlignment::EqualSets: {
      // Generic primes of the shared class get the combined exponent; every
      // prime that can differ is in `specials` and handled explicitly below.
      PrimeStream merged = a.tail()->stream;
      merged.excluded.clear();
      tail = TailRule{merged, (a.tail()->exponent.*op)(b.tail()->exponent)};
      break;
    }
    default:
      fail(ErrorKind::IncompatibleTails,
           std::string(opname) +
               ": tails range over different prime streams and the result has "
               "no single-stream representation");
  }
  auto dev = deviation_primes(a, b);
  specials.insert(specials.end(), dev.begin(), dev.end());
  std::sort(specials.begin(), specials.end());
  specials.erase(std::unique(specials.begin(), specials.end()), specials.end());
  std::vector<SteinitzNumber::Entry> entries;
  entries.reserve(specials.size());
  for (auto p : specials) {
    entries.push_back({p, (a.exponent_of(p).*op)(b.exponent_of(p))});
  }
  return normalize(std::move(entries), std::move(tail));
}

}  // namespace

SteinitzNumber SteinitzNumber::one() { return SteinitzNumber{}; }

SteinitzNumber SteinitzNumber::from_factored(const Factored& f) {
  std::vector<Entry> entries;
  entries.reserve(f.entries().size());
  for (const auto& [p, e] : f.entries()) entries.push_back({p, Exponent(e)});
  return make(std::move(entries), std::nullopt);
}

SteinitzNumber SteinitzNumber::make(std::vector<Entry> entries, std::optional<TailRule> tail) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    require_prime(entries[i].first, "steinitz number prime");
    if (entries[i].second.is_zero()) {
      fail(ErrorKind::InvalidInput, "steinitz number: zero exponent at prime " +
                                        std::to_string(entries[i].first));
    }
    if (i > 0 && entries[i - 1].first >= entries[i].first) {
      fail(ErrorKind::InvalidInput,
           "steinitz number: primes must be strictly increasing");
    }
  }
  if (tail) {
    tail->stream.validate();
    if (tail->exponent.is_zero()) {
      fail(ErrorKind::InvalidInput, "steinitz number: tail exponent must be positive");
    }
    PrimeStream canon = tail->stream.canonicalized();
    if (!(canon == tail->stream)) {
      // Non-canonical input from callers is re-normalized rather than
      // rejected; only library-internal paths construct tails directly.
      std::vector<Entry> raw = std::move(entries);
      return normalize(std::move(raw), TailRule{std::move(canon), tail->exponent});
    }
    for (const auto& [p, e] : entries) {
      if (tail->stream.contains(p)) {
        std::vector<Entry> raw = std::move(entries);
        return normalize(std::move(raw), std::move(tail));
      }
      if (tail->stream.raw_contains(p) && e == tail->exponent) {
        std::vector<Entry> raw = std::move(entries);
        return normalize(std::move(raw), std::move(tail));
      }
    }
  }
  SteinitzNumber n;
  n.entries_ = std::move(entries);
  n.tail_ = std::move(tail);
  return n;
}

Exponent SteinitzNumber::exponent_of(std::uint64_t p) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const Entry& e, std::uint64_t v) { return e.first < v; });
  if (it != entries_.end() && it->first == p) return it->second;
  if (tail_ && tail_->stream.contains(p)) return tail_->exponent;
  return Exponent();
}

SteinitzNumber steinitz_from_factor_sequence(const std::vector<std::uint64_t>& factors,
                                             std::size_t truncation) {
  if (truncation < 1 || truncation > factors.size()) {
    fail(ErrorKind::InvalidInput,
         "factor sequence: truncation depth must be in [1, factors.size()]");
  }
  Factored acc = Factored::one();
  for (std::size_t i = 0; i < truncation; ++i) {
    if (factors[i] < 2) {
      fail(ErrorKind::InvalidInput, "factor sequence: factors must be at least 2");
    }
    acc = acc.times(Factored::from_integer(factors[i]));
  }
  return SteinitzNumber::from_factored(acc);
}

SteinitzNumber mul(const SteinitzNumber& a, const SteinitzNumber& b) {
  return combine(a, b, &Exponent::plus, "mul");
}

SteinitzNumber lcm(const SteinitzNumber& a, const SteinitzNumber& b) {
  return combine(a, b, &Exponent::max, "lcm");
}

bool divides(const SteinitzNumber& a, const SteinitzNumber& b) {
  std::vector<std::uint64_t> specials;
  TailAlignment align = align_tails(a, b, &specials);
  switch (align) {
    case TailAlignment::LeftOnly:
      // a's tail puts a positive exponent on infinitely many primes; b
      // covers only finitely many.
      return false;
    case TailAlignment::LeftEscapes:
      return false;
    case TailAlignment::RightEscapes:
      // Extra b-tail primes can only help b; fall through to the generic
      // exponent test on a's class.
    case TailAlignment::SameClass:
    case TailAlignment::EqualSets:
      if (!a.tail()->exponent.leq(b.tail()->exponent)) return false;
      break;
    case TailAlignment::Undecidable:
      fail(ErrorKind::IncompatibleTails,
           "divides: tail residue classes are too large to compare");
    case TailAlignment::NoTails:
    case TailAlignment::RightOnly:
      break;
  }
  auto dev = deviation_primes(a, b);
  specials.insert(specials.end(), dev.begin(), dev.end());
  std::sort(specials.begin(), specials.end());
  specials.erase(std::unique(specials.begin(), specials.end()), specials.end());
  for (auto p : specials) {
    if (!a.exponent_of(p).leq(b.exponent_of(p))) return false;
  }
  return true;
}

Tri asymptotically_equivalent(const SteinitzNumber& a, const SteinitzNumber& b) {
  std::vector<std::uint64_t> specials;
  TailAlignment align = align_tails(a, b, &specials);
  switch (align) {
    case TailAlignment::LeftOnly:
    case TailAlignment::RightOnly:
      // One side deviates from the other on the whole tail stream, which is
      // infinite, so no finite multipliers can reconcile them.
      return Tri::False;
    case TailAlignment::LeftEscapes:
    case TailAlignment::RightEscapes:
      return Tri::False;
    case TailAlignment::SameClass:
    case TailAlignment::EqualSets:
      if (!(a.tail()->exponent == b.tail()->exponent)) return Tri::False;
      break;
    case TailAlignment::Undecidable:
      return Tri::Unknown;
    case TailAlignment::NoTails:
      break;
  }
  auto dev = deviation_primes(a, b);
  specials.insert(specials.end(), dev.begin(), dev.end());
  std::sort(specials.begin(), specials.end());
  specials.erase(std::unique(specials.begin(), specials.end()), specials.end());
  // Away from the specials the exponents agree exactly; at the specials any
  // finite disagreement is absorbed by a multiplier, so only the infinite
  // parts must match.
  for (auto p : specials) {
    if (a.exponent_of(p).is_infinite() != b.exponent_of(p).is_infinite()) {
      return Tri::False;
    }
  }
  return Tri::True;
}

bool PrimeSet::contains(std::uint64_t p) const {
  if (std::binary_search(explicit_primes.begin(), explicit_primes.end(), p)) return true;
  return stream && stream->contains(p);
}

PrimeSpectrumReport spectra(const SteinitzNumber& n) {
  PrimeSpectrumReport r;
  for (const auto& [p, e] : n.explicit_entries()) {
    r.pi.explicit_primes.push_back(p);
    if (e.is_infinite()) {
      r.pi_infty.explicit_primes.push_back(p);
    } else {
      r.pi_f.explicit_primes.push_back(p);
    }
  }
  if (n.has_tail()) {
    r.pi.stream = n.tail()->stream;
    if (n.tail()->exponent.is_infinite()) {
      r.pi_infty.stream = n.tail()->stream;
    } else {
      r.pi_f.stream = n.tail()->stream;
    }
  }
  r.pi_f_is_infinite = r.pi_f.stream ? Tri::True : Tri::False;
  return r;
}

}  // namespace steinitz
