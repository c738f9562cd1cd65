#include "steinitz/finite_quotient.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_set>

#include "steinitz/errors.hpp"

namespace steinitz {

namespace {

std::int64_t pos_mod(__int128 v, std::int64_t m) {
  std::int64_t r = static_cast<std::int64_t>(v % m);
  return r < 0 ? r + m : r;
}

std::uint64_t checked_u64(const Factored& f, const char* what) {
  auto v = f.value_u64();
  if (!v) {
    fail(ErrorKind::ResourceBound,
         std::string(what) + ": " + f.factor_string() + " exceeds 64-bit range");
  }
  return *v;
}

}  // namespace

bool ElementSet::contains_code(std::uint64_t c) const {
  return std::binary_search(codes.begin(), codes.end(), c);
}

FiniteQuotient FiniteQuotient::heisenberg_mod(std::int64_t a, std::int64_t b,
                                              std::int64_t c) {
  if (a <= 0 || b <= 0 || c <= 0) {
    fail(ErrorKind::InvalidInput, "quotient moduli must be positive");
  }
  if (a % c != 0 || b % c != 0) {
    fail(ErrorKind::NotNormal,
         "heisenberg quotient requires the central modulus to divide both "
         "abelianized moduli");
  }
  constexpr std::int64_t kModBound = std::int64_t(1) << 31;
  if (a >= kModBound || b >= kModBound || c >= kModBound) {
    fail(ErrorKind::ResourceBound, "quotient moduli exceed element arithmetic range");
  }
  FiniteQuotient q;
  q.kind_ = Kind::Heisenberg;
  q.mod_ = {a, b, c};
  return q;
}

FiniteQuotient FiniteQuotient::abelian_mod(Lattice l) {
  FiniteQuotient q;
  q.kind_ = Kind::Abelian;
  q.lat_ = std::move(l);
  return q;
}

std::size_t FiniteQuotient::rank() const {
  return kind_ == Kind::Heisenberg ? 3 : lat_->rank();
}

const Lattice& FiniteQuotient::lattice() const {
  if (kind_ != Kind::Abelian) {
    fail(ErrorKind::InvariantViolation, "lattice() on a non-abelian quotient");
  }
  return *lat_;
}

Factored FiniteQuotient::order() const {
  if (kind_ == Kind::Heisenberg) {
    return Factored::from_integer(mod_[0])
        .times(Factored::from_integer(mod_[1]))
        .times(Factored::from_integer(mod_[2]));
  }
  return lat_->index_in_ambient();
}

QElem FiniteQuotient::identity_elem() const {
  return QElem(rank(), 0);
}

QElem FiniteQuotient::canon(QElem v) const {
  if (v.size() != rank()) fail(ErrorKind::InvalidInput, "element rank mismatch");
  if (kind_ == Kind::Heisenberg) {
    for (int i = 0; i < 3; ++i) v[i] = pos_mod(v[i], mod_[i]);
    return v;
  }
  v = lat_->reduce(std::move(v));
  return v;
}

QElem FiniteQuotient::mul(const QElem& x, const QElem& y) const {
  if (kind_ == Kind::Heisenberg) {
    return QElem{pos_mod(__int128(x[0]) + y[0], mod_[0]),
                 pos_mod(__int128(x[1]) + y[1], mod_[1]),
                 pos_mod(__int128(x[2]) + y[2] + __int128(x[0]) * y[1], mod_[2])};
  }
  QElem z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return lat_->reduce(std::move(z));
}

QElem FiniteQuotient::inv(const QElem& x) const {
  if (kind_ == Kind::Heisenberg) {
    return QElem{pos_mod(-__int128(x[0]), mod_[0]), pos_mod(-__int128(x[1]), mod_[1]),
                 pos_mod(-__int128(x[2]) + __int128(x[0]) * x[1], mod_[2])};
  }
  QElem z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
  return lat_->reduce(std::move(z));
}

QElem FiniteQuotient::conj(const QElem& g, const QElem& x) const {
  if (kind_ == Kind::Heisenberg) {
    return QElem{x[0], x[1],
                 pos_mod(__int128(x[2]) + __int128(g[0]) * x[1] - __int128(g[1]) * x[0],
                         mod_[2])};
  }
  return x;
}

bool FiniteQuotient::is_identity(const QElem& x) const {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

std::uint64_t FiniteQuotient::encode(const QElem& x) const {
  __int128 code = 0;
  if (kind_ == Kind::Heisenberg) {
    code = (__int128(x[0]) * mod_[1] + x[1]) * mod_[2] + x[2];
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      code = code * lat_->cols()[i][i] + x[i];
    }
  }
  if (code < 0 || code > __int128(~0ull)) {
    fail(ErrorKind::ResourceBound, "quotient too large to encode elements");
  }
  return static_cast<std::uint64_t>(code);
}

QElem FiniteQuotient::decode(std::uint64_t code) const {
  QElem x(rank());
  if (kind_ == Kind::Heisenberg) {
    x[2] = static_cast<std::int64_t>(code % mod_[2]);
    code /= mod_[2];
    x[1] = static_cast<std::int64_t>(code % mod_[1]);
    x[0] = static_cast<std::int64_t>(code / mod_[1]);
  } else {
    for (std::size_t i = x.size(); i-- > 0;) {
      std::int64_t d = lat_->cols()[i][i];
      x[i] = static_cast<std::int64_t>(code % d);
      code /= d;
    }
  }
  return x;
}

std::vector<QElem> FiniteQuotient::elements(std::uint64_t bound) const {
  std::uint64_t n = checked_u64(order(), "quotient order");
  if (n > bound) {
    fail(ErrorKind::ResourceBound, "quotient order " + order().decimal() +
                                       " exceeds the enumeration bound " +
                                       std::to_string(bound));
  }
  std::vector<QElem> out;
  out.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) out.push_back(decode(c));
  return out;
}

bool FiniteQuotient::can_project_from(const FiniteQuotient& finer) const {
  if (kind_ != finer.kind_) return false;
  if (kind_ == Kind::Heisenberg) {
    for (int i = 0; i < 3; ++i) {
      if (finer.mod_[i] % mod_[i] != 0) return false;
    }
    return true;
  }
  return lat_->rank() == finer.lat_->rank() && lat_->contains_lattice(*finer.lat_);
}

QElem FiniteQuotient::project_from(const FiniteQuotient& finer, const QElem& x) const {
  if (!can_project_from(finer)) {
    fail(ErrorKind::InvalidInput, "no natural projection between these quotients");
  }
  return canon(x);
}

bool FiniteQuotient::subgroup_member(const QuotientSubgroup& s, const QElem& x) const {
  if (kind_ == Kind::Heisenberg) {
    for (int i = 0; i < 3; ++i) {
      if (x[i] % s.divisors[i] != 0) return false;
    }
    return true;
  }
  if (!s.lat) fail(ErrorKind::InvalidInput, "abelian subgroup handle has no lattice");
  return s.lat->contains_vector(x);
}

ElementSet FiniteQuotient::enumerate_subgroup(const QuotientSubgroup& s,
                                              std::uint64_t bound) const {
  std::uint64_t n = checked_u64(s.order, "subgroup order");
  if (n > bound) {
    fail(ErrorKind::ResourceBound, "subgroup order " + s.order.decimal() +
                                       " exceeds the enumeration bound " +
                                       std::to_string(bound));
  }
  ElementSet out;
  out.codes.reserve(n);
  if (kind_ == Kind::Heisenberg) {
    for (std::int64_t a = 0; a < mod_[0]; a += s.divisors[0]) {
      for (std::int64_t b = 0; b < mod_[1]; b += s.divisors[1]) {
        for (std::int64_t c = 0; c < mod_[2]; c += s.divisors[2]) {
          out.codes.push_back(encode({a, b, c}));
        }
      }
    }
  } else {
    // Abelian subgroup images have no product structure in HNF coordinates,
    // so filter the whole quotient; this path therefore needs the full
    // quotient within the bound, not just the subgroup.
    for (const auto& e : elements(bound)) {
      if (subgroup_member(s, e)) out.codes.push_back(encode(e));
    }
  }
  std::sort(out.codes.begin(), out.codes.end());
  if (out.codes.size() != n) {
    fail(ErrorKind::InvariantViolation,
         "enumerated subgroup size disagrees with its closed-form order");
  }
  return out;
}

ElementSet FiniteQuotient::closure(const std::vector<QElem>& gens,
                                   std::uint64_t bound) const {
  std::unordered_set<std::uint64_t> seen;
  std::deque<QElem> frontier;
  std::vector<QElem> step = gens;
  for (const auto& g : gens) step.push_back(inv(g));
  seen.insert(encode(identity_elem()));
  frontier.push_back(identity_elem());
  while (!frontier.empty()) {
    QElem x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : step) {
      QElem y = mul(x, g);
      if (seen.insert(encode(y)).second) {
        if (seen.size() > bound) {
          fail(ErrorKind::ResourceBound, "subgroup closure exceeds the enumeration bound");
        }
        frontier.push_back(std::move(y));
      }
    }
  }
  ElementSet out;
  out.codes.assign(seen.begin(), seen.end());
  std::sort(out.codes.begin(), out.codes.end());
  return out;
}

FiniteQuotient quotient(const GroupDescriptor& g, const SubgroupDescriptor& n) {
  validate_subgroup(g, n);
  if (!is_normal(n)) {
    fail(ErrorKind::NotNormal,
         "quotient requires a normal subgroup; got " + subgroup_to_string(n));
  }
  if (const auto* h = std::get_if<HeisenbergScales>(&n)) {
    constexpr std::uint64_t kModBound = std::uint64_t(1) << 31;
    auto va = h->m.value_u64(), vb = h->n.value_u64(), vc = h->p.value_u64();
    if (!va || !vb || !vc || *va >= kModBound || *vb >= kModBound || *vc >= kModBound) {
      fail(ErrorKind::ResourceBound,
           "quotient scales exceed element arithmetic range: " + subgroup_to_string(n));
    }
    return FiniteQuotient::heisenberg_mod(static_cast<std::int64_t>(*va),
                                          static_cast<std::int64_t>(*vb),
                                          static_cast<std::int64_t>(*vc));
  }
  if (const auto* l = std::get_if<Lattice>(&n)) {
    return FiniteQuotient::abelian_mod(*l);
  }
  return FiniteQuotient::abelian_mod(diagonal_to_lattice(std::get<AbelianDiagonal>(n)));
}

QuotientSubgroup image_in_quotient(const FiniteQuotient& q, const SubgroupDescriptor& sub) {
  QuotientSubgroup out;
  if (q.kind() == FiniteQuotient::Kind::Heisenberg) {
    const auto* h = std::get_if<HeisenbergScales>(&sub);
    if (!h) fail(ErrorKind::InvalidInput, "subgroup kind does not match the quotient");
    const auto& mod = q.moduli();
    Factored fm[3] = {Factored::from_integer(mod[0]), Factored::from_integer(mod[1]),
                      Factored::from_integer(mod[2])};
    const Factored* scale[3] = {&h->m, &h->n, &h->p};
    Factored ord = Factored::one();
    for (int i = 0; i < 3; ++i) {
      Factored g = fm[i].gcd(*scale[i]);
      out.divisors[i] = static_cast<std::int64_t>(checked_u64(g, "image divisor"));
      ord = ord.times(fm[i].divide_exact(g));
    }
    out.order = ord;
    return out;
  }
  Lattice inner = [&] {
    if (const auto* l = std::get_if<Lattice>(&sub)) return *l;
    if (const auto* d = std::get_if<AbelianDiagonal>(&sub)) return diagonal_to_lattice(*d);
    fail(ErrorKind::InvalidInput, "subgroup kind does not match the quotient");
  }();
  Lattice span = inner.sum(q.lattice());
  out.order = q.lattice().index_in_ambient().divide_exact(span.index_in_ambient());
  out.lat = std::move(span);
  return out;
}

QElem project_element(const FiniteQuotient& q, const std::vector<std::int64_t>& g) {
  return q.canon(g);
}

ElementSet conjugate_set(const FiniteQuotient& q, const ElementSet& s, const QElem& g) {
  ElementSet out;
  out.codes.reserve(s.codes.size());
  for (auto code : s.codes) {
    out.codes.push_back(q.encode(q.conj(g, q.decode(code))));
  }
  std::sort(out.codes.begin(), out.codes.end());
  return out;
}

ElementSet brute_force_core_of_set(const FiniteQuotient& q, const ElementSet& members) {
  // Conjugation orbits are explored from the whole-group generators; an
  // orbit that stays inside the subgroup is core, and one escaping element
  // disqualifies the entire orbit.
  std::vector<QElem> gens;
  std::size_t r = q.rank();
  for (std::size_t i = 0; i < r; ++i) {
    QElem g(r, 0);
    g[i] = 1;
    gens.push_back(std::move(g));
  }
  std::vector<std::uint64_t> core;
  std::unordered_set<std::uint64_t> decided;
  for (auto code : members.codes) {
    if (decided.count(code)) continue;
    std::vector<std::uint64_t> orbit{code};
    std::unordered_set<std::uint64_t> seen{code};
    bool inside = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      QElem x = q.decode(orbit[i]);
      for (const auto& g : gens) {
        for (const QElem& y : {q.conj(g, x), q.conj(q.inv(g), x)}) {
          std::uint64_t cy = q.encode(y);
          if (!seen.insert(cy).second) continue;
          if (!members.contains_code(cy)) inside = false;
          orbit.push_back(cy);
        }
      }
      if (!inside) break;
    }
    for (auto c : orbit) decided.insert(c);
    if (inside) {
      for (auto c : orbit) core.push_back(c);
    }
  }
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
  ElementSet out;
  out.codes = std::move(core);
  return out;
}

ElementSet brute_force_core_oracle(const FiniteQuotient& q, const QuotientSubgroup& sub,
                                   std::uint64_t bound) {
  return brute_force_core_of_set(q, q.enumerate_subgroup(sub, bound));
}

std::vector<SylowFactor> sylow_decompose(const FiniteQuotient& q) {
  std::vector<SylowFactor> out;
  if (q.kind() == FiniteQuotient::Kind::Heisenberg) {
    const auto& mod = q.moduli();
    Factored whole = q.order();
    for (const auto& [p, e] : whole.entries()) {
      std::int64_t parts[3];
      for (int i = 0; i < 3; ++i) {
        std::int64_t pp = 1, m = mod[i];
        while (m % static_cast<std::int64_t>(p) == 0) {
          pp *= static_cast<std::int64_t>(p);
          m /= static_cast<std::int64_t>(p);
        }
        parts[i] = pp;
      }
      out.push_back({p, FiniteQuotient::heisenberg_mod(parts[0], parts[1], parts[2])});
    }
    return out;
  }
  const Lattice& l = q.lattice();
  for (std::size_t j = 0; j < l.rank(); ++j) {
    for (std::size_t i = 0; i < l.rank(); ++i) {
      if (i != j && l.cols()[j][i] != 0) {
        fail(ErrorKind::InvalidInput,
             "sylow decomposition of an abelian quotient requires a diagonal lattice");
      }
    }
  }
  Factored whole = q.order();
  for (const auto& [p, e] : whole.entries()) {
    std::vector<std::int64_t> diag(l.rank());
    for (std::size_t i = 0; i < l.rank(); ++i) {
      std::int64_t pp = 1, m = l.cols()[i][i];
      while (m % static_cast<std::int64_t>(p) == 0) {
        pp *= static_cast<std::int64_t>(p);
        m /= static_cast<std::int64_t>(p);
      }
      diag[i] = pp;
    }
    out.push_back({p, FiniteQuotient::abelian_mod(Lattice::diagonal(std::move(diag)))});
  }
  return out;
}

QElem project_to_sylow(const SylowFactor& f, const QElem& x) {
  return f.part.canon(x);
}

QuotientSubgroup sylow_part_of_subgroup(const SylowFactor& f, const QuotientSubgroup& s) {
  if (f.part.kind() != FiniteQuotient::Kind::Heisenberg) {
    fail(ErrorKind::InvalidInput, "sylow subgroup images are Heisenberg-only");
  }
  QuotientSubgroup out;
  Factored ord = Factored::one();
  for (int i = 0; i < 3; ++i) {
    std::int64_t p = static_cast<std::int64_t>(f.prime);
    std::int64_t dp = 1, d = s.divisors[i];
    while (d % p == 0) {
      dp *= p;
      d /= p;
    }
    std::int64_t m = f.part.moduli()[i];
    dp = std::min(dp, m);  // the divisor's p-part never exceeds the modulus p-part
    out.divisors[i] = dp;
    ord = ord.times(Factored::from_integer(m / dp));
  }
  out.order = ord;
  return out;
}

}  // namespace steinitz
