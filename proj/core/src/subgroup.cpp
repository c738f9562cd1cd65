#include "steinitz/subgroup.hpp"

#include <cstdlib>

#include "steinitz/errors.hpp"

namespace steinitz {

void validate_subgroup(const GroupDescriptor& g, const SubgroupDescriptor& s) {
  if (const auto* h = std::get_if<HeisenbergScales>(&s)) {
    if (g.kind != GroupDescriptor::Kind::Heisenberg) {
      fail(ErrorKind::InvalidInput, "scale subgroup given for a non-Heisenberg group");
    }
    if (!h->p.divides(h->m.times(h->n))) {
      fail(ErrorKind::InvalidInput,
           "scales (" + h->m.factor_string() + ", " + h->n.factor_string() + ", " +
               h->p.factor_string() +
               ") do not form a subgroup: p must divide m*n for closure");
    }
    return;
  }
  if (g.kind != GroupDescriptor::Kind::Abelian) {
    fail(ErrorKind::InvalidInput, "lattice subgroup given for a non-abelian group");
  }
  std::size_t r = std::holds_alternative<Lattice>(s)
                      ? std::get<Lattice>(s).rank()
                      : std::get<AbelianDiagonal>(s).size();
  if (r != g.rank) {
    fail(ErrorKind::InvalidInput, "lattice rank does not match the ambient group rank");
  }
  if (r == 0) fail(ErrorKind::InvalidInput, "abelian group rank must be positive");
}

Factored index(const SubgroupDescriptor& s) {
  if (const auto* h = std::get_if<HeisenbergScales>(&s)) {
    return h->m.times(h->n).times(h->p);
  }
  if (const auto* l = std::get_if<Lattice>(&s)) {
    return l->index_in_ambient();
  }
  Factored f = Factored::one();
  for (const auto& d : std::get<AbelianDiagonal>(s)) f = f.times(d);
  return f;
}

bool is_normal(const SubgroupDescriptor& s) {
  if (const auto* h = std::get_if<HeisenbergScales>(&s)) {
    // Conjugation shifts the central coordinate by multiples of m and n, so
    // the subgroup is preserved iff p divides both.
    return h->p.divides(h->m) && h->p.divides(h->n);
  }
  return true;
}

SubgroupDescriptor normal_core(const SubgroupDescriptor& s) {
  if (const auto* h = std::get_if<HeisenbergScales>(&s)) {
    return HeisenbergScales{h->m.lcm(h->p), h->n.lcm(h->p), h->p};
  }
  return s;
}

bool subgroup_contains(const SubgroupDescriptor& outer, const SubgroupDescriptor& inner) {
  bool heis_o = std::holds_alternative<HeisenbergScales>(outer);
  bool heis_i = std::holds_alternative<HeisenbergScales>(inner);
  if (heis_o != heis_i) {
    fail(ErrorKind::InvalidInput, "containment query across different group kinds");
  }
  if (heis_o) {
    const auto& ho = std::get<HeisenbergScales>(outer);
    const auto& hi = std::get<HeisenbergScales>(inner);
    return ho.m.divides(hi.m) && ho.n.divides(hi.n) && ho.p.divides(hi.p);
  }
  if (std::holds_alternative<AbelianDiagonal>(outer) &&
      std::holds_alternative<AbelianDiagonal>(inner)) {
    const auto& d_o = std::get<AbelianDiagonal>(outer);
    const auto& d_i = std::get<AbelianDiagonal>(inner);
    if (d_o.size() != d_i.size()) {
      fail(ErrorKind::InvalidInput, "containment query across different ranks");
    }
    for (std::size_t i = 0; i < d_o.size(); ++i) {
      if (!d_o[i].divides(d_i[i])) return false;
    }
    return true;
  }
  // At least one general lattice involved: compare in lattice form.
  const auto to_lat = [](const SubgroupDescriptor& s) {
    if (const auto* l = std::get_if<Lattice>(&s)) return *l;
    return diagonal_to_lattice(std::get<AbelianDiagonal>(s));
  };
  return to_lat(outer).contains_lattice(to_lat(inner));
}

bool subgroup_equal(const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
  return subgroup_contains(a, b) && subgroup_contains(b, a);
}

Factored index_between(const SubgroupDescriptor& outer, const SubgroupDescriptor& inner) {
  if (!subgroup_contains(outer, inner)) {
    fail(ErrorKind::NestingViolation,
         "index_between: " + subgroup_to_string(inner) + " is not contained in " +
             subgroup_to_string(outer));
  }
  return index(inner).divide_exact(index(outer));
}

bool contains_element(const SubgroupDescriptor& s, const std::vector<std::int64_t>& v) {
  if (const auto* h = std::get_if<HeisenbergScales>(&s)) {
    if (v.size() != 3) fail(ErrorKind::InvalidInput, "heisenberg element needs 3 coordinates");
    return factored_divides_int(h->m, v[0]) && factored_divides_int(h->n, v[1]) &&
           factored_divides_int(h->p, v[2]);
  }
  if (const auto* l = std::get_if<Lattice>(&s)) {
    return l->contains_vector(v);
  }
  const auto& d = std::get<AbelianDiagonal>(s);
  if (v.size() != d.size()) fail(ErrorKind::InvalidInput, "element rank mismatch");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!factored_divides_int(d[i], v[i])) return false;
  }
  return true;
}

bool factored_divides_int(const Factored& d, std::int64_t v) {
  if (v == 0) return true;
  auto dv = d.value_u64();
  // A divisor too large for 64 bits exceeds |v| and divides nothing else.
  if (!dv) return false;
  std::uint64_t a = static_cast<std::uint64_t>(v < 0 ? -v : v);
  return a % *dv == 0;
}

Lattice diagonal_to_lattice(const AbelianDiagonal& d) {
  std::vector<std::int64_t> diag;
  diag.reserve(d.size());
  for (const auto& f : d) {
    auto v = f.value_u64();
    if (!v || *v > std::uint64_t(1) << 62) {
      fail(ErrorKind::ResourceBound,
           "diagonal entry " + f.factor_string() + " exceeds element-level arithmetic range");
    }
    diag.push_back(static_cast<std::int64_t>(*v));
  }
  return Lattice::diagonal(std::move(diag));
}

std::string subgroup_to_string(const SubgroupDescriptor& s) {
  if (const auto* h = std::get_if<HeisenbergScales>(&s)) {
    return "(" + h->m.factor_string() + ", " + h->n.factor_string() + ", " +
           h->p.factor_string() + ")";
  }
  if (const auto* l = std::get_if<Lattice>(&s)) {
    std::string out = "lattice[";
    for (std::size_t j = 0; j < l->rank(); ++j) {
      if (j) out += "; ";
      for (std::size_t i = 0; i < l->rank(); ++i) {
        if (i) out += ",";
        out += std::to_string(l->cols()[j][i]);
      }
    }
    return out + "]";
  }
  std::string out = "diag(";
  const auto& d = std::get<AbelianDiagonal>(s);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ", ";
    out += d[i].factor_string();
  }
  return out + ")";
}

}  // namespace steinitz
