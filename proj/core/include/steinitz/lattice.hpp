#pragma once

#include <cstdint>
#include <vector>

#include "steinitz/factored.hpp"

namespace steinitz {

// A finite-index sublattice of Z^r, kept in column Hermite normal form:
// lower-triangular, positive diagonal, and every entry left of the diagonal
// reduced modulo the diagonal entry of its row. The canonical form makes
// equality structural and membership a forward substitution.
class Lattice {
 public:
  // Columns generate the lattice; they are HNF-reduced on construction and
  // must span full rank (finite index), else InvalidInput.
  static Lattice from_columns(std::size_t rank,
                              std::vector<std::vector<std::int64_t>> columns);
  static Lattice diagonal(std::vector<std::int64_t> d);
  static Lattice identity(std::size_t rank);

  std::size_t rank() const { return rank_; }
  // Column-major: cols()[j][i] is row i of column j.
  const std::vector<std::vector<std::int64_t>>& cols() const { return cols_; }

  // Index of the lattice in Z^r, i.e. |det|, in factored form.
  Factored index_in_ambient() const;

  bool contains_vector(const std::vector<std::int64_t>& v) const;
  bool contains_lattice(const Lattice& other) const;
  // Canonical coset representative with 0 <= v[i] < diagonal(i).
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;

  // Lattice generated by the columns of both operands.
  Lattice sum(const Lattice& other) const;

  // Invariant factors d1 | d2 | ... | dr of Z^r / L.
  std::vector<std::int64_t> smith_diagonal() const;

  bool operator==(const Lattice& o) const = default;

 private:
  Lattice() = default;
  std::size_t rank_ = 0;
  std::vector<std::vector<std::int64_t>> cols_;
};

}  // namespace steinitz
