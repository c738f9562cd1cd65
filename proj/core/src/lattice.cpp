#include "steinitz/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "steinitz/errors.hpp"

namespace steinitz {

namespace {

constexpr std::int64_t kEntryBound = std::int64_t(1) << 62;

std::int64_t checked(__int128 v, const char* what) {
  if (v >= __int128(kEntryBound) || v <= -__int128(kEntryBound)) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": integer overflow in lattice arithmetic");
  }
  return static_cast<std::int64_t>(v);
}

// col -= q * other, overflow checked.
void axpy(std::vector<std::int64_t>& col, std::int64_t q,
          const std::vector<std::int64_t>& other) {
  for (std::size_t i = 0; i < col.size(); ++i) {
    col[i] = checked(__int128(col[i]) - __int128(q) * other[i], "column op");
  }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// In-place column HNF. Returns false if the columns do not span full rank.
bool hnf_reduce(std::size_t rank, std::vector<std::vector<std::int64_t>>& cols) {
  std::size_t pivot = 0;
  for (std::size_t row = 0; row < rank && pivot < cols.size(); ++row) {
    for (;;) {
      std::size_t best = cols.size();
      for (std::size_t j = pivot; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        if (best == cols.size() ||
            std::llabs(cols[j][row]) < std::llabs(cols[best][row])) {
          best = j;
        }
      }
      if (best == cols.size()) break;  // row is all zero from pivot on
      std::swap(cols[pivot], cols[best]);
      bool cleared = true;
      for (std::size_t j = pivot + 1; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        std::int64_t q = cols[j][row] / cols[pivot][row];
        axpy(cols[j], q, cols[pivot]);
        if (cols[j][row] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (pivot < cols.size() && cols[pivot][row] != 0) {
      if (cols[pivot][row] < 0) {
        for (auto& x : cols[pivot]) x = checked(-__int128(x), "negate");
      }
      // Reduce the entries of this row in all earlier pivot columns into
      // [0, diagonal).
      for (std::size_t k = 0; k < pivot; ++k) {
        std::int64_t q = floor_div(cols[k][row], cols[pivot][row]);
        if (q != 0) axpy(cols[k], q, cols[pivot]);
      }
      ++pivot;
    } else {
      return false;  // no pivot for this row
    }
  }
  if (pivot < rank) return false;
  cols.resize(rank);
  return true;
}

}  // namespace

Lattice Lattice::from_columns(std::size_t rank,
                              std::vector<std::vector<std::int64_t>> columns) {
  if (rank == 0) fail(ErrorKind::InvalidInput, "lattice rank must be positive");
  for (const auto& c : columns) {
    if (c.size() != rank) {
      fail(ErrorKind::InvalidInput, "lattice column length does not match rank");
    }
    for (auto x : c) {
      if (x >= kEntryBound || x <= -kEntryBound) {
        fail(ErrorKind::InvalidInput, "lattice entry exceeds the 2^62 bound");
      }
    }
  }
  if (!hnf_reduce(rank, columns)) {
    fail(ErrorKind::InvalidInput,
         "lattice columns do not span full rank (infinite index)");
  }
  Lattice l;
  l.rank_ = rank;
  l.cols_ = std::move(columns);
  return l;
}

Lattice Lattice::diagonal(std::vector<std::int64_t> d) {
  std::size_t r = d.size();
  std::vector<std::vector<std::int64_t>> cols(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    if (d[i] <= 0) fail(ErrorKind::InvalidInput, "diagonal lattice entries must be positive");
    cols[i][i] = d[i];
  }
  return from_columns(r, std::move(cols));
}

Lattice Lattice::identity(std::size_t rank) {
  return diagonal(std::vector<std::int64_t>(rank, 1));
}

Factored Lattice::index_in_ambient() const {
  Factored f = Factored::one();
  for (std::size_t i = 0; i < rank_; ++i) {
    f = f.times(Factored::from_integer(static_cast<std::uint64_t>(cols_[i][i])));
  }
  return f;
}

bool Lattice::contains_vector(const std::vector<std::int64_t>& v) const {
  if (v.size() != rank_) fail(ErrorKind::InvalidInput, "vector length does not match rank");
  std::vector<std::int64_t> w = v;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (w[i] % cols_[i][i] != 0) return false;
    std::int64_t t = w[i] / cols_[i][i];
    if (t != 0) axpy(w, t, cols_[i]);
  }
  return true;
}

bool Lattice::contains_lattice(const Lattice& other) const {
  if (other.rank_ != rank_) return false;
  for (const auto& c : other.cols_) {
    if (!contains_vector(c)) return false;
  }
  return true;
}

std::vector<std::int64_t> Lattice::reduce(std::vector<std::int64_t> v) const {
  if (v.size() != rank_) fail(ErrorKind::InvalidInput, "vector length does not match rank");
  for (std::size_t i = 0; i < rank_; ++i) {
    std::int64_t t = floor_div(v[i], cols_[i][i]);
    if (t != 0) axpy(v, t, cols_[i]);
  }
  return v;
}

Lattice Lattice::sum(const Lattice& other) const {
  if (other.rank_ != rank_) fail(ErrorKind::InvalidInput, "lattice rank mismatch in sum");
  std::vector<std::vector<std::int64_t>> cols = cols_;
  cols.insert(cols.end(), other.cols_.begin(), other.cols_.end());
  return from_columns(rank_, std::move(cols));
}

std::vector<std::int64_t> Lattice::smith_diagonal() const {
  // Standard Smith reduction by alternating row and column eliminations.
  std::size_t r = rank_;
  std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < r; ++i) m[i][j] = cols_[j][i];
  }
  auto swap_rows = [&](std::size_t a, std::size_t b) { std::swap(m[a], m[b]); };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < r; ++i) std::swap(m[i][a], m[i][b]);
  };
  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      std::size_t bi = r, bj = r;
      for (std::size_t i = t; i < r; ++i) {
        for (std::size_t j = t; j < r; ++j) {
          if (m[i][j] != 0 &&
              (bi == r || std::llabs(m[i][j]) < std::llabs(m[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == r) {
        fail(ErrorKind::InvariantViolation,
             "smith reduction lost full rank on a finite-index lattice");
      }
      if (bi != t) swap_rows(bi, t);
      if (bj != t) swap_cols(bj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (m[i][t] == 0) continue;
        std::int64_t q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < r; ++j) {
          m[i][j] = checked(__int128(m[i][j]) - __int128(q) * m[t][j], "smith row");
        }
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < r; ++j) {
        if (m[t][j] == 0) continue;
        std::int64_t q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < r; ++i) {
          m[i][j] = checked(__int128(m[i][j]) - __int128(q) * m[i][t], "smith col");
        }
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Pivot must divide every remaining entry; if not, fold the offender
      // into the pivot row and repeat.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < r && divides_all; ++i) {
        for (std::size_t j = t + 1; j < r; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t jj = t; jj < r; ++jj) {
              m[t][jj] = checked(__int128(m[t][jj]) + __int128(m[i][jj]), "smith fold");
            }
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
    if (m[t][t] < 0) {
      for (std::size_t j = t; j < r; ++j) m[t][j] = -m[t][j];
    }
  }
  std::vector<std::int64_t> d(r);
  for (std::size_t i = 0; i < r; ++i) d[i] = m[i][i];
  return d;
}

}  // namespace steinitz
