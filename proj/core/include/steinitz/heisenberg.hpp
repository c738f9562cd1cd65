#pragma once

#include <cstdint>

namespace steinitz {

// Element (a, b, c) of the discrete Heisenberg group, with the law
//   (a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a b').
// This is the coordinate form of the upper unitriangular 3x3 integer
// matrices: a upper-left, b lower-right, c the corner.
struct Heis {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  bool operator==(const Heis& o) const = default;
  bool is_identity() const { return a == 0 && b == 0 && c == 0; }
};

Heis mul(const Heis& x, const Heis& y);
Heis inverse(const Heis& x);
// g x g^{-1} = (x.a, x.b, x.c + g.a x.b - g.b x.a).
Heis conjugate(const Heis& g, const Heis& x);
// [x, y] = x y x^{-1} y^{-1}; always central: (0, 0, x.a y.b - x.b y.a).
Heis commutator(const Heis& x, const Heis& y);

}  // namespace steinitz
