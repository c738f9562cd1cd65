#include "steinitz/heisenberg.hpp"

#include "steinitz/errors.hpp"

namespace steinitz {

namespace {

constexpr std::int64_t kBound = std::int64_t(1) << 62;

std::int64_t checked(__int128 v) {
  if (v >= __int128(kBound) || v <= -__int128(kBound)) {
    fail(ErrorKind::InvalidInput, "heisenberg coordinate overflow");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Heis mul(const Heis& x, const Heis& y) {
  return Heis{checked(__int128(x.a) + y.a), checked(__int128(x.b) + y.b),
              checked(__int128(x.c) + __int128(y.c) + __int128(x.a) * y.b)};
}

Heis inverse(const Heis& x) {
  return Heis{checked(-__int128(x.a)), checked(-__int128(x.b)),
              checked(-__int128(x.c) + __int128(x.a) * x.b)};
}

Heis conjugate(const Heis& g, const Heis& x) {
  return Heis{x.a, x.b,
              checked(__int128(x.c) + __int128(g.a) * x.b - __int128(g.b) * x.a)};
}

Heis commutator(const Heis& x, const Heis& y) {
  return Heis{0, 0, checked(__int128(x.a) * y.b - __int128(x.b) * y.a)};
}

}  // namespace steinitz
