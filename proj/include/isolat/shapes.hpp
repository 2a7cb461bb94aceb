#pragma once

#include <string>
#include <vector>

#include "isolat/lattice.hpp"

namespace isolat {

// n-element chain labeled "0" < "1" < ... < "n-1"
inline FiniteLattice chain(int n, std::string name = "") {
  if (n < 1) fail(Errc::invalid_input, "chain needs at least one element");
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  BitMatrix leq(n);
  std::vector<std::uint16_t> meet(static_cast<std::size_t>(n) * n), join(meet);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a <= b) leq.set(a, b, true);
      meet[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(std::min(a, b));
      join[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(std::max(a, b));
    }
  if (name.empty()) name = "chain" + std::to_string(n);
  return FiniteLattice::from_parts(Poset::from_leq_unchecked(std::move(name), std::move(labels), std::move(leq)),
                                   std::move(meet), std::move(join));
}

// three atoms between shared bottom and top
inline FiniteLattice m3() {
  Poset p = Poset::from_covers("M3", {"0", "a", "b", "c", "1"},
                               {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
  return lattice_from_leq(p);
}

// pentagon: 0 < a < c < 1 and 0 < b < 1, b incomparable to a and c
inline FiniteLattice n5() {
  Poset p = Poset::from_covers("N5", {"0", "a", "b", "c", "1"},
                               {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}});
  return lattice_from_leq(p);
}

// direct power of the 2-chain; k=2 gives the 2x2 diamond
inline FiniteLattice boolean_cube(int k) {
  std::vector<FiniteLattice> factors(k, chain(2));
  FiniteLattice c = product(factors);
  c.rename("2^" + std::to_string(k));
  return c;
}

inline FiniteLattice two_by_two() { return boolean_cube(2); }

}  // namespace isolat
