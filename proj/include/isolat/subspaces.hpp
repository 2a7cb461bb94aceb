#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "isolat/lattice.hpp"

namespace isolat {

// Lattice of subspaces of the vector space {0,1}^n over the two-element
// field, n in {1,2,3}.  A subspace is encoded by the set of vectors it
// contains (bit v of the mask = vector v, including 0); meets intersect,
// joins span.  Labels list the nonzero vectors as bit strings: "{001,011,010}"
// sorted by vector value, the zero space being "{}".
inline FiniteLattice subspaces_f2(int n, std::size_t cap = kDefaultSizeCap) {
  if (n < 1 || n > 3) fail(Errc::dimension_out_of_range, "dimension must be 1, 2 or 3");
  const int nv = 1 << n;  // vectors
  auto closed = [&](std::uint32_t set) {
    for (int v = 0; v < nv; ++v)
      for (int w = 0; w < nv; ++w)
        if (((set >> v) & 1) && ((set >> w) & 1) && !((set >> (v ^ w)) & 1)) return false;
    return true;
  };
  std::vector<std::uint32_t> spaces;
  for (std::uint32_t set = 1; set < (1u << nv); set += 2)  // must contain vector 0
    if (closed(set)) spaces.push_back(set);
  std::sort(spaces.begin(), spaces.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  if (spaces.size() > cap) fail(Errc::size_cap_exceeded, "subspace lattice larger than size cap");

  auto span_of = [&](std::uint32_t set) {
    std::uint32_t s = set | 1u;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int v = 0; v < nv; ++v)
        for (int w = 0; w < nv; ++w)
          if (((s >> v) & 1) && ((s >> w) & 1) && !((s >> (v ^ w)) & 1)) {
            s |= 1u << (v ^ w);
            grew = true;
          }
    }
    return s;
  };
  auto vec_name = [&](int v) {
    std::string s(n, '0');
    for (int b = 0; b < n; ++b)
      if ((v >> b) & 1) s[n - 1 - b] = '1';
    return s;
  };

  const int m = static_cast<int>(spaces.size());
  std::unordered_map<std::uint32_t, int> id;
  for (int i = 0; i < m; ++i) id[spaces[i]] = i;
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    std::string s = "{";
    bool first = true;
    for (int v = 1; v < nv; ++v)
      if ((spaces[i] >> v) & 1) {
        if (!first) s += ',';
        s += vec_name(v);
        first = false;
      }
    labels[i] = s + "}";
  }
  BitMatrix leq(m);
  std::vector<std::uint16_t> meet(static_cast<std::size_t>(m) * m), join(meet);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if ((spaces[a] & ~spaces[b]) == 0) leq.set(a, b, true);
      meet[static_cast<std::size_t>(a) * m + b] = static_cast<std::uint16_t>(id.at(spaces[a] & spaces[b]));
      join[static_cast<std::size_t>(a) * m + b] = static_cast<std::uint16_t>(id.at(span_of(spaces[a] | spaces[b])));
    }
  return FiniteLattice::from_parts(
      Poset::from_leq_unchecked("Sub(F2^" + std::to_string(n) + ")", std::move(labels), std::move(leq)),
      std::move(meet), std::move(join));
}

}  // namespace isolat
