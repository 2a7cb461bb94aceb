#pragma once

#include <span>
#include <vector>

#include "isolat/map.hpp"

namespace isolat {

// Extend an isotone map, defined on a subposet P of Q, to all of Q: each
// q maps to the join of the images of the P-elements below it, with the
// empty join landing on the bottom of M.  The result restricts to the
// original map and is isotone on Q.
inline MonotoneMap complete_extension(const Carrier& q, std::span<const int> p_elems,
                                      std::span<const int> p_values, const Carrier& cod) {
  const FiniteLattice& m = cod.lattice();
  if (p_elems.size() != p_values.size())
    fail(Errc::invalid_input, "element/value lists differ in length");
  const Poset& Q = q.order();
  for (int e : p_elems)
    if (e < 0 || e >= Q.size()) fail(Errc::invalid_input, "subposet element out of range");
  for (int v : p_values)
    if (v < 0 || v >= m.size()) fail(Errc::invalid_input, "value out of codomain range");
  for (std::size_t i = 0; i < p_elems.size(); ++i)
    for (std::size_t j = 0; j < p_elems.size(); ++j)
      if (Q.leq(p_elems[i], p_elems[j]) && !m.leq(p_values[i], p_values[j]))
        fail(Errc::not_isotone_input, "map to extend is not isotone",
             {Q.label(p_elems[i]), Q.label(p_elems[j])});

  std::vector<int> img(Q.size());
  for (int x = 0; x < Q.size(); ++x) {
    int acc = m.bottom();
    for (std::size_t i = 0; i < p_elems.size(); ++i)
      if (Q.leq(p_elems[i], x)) acc = m.join(acc, p_values[i]);
    img[x] = acc;
  }
  MonotoneMap out = make_map("extension", q, cod, std::move(img));
  map_check(out, MapMode::isotone);
  return out;
}

}  // namespace isolat
