#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "isolat/constructions.hpp"
#include "isolat/errors.hpp"
#include "isolat/extend.hpp"
#include "isolat/fb.hpp"
#include "isolat/jsl.hpp"
#include "isolat/lattice.hpp"
#include "isolat/map.hpp"

namespace isolat {

// ---- extending isotone maps to the join-semilattice coproduct -------------
//
// Send a formal join to the join of the images of its picked elements.  The
// φ_i need only be isotone; the result is isotone (not a join-hom in
// general) and restricts to φ_i on each embedded factor.

inline MonotoneMap jsl_product_extension(const JslFreeProduct& fp, const std::vector<MonotoneMap>& phis) {
  if (phis.empty()) fail(Errc::empty_list, "need at least one map");
  for (const auto& p : phis) {
    if (!p.cod.has_join()) fail(Errc::invalid_input, "codomain needs joins");
    MapCheck c = map_check(p, MapMode::isotone);
    if (!c.ok) fail(Errc::not_isotone_input, "input map is not isotone", {c.witness[0], c.witness[1]});
  }
  if (phis.size() != fp.embeddings.size()) fail(Errc::invalid_input, "one map per factor required");
  const Carrier& cod = phis.front().cod;
  Carrier dom(fp.result);
  std::vector<int> img(fp.picks.size());
  for (std::size_t e = 0; e < fp.picks.size(); ++e) {
    int acc = -1;
    for (std::size_t i = 0; i < phis.size(); ++i) {
      const int x = fp.picks[e][i];
      if (x < 0) continue;
      const int v = phis[i].img[x];
      acc = acc < 0 ? v : cod.join(acc, v);
    }
    img[e] = acc;
  }
  MonotoneMap out = make_map("formal_join_image", dom, cod, std::move(img));
  if (!map_check(out, MapMode::isotone).ok) fail(Errc::invalid_input, "internal: extension is not isotone");
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t x = 0; x < fp.embeddings[i].size(); ++x)
      if (out.img[fp.embeddings[i][x]] != phis[i].img[x])
        fail(Errc::invalid_input, "internal: extension does not restrict to factor map");
  return out;
}

// ---- join-homs with a common lower bound ----------------------------------
//
// When every φ_i is a join-hom and some e ∈ M sits under all their values,
// adjoining a fresh bottom to each factor (sent to e) makes the coordinate
// maps join-homs on the product, and so is their pointwise join.

inline FactorizationResult bounded_below_extension(const std::vector<MonotoneMap>& phis, int e,
                                                   std::size_t cap = kDefaultSizeCap) {
  if (phis.empty()) fail(Errc::empty_index_set, "need at least one factor");
  const FiniteLattice& m = detail::common_codomain(phis);
  if (e < 0 || e >= m.size()) fail(Errc::invalid_input, "bound out of range");
  for (const auto& p : phis) {
    if (!p.dom.has_lattice()) fail(Errc::invalid_input, "factors must be lattices");
    MapCheck c = map_check(p, MapMode::join_hom);
    if (!c.ok) fail(Errc::not_join_hom, "input map does not preserve joins", {c.witness[0], c.witness[1]});
    for (int v : p.img)
      if (!m.leq(e, v)) fail(Errc::not_lower_bound, "bound does not sit under all map values", {m.label(e), m.label(v)});
  }
  const std::size_t k = phis.size();
  std::vector<FiniteLattice> lifted;
  for (const auto& p : phis) lifted.push_back(adjoin_bottom(p.dom.lattice(), "⊥"));
  Carrier inter(product(lifted, cap));
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t j = k; j-- > 1;) stride[j - 1] = stride[j] * static_cast<std::size_t>(lifted[j].size());

  std::vector<MonotoneMap> injections;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> img(static_cast<std::size_t>(phis[i].dom.size()));
    // fresh bottoms occupy index 0 of each lifted factor
    for (std::size_t x = 0; x < img.size(); ++x) img[x] = static_cast<int>(stride[i] * (x + 1));
    injections.push_back(make_map("inject_" + std::to_string(i), phis[i].dom, inter, std::move(img)));
  }
  std::vector<int> proj(static_cast<std::size_t>(inter.size()));
  for (std::size_t f = 0; f < proj.size(); ++f) {
    std::size_t rest = f;
    int acc = -1;
    for (std::size_t j = k; j-- > 0;) {
      const std::size_t sz = static_cast<std::size_t>(lifted[j].size());
      const int xj = static_cast<int>(rest % sz);
      rest /= sz;
      const int v = xj == 0 ? e : phis[j].img[xj - 1];
      acc = acc < 0 ? v : m.join(acc, v);
    }
    proj[f] = acc;
  }
  FactorizationResult out{inter, std::move(injections),
                          make_map("project", inter, phis.front().cod, std::move(proj)), {}};
  verify_factorization(out, phis);
  MapCheck jh = map_check(out.projection, MapMode::join_hom);
  if (!jh.ok) fail(Errc::invalid_input, "internal: projection does not preserve joins");
  out.verified.push_back("projection:join_hom");
  return out;
}

// ---- isotone maps out of a free Boolean algebra ----------------------------
//
// Fix a list X of elements of a lattice M, one per free generator.  An
// element a of the free Boolean algebra (a set of minterms) maps to the join
// over its prime implicants of the meet of the X-elements the implicant
// mentions — sign ignored, which is what makes the map isotone rather than
// a homomorphism.  Both a and its complement land on the same value when a
// is a (possibly complemented) generator.

inline int implicant_join_value(const FiniteLattice& m, const std::vector<int>& xs, std::uint32_t a) {
  const int n = static_cast<int>(xs.size());
  if (n < 1 || n > 4) fail(Errc::invalid_input, "between 1 and 4 anchor elements supported");
  for (int x : xs)
    if (x < 0 || x >= m.size()) fail(Errc::invalid_input, "anchor element out of range");
  if (a == 0 || a == fb_full(n)) fail(Errc::bounds_element, "bounds of the free Boolean algebra are excluded");
  int acc = -1;
  for (const FbCube& c : prime_implicants(a, n)) {
    int cm = -1;
    for (int i = 0; i < n; ++i)
      if (c.fixed & (std::uint32_t{1} << i)) cm = cm < 0 ? xs[i] : m.meet(cm, xs[i]);
    // a ∉ {0,1} guarantees every implicant mentions something
    if (cm < 0) fail(Errc::invalid_input, "internal: implicant with empty mention set");
    acc = acc < 0 ? cm : m.join(acc, cm);
  }
  if (acc < 0) fail(Errc::invalid_input, "internal: no prime implicants");
  return acc;
}

// The image of the whole bounds-free free Boolean algebra under the map
// above has exactly the upper and lower bounds of X itself.
inline bool bound_equivalence_check(const FiniteLattice& m, const std::vector<int>& xs) {
  const int n = static_cast<int>(xs.size());
  if (n < 1 || n > 4) fail(Errc::invalid_input, "between 1 and 4 anchor elements supported");
  std::vector<int> image;
  const std::uint32_t full = fb_full(n);
  for (std::uint32_t a = 1; a < full; ++a) image.push_back(implicant_join_value(m, xs, a));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return upper_bounds(m, image) == upper_bounds(m, xs) && lower_bounds(m, image) == lower_bounds(m, xs);
}

// ---- recovering suprema through an extension -------------------------------
//
// Stack the free Boolean algebra on X under the one on X's upper bounds,
// populate both middles by the implicant map, extend to the whole stack by
// the least isotone extension, and read off the image of the lower block's
// restored top.  It must be sup X.

inline int sup_via_extension_probe(const FiniteLattice& m, const std::vector<int>& xs_in) {
  if (xs_in.empty()) fail(Errc::invalid_input, "need a nonempty subset");
  std::vector<int> xs = xs_in;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (int x : xs)
    if (x < 0 || x >= m.size()) fail(Errc::invalid_input, "subset element out of range");
  std::vector<int> ubs = upper_bounds(m, xs);
  if (xs.size() > 3 || ubs.size() > 3) fail(Errc::cap_exceeded, "free Boolean blocks limited to 3 generators");

  const int n1 = static_cast<int>(xs.size());
  const int n2 = static_cast<int>(ubs.size());
  FiniteLattice lower = fb_lattice(n1, "x");
  FiniteLattice upper = fb_lattice(n2, "u");
  const int lower_size = lower.size();
  const int lower_top = lower_size - 1;
  Carrier stack(ordinal_sum_lattice(lower, upper, "probe_stack"));

  std::vector<int> elems, values;
  for (int a = 1; a < lower_top; ++a) {
    elems.push_back(a);
    values.push_back(implicant_join_value(m, xs, static_cast<std::uint32_t>(a)));
  }
  const int upper_full = upper.size() - 1;
  for (int a = 1; a < upper_full; ++a) {
    elems.push_back(lower_size + a);
    values.push_back(implicant_join_value(m, ubs, static_cast<std::uint32_t>(a)));
  }
  MonotoneMap ext = complete_extension(stack, elems, values, Carrier(m));
  return ext.img[lower_top];
}

}  // namespace isolat
