#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isolat/errors.hpp"
#include "isolat/fd.hpp"
#include "isolat/lattice.hpp"
#include "isolat/map.hpp"
#include "isolat/shapes.hpp"
#include "isolat/variety.hpp"

namespace isolat {

// Outcome of a factorization construction: every input map φ_i factors as
// projection ∘ injection_i through the intermediate lattice.
struct FactorizationResult {
  Carrier intermediate;
  std::vector<MonotoneMap> injections;
  MonotoneMap projection;
  std::vector<std::string> verified;  // names of the checks that passed
};

// Re-checks the contract every construction promises: injections are lattice
// embeddings, the projection is isotone, and each composite recovers φ_i.
// A failure here is an implementation bug, not bad input.
inline void verify_factorization(FactorizationResult& fr, const std::vector<MonotoneMap>& phis,
                                 bool expect_embeddings = true) {
  if (fr.injections.size() != phis.size()) fail(Errc::invalid_input, "internal: injection count mismatch");
  for (std::size_t i = 0; i < fr.injections.size(); ++i) {
    const std::string tag = "injection_" + std::to_string(i);
    if (!map_check(fr.injections[i], MapMode::lattice_hom).ok)
      fail(Errc::invalid_input, "internal: " + tag + " is not a lattice homomorphism");
    fr.verified.push_back(tag + ":lattice_hom");
    if (expect_embeddings) {
      if (!map_check(fr.injections[i], MapMode::embedding).ok)
        fail(Errc::invalid_input, "internal: " + tag + " is not an embedding");
      fr.verified.push_back(tag + ":embedding");
    }
  }
  if (!map_check(fr.projection, MapMode::isotone).ok)
    fail(Errc::invalid_input, "internal: projection is not isotone");
  fr.verified.push_back("projection:isotone");
  for (std::size_t i = 0; i < phis.size(); ++i) {
    MonotoneMap comp = compose(fr.projection, fr.injections[i]);
    if (!same_assignment(comp, phis[i]))
      fail(Errc::invalid_input,
           "internal: projection∘injection_" + std::to_string(i) + " differs from the input map");
    fr.verified.push_back("composite_" + std::to_string(i) + ":equals_input");
  }
}

namespace detail {

inline const FiniteLattice& common_codomain(const std::vector<MonotoneMap>& phis) {
  if (phis.empty()) fail(Errc::empty_list, "need at least one map");
  for (const auto& p : phis) {
    if (!p.cod.has_lattice()) fail(Errc::invalid_input, "codomain must be a lattice");
    if (p.cod.lattice_ptr().get() != phis.front().cod.lattice_ptr().get())
      fail(Errc::invalid_input, "maps must share one codomain");
  }
  return phis.front().cod.lattice();
}

inline void require_isotone(const MonotoneMap& m) {
  MapCheck c = map_check(m, MapMode::isotone);
  if (!c.ok) fail(Errc::not_isotone_input, "input map is not isotone", {c.witness[0], c.witness[1]});
}

// first element of l in label order; used as the pinned base point
inline int least_label_element(const FiniteLattice& l) {
  int best = 0;
  for (int x = 1; x < l.size(); ++x)
    if (l.label(x) < l.label(best)) best = x;
  return best;
}

// value of the doubled map at the element (x,s,t) of L×2×2
inline int anchored_row(const FiniteLattice& m, const std::vector<int>& phi, int e, int xbar) {
  const int x = xbar >> 2;
  const int s = (xbar >> 1) & 1;
  const int t = xbar & 1;
  if (s == 0 && t == 1) return phi[x];
  if (s == 1 && t == 0) return e;
  if (s == 0) return m.meet(phi[x], e);
  return m.join(phi[x], e);
}

}  // namespace detail

// ---- single-map extension L -> L×2×2 -----------------------------------
//
// Given isotone φ: L -> M and an anchor e ∈ M, the doubled lattice L×2×2
// carries an isotone extension whose range includes e, with L embedded on
// the (·,0,1) slice.  The four slices map to φ(x), e, φ(x)∧e and φ(x)∨e.

struct AnchoredExtension {
  Carrier extended;          // L×2×2
  MonotoneMap embed;         // L -> extended, x ↦ (x,0,1)
  MonotoneMap extended_map;  // extended -> M
};

inline AnchoredExtension anchored_extension(const MonotoneMap& phi, int e) {
  detail::require_isotone(phi);
  if (!phi.dom.has_lattice()) fail(Errc::invalid_input, "domain must be a lattice");
  const FiniteLattice& l = phi.dom.lattice();
  const FiniteLattice& m = phi.cod.lattice();
  if (e < 0 || e >= m.size()) fail(Errc::invalid_input, "anchor out of range");
  Carrier ext(product({l, chain(2), chain(2)}));
  const int n = ext.size();
  std::vector<int> emb(l.size()), bar(n);
  for (int x = 0; x < l.size(); ++x) emb[x] = 4 * x + 1;
  for (int i = 0; i < n; ++i) bar[i] = detail::anchored_row(m, phi.img, e, i);
  AnchoredExtension out{ext, make_map("embed", phi.dom, ext, std::move(emb)),
                        make_map(phi.name + "_bar", ext, phi.cod, std::move(bar))};
  if (!map_check(out.embed, MapMode::embedding).ok) fail(Errc::invalid_input, "internal: slice embedding failed");
  if (!map_check(out.extended_map, MapMode::isotone).ok)
    fail(Errc::invalid_input, "internal: doubled map is not isotone");
  for (int x = 0; x < l.size(); ++x)
    if (out.extended_map.img[out.embed.img[x]] != phi.img[x])
      fail(Errc::invalid_input, "internal: doubled map does not restrict to the input map");
  return out;
}

// ---- the sea-level fold -------------------------------------------------
//
// Collapse a finite tuple of values against a threshold e: if everything
// sits at or below e take the meet, otherwise join exactly the values that
// poke above.

inline int anchored_fold(const FiniteLattice& m, int e, const std::vector<int>& fs) {
  if (fs.empty()) fail(Errc::empty_index_set, "fold needs a nonempty tuple");
  bool all_below = true;
  for (int v : fs)
    if (!m.leq(v, e)) { all_below = false; break; }
  if (all_below) return m.meet_all(fs);
  int acc = -1;
  for (int v : fs)
    if (!m.leq(v, e)) acc = acc < 0 ? v : m.join(acc, v);
  return acc;
}

// ---- the product factorization ------------------------------------------
//
// A family of isotone maps φ_i: L_i -> M factors through the product of the
// doubled lattices, with the fold above as projection.  The frame part
// depends only on the L_i, so sweeps over many (φ, e) choices reuse the
// intermediate.

struct AnchoredProductFrame {
  std::vector<Carrier> factors;
  std::vector<Carrier> extended;        // L_i×2×2
  Carrier intermediate;                 // product of extended
  std::vector<MonotoneMap> injections;  // L_i -> intermediate
  std::vector<int> base;                // the off-diagonal anchor (x_0,1,0) per factor
};

inline AnchoredProductFrame make_anchored_frame(const std::vector<Carrier>& ls,
                                                std::size_t cap = kDefaultSizeCap) {
  if (ls.empty()) fail(Errc::empty_index_set, "need at least one factor");
  AnchoredProductFrame fr;
  fr.factors = ls;
  const FiniteLattice two = chain(2);
  std::vector<FiniteLattice> exts;
  for (const Carrier& l : ls) {
    exts.push_back(product({l.lattice(), two, two}, cap));
    fr.extended.emplace_back(exts.back());
  }
  fr.intermediate = Carrier(product(exts, cap));
  for (const Carrier& l : ls) fr.base.push_back(4 * detail::least_label_element(l.lattice()) + 2);
  // mixed-radix strides over the extended factors, last factor fastest
  const std::size_t k = ls.size();
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t j = k; j-- > 1;) stride[j - 1] = stride[j] * static_cast<std::size_t>(exts[j].size());
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) off += stride[j] * static_cast<std::size_t>(fr.base[j]);
    std::vector<int> img(static_cast<std::size_t>(ls[i].size()));
    for (int x = 0; x < ls[i].size(); ++x)
      img[static_cast<std::size_t>(x)] = static_cast<int>(off + stride[i] * static_cast<std::size_t>(4 * x + 1));
    fr.injections.push_back(make_map("inject_" + std::to_string(i), ls[i], fr.intermediate, std::move(img)));
  }
  return fr;
}

inline MonotoneMap frame_projection(const AnchoredProductFrame& fr, const std::vector<MonotoneMap>& phis, int e) {
  const FiniteLattice& m = detail::common_codomain(phis);
  if (phis.size() != fr.factors.size()) fail(Errc::invalid_input, "one map per factor required");
  for (std::size_t i = 0; i < phis.size(); ++i) {
    detail::require_isotone(phis[i]);
    if (phis[i].dom.size() != fr.factors[i].size()) fail(Errc::invalid_input, "map domain does not match factor");
  }
  if (e < 0 || e >= m.size()) fail(Errc::invalid_input, "sea level out of range");
  const std::size_t k = fr.factors.size();
  const std::size_t n = static_cast<std::size_t>(fr.intermediate.size());
  std::vector<int> img(n);
  std::vector<int> vals(k);
  for (std::size_t f = 0; f < n; ++f) {
    std::size_t rest = f;
    for (std::size_t j = k; j-- > 0;) {
      const std::size_t sz = static_cast<std::size_t>(fr.extended[j].size());
      vals[j] = detail::anchored_row(m, phis[j].img, e, static_cast<int>(rest % sz));
      rest /= sz;
    }
    img[f] = anchored_fold(m, e, vals);
  }
  return make_map("project_e=" + m.label(e), fr.intermediate, phis.front().cod, std::move(img));
}

inline FactorizationResult anchored_product_factorization(const std::vector<MonotoneMap>& phis, int e,
                                                          std::size_t cap = kDefaultSizeCap) {
  std::vector<Carrier> ls;
  for (const auto& p : phis) {
    if (!p.dom.has_lattice()) fail(Errc::invalid_input, "factors must be lattices");
    ls.push_back(p.dom);
  }
  AnchoredProductFrame fr = make_anchored_frame(ls, cap);
  FactorizationResult out{fr.intermediate, fr.injections, frame_projection(fr, phis, e), {}};
  verify_factorization(out, phis);
  return out;
}

// ---- the symmetric two-factor form --------------------------------------
//
// For two maps the intermediate L0×L1×2×2 treats both sides alike: the
// selector coordinates pick out φ0, φ1, their meet or their join, and each
// factor embeds with the other held at a chosen base point.

inline FactorizationResult symmetric_pair_factorization(const MonotoneMap& phi0, const MonotoneMap& phi1, int e0,
                                                        int e1, std::size_t cap = kDefaultSizeCap) {
  const FiniteLattice& m = detail::common_codomain({phi0, phi1});
  detail::require_isotone(phi0);
  detail::require_isotone(phi1);
  if (!phi0.dom.has_lattice() || !phi1.dom.has_lattice()) fail(Errc::invalid_input, "factors must be lattices");
  const FiniteLattice& l0 = phi0.dom.lattice();
  const FiniteLattice& l1 = phi1.dom.lattice();
  if (e0 < 0 || e0 >= l0.size() || e1 < 0 || e1 >= l1.size())
    fail(Errc::invalid_input, "base points out of range");
  Carrier inter(product({l0, l1, chain(2), chain(2)}, cap));
  const std::size_t n1 = static_cast<std::size_t>(l1.size());
  auto idx = [n1](int x, int y, int s, int t) {
    return static_cast<int>(((static_cast<std::size_t>(x) * n1 + static_cast<std::size_t>(y)) * 2 +
                             static_cast<std::size_t>(s)) *
                                2 +
                            static_cast<std::size_t>(t));
  };
  std::vector<int> proj(static_cast<std::size_t>(inter.size()));
  for (std::size_t f = 0; f < proj.size(); ++f) {
    const int t = static_cast<int>(f & 1);
    const int s = static_cast<int>((f >> 1) & 1);
    const int y = static_cast<int>((f >> 2) % n1);
    const int x = static_cast<int>((f >> 2) / n1);
    const int v0 = phi0.img[x];
    const int v1 = phi1.img[y];
    proj[f] = (s == 1 && t == 0) ? v0 : (s == 0 && t == 1) ? v1 : (s == 0 ? m.meet(v0, v1) : m.join(v0, v1));
  }
  std::vector<int> inj0(static_cast<std::size_t>(l0.size())), inj1(static_cast<std::size_t>(l1.size()));
  for (int x = 0; x < l0.size(); ++x) inj0[static_cast<std::size_t>(x)] = idx(x, e1, 1, 0);
  for (int y = 0; y < l1.size(); ++y) inj1[static_cast<std::size_t>(y)] = idx(e0, y, 0, 1);
  FactorizationResult out{inter,
                          {make_map("inject_0", phi0.dom, inter, std::move(inj0)),
                           make_map("inject_1", phi1.dom, inter, std::move(inj1))},
                          make_map("project", inter, phi0.cod, std::move(proj)),
                          {}};
  verify_factorization(out, {phi0, phi1});
  return out;
}

// Fold the symmetric form over an ordered factor list.  e_choices[j-1]
// names the base points used when factor j is attached: first an element
// of the accumulated intermediate, then an element of L_j.
inline FactorizationResult iterated_pair_factorization(const std::vector<MonotoneMap>& phis,
                                                       const std::vector<std::pair<int, int>>& e_choices,
                                                       std::size_t cap = kDefaultSizeCap) {
  if (phis.empty()) fail(Errc::empty_index_set, "need at least one factor");
  if (e_choices.size() + 1 != phis.size()) fail(Errc::invalid_input, "need one base-point pair per attachment step");
  detail::common_codomain(phis);
  for (const auto& p : phis) detail::require_isotone(p);
  FactorizationResult acc{phis[0].dom, {identity_map(phis[0].dom)}, phis[0], {}};
  for (std::size_t j = 1; j < phis.size(); ++j) {
    FactorizationResult step = symmetric_pair_factorization(acc.projection, phis[j], e_choices[j - 1].first,
                                                            e_choices[j - 1].second, cap);
    std::vector<MonotoneMap> injections;
    injections.reserve(j + 1);
    for (std::size_t i = 0; i < j; ++i) injections.push_back(compose(step.injections[0], acc.injections[i]));
    injections.push_back(step.injections[1]);
    acc = FactorizationResult{step.intermediate, std::move(injections), step.projection, {}};
  }
  verify_factorization(acc, phis);
  return acc;
}

// ---- product with a free distributive factor ----------------------------
//
// When the codomain is distributive, ∏L_i times the free distributive
// lattice on the index set also works; the extra coordinate records which
// polynomial of the φ_i to apply.  The projection is generally not a
// join-homomorphism — only isotone.

inline FactorizationResult product_with_free_factor(const std::vector<MonotoneMap>& phis,
                                                    const std::vector<int>& base_choices,
                                                    std::size_t cap = kDefaultSizeCap) {
  if (phis.empty()) fail(Errc::empty_index_set, "need at least one factor");
  if (phis.size() > 4) fail(Errc::cap_exceeded, "free distributive factor supports at most 4 indices");
  if (base_choices.size() != phis.size()) fail(Errc::invalid_input, "need one base point per factor");
  const FiniteLattice& m = detail::common_codomain(phis);
  if (!variety_check(m).distributive) fail(Errc::not_distributive_codomain, "codomain must be distributive");
  const std::size_t k = phis.size();
  std::vector<FiniteLattice> factors;
  for (std::size_t i = 0; i < k; ++i) {
    detail::require_isotone(phis[i]);
    if (!phis[i].dom.has_lattice()) fail(Errc::invalid_input, "factors must be lattices");
    if (base_choices[i] < 0 || base_choices[i] >= phis[i].dom.size())
      fail(Errc::invalid_input, "base point out of range");
    factors.push_back(phis[i].dom.lattice());
  }
  std::vector<std::string> gnames;
  for (std::size_t i = 0; i < k; ++i) gnames.push_back("g" + std::to_string(i));
  FdLattice fdl = fd_lattice(gnames);
  factors.push_back(fdl.lattice);
  Carrier inter(product(factors, cap));
  std::vector<std::size_t> stride(k + 1, 1);
  for (std::size_t j = k + 1; j-- > 1;) stride[j - 1] = stride[j] * static_cast<std::size_t>(factors[j].size());
  const std::size_t fd_n = static_cast<std::size_t>(fdl.lattice.size());
  std::vector<int> proj(static_cast<std::size_t>(inter.size()));
  std::vector<int> vals(k);
  for (std::size_t f = 0; f < proj.size(); ++f) {
    std::size_t rest = f;
    const std::size_t w = rest % fd_n;
    rest /= fd_n;
    for (std::size_t j = k; j-- > 0;) {
      const std::size_t sz = static_cast<std::size_t>(factors[j].size());
      vals[j] = phis[j].img[rest % sz];
      rest /= sz;
    }
    // evaluate the antichain at the φ-images
    int acc = -1;
    for (std::uint32_t clause : fdl.elems[w].clauses) {
      int cm = -1;
      for (std::size_t i = 0; i < k; ++i)
        if (clause & (std::uint32_t{1} << i)) cm = cm < 0 ? vals[i] : m.meet(cm, vals[i]);
      acc = acc < 0 ? cm : m.join(acc, cm);
    }
    proj[f] = acc;
  }
  std::vector<MonotoneMap> injections;
  for (std::size_t i = 0; i < k; ++i) {
    const int gidx = fdl.index_of(fd_gen(static_cast<int>(i)));
    std::size_t off = static_cast<std::size_t>(gidx);
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) off += stride[j] * static_cast<std::size_t>(base_choices[j]);
    std::vector<int> img(static_cast<std::size_t>(phis[i].dom.size()));
    for (std::size_t x = 0; x < img.size(); ++x) img[x] = static_cast<int>(off + stride[i] * x);
    injections.push_back(make_map("inject_" + std::to_string(i), phis[i].dom, inter, std::move(img)));
  }
  FactorizationResult out{inter, std::move(injections),
                          make_map("project", inter, phis.front().cod, std::move(proj)), {}};
  verify_factorization(out, phis);
  return out;
}

// ---- the median ----------------------------------------------------------

// (a∧b)∨(b∧c)∨(c∧a) as an antichain, with its symmetries re-checked: the
// dual expression agrees, every generator permutation fixes it, and it is
// no generator.
inline FdElement median_antichain() {
  TermPtr med = median_term(0, 1, 2);
  FdElement e = fd_from_term(med);
  if (!(e == fd_from_term(term_dual(med)))) fail(Errc::invalid_input, "internal: median is not self-dual");
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms) {
    std::vector<std::uint32_t> mapped;
    for (std::uint32_t c : e.clauses) {
      std::uint32_t d = 0;
      for (int i = 0; i < 3; ++i)
        if (c & (1u << i)) d |= 1u << p[i];
      mapped.push_back(d);
    }
    std::sort(mapped.begin(), mapped.end());
    if (FdElement{mapped} == e) continue;
    fail(Errc::invalid_input, "internal: median not permutation-invariant");
  }
  for (int i = 0; i < 3; ++i)
    if (e == fd_gen(i)) fail(Errc::invalid_input, "internal: median equals a generator");
  return e;
}

}  // namespace isolat
