#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "isolat/constructions.hpp"
#include "isolat/errors.hpp"
#include "isolat/lattice.hpp"
#include "isolat/map.hpp"
#include "isolat/variety.hpp"

namespace isolat {

// ---- the poset of formal meets --------------------------------------------
//
// Adjoin a top ⊤i to every factor and take all tuples except the all-tops
// one, ordered coordinatewise.  A tuple stands for the meet of its non-top
// coordinates, one per factor; θ_i(x) is the tuple mentioning only x.

struct FormalMeetPoset {
  std::vector<FiniteLattice> factors;
  Poset order;
  std::vector<std::vector<int>> tuples;    // coordinate = factor element, or factors[i].size() for ⊤i
  std::vector<std::vector<int>> theta;     // theta[i][x] = index of the tuple sending i to x
  std::vector<std::uint64_t> down;         // principal downset masks

  int size() const { return order.size(); }
  bool is_top(int i, int coord) const { return coord == factors[i].size(); }
};

inline FormalMeetPoset formal_meet_poset(const std::vector<FiniteLattice>& ls, std::size_t cap = 64) {
  if (ls.empty()) fail(Errc::empty_list, "need at least one factor");
  std::size_t count = 1;
  for (const auto& l : ls) count *= static_cast<std::size_t>(l.size()) + 1;
  count -= 1;  // drop the all-tops tuple
  if (count > cap || count > 64) fail(Errc::cap_exceeded, "formal-meet poset larger than the cap");

  FormalMeetPoset out;
  out.factors = ls;
  const int k = static_cast<int>(ls.size());
  std::vector<int> radix(k);
  for (int i = 0; i < k; ++i) radix[i] = ls[i].size() + 1;
  std::vector<int> cur(k, 0);
  while (true) {
    bool all_tops = true;
    for (int i = 0; i < k; ++i)
      if (cur[i] != ls[i].size()) { all_tops = false; break; }
    if (!all_tops) out.tuples.push_back(cur);
    int i = k - 1;
    for (; i >= 0; --i) {
      if (++cur[i] < radix[i]) break;
      cur[i] = 0;
    }
    if (i < 0) break;
  }

  const int n = static_cast<int>(out.tuples.size());
  std::vector<std::string> labels(n);
  for (int e = 0; e < n; ++e) {
    std::vector<std::string> parts(k);
    for (int i = 0; i < k; ++i)
      parts[i] = out.tuples[e][i] == ls[i].size() ? "⊤" + std::to_string(i) : ls[i].label(out.tuples[e][i]);
    labels[e] = tuple_label(parts);
  }
  auto coord_leq = [&](int i, int a, int b) {
    if (b == ls[i].size()) return true;
    if (a == ls[i].size()) return false;
    return ls[i].leq(a, b);
  };
  BitMatrix leq(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool le = true;
      for (int i = 0; i < k && le; ++i)
        if (!coord_leq(i, out.tuples[a][i], out.tuples[b][i])) le = false;
      if (le) leq.set(a, b, true);
    }
  out.order = Poset::from_leq_unchecked("formal_meets", std::move(labels), std::move(leq));

  out.theta.resize(static_cast<std::size_t>(k));
  std::unordered_map<std::string, int> at;
  auto key = [&](const std::vector<int>& t) {
    std::string s;
    for (int v : t) s += std::to_string(v) + ",";
    return s;
  };
  for (int e = 0; e < n; ++e) at[key(out.tuples[e])] = e;
  for (int i = 0; i < k; ++i) {
    out.theta[i].resize(static_cast<std::size_t>(ls[i].size()));
    for (int x = 0; x < ls[i].size(); ++x) {
      std::vector<int> t(k);
      for (int j = 0; j < k; ++j) t[j] = j == i ? x : ls[j].size();
      out.theta[i][x] = at.at(key(t));
    }
  }
  out.down.resize(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) {
    std::uint64_t mask = 0;
    for (int d = 0; d < n; ++d)
      if (out.order.leq(d, e)) mask |= std::uint64_t{1} << d;
    out.down[e] = mask;
  }
  return out;
}

// Close a nonempty downset under "one-factor joins": whenever θ_i(x) and
// θ_i(y) lie inside, θ_i(x∨y) (and everything below it) must too.
inline std::uint64_t downset_closure(const FormalMeetPoset& p, std::uint64_t mask) {
  if (mask == 0) fail(Errc::invalid_input, "closure of an empty set");
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < p.factors.size(); ++i) {
      std::vector<int> present;
      for (int x = 0; x < p.factors[i].size(); ++x)
        if (mask & (std::uint64_t{1} << p.theta[i][x])) present.push_back(x);
      for (std::size_t a = 0; a < present.size(); ++a)
        for (std::size_t b = a + 1; b < present.size(); ++b) {
          const int j = p.factors[i].join(present[a], present[b]);
          const std::uint64_t add = p.down[p.theta[i][j]];
          if ((mask & add) != add) {
            mask |= add;
            grew = true;
          }
        }
    }
  }
  return mask;
}

inline bool downset_is_closed(const FormalMeetPoset& p, std::uint64_t mask) {
  return mask != 0 && downset_closure(p, mask) == mask;
}

// ---- the lattice of closed downsets ----------------------------------------

struct DownsetLattice {
  FormalMeetPoset p;
  FiniteLattice lat;
  std::vector<std::uint64_t> families;  // index-aligned member masks
  std::unordered_map<std::uint64_t, int> index;

  int id_of(std::uint64_t mask) const {
    auto it = index.find(mask);
    if (it == index.end()) fail(Errc::invalid_input, "family is not a closed downset");
    return it->second;
  }
  std::vector<int> maximal_members(std::uint64_t mask) const {
    std::vector<int> out;
    for (int e = 0; e < p.size(); ++e) {
      if (!(mask & (std::uint64_t{1} << e))) continue;
      bool maximal = true;
      for (int q = 0; q < p.size() && maximal; ++q)
        if (q != e && (mask & (std::uint64_t{1} << q)) && p.order.leq(e, q)) maximal = false;
      if (maximal) out.push_back(e);
    }
    return out;
  }
};

inline DownsetLattice closed_downset_lattice(const std::vector<FiniteLattice>& ls, std::size_t cap = kDefaultSizeCap) {
  DownsetLattice dl{formal_meet_poset(ls), FiniteLattice(), {}, {}};
  const FormalMeetPoset& p = dl.p;
  const int n = p.size();

  // all downsets of the formal-meet poset, grown along a linear extension
  std::vector<std::uint64_t> downsets{0};
  for (int z : p.order.linear_extension()) {
    const std::uint64_t need = p.down[z] & ~(std::uint64_t{1} << z);
    const std::size_t sz = downsets.size();
    for (std::size_t d = 0; d < sz; ++d)
      if ((downsets[d] & need) == need) {
        downsets.push_back(downsets[d] | (std::uint64_t{1} << z));
        if (downsets.size() > 4 * cap) fail(Errc::cap_exceeded, "too many downsets");
      }
  }
  for (std::uint64_t mask : downsets)
    if (mask != 0 && downset_is_closed(p, mask)) dl.families.push_back(mask);
  if (dl.families.size() > cap) fail(Errc::cap_exceeded, "too many closed downsets");
  std::sort(dl.families.begin(), dl.families.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  const int fn = static_cast<int>(dl.families.size());
  for (int f = 0; f < fn; ++f) dl.index[dl.families[f]] = f;

  std::vector<std::string> labels(fn);
  for (int f = 0; f < fn; ++f) {
    // a family prints as its antichain of maximal formal meets
    std::string s = "{";
    bool first = true;
    for (int e : dl.maximal_members(dl.families[f])) {
      if (!first) s += " ";
      s += p.order.label(e);
      first = false;
    }
    labels[f] = s + "}";
  }
  BitMatrix leq(fn);
  for (int a = 0; a < fn; ++a)
    for (int b = 0; b < fn; ++b)
      if ((dl.families[a] & ~dl.families[b]) == 0) leq.set(a, b, true);
  std::vector<std::uint16_t> meet(static_cast<std::size_t>(fn) * fn), join(meet);
  for (int a = 0; a < fn; ++a)
    for (int b = 0; b < fn; ++b) {
      const std::uint64_t mand = dl.families[a] & dl.families[b];
      auto it = dl.index.find(mand);
      if (it == dl.index.end()) fail(Errc::invalid_input, "internal: intersection of closed downsets not closed");
      meet[static_cast<std::size_t>(a) * fn + b] = static_cast<std::uint16_t>(it->second);
      join[static_cast<std::size_t>(a) * fn + b] =
          static_cast<std::uint16_t>(dl.index.at(downset_closure(p, dl.families[a] | dl.families[b])));
    }
  dl.lat = FiniteLattice::from_parts(
      Poset::from_leq_unchecked("closed_downsets", std::move(labels), std::move(leq)), std::move(meet),
      std::move(join));
  return dl;
}

// ---- the embeddings and the coordinate readbacks ---------------------------

inline MonotoneMap downset_embed(const DownsetLattice& dl, const Carrier& factor_i, int i) {
  const FiniteLattice& li = dl.p.factors[static_cast<std::size_t>(i)];
  if (factor_i.size() != li.size()) fail(Errc::invalid_input, "carrier does not match factor");
  std::vector<int> img(static_cast<std::size_t>(li.size()));
  for (int x = 0; x < li.size(); ++x) img[static_cast<std::size_t>(x)] = dl.id_of(dl.p.down[dl.p.theta[i][x]]);
  MonotoneMap out = make_map("embed_" + std::to_string(i), factor_i, Carrier(dl.lat), std::move(img));
  if (!map_check(out, MapMode::embedding).ok) fail(Errc::invalid_input, "internal: factor does not embed");
  return out;
}

// largest x with θ_i(x) in the family, or the fresh bottom when none is
inline int downset_readback(const DownsetLattice& dl, int i, int family) {
  const FiniteLattice& li = dl.p.factors[static_cast<std::size_t>(i)];
  const std::uint64_t mask = dl.families[static_cast<std::size_t>(family)];
  int acc = -1;
  for (int x = 0; x < li.size(); ++x)
    if (mask & (std::uint64_t{1} << dl.p.theta[i][x])) acc = acc < 0 ? x : li.join(acc, x);
  if (acc < 0) return 0;
  if (!(mask & (std::uint64_t{1} << dl.p.theta[i][acc])))
    fail(Errc::invalid_input, "internal: mentioned set not join-closed");
  return acc + 1;
}

inline MonotoneMap downset_readback_map(const DownsetLattice& dl, int i, const Carrier& lifted_i) {
  std::vector<int> img(dl.families.size());
  for (std::size_t f = 0; f < dl.families.size(); ++f) img[f] = downset_readback(dl, i, static_cast<int>(f));
  MonotoneMap out = make_map("readback_" + std::to_string(i), Carrier(dl.lat), lifted_i, std::move(img));
  if (!map_check(out, MapMode::lattice_hom).ok)
    fail(Errc::invalid_input, "internal: coordinate readback is not a lattice homomorphism");
  return out;
}

// ---- distributive-over-V membership -----------------------------------------
//
// The tuple of readbacks π maps the closed-downset lattice onto a product of
// bottomed factors; π is a lattice hom whose fibers are distributive
// sublattices in which join is plain union.  That is the witness that the
// construction lands in "distributive composed with the factors' variety".

struct FiberReport {
  bool readback_tuple_is_hom = false;
  bool fibers_distributive = false;
  bool fiber_joins_are_unions = false;
  int fiber_count = 0;
};

inline FiberReport fiber_distributivity_check(const DownsetLattice& dl) {
  FiberReport rep;
  const std::size_t k = dl.p.factors.size();
  std::vector<FiniteLattice> lifted;
  for (const auto& l : dl.p.factors) lifted.push_back(adjoin_bottom(l, "⊥"));
  FiniteLattice prod = product(lifted);
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t j = k; j-- > 1;) stride[j - 1] = stride[j] * static_cast<std::size_t>(lifted[j].size());
  std::vector<int> img(dl.families.size());
  for (std::size_t f = 0; f < dl.families.size(); ++f) {
    std::size_t v = 0;
    for (std::size_t i = 0; i < k; ++i)
      v += stride[i] * static_cast<std::size_t>(downset_readback(dl, static_cast<int>(i), static_cast<int>(f)));
    img[f] = static_cast<int>(v);
  }
  MonotoneMap pi = make_map("readback", Carrier(dl.lat), Carrier(prod), std::move(img));
  rep.readback_tuple_is_hom = map_check(pi, MapMode::lattice_hom).ok;

  std::unordered_map<int, std::vector<int>> fibers;
  for (std::size_t f = 0; f < dl.families.size(); ++f) fibers[pi.img[f]].push_back(static_cast<int>(f));
  rep.fiber_count = static_cast<int>(fibers.size());
  rep.fibers_distributive = true;
  rep.fiber_joins_are_unions = true;
  for (const auto& [value, members] : fibers) {
    for (int a : members)
      for (int b : members) {
        const int j = dl.lat.join(a, b);
        if (dl.families[static_cast<std::size_t>(j)] !=
            (dl.families[static_cast<std::size_t>(a)] | dl.families[static_cast<std::size_t>(b)]))
          rep.fiber_joins_are_unions = false;
      }
    FiniteLattice sub = induced_sublattice(dl.lat, members, "fiber");
    if (!variety_check(sub).distributive) rep.fibers_distributive = false;
  }
  return rep;
}

// ---- the projection and the factorization -----------------------------------

// join over the maximal formal meets of the family of the meets of the
// φ-images of their mentioned coordinates
inline int downset_fold(const DownsetLattice& dl, const std::vector<MonotoneMap>& phis, std::uint64_t mask) {
  const FiniteLattice& m = detail::common_codomain(phis);
  int acc = -1;
  for (int e : dl.maximal_members(mask)) {
    int cm = -1;
    for (std::size_t i = 0; i < phis.size(); ++i) {
      const int coord = dl.p.tuples[static_cast<std::size_t>(e)][i];
      if (dl.p.is_top(static_cast<int>(i), coord)) continue;
      const int v = phis[i].img[coord];
      cm = cm < 0 ? v : m.meet(cm, v);
    }
    if (cm < 0) fail(Errc::invalid_input, "internal: formal meet mentions nothing");
    acc = acc < 0 ? cm : m.join(acc, cm);
  }
  if (acc < 0) fail(Errc::invalid_input, "fold of an empty family");
  return acc;
}

inline MonotoneMap downset_projection(const DownsetLattice& dl, const std::vector<MonotoneMap>& phis) {
  if (phis.size() != dl.p.factors.size()) fail(Errc::invalid_input, "one map per factor required");
  for (std::size_t i = 0; i < phis.size(); ++i) {
    if (phis[i].dom.size() != dl.p.factors[i].size()) fail(Errc::invalid_input, "map domain does not match factor");
    MapCheck c = map_check(phis[i], MapMode::join_hom);
    if (!c.ok) fail(Errc::not_join_hom, "input map does not preserve joins", {c.witness[0], c.witness[1]});
  }
  std::vector<int> img(dl.families.size());
  for (std::size_t f = 0; f < dl.families.size(); ++f) img[f] = downset_fold(dl, phis, dl.families[f]);
  MonotoneMap psi = make_map("project", Carrier(dl.lat), phis.front().cod, std::move(img));
  MapCheck c = map_check(psi, MapMode::join_hom);
  if (!c.ok) fail(Errc::invalid_input, "internal: fold does not preserve joins", {c.witness[0], c.witness[1]});
  return psi;
}

inline FactorizationResult downset_product_factorization(const std::vector<MonotoneMap>& phis,
                                                         std::size_t cap = kDefaultSizeCap) {
  if (phis.empty()) fail(Errc::empty_list, "need at least one map");
  detail::common_codomain(phis);
  std::vector<FiniteLattice> ls;
  for (const auto& p : phis) {
    if (!p.dom.has_lattice()) fail(Errc::invalid_input, "factors must be lattices");
    ls.push_back(p.dom.lattice());
  }
  DownsetLattice dl = closed_downset_lattice(ls, cap);
  Carrier inter(dl.lat);
  std::vector<MonotoneMap> injections;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    MonotoneMap e = downset_embed(dl, phis[i].dom, static_cast<int>(i));
    injections.push_back(make_map(e.name, e.dom, inter, e.img));
  }
  MonotoneMap proj0 = downset_projection(dl, phis);
  FactorizationResult out{inter, std::move(injections), make_map(proj0.name, inter, proj0.cod, proj0.img), {}};
  verify_factorization(out, phis);
  MapCheck jh = map_check(out.projection, MapMode::join_hom);
  if (!jh.ok) fail(Errc::invalid_input, "internal: projection does not preserve joins");
  out.verified.push_back("projection:join_hom");
  FiberReport fr = fiber_distributivity_check(dl);
  if (!fr.readback_tuple_is_hom || !fr.fibers_distributive || !fr.fiber_joins_are_unions)
    fail(Errc::invalid_input, "internal: fiber structure check failed");
  out.verified.push_back("fibers:distributive_over_factors");
  return out;
}

}  // namespace isolat
