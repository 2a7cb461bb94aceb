#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "isolat/lattice.hpp"

namespace isolat {

struct VarietyReport {
  bool distributive = false;
  bool modular = false;
  // five labels (o, a, c, b, i): o < a < c < i chain, o < b < i, b incomparable to a, c
  std::optional<std::array<std::string, 5>> pentagon_witness;
  // five labels (o, a, b, c, i): three incomparable atoms of the copy
  std::optional<std::array<std::string, 5>> diamond_witness;
};

// Exhaustive law checks.  A failing modular law yields a pentagon, a failing
// distributive law in a modular lattice yields a diamond; both are classic
// constructions from the violating triple and are re-verified before return.
inline VarietyReport variety_check(const FiniteLattice& l, std::size_t cap = kDefaultSizeCap) {
  if (static_cast<std::size_t>(l.size()) > cap)
    fail(Errc::size_cap_exceeded, "variety check above size cap");
  const int n = l.size();
  VarietyReport rep;
  rep.distributive = true;
  rep.modular = true;

  int mx = -1, my = -1, mz = -1;  // modular law violation
  int dx = -1, dy = -1, dz = -1;  // distributive law violation
  for (int x = 0; x < n && (rep.modular || rep.distributive); ++x)
    for (int y = 0; y < n && (rep.modular || rep.distributive); ++y)
      for (int z = 0; z < n; ++z) {
        if (rep.distributive && l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) {
          rep.distributive = false;
          dx = x; dy = y; dz = z;
        }
        if (rep.modular && l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) {
          rep.modular = false;
          mx = x; my = y; mz = z;
        }
        if (!rep.modular && !rep.distributive) break;
      }

  if (!rep.modular) {
    const int o = l.meet(my, mz);
    const int a = l.join(mx, o);
    const int c = l.meet(l.join(mx, my), mz);
    const int b = my;
    const int i = l.join(mx, my);
    const bool sane = l.lt(o, a) && l.lt(a, c) && l.lt(c, i) && l.lt(o, b) && l.lt(b, i) &&
                      !l.leq(b, a) && !l.leq(a, b) && !l.leq(b, c) && !l.leq(c, b) &&
                      l.meet(b, c) == o && l.join(b, a) == i;
    if (!sane) fail(Errc::invalid_input, "pentagon construction failed");
    rep.pentagon_witness = {l.label(o), l.label(a), l.label(c), l.label(b), l.label(i)};
  }
  if (rep.modular && !rep.distributive) {
    const int o = l.join_all({l.meet(dx, dy), l.meet(dy, dz), l.meet(dz, dx)});
    const int i = l.meet_all({l.join(dx, dy), l.join(dy, dz), l.join(dz, dx)});
    const int a = l.join(l.meet(dx, i), o);
    const int b = l.join(l.meet(dy, i), o);
    const int c = l.join(l.meet(dz, i), o);
    const bool sane = l.lt(o, a) && l.lt(o, b) && l.lt(o, c) && l.lt(a, i) && l.lt(b, i) && l.lt(c, i) &&
                      l.meet(a, b) == o && l.meet(b, c) == o && l.meet(a, c) == o &&
                      l.join(a, b) == i && l.join(b, c) == i && l.join(a, c) == i;
    if (!sane) fail(Errc::invalid_input, "diamond construction failed");
    rep.diamond_witness = {l.label(o), l.label(a), l.label(b), l.label(c), l.label(i)};
  }
  return rep;
}

// Backtracking order-isomorphism search; practical for the small patterns and
// catalog entries this library deals in.  An order isomorphism of lattices
// preserves meets and joins automatically.
inline bool posets_isomorphic(const Poset& a, const Poset& b) {
  const int n = a.size();
  if (n != b.size()) return false;
  // invariant: per-element (below-count, above-count) multiset must match
  auto profile = [](const Poset& p, int x) {
    int below = 0, above = 0;
    for (int y = 0; y < p.size(); ++y) {
      if (p.lt(y, x)) ++below;
      if (p.lt(x, y)) ++above;
    }
    return std::pair<int, int>(below, above);
  };
  std::vector<std::pair<int, int>> pa(n), pb(n);
  for (int i = 0; i < n; ++i) {
    pa[i] = profile(a, i);
    pb[i] = profile(b, i);
  }
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (used[y] || pa[x] != pb[y]) continue;
      bool ok = true;
      for (int z = 0; z < x && ok; ++z) {
        if (a.leq(x, z) != b.leq(y, img[z])) ok = false;
        if (a.leq(z, x) != b.leq(img[z], y)) ok = false;
      }
      if (!ok) continue;
      img[x] = y;
      used[y] = 1;
      if (self(self, x + 1)) return true;
      img[x] = -1;
      used[y] = 0;
    }
    return false;
  };
  return rec(rec, 0);
}

inline bool lattices_isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  return posets_isomorphic(a.poset(), b.poset());
}

}  // namespace isolat
