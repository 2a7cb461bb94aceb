#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isolat/map.hpp"
#include "isolat/variety.hpp"

namespace isolat {

// A poset with partially defined meet/join tables (-1 = undefined).  Where an
// operation is defined its value must be the glb/lub in the order; builders
// in this header guarantee that and from_parts re-checks it.
class PartialLattice {
 public:
  PartialLattice() = default;

  static PartialLattice from_parts(Poset poset, std::vector<std::int32_t> pmeet,
                                   std::vector<std::int32_t> pjoin, bool validate = true) {
    PartialLattice p;
    const std::size_t n = static_cast<std::size_t>(poset.size());
    if (pmeet.size() != n * n || pjoin.size() != n * n)
      fail(Errc::invalid_input, "partial operation table size mismatch");
    p.poset_ = std::move(poset);
    p.pmeet_ = std::move(pmeet);
    p.pjoin_ = std::move(pjoin);
    if (validate) p.validate();
    return p;
  }

  const Poset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  const std::string& name() const { return poset_.name(); }
  const std::string& label(int i) const { return poset_.label(i); }
  int index_of(std::string_view l) const { return poset_.index_of(l); }
  bool leq(int a, int b) const { return poset_.leq(a, b); }

  bool meet_defined(int a, int b) const { return at(pmeet_, a, b) >= 0; }
  bool join_defined(int a, int b) const { return at(pjoin_, a, b) >= 0; }
  int pmeet(int a, int b) const { return at(pmeet_, a, b); }
  int pjoin(int a, int b) const { return at(pjoin_, a, b); }

  void validate() const {
    const int n = size();
    for (int x = 0; x < n; ++x) {
      if (pmeet(x, x) != x || pjoin(x, x) != x)
        fail(Errc::invalid_input, "partial operations must fix the diagonal", {label(x)});
      for (int y = 0; y < n; ++y) {
        if (pmeet(x, y) != pmeet(y, x) || pjoin(x, y) != pjoin(y, x))
          fail(Errc::invalid_input, "partial operations must be symmetric", {label(x), label(y)});
        const int m = pmeet(x, y), j = pjoin(x, y);
        if (m >= 0) {
          if (!leq(m, x) || !leq(m, y)) fail(Errc::invalid_input, "meet value not a lower bound", {label(x), label(y)});
          for (int z = 0; z < n; ++z)
            if (leq(z, x) && leq(z, y) && !leq(z, m))
              fail(Errc::invalid_input, "meet value not greatest", {label(x), label(y), label(z)});
        }
        if (j >= 0) {
          if (!leq(x, j) || !leq(y, j)) fail(Errc::invalid_input, "join value not an upper bound", {label(x), label(y)});
          for (int z = 0; z < n; ++z)
            if (leq(x, z) && leq(y, z) && !leq(j, z))
              fail(Errc::invalid_input, "join value not least", {label(x), label(y), label(z)});
        }
      }
    }
  }

 private:
  std::int32_t at(const std::vector<std::int32_t>& t, int a, int b) const {
    return t[static_cast<std::size_t>(a) * size() + b];
  }

  Poset poset_;
  std::vector<std::int32_t> pmeet_, pjoin_;
};

// A total lattice viewed as a partial one.
inline PartialLattice as_partial(const FiniteLattice& l) {
  const std::size_t n = static_cast<std::size_t>(l.size());
  std::vector<std::int32_t> pm(n * n), pj(n * n);
  for (int x = 0; x < l.size(); ++x)
    for (int y = 0; y < l.size(); ++y) {
      pm[static_cast<std::size_t>(x) * n + y] = l.meet(x, y);
      pj[static_cast<std::size_t>(x) * n + y] = l.join(x, y);
    }
  return PartialLattice::from_parts(l.poset(), std::move(pm), std::move(pj), false);
}

// Components placed side by side with no cross-component order and no
// cross-component operations.  Labels are prefixed "<i>:".
inline PartialLattice disjoint_union(const std::vector<FiniteLattice>& parts) {
  if (parts.empty()) fail(Errc::empty_list, "disjoint union of no parts");
  int n = 0;
  for (const auto& p : parts) n += p.size();
  std::vector<std::string> labels;
  labels.reserve(n);
  std::vector<int> base(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    base[i] = static_cast<int>(labels.size());
    for (int x = 0; x < parts[i].size(); ++x) labels.push_back(std::to_string(i) + ":" + parts[i].label(x));
  }
  BitMatrix leq(n);
  std::vector<std::int32_t> pm(static_cast<std::size_t>(n) * n, -1), pj(pm);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int x = 0; x < parts[i].size(); ++x)
      for (int y = 0; y < parts[i].size(); ++y) {
        const int gx = base[i] + x, gy = base[i] + y;
        if (parts[i].leq(x, y)) leq.set(gx, gy, true);
        pm[static_cast<std::size_t>(gx) * n + gy] = base[i] + parts[i].meet(x, y);
        pj[static_cast<std::size_t>(gx) * n + gy] = base[i] + parts[i].join(x, y);
      }
  return PartialLattice::from_parts(Poset::from_leq_unchecked("disjoint-union", std::move(labels), std::move(leq)),
                                    std::move(pm), std::move(pj), false);
}

// Glue the components along a common sublattice K: each embeds[i] maps K into
// parts[i] as a lattice embedding, and the images are identified.  K-classes
// keep K's labels under a "K:" prefix; other elements get "<i>:".  An empty
// embedding list identifies nothing and reduces to the disjoint union.
inline PartialLattice amalgamated_union(const std::vector<FiniteLattice>& parts,
                                        const std::vector<MonotoneMap>& embeds) {
  if (parts.empty()) fail(Errc::empty_list, "amalgamated union of no parts");
  if (!embeds.empty() && embeds.size() != parts.size())
    fail(Errc::invalid_input, "need one K-embedding per component");
  const int nk = embeds.empty() ? 0 : embeds[0].dom.size();
  for (std::size_t i = 0; i < embeds.size(); ++i) {
    if (embeds[i].dom.size() != nk) fail(Errc::invalid_input, "K-embeddings have different domains");
    if (embeds[i].cod.size() != parts[i].size())
      fail(Errc::invalid_input, "K-embedding codomain does not match component");
    if (!map_check(embeds[i], MapMode::embedding).ok)
      fail(Errc::not_an_embedding, "component " + std::to_string(i) + " map is not a lattice embedding");
  }

  // global ids: K classes first, then per-component leftovers
  std::vector<std::string> labels;
  const Poset* kposet = embeds.empty() ? nullptr : &embeds[0].dom.order();
  for (int k = 0; k < nk; ++k) labels.push_back("K:" + kposet->label(k));
  std::vector<std::vector<int>> gid(parts.size());  // component element -> global id
  for (std::size_t i = 0; i < parts.size(); ++i) {
    gid[i].assign(parts[i].size(), -1);
    if (!embeds.empty())
      for (int k = 0; k < nk; ++k) gid[i][embeds[i].img[k]] = k;
    for (int x = 0; x < parts[i].size(); ++x)
      if (gid[i][x] < 0) {
        gid[i][x] = static_cast<int>(labels.size());
        labels.push_back(std::to_string(i) + ":" + parts[i].label(x));
      }
  }
  const int n = static_cast<int>(labels.size());

  // order: transitive closure of the transported component orders
  BitMatrix leq(n);
  for (int x = 0; x < n; ++x) leq.set(x, x, true);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int x = 0; x < parts[i].size(); ++x)
      for (int y = 0; y < parts[i].size(); ++y)
        if (parts[i].leq(x, y)) leq.set(gid[i][x], gid[i][y], true);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq.get(i, k))
        for (int j = 0; j < n; ++j)
          if (leq.get(k, j)) leq.set(i, j, true);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (leq.get(x, y) && leq.get(y, x))
        fail(Errc::invalid_input, "amalgamation collapses distinct elements", {labels[x], labels[y]});

  std::vector<std::int32_t> pm(static_cast<std::size_t>(n) * n, -1), pj(pm);
  auto put = [&](std::vector<std::int32_t>& t, int x, int y, int v, const char* what) {
    auto& slot = t[static_cast<std::size_t>(x) * n + y];
    if (slot >= 0 && slot != v)
      fail(Errc::invalid_input, std::string("components disagree on a ") + what, {labels[x], labels[y]});
    slot = v;
  };
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int x = 0; x < parts[i].size(); ++x)
      for (int y = 0; y < parts[i].size(); ++y) {
        put(pm, gid[i][x], gid[i][y], gid[i][parts[i].meet(x, y)], "meet");
        put(pj, gid[i][x], gid[i][y], gid[i][parts[i].join(x, y)], "join");
      }

  return PartialLattice::from_parts(Poset::from_leq(("amalgam"), std::move(labels), std::move(leq)),
                                    std::move(pm), std::move(pj), true);
}

// Every element of lo sits below every element of hi; cross pairs get
// meet = the low element, join = the high element.
inline PartialLattice ordinal_sum(const PartialLattice& lo, const PartialLattice& hi) {
  const int na = lo.size(), nb = hi.size(), n = na + nb;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < na; ++i) labels.push_back(lo.label(i));
  for (int i = 0; i < nb; ++i) {
    if (lo.index_of(hi.label(i)) >= 0) fail(Errc::label_clash, "summand labels clash at '" + hi.label(i) + "'");
    labels.push_back(hi.label(i));
  }
  BitMatrix leq(n);
  std::vector<std::int32_t> pm(static_cast<std::size_t>(n) * n, -1), pj(pm);
  auto at = [&](std::vector<std::int32_t>& t, int x, int y) -> std::int32_t& {
    return t[static_cast<std::size_t>(x) * n + y];
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const bool xl = x < na, yl = y < na;
      if (xl && yl) {
        if (lo.leq(x, y)) leq.set(x, y, true);
        if (lo.meet_defined(x, y)) at(pm, x, y) = lo.pmeet(x, y);
        if (lo.join_defined(x, y)) at(pj, x, y) = lo.pjoin(x, y);
      } else if (!xl && !yl) {
        if (hi.leq(x - na, y - na)) leq.set(x, y, true);
        if (hi.meet_defined(x - na, y - na)) at(pm, x, y) = na + hi.pmeet(x - na, y - na);
        if (hi.join_defined(x - na, y - na)) at(pj, x, y) = na + hi.pjoin(x - na, y - na);
      } else {
        if (xl) leq.set(x, y, true);
        at(pm, x, y) = xl ? x : y;
        at(pj, x, y) = xl ? y : x;
      }
    }
  return PartialLattice::from_parts(
      Poset::from_leq_unchecked(lo.name() + "+" + hi.name(), std::move(labels), std::move(leq)),
      std::move(pm), std::move(pj), false);
}

inline bool is_boolean(const FiniteLattice& b) {
  if (!variety_check(b).distributive) return false;
  for (int x = 0; x < b.size(); ++x) {
    bool has = false;
    for (int y = 0; y < b.size() && !has; ++y)
      if (b.meet(x, y) == b.bottom() && b.join(x, y) == b.top()) has = true;
    if (!has) return false;
  }
  return true;
}

// Drop the bounds of a Boolean lattice; operations stay defined exactly where
// the result avoids the removed bounds.
inline PartialLattice boolean_minus_bounds(const FiniteLattice& b) {
  if (!is_boolean(b)) fail(Errc::not_boolean, "input is not a Boolean lattice");
  if (b.size() <= 2) fail(Errc::too_small, "need more than two elements");
  std::vector<int> keep;
  for (int x = 0; x < b.size(); ++x)
    if (x != b.bottom() && x != b.top()) keep.push_back(x);
  const int n = static_cast<int>(keep.size());
  std::vector<int> back(b.size(), -1);
  for (int i = 0; i < n; ++i) back[keep[i]] = i;
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = b.label(keep[i]);
  BitMatrix leq(n);
  std::vector<std::int32_t> pm(static_cast<std::size_t>(n) * n, -1), pj(pm);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (b.leq(keep[x], keep[y])) leq.set(x, y, true);
      const int m = b.meet(keep[x], keep[y]), j = b.join(keep[x], keep[y]);
      if (back[m] >= 0) pm[static_cast<std::size_t>(x) * n + y] = back[m];
      if (back[j] >= 0) pj[static_cast<std::size_t>(x) * n + y] = back[j];
    }
  return PartialLattice::from_parts(
      Poset::from_leq_unchecked(b.name() + "-bounds", std::move(labels), std::move(leq)),
      std::move(pm), std::move(pj), false);
}

struct PartialHomCheck {
  bool ok = false;
  std::array<std::string, 2> witness{};
};

// Isotone and preserves every defined meet/join.
inline PartialHomCheck is_partial_hom(const PartialLattice& p, const FiniteLattice& l,
                                      const std::vector<int>& img) {
  if (static_cast<int>(img.size()) != p.size())
    fail(Errc::invalid_input, "assignment size does not match domain");
  for (int v : img)
    if (v < 0 || v >= l.size()) fail(Errc::invalid_input, "assignment value out of range");
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y) {
      if (p.leq(x, y) && !l.leq(img[x], img[y])) return {false, {p.label(x), p.label(y)}};
      if (p.meet_defined(x, y) && img[p.pmeet(x, y)] != l.meet(img[x], img[y]))
        return {false, {p.label(x), p.label(y)}};
      if (p.join_defined(x, y) && img[p.pjoin(x, y)] != l.join(img[x], img[y]))
        return {false, {p.label(x), p.label(y)}};
    }
  return {true, {}};
}

// All partial homomorphisms p -> l by backtracking along a linear extension,
// pruning on order and on defined operations among assigned elements.
inline std::vector<std::vector<int>> enumerate_partial_homs(const PartialLattice& p, const FiniteLattice& l,
                                                            std::size_t cap = 1u << 20) {
  std::vector<int> order = p.poset().linear_extension();
  std::vector<int> img(p.size(), -1);
  std::vector<std::vector<int>> out;
  auto rec = [&](auto&& self, std::size_t at) -> void {
    if (at == order.size()) {
      out.push_back(img);
      if (out.size() > cap) fail(Errc::cap_exceeded, "too many partial homomorphisms");
      return;
    }
    const int x = order[at];
    for (int v = 0; v < l.size(); ++v) {
      img[x] = v;
      bool ok = true;
      for (std::size_t j = 0; j < at && ok; ++j) {
        const int y = order[j];
        if (p.leq(x, y) && !l.leq(v, img[y])) ok = false;
        if (p.leq(y, x) && !l.leq(img[y], v)) ok = false;
        if (ok && p.meet_defined(x, y)) {
          const int z = p.pmeet(x, y);
          if (img[z] >= 0 && img[z] != l.meet(v, img[y])) ok = false;
        }
        if (ok && p.join_defined(x, y)) {
          const int z = p.pjoin(x, y);
          if (img[z] >= 0 && img[z] != l.join(v, img[y])) ok = false;
        }
      }
      if (ok) self(self, at + 1);
    }
    img[x] = -1;
  };
  rec(rec, 0);
  // the prefix pruning is partial: re-filter with the full check
  std::vector<std::vector<int>> final;
  for (auto& cand : out)
    if (is_partial_hom(p, l, cand).ok) final.push_back(std::move(cand));
  return final;
}

// For a partial homomorphism m of (Boolean B minus bounds) into L, the join
// of the images of any complementary pair is one constant; likewise for any
// pair joining to the top of B.  Returns that constant.
inline int complement_join_constant(const FiniteLattice& b, const FiniteLattice& l,
                                    const PartialLattice& b_minus, const std::vector<int>& img) {
  PartialHomCheck hc = is_partial_hom(b_minus, l, img);
  if (!hc.ok)
    fail(Errc::hypothesis_violated, "assignment is not a partial homomorphism", {hc.witness[0], hc.witness[1]});
  int value = -1;
  std::string first_label;
  for (int x = 0; x < b_minus.size(); ++x) {
    const int bx = b.require(b_minus.label(x));
    int comp = -1;
    for (int y = 0; y < b.size(); ++y)
      if (b.meet(bx, y) == b.bottom() && b.join(bx, y) == b.top()) comp = y;
    const int cx = b_minus.index_of(b.label(comp));
    if (cx < 0) fail(Errc::invalid_input, "complement fell on a removed bound");
    const int v = l.join(img[x], img[cx]);
    if (value < 0) {
      value = v;
      first_label = b_minus.label(x);
    } else if (v != value) {
      fail(Errc::constancy_violated, "complementary joins disagree", {first_label, b_minus.label(x)});
    }
  }
  for (int x = 0; x < b_minus.size(); ++x)
    for (int y = 0; y < b_minus.size(); ++y) {
      const int bx = b.require(b_minus.label(x)), by = b.require(b_minus.label(y));
      if (b.join(bx, by) == b.top() && l.join(img[x], img[y]) != value)
        fail(Errc::constancy_violated, "pair joining to the top disagrees", {b_minus.label(x), b_minus.label(y)});
    }
  return value;
}

}  // namespace isolat
