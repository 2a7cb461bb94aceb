#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isolat/lattice.hpp"

namespace isolat {

// A finite poset in which every pair has a least upper bound; no meets
// required.  Same element/label conventions as FiniteLattice.
class FiniteJoinSemilattice {
 public:
  FiniteJoinSemilattice() = default;

  static FiniteJoinSemilattice from_parts(Poset poset, std::vector<std::uint16_t> join) {
    FiniteJoinSemilattice s;
    const std::size_t n = static_cast<std::size_t>(poset.size());
    if (n == 0) fail(Errc::invalid_input, "a join-semilattice needs at least one element");
    if (join.size() != n * n) fail(Errc::invalid_input, "join table size mismatch");
    s.poset_ = std::move(poset);
    s.join_ = std::move(join);
    return s;
  }

  // Derive the join table from the order; rejects posets with join-free pairs.
  static FiniteJoinSemilattice from_order(const Poset& p) {
    const int n = p.size();
    std::vector<std::uint16_t> join(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int lub = -1;
        for (int z = 0; z < n; ++z) {
          if (!p.leq(x, z) || !p.leq(y, z)) continue;
          if (lub < 0 || p.leq(z, lub)) lub = z;
        }
        if (lub < 0) fail(Errc::not_a_lattice, "pair has no least upper bound", {p.label(x), p.label(y)});
        for (int z = 0; z < n; ++z)
          if (p.leq(x, z) && p.leq(y, z) && !p.leq(lub, z))
            fail(Errc::not_a_lattice, "pair has no least upper bound", {p.label(x), p.label(y)});
        join[static_cast<std::size_t>(x) * n + y] = static_cast<std::uint16_t>(lub);
      }
    return from_parts(p, std::move(join));
  }

  static FiniteJoinSemilattice from_lattice(const FiniteLattice& l) {
    const int n = l.size();
    std::vector<std::uint16_t> join(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) join[static_cast<std::size_t>(x) * n + y] = static_cast<std::uint16_t>(l.join(x, y));
    return from_parts(l.poset(), std::move(join));
  }

  const Poset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  const std::string& name() const { return poset_.name(); }
  const std::string& label(int i) const { return poset_.label(i); }
  int index_of(std::string_view l) const { return poset_.index_of(l); }
  bool leq(int a, int b) const { return poset_.leq(a, b); }
  int join(int a, int b) const { return join_[static_cast<std::size_t>(a) * size() + b]; }

 private:
  Poset poset_;
  std::vector<std::uint16_t> join_;
};

struct JslFreeProduct {
  FiniteJoinSemilattice result;
  // per-factor embedding: factor element index -> result element index
  std::vector<std::vector<int>> embeddings;
  // per result element, the factor element it picks, or -1 off its support
  std::vector<std::vector<int>> picks;
};

// Coproduct in the category of join-semilattices: elements are formal joins
// picking one element from each factor of a nonempty support set, ordered by
// support inclusion plus componentwise order.  Labels look like "0.x∨1.y".
inline JslFreeProduct free_product_jsl(const std::vector<FiniteJoinSemilattice>& factors,
                                       std::size_t cap = kDefaultSizeCap) {
  if (factors.empty()) fail(Errc::empty_factor_list, "free product of no factors");
  const int k = static_cast<int>(factors.size());
  if (k > 30) fail(Errc::cap_exceeded, "too many factors");

  struct Elem {
    std::uint32_t support;
    std::vector<int> pick;  // size k; -1 outside support
  };
  std::vector<Elem> elems;
  for (std::uint32_t t = 1; t < (1u << k); ++t) {
    // enumerate all picks over the supported coordinates
    std::vector<int> pick(k, -1);
    for (int i = 0; i < k; ++i)
      if ((t >> i) & 1) pick[i] = 0;
    while (true) {
      elems.push_back({t, pick});
      if (elems.size() > cap) fail(Errc::size_cap_exceeded, "free product larger than size cap");
      int i = k - 1;
      for (; i >= 0; --i) {
        if (pick[i] < 0) continue;
        if (pick[i] + 1 < factors[i].size()) {
          ++pick[i];
          break;
        }
        pick[i] = 0;
      }
      if (i < 0) break;
    }
  }

  const int n = static_cast<int>(elems.size());
  std::vector<std::string> labels(n);
  for (int e = 0; e < n; ++e) {
    std::string s;
    for (int i = 0; i < k; ++i) {
      if (elems[e].pick[i] < 0) continue;
      if (!s.empty()) s += "∨";
      s += std::to_string(i) + "." + factors[i].label(elems[e].pick[i]);
    }
    labels[e] = s;
  }

  auto less_eq = [&](const Elem& a, const Elem& b) {
    if (a.support & ~b.support) return false;
    for (int i = 0; i < k; ++i)
      if (a.pick[i] >= 0 && !factors[i].leq(a.pick[i], b.pick[i])) return false;
    return true;
  };
  BitMatrix leq(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (less_eq(elems[a], elems[b])) leq.set(a, b, true);

  std::unordered_map<std::string, int> id;
  auto key = [&](const Elem& e) {
    std::string s;
    for (int i = 0; i < k; ++i) s += std::to_string(e.pick[i]) + ",";
    return s;
  };
  for (int e = 0; e < n; ++e) id[key(elems[e])] = e;

  std::vector<std::uint16_t> join(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Elem j{elems[a].support | elems[b].support, std::vector<int>(k, -1)};
      for (int i = 0; i < k; ++i) {
        const int pa = elems[a].pick[i], pb = elems[b].pick[i];
        if (pa >= 0 && pb >= 0) j.pick[i] = factors[i].join(pa, pb);
        else if (pa >= 0) j.pick[i] = pa;
        else if (pb >= 0) j.pick[i] = pb;
      }
      join[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(id.at(key(j)));
    }

  JslFreeProduct out;
  out.result = FiniteJoinSemilattice::from_parts(
      Poset::from_leq_unchecked("jsl-free-product", std::move(labels), std::move(leq)), std::move(join));
  out.picks.reserve(elems.size());
  for (const Elem& e : elems) out.picks.push_back(e.pick);
  out.embeddings.resize(k);
  for (int i = 0; i < k; ++i) {
    out.embeddings[i].resize(factors[i].size());
    for (int x = 0; x < factors[i].size(); ++x) {
      Elem e{1u << i, std::vector<int>(k, -1)};
      e.pick[i] = x;
      out.embeddings[i][x] = id.at(key(e));
    }
  }
  return out;
}

}  // namespace isolat
