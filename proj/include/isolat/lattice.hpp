#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isolat/poset.hpp"

namespace isolat {

inline std::string tuple_label(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  s += ')';
  return s;
}

// A finite lattice: a poset together with total meet/join tables.  Element
// handles are indices into the label list; tables are dense n*n arrays.
// Instances are immutable once built and cheap to share via shared_ptr.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  // Caller guarantees the tables really are glb/lub for the poset order.
  static FiniteLattice from_parts(Poset poset, std::vector<std::uint16_t> meet, std::vector<std::uint16_t> join) {
    FiniteLattice l;
    const std::size_t n = static_cast<std::size_t>(poset.size());
    if (n == 0) fail(Errc::invalid_input, "a lattice needs at least one element");
    if (n > 65535) fail(Errc::size_cap_exceeded, "lattice too large for dense tables");
    if (meet.size() != n * n || join.size() != n * n)
      fail(Errc::invalid_input, "operation table size mismatch");
    l.poset_ = std::move(poset);
    l.meet_ = std::move(meet);
    l.join_ = std::move(join);
    l.locate_bounds();
    return l;
  }

  const Poset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  const std::string& name() const { return poset_.name(); }
  void rename(std::string n) { poset_.rename(std::move(n)); }
  const std::string& label(int i) const { return poset_.label(i); }
  int index_of(std::string_view l) const { return poset_.index_of(l); }
  int require(std::string_view l) const { return poset_.require(l); }

  bool leq(int a, int b) const { return poset_.leq(a, b); }
  bool lt(int a, int b) const { return poset_.lt(a, b); }
  int meet(int a, int b) const { return meet_[static_cast<std::size_t>(a) * size() + b]; }
  int join(int a, int b) const { return join_[static_cast<std::size_t>(a) * size() + b]; }

  int bottom() const { return bottom_; }
  int top() const { return top_; }

  int meet_all(const std::vector<int>& xs) const {
    if (xs.empty()) return top_;
    return std::accumulate(xs.begin() + 1, xs.end(), xs[0], [&](int a, int b) { return meet(a, b); });
  }
  int join_all(const std::vector<int>& xs) const {
    if (xs.empty()) return bottom_;
    return std::accumulate(xs.begin() + 1, xs.end(), xs[0], [&](int a, int b) { return join(a, b); });
  }

 private:
  void locate_bounds() {
    bottom_ = 0;
    top_ = 0;
    for (int i = 1; i < size(); ++i) {
      bottom_ = meet(bottom_, i);
      top_ = join(top_, i);
    }
  }

  Poset poset_;
  std::vector<std::uint16_t> meet_, join_;
  int bottom_ = -1, top_ = -1;
};

using LatPtr = std::shared_ptr<const FiniteLattice>;

// Derive meet/join tables from an order; rejects posets that are not
// lattices, naming a pair with no glb or lub.
inline FiniteLattice lattice_from_leq(const Poset& p, std::size_t cap = kDefaultSizeCap) {
  const int n = p.size();
  if (n == 0) fail(Errc::not_a_lattice, "empty poset has no bounds");
  if (static_cast<std::size_t>(n) > cap) fail(Errc::size_cap_exceeded, "poset larger than size cap");
  const BitMatrix& dn = p.down_matrix();
  const BitMatrix& up = p.up_matrix();
  std::vector<std::uint16_t> meet(static_cast<std::size_t>(n) * n), join(meet);

  // cand = common bounds as a bit row; the bound is the candidate whose
  // own (down/up) row swallows every candidate.
  const int words = static_cast<int>(dn.row(0).size());
  std::vector<std::uint64_t> cand(words);
  auto solve = [&](const BitMatrix& rows, int x, int y) -> int {
    auto rx = rows.row(x), ry = rows.row(y);
    for (int w = 0; w < words; ++w) cand[w] = rx[w] & ry[w];
    for (int w = 0; w < words; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const int z = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        auto rz = rows.row(z);
        bool swallows = true;
        for (int v = 0; v < words && swallows; ++v)
          if (cand[v] & ~rz[v]) swallows = false;
        if (swallows) return z;
      }
    }
    return -1;
  };

  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      const int m = solve(dn, x, y);
      if (m < 0) fail(Errc::not_a_lattice, "pair has no greatest lower bound", {p.label(x), p.label(y)});
      const int j = solve(up, x, y);
      if (j < 0) fail(Errc::not_a_lattice, "pair has no least upper bound", {p.label(x), p.label(y)});
      meet[static_cast<std::size_t>(x) * n + y] = meet[static_cast<std::size_t>(y) * n + x] = static_cast<std::uint16_t>(m);
      join[static_cast<std::size_t>(x) * n + y] = join[static_cast<std::size_t>(y) * n + x] = static_cast<std::uint16_t>(j);
    }
  return FiniteLattice::from_parts(p, std::move(meet), std::move(join));
}

inline std::size_t product_size(const std::vector<FiniteLattice>& factors) {
  std::size_t n = 1;
  for (const auto& f : factors) n *= static_cast<std::size_t>(f.size());
  return n;
}

// Direct product with componentwise order and operations.  Element labels are
// the canonical tuples "(a,b,...)" in row-major factor order.
inline FiniteLattice product(const std::vector<FiniteLattice>& factors, std::size_t cap = kDefaultSizeCap) {
  if (factors.empty()) fail(Errc::empty_factor_list, "product of no factors");
  const int k = static_cast<int>(factors.size());
  const std::size_t n = product_size(factors);
  if (n > cap) fail(Errc::size_cap_exceeded, "product larger than size cap");

  // mixed-radix decode table, row-major: last factor varies fastest
  std::vector<std::vector<int>> coords(n, std::vector<int>(k));
  for (std::size_t e = 0; e < n; ++e) {
    std::size_t r = e;
    for (int i = k - 1; i >= 0; --i) {
      coords[e][i] = static_cast<int>(r % factors[i].size());
      r /= factors[i].size();
    }
  }
  std::vector<std::string> labels(n);
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<std::string> parts(k);
    for (int i = 0; i < k; ++i) parts[i] = factors[i].label(coords[e][i]);
    labels[e] = tuple_label(parts);
  }

  BitMatrix leq(static_cast<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      bool le = true;
      for (int i = 0; i < k && le; ++i)
        if (!factors[i].leq(coords[a][i], coords[b][i])) le = false;
      if (le) leq.set(static_cast<int>(a), static_cast<int>(b), true);
    }

  std::vector<std::uint16_t> meet(n * n), join(n * n);
  std::vector<std::size_t> radix(k);  // weight of each coordinate
  {
    std::size_t w = 1;
    for (int i = k - 1; i >= 0; --i) {
      radix[i] = w;
      w *= factors[i].size();
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t m = 0, j = 0;
      for (int i = 0; i < k; ++i) {
        m += radix[i] * static_cast<std::size_t>(factors[i].meet(coords[a][i], coords[b][i]));
        j += radix[i] * static_cast<std::size_t>(factors[i].join(coords[a][i], coords[b][i]));
      }
      meet[a * n + b] = static_cast<std::uint16_t>(m);
      join[a * n + b] = static_cast<std::uint16_t>(j);
    }

  std::string name;
  for (int i = 0; i < k; ++i) {
    if (i) name += "*";
    name += factors[i].name().empty() ? "?" : factors[i].name();
  }
  return FiniteLattice::from_parts(Poset::from_leq_unchecked(name, std::move(labels), std::move(leq)),
                                   std::move(meet), std::move(join));
}

// Order-reversal: same elements and labels, meets and joins exchanged.
inline FiniteLattice dual(const FiniteLattice& l) {
  const int n = l.size();
  BitMatrix leq(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (l.leq(b, a)) leq.set(a, b, true);
  std::vector<std::uint16_t> meet(static_cast<std::size_t>(n) * n), join(meet);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      meet[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(l.join(a, b));
      join[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(l.meet(a, b));
    }
  return FiniteLattice::from_parts(Poset::from_leq_unchecked(l.name() + "^op", l.poset().labels(), std::move(leq)),
                                   std::move(meet), std::move(join));
}

// Restriction of L to a subset that is closed under meet and join.  Keeps the
// original labels; element order follows ascending parent index.
inline FiniteLattice induced_sublattice(const FiniteLattice& l, std::vector<int> members, std::string name) {
  if (members.empty()) fail(Errc::invalid_input, "induced sublattice of empty member set");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const int n = static_cast<int>(members.size());
  std::vector<int> back(l.size(), -1);
  for (int i = 0; i < n; ++i) back[members[i]] = i;
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = l.label(members[i]);
  BitMatrix leq(n);
  std::vector<std::uint16_t> meet(static_cast<std::size_t>(n) * n), join(meet);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (l.leq(members[a], members[b])) leq.set(a, b, true);
      const int m = back[l.meet(members[a], members[b])];
      const int j = back[l.join(members[a], members[b])];
      if (m < 0 || j < 0)
        fail(Errc::invalid_input, "member set not closed under the lattice operations",
             {l.label(members[a]), l.label(members[b])});
      meet[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(m);
      join[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(j);
    }
  return FiniteLattice::from_parts(Poset::from_leq_unchecked(std::move(name), std::move(labels), std::move(leq)),
                                   std::move(meet), std::move(join));
}

// Smallest sublattice containing the seed, as a lattice in its own right.
inline FiniteLattice sublattice_closure(const FiniteLattice& l, const std::vector<int>& seed,
                                        std::string name = "") {
  if (seed.empty()) fail(Errc::empty_seed, "sublattice closure of empty seed");
  std::vector<char> in(l.size(), 0);
  std::vector<int> work;
  for (int s : seed) {
    if (s < 0 || s >= l.size()) fail(Errc::invalid_input, "seed element out of range");
    if (!in[s]) { in[s] = 1; work.push_back(s); }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<int> snapshot = work;
    for (int a : snapshot)
      for (int b : snapshot) {
        for (int c : {l.meet(a, b), l.join(a, b)}) {
          if (!in[c]) {
            in[c] = 1;
            work.push_back(c);
            grew = true;
          }
        }
      }
  }
  if (name.empty()) name = l.name() + "-sub";
  return induced_sublattice(l, work, std::move(name));
}

// All down-closed subsets of a poset (including the empty set), ordered by
// inclusion; meet = intersection, join = union.  Subset labels list member
// labels in element order: "{a,b}".
inline FiniteLattice downsets(const Poset& p, std::size_t cap = kDefaultSizeCap) {
  const int n = p.size();
  if (n > 64) fail(Errc::size_cap_exceeded, "downset enumeration limited to 64 elements");
  // Recurse on a maximal element m: downsets avoiding m, plus (D + m) for
  // downsets D covering everything strictly below m.
  std::vector<std::uint64_t> sets;
  std::vector<int> order = p.linear_extension();
  sets.push_back(0);
  for (int idx : order) {  // ascending: all strictly-below elements processed first
    const std::size_t count = sets.size();
    std::uint64_t below = 0;
    for (int y = 0; y < n; ++y)
      if (p.lt(y, idx)) below |= std::uint64_t(1) << y;
    for (std::size_t s = 0; s < count; ++s) {
      if ((sets[s] & below) == below) {
        sets.push_back(sets[s] | (std::uint64_t(1) << idx));
        if (sets.size() > cap) fail(Errc::size_cap_exceeded, "downset lattice larger than size cap");
      }
    }
  }
  std::sort(sets.begin(), sets.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  const std::size_t m = sets.size();
  std::unordered_map<std::uint64_t, int> id;
  for (std::size_t i = 0; i < m; ++i) id[sets[i]] = static_cast<int>(i);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::string s = "{";
    bool first = true;
    for (int e = 0; e < n; ++e)
      if ((sets[i] >> e) & 1) {
        if (!first) s += ',';
        s += p.label(e);
        first = false;
      }
    s += '}';
    labels[i] = s;
  }
  BitMatrix leq(static_cast<int>(m));
  std::vector<std::uint16_t> meet(m * m), join(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if ((sets[a] & ~sets[b]) == 0) leq.set(static_cast<int>(a), static_cast<int>(b), true);
      meet[a * m + b] = static_cast<std::uint16_t>(id.at(sets[a] & sets[b]));
      join[a * m + b] = static_cast<std::uint16_t>(id.at(sets[a] | sets[b]));
    }
  return FiniteLattice::from_parts(
      Poset::from_leq_unchecked("D(" + (p.name().empty() ? std::string("?") : p.name()) + ")", std::move(labels),
                                std::move(leq)),
      std::move(meet), std::move(join));
}

// Stack B on top of A: every element of A lies below every element of B.
// Labels must not clash.
inline FiniteLattice ordinal_sum_lattice(const FiniteLattice& a, const FiniteLattice& b, std::string name = "") {
  const int na = a.size(), nb = b.size(), n = na + nb;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < na; ++i) labels.push_back(a.label(i));
  for (int i = 0; i < nb; ++i) {
    if (a.index_of(b.label(i)) >= 0) fail(Errc::label_clash, "summand labels clash at '" + b.label(i) + "'");
    labels.push_back(b.label(i));
  }
  BitMatrix leq(n);
  std::vector<std::uint16_t> meet(static_cast<std::size_t>(n) * n), join(meet);
  auto at = [&](int x, int y) { return static_cast<std::size_t>(x) * n + y; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const bool xa = x < na, ya = y < na;
      if (xa && ya) {
        if (a.leq(x, y)) leq.set(x, y, true);
        meet[at(x, y)] = static_cast<std::uint16_t>(a.meet(x, y));
        join[at(x, y)] = static_cast<std::uint16_t>(a.join(x, y));
      } else if (!xa && !ya) {
        if (b.leq(x - na, y - na)) leq.set(x, y, true);
        meet[at(x, y)] = static_cast<std::uint16_t>(na + b.meet(x - na, y - na));
        join[at(x, y)] = static_cast<std::uint16_t>(na + b.join(x - na, y - na));
      } else {
        if (xa) leq.set(x, y, true);  // low part below high part
        meet[at(x, y)] = static_cast<std::uint16_t>(xa ? x : y);
        join[at(x, y)] = static_cast<std::uint16_t>(xa ? y : x);
      }
    }
  if (name.empty()) name = a.name() + "+" + b.name();
  return FiniteLattice::from_parts(Poset::from_leq_unchecked(std::move(name), std::move(labels), std::move(leq)),
                                   std::move(meet), std::move(join));
}

// One new element below (or above) everything.
inline FiniteLattice adjoin_bottom(const FiniteLattice& l, const std::string& label) {
  BitMatrix one(1);
  one.set(0, 0, true);
  FiniteLattice pt = FiniteLattice::from_parts(Poset::from_leq_unchecked("1", {label}, std::move(one)), {0}, {0});
  return ordinal_sum_lattice(pt, l, "bot+" + l.name());
}
inline FiniteLattice adjoin_top(const FiniteLattice& l, const std::string& label) {
  BitMatrix one(1);
  one.set(0, 0, true);
  FiniteLattice pt = FiniteLattice::from_parts(Poset::from_leq_unchecked("1", {label}, std::move(one)), {0}, {0});
  return ordinal_sum_lattice(l, pt, l.name() + "+top");
}

// upper/lower bounds of a subset, ascending element order
inline std::vector<int> upper_bounds(const FiniteLattice& l, const std::vector<int>& xs) {
  std::vector<int> out;
  for (int u = 0; u < l.size(); ++u) {
    bool ok = true;
    for (int x : xs)
      if (!l.leq(x, u)) { ok = false; break; }
    if (ok) out.push_back(u);
  }
  return out;
}
inline std::vector<int> lower_bounds(const FiniteLattice& l, const std::vector<int>& xs) {
  std::vector<int> out;
  for (int u = 0; u < l.size(); ++u) {
    bool ok = true;
    for (int x : xs)
      if (!l.leq(u, x)) { ok = false; break; }
    if (ok) out.push_back(u);
  }
  return out;
}

// Structural sanity used by the test suite: tables are commutative and
// idempotent, absorption holds, and every table entry really is the bound
// its slot claims.
inline void validate_lattice(const FiniteLattice& l) {
  const int n = l.size();
  for (int x = 0; x < n; ++x) {
    if (l.meet(x, x) != x || l.join(x, x) != x) fail(Errc::invalid_input, "idempotence fails", {l.label(x)});
    for (int y = 0; y < n; ++y) {
      const int m = l.meet(x, y), j = l.join(x, y);
      if (m != l.meet(y, x) || j != l.join(y, x)) fail(Errc::invalid_input, "commutativity fails", {l.label(x), l.label(y)});
      if (l.meet(x, j) != x || l.join(x, m) != x) fail(Errc::invalid_input, "absorption fails", {l.label(x), l.label(y)});
      if (!l.leq(m, x) || !l.leq(m, y) || !l.leq(x, j) || !l.leq(y, j))
        fail(Errc::invalid_input, "table entry not a bound", {l.label(x), l.label(y)});
      for (int z = 0; z < n; ++z) {
        if (l.leq(z, x) && l.leq(z, y) && !l.leq(z, m))
          fail(Errc::invalid_input, "meet entry not greatest", {l.label(x), l.label(y), l.label(z)});
        if (l.leq(x, z) && l.leq(y, z) && !l.leq(j, z))
          fail(Errc::invalid_input, "join entry not least", {l.label(x), l.label(y), l.label(z)});
      }
    }
  }
}

}  // namespace isolat
