#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "isolat/errors.hpp"
#include "isolat/lattice.hpp"
#include "isolat/term.hpp"

namespace isolat {

// An element of the free distributive lattice (without bounds) on a small
// generator set, kept as the antichain of minimal "meet clauses".  Each
// clause is a nonempty generator subset as a bitmask; the element is the
// join of the clause meets.  Antichains are stored sorted for cheap
// structural comparison.
struct FdElement {
  std::vector<std::uint32_t> clauses;

  friend bool operator==(const FdElement& a, const FdElement& b) { return a.clauses == b.clauses; }
  friend bool operator<(const FdElement& a, const FdElement& b) { return a.clauses < b.clauses; }
};

namespace detail {

inline FdElement fd_normalize(std::vector<std::uint32_t> clauses) {
  // keep only minimal clauses: a clause is dominated by any subset of it
  std::vector<std::uint32_t> kept;
  for (std::uint32_t c : clauses) {
    bool dominated = false;
    for (std::uint32_t d : clauses)
      if (d != c && (d & c) == d) { dominated = true; break; }
    if (dominated) continue;
    // d == c duplicates are collapsed below
    kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return {std::move(kept)};
}

}  // namespace detail

inline FdElement fd_gen(int i) { return {{std::uint32_t{1} << i}}; }

// a <= b  iff  every clause of a contains some clause of b
inline bool fd_leq(const FdElement& a, const FdElement& b) {
  for (std::uint32_t c : a.clauses) {
    bool covered = false;
    for (std::uint32_t d : b.clauses)
      if ((c & d) == d) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

inline FdElement fd_join(const FdElement& a, const FdElement& b) {
  std::vector<std::uint32_t> all = a.clauses;
  all.insert(all.end(), b.clauses.begin(), b.clauses.end());
  return detail::fd_normalize(std::move(all));
}

inline FdElement fd_meet(const FdElement& a, const FdElement& b) {
  std::vector<std::uint32_t> all;
  all.reserve(a.clauses.size() * b.clauses.size());
  for (std::uint32_t c : a.clauses)
    for (std::uint32_t d : b.clauses) all.push_back(c | d);
  return detail::fd_normalize(std::move(all));
}

// Evaluate a complement-free term into the antichain representation.
inline FdElement fd_from_term(const TermPtr& t) {
  using K = LatticeTerm::Kind;
  switch (t->kind) {
    case K::gen:
      if (t->gen < 0 || t->gen >= 32) fail(Errc::invalid_input, "generator index out of range");
      return fd_gen(t->gen);
    case K::meet: {
      FdElement acc = fd_from_term(t->args[0]);
      for (std::size_t i = 1; i < t->args.size(); ++i) acc = fd_meet(acc, fd_from_term(t->args[i]));
      return acc;
    }
    case K::join: {
      FdElement acc = fd_from_term(t->args[0]);
      for (std::size_t i = 1; i < t->args.size(); ++i) acc = fd_join(acc, fd_from_term(t->args[i]));
      return acc;
    }
    case K::negation:
      fail(Errc::complement_outside_boolean, "free distributive lattices are complement-free");
  }
  fail(Errc::invalid_input, "malformed term");
}

// Recover a term (join of clause meets) from an antichain; used for labels
// and for mapping into term-based codomains.
inline TermPtr fd_to_term(const FdElement& e) {
  std::vector<TermPtr> joinands;
  for (std::uint32_t c : e.clauses) {
    std::vector<TermPtr> meetands;
    for (int i = 0; i < 32; ++i)
      if (c & (std::uint32_t{1} << i)) meetands.push_back(make_gen(i));
    joinands.push_back(meetands.size() == 1 ? meetands[0] : make_meet(std::move(meetands)));
  }
  if (joinands.empty()) fail(Errc::invalid_input, "empty antichain");
  return joinands.size() == 1 ? joinands[0] : make_join(std::move(joinands));
}

// All elements, ordered by (number of clauses, clause lists).  Sizes grow
// as 1, 4, 18, 166 for 1..4 generators; larger sets are refused.
inline std::vector<FdElement> fd_enumerate(int n) {
  if (n < 1 || n > 4) fail(Errc::size_cap_exceeded, "free distributive enumeration supports 1..4 generators");
  // grow the element set from the generators by closing under meet and join
  std::vector<FdElement> elems;
  for (int i = 0; i < n; ++i) elems.push_back(fd_gen(i));
  auto add = [&elems](const FdElement& e) {
    for (const auto& x : elems)
      if (x == e) return false;
    elems.push_back(e);
    return true;
  };
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t sz = elems.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = i + 1; j < sz; ++j) {
        if (add(fd_meet(elems[i], elems[j]))) grew = true;
        if (add(fd_join(elems[i], elems[j]))) grew = true;
      }
  }
  std::sort(elems.begin(), elems.end(), [](const FdElement& a, const FdElement& b) {
    if (a.clauses.size() != b.clauses.size()) return a.clauses.size() < b.clauses.size();
    return a.clauses < b.clauses;
  });
  return elems;
}

struct FdLattice {
  FiniteLattice lattice;          // the materialized order
  std::vector<FdElement> elems;   // index-aligned antichain forms
  std::vector<std::string> gens;  // generator names used for labels

  int index_of(const FdElement& e) const {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == e) return static_cast<int>(i);
    fail(Errc::invalid_input, "element is not in the enumerated lattice");
  }
};

// Materialize the free distributive lattice on the named generators as a
// finite lattice whose labels are the canonical terms.
inline FdLattice fd_lattice(const std::vector<std::string>& gens) {
  if (gens.empty()) fail(Errc::invalid_input, "need at least one generator");
  std::vector<FdElement> elems = fd_enumerate(static_cast<int>(gens.size()));
  const std::size_t n = elems.size();
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = render_term(fd_to_term(elems[i]), gens);
  BitMatrix leq(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (fd_leq(elems[i], elems[j])) leq.set(static_cast<int>(i), static_cast<int>(j), true);
  Poset p = Poset::from_leq_unchecked("free_distr_" + std::to_string(gens.size()), labels, leq);
  auto at = [&elems](const FdElement& e) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == e) return static_cast<int>(i);
    fail(Errc::invalid_input, "closure leak in free distributive enumeration");
  };
  std::vector<std::uint16_t> meet(n * n), join(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      meet[i * n + j] = static_cast<std::uint16_t>(at(fd_meet(elems[i], elems[j])));
      join[i * n + j] = static_cast<std::uint16_t>(at(fd_join(elems[i], elems[j])));
    }
  return {FiniteLattice::from_parts(std::move(p), std::move(meet), std::move(join)), std::move(elems), gens};
}

// (a∧b) ∨ (b∧c) ∨ (c∧a) — the self-dual ternary term
inline TermPtr median_term(int a, int b, int c) {
  return make_join({make_meet({make_gen(a), make_gen(b)}), make_meet({make_gen(b), make_gen(c)}),
                    make_meet({make_gen(c), make_gen(a)})});
}

inline int median_in(const FiniteLattice& l, int a, int b, int c) {
  return l.join(l.join(l.meet(a, b), l.meet(b, c)), l.meet(c, a));
}

}  // namespace isolat
