#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "isolat/errors.hpp"
#include "isolat/lattice.hpp"
#include "isolat/term.hpp"

namespace isolat {

// Elements of the free Boolean algebra on n generators are sets of minterms,
// packed as bitmasks (minterm m has generator i true iff bit i of m is set).
// n <= 5 keeps everything inside a 32-bit word.

inline std::uint32_t fb_full(int n) {
  const int minterms = 1 << n;
  return minterms >= 32 ? 0xffffffffu : (std::uint32_t{1} << minterms) - 1;
}

inline std::uint32_t fb_gen(int i, int n) {
  std::uint32_t mask = 0;
  for (int m = 0; m < (1 << n); ++m)
    if (m & (1 << i)) mask |= std::uint32_t{1} << m;
  return mask;
}

inline bool fb_leq(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

inline std::uint32_t fb_from_term(const TermPtr& t, int n) {
  using K = LatticeTerm::Kind;
  if (n < 1 || n > 5) fail(Errc::size_cap_exceeded, "free Boolean support is limited to 1..5 generators");
  switch (t->kind) {
    case K::gen:
      if (t->gen < 0 || t->gen >= n) fail(Errc::unknown_generator, "generator index out of range");
      return fb_gen(t->gen, n);
    case K::meet: {
      std::uint32_t acc = fb_from_term(t->args[0], n);
      for (std::size_t i = 1; i < t->args.size(); ++i) acc &= fb_from_term(t->args[i], n);
      return acc;
    }
    case K::join: {
      std::uint32_t acc = fb_from_term(t->args[0], n);
      for (std::size_t i = 1; i < t->args.size(); ++i) acc |= fb_from_term(t->args[i], n);
      return acc;
    }
    case K::negation:
      return fb_full(n) & ~fb_from_term(t->args[0], n);
  }
  fail(Errc::invalid_input, "malformed term");
}

inline std::uint32_t fb_complement(std::uint32_t a, int n) { return fb_full(n) & ~a; }

// A cube fixes some generators to values and leaves the rest free; it covers
// the minterms agreeing with it on the fixed bits.
struct FbCube {
  std::uint32_t fixed;   // which generator bits are constrained
  std::uint32_t values;  // their required values (subset of fixed)

  friend bool operator<(const FbCube& a, const FbCube& b) {
    return a.fixed != b.fixed ? a.fixed < b.fixed : a.values < b.values;
  }
  friend bool operator==(const FbCube& a, const FbCube& b) { return a.fixed == b.fixed && a.values == b.values; }
};

namespace detail {

inline bool cube_inside(const FbCube& c, std::uint32_t mask, int n) {
  for (int m = 0; m < (1 << n); ++m)
    if ((static_cast<std::uint32_t>(m) & c.fixed) == c.values && !(mask & (std::uint32_t{1} << m))) return false;
  return true;
}

}  // namespace detail

// All prime implicants of the minterm set, found by repeatedly dropping
// single literals from minterm cubes while the cube stays inside the set.
// A cube from which nothing can be dropped is prime.
inline std::vector<FbCube> prime_implicants(std::uint32_t mask, int n) {
  std::set<FbCube> level;
  const std::uint32_t gen_bits = (std::uint32_t{1} << n) - 1;
  for (int m = 0; m < (1 << n); ++m)
    if (mask & (std::uint32_t{1} << m)) level.insert({gen_bits, static_cast<std::uint32_t>(m)});
  std::set<FbCube> primes;
  while (!level.empty()) {
    std::set<FbCube> next;
    for (const FbCube& c : level) {
      bool shrank = false;
      for (int b = 0; b < n; ++b) {
        const std::uint32_t bit = std::uint32_t{1} << b;
        if (!(c.fixed & bit)) continue;
        FbCube cand{c.fixed & ~bit, c.values & ~bit};
        if (detail::cube_inside(cand, mask, n)) {
          next.insert(cand);
          shrank = true;
        }
      }
      if (!shrank) primes.insert(c);
    }
    level = std::move(next);
  }
  return {primes.begin(), primes.end()};
}

// Materialize the full free Boolean algebra on n generators (n <= 3, i.e.
// at most 256 elements) as a finite lattice.  Labels are the minterm masks
// in hex with a caller-chosen prefix so several copies can coexist.
inline FiniteLattice fb_lattice(int n, const std::string& prefix = "m") {
  if (n < 1 || n > 3) fail(Errc::size_cap_exceeded, "only free Boolean algebras on up to 3 generators materialize");
  const std::size_t count = std::size_t{1} << (1 << n);
  const int width = (1 << n) > 4 ? 2 : 1;
  std::vector<std::string> labels(count);
  for (std::size_t a = 0; a < count; ++a) {
    static const char* hexd = "0123456789abcdef";
    std::string h;
    for (int d = width - 1; d >= 0; --d) h += hexd[(a >> (4 * d)) & 0xf];
    labels[a] = prefix + h;
  }
  BitMatrix leq(static_cast<int>(count));
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b)
      if (fb_leq(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)))
        leq.set(static_cast<int>(a), static_cast<int>(b), true);
  Poset p = Poset::from_leq_unchecked("free_bool_" + std::to_string(n), labels, leq);
  std::vector<std::uint16_t> meet(count * count), join(count * count);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      meet[a * count + b] = static_cast<std::uint16_t>(a & b);
      join[a * count + b] = static_cast<std::uint16_t>(a | b);
    }
  return FiniteLattice::from_parts(std::move(p), std::move(meet), std::move(join));
}

}  // namespace isolat
