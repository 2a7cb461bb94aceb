#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "isolat/lattice.hpp"

namespace isolat {

// All lattices with at most max_size elements, one per isomorphism class, in
// a deterministic order (by size, then by canonical order-matrix signature).
// Candidate orders are generated along a fixed linear extension, so every
// isomorphism class is hit; classes are collapsed by the minimal signature
// over all element permutations.  Elements are labeled a, b, c, ...
inline std::vector<FiniteLattice> lattice_catalog(int max_size) {
  if (max_size < 1) fail(Errc::invalid_input, "catalog needs max_size >= 1");
  if (max_size > 6) fail(Errc::cap_exceeded, "catalog enumeration supported up to 6 elements");
  std::vector<FiniteLattice> out;

  for (int n = 1; n <= max_size; ++n) {
    const int npairs = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    std::set<std::string> seen;
    std::vector<std::string> signatures;

    std::vector<int> perm(n);
    for (std::uint32_t mask = 0; mask < (1u << npairs); ++mask) {
      bool rel[6][6] = {};
      for (int i = 0; i < n; ++i) rel[i][i] = true;
      for (int p = 0; p < npairs; ++p)
        if ((mask >> p) & 1) rel[pairs[p].first][pairs[p].second] = true;
      // transitivity (relation only points up the index order)
      bool transitive = true;
      for (int i = 0; i < n && transitive; ++i)
        for (int j = i + 1; j < n && transitive; ++j)
          for (int k = j + 1; k < n && transitive; ++k)
            if (rel[i][j] && rel[j][k] && !rel[i][k]) transitive = false;
      if (!transitive) continue;
      // every pair needs a glb and a lub
      bool lattice = true;
      for (int x = 0; x < n && lattice; ++x)
        for (int y = 0; y < n && lattice; ++y) {
          int glb = -1, lub = -1;
          for (int z = 0; z < n; ++z) {
            if (rel[z][x] && rel[z][y]) {
              bool greatest = true;
              for (int w = 0; w < n && greatest; ++w)
                if (rel[w][x] && rel[w][y] && !rel[w][z]) greatest = false;
              if (greatest) glb = z;
            }
            if (rel[x][z] && rel[y][z]) {
              bool least = true;
              for (int w = 0; w < n && least; ++w)
                if (rel[x][w] && rel[y][w] && !rel[z][w]) least = false;
              if (least) lub = z;
            }
          }
          if (glb < 0 || lub < 0) lattice = false;
        }
      if (!lattice) continue;
      // canonical signature: lexicographically least permuted matrix
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::string best;
      do {
        std::string sig(static_cast<std::size_t>(n) * n, '0');
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (rel[i][j]) sig[static_cast<std::size_t>(perm[i]) * n + perm[j]] = '1';
        if (best.empty() || sig < best) best = sig;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (seen.insert(best).second) signatures.push_back(best);
    }

    std::sort(signatures.begin(), signatures.end());
    int k = 0;
    for (const std::string& sig : signatures) {
      ++k;
      std::vector<std::string> labels(n);
      for (int i = 0; i < n; ++i) labels[i] = std::string(1, static_cast<char>('a' + i));
      BitMatrix leq(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (sig[static_cast<std::size_t>(i) * n + j] == '1') leq.set(i, j, true);
      FiniteLattice l = lattice_from_leq(
          Poset::from_leq("lat" + std::to_string(n) + "_" + std::to_string(k), std::move(labels), std::move(leq)));
      out.push_back(std::move(l));
    }
  }
  return out;
}

}  // namespace isolat
