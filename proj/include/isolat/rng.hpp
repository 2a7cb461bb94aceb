#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "isolat/map.hpp"

namespace isolat {

// All randomness in the library flows through one seeded 64-bit engine so
// that sweeps are reproducible and reports can record the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}
  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return eng_(); }
  // uniform in [0, n)
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

// Sample an isotone map domain -> M by walking a linear extension and drawing
// each value uniformly from the up-set of the join of the already-fixed
// values below.  Every isotone map has positive probability.
inline MonotoneMap random_isotone_map(const Carrier& dom, const Carrier& cod, Rng& rng,
                                      std::string name = "phi") {
  const Poset& d = dom.order();
  const FiniteLattice& m = cod.lattice();
  std::vector<int> img(d.size(), -1);
  for (int x : d.linear_extension()) {
    int floor = m.bottom();
    for (int y = 0; y < d.size(); ++y)
      if (y != x && d.leq(y, x) && img[y] >= 0) floor = m.join(floor, img[y]);
    std::vector<int> candidates;
    for (int v = 0; v < m.size(); ++v)
      if (m.leq(floor, v)) candidates.push_back(v);
    img[x] = candidates[rng.below(candidates.size())];
  }
  MonotoneMap out = make_map(std::move(name), dom, cod, std::move(img));
  map_check(out, MapMode::isotone);
  return out;
}

}  // namespace isolat
