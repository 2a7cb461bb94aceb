#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "isolat/jsl.hpp"
#include "isolat/lattice.hpp"

namespace isolat {

// A map's endpoint: a poset that may additionally carry lattice or
// join-semilattice structure.  Copies share the underlying object.
class Carrier {
 public:
  Carrier() = default;
  Carrier(FiniteLattice l) : lat_(std::make_shared<FiniteLattice>(std::move(l))) {}
  Carrier(Poset p) : pos_(std::make_shared<Poset>(std::move(p))) {}
  Carrier(FiniteJoinSemilattice s) : jsl_(std::make_shared<FiniteJoinSemilattice>(std::move(s))) {}
  Carrier(std::shared_ptr<const FiniteLattice> l) : lat_(std::move(l)) {}
  Carrier(std::shared_ptr<const Poset> p) : pos_(std::move(p)) {}
  Carrier(std::shared_ptr<const FiniteJoinSemilattice> s) : jsl_(std::move(s)) {}

  const Poset& order() const {
    if (lat_) return lat_->poset();
    if (jsl_) return jsl_->poset();
    return *pos_;
  }
  bool has_lattice() const { return static_cast<bool>(lat_); }
  bool has_join() const { return lat_ || jsl_; }
  const FiniteLattice& lattice() const {
    if (!lat_) fail(Errc::invalid_input, "carrier has no lattice structure");
    return *lat_;
  }
  std::shared_ptr<const FiniteLattice> lattice_ptr() const { return lat_; }

  int size() const { return order().size(); }
  const std::string& label(int i) const { return order().label(i); }
  int require(const std::string& l) const { return order().require(l); }
  int bottom() const { return lattice().bottom(); }
  int top() const { return lattice().top(); }
  bool leq(int a, int b) const { return order().leq(a, b); }
  int join(int a, int b) const {
    if (lat_) return lat_->join(a, b);
    if (jsl_) return jsl_->join(a, b);
    fail(Errc::invalid_input, "carrier has no join operation");
  }
  int meet(int a, int b) const { return lattice().meet(a, b); }

 private:
  std::shared_ptr<const FiniteLattice> lat_;
  std::shared_ptr<const Poset> pos_;
  std::shared_ptr<const FiniteJoinSemilattice> jsl_;
};

enum class MapMode : unsigned { isotone = 0, meet_hom, join_hom, lattice_hom, embedding };

struct MapCheck {
  bool ok = false;
  // domain element labels pinpointing the failure, when !ok
  std::array<std::string, 2> witness{};
};

// Isotone (or stronger) map between two carriers.  `img[i]` is the codomain
// index of domain element i.  The `verified` bits are only ever set by
// map_check after the corresponding sweep passed.
struct MonotoneMap {
  std::string name;
  Carrier dom, cod;
  std::vector<int> img;
  mutable std::uint8_t verified = 0;  // bit i <=> MapMode i passed

  int operator()(int x) const { return img[x]; }
  bool is_verified(MapMode m) const { return (verified >> static_cast<unsigned>(m)) & 1u; }
};

inline MonotoneMap make_map(std::string name, Carrier dom, Carrier cod, std::vector<int> img) {
  if (static_cast<int>(img.size()) != dom.size())
    fail(Errc::invalid_input, "map table size does not match domain");
  for (int v : img)
    if (v < 0 || v >= cod.size()) fail(Errc::invalid_input, "map value out of codomain range");
  return MonotoneMap{std::move(name), std::move(dom), std::move(cod), std::move(img), 0};
}

inline MapCheck map_check(const MonotoneMap& m, MapMode mode) {
  const Carrier& D = m.dom;
  const Carrier& C = m.cod;
  const int n = D.size();
  auto bad = [&](int x, int y) { return MapCheck{false, {D.label(x), D.label(y)}}; };

  switch (mode) {
    case MapMode::isotone:
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (D.leq(x, y) && !C.leq(m.img[x], m.img[y])) return bad(x, y);
      break;
    case MapMode::meet_hom:
      if (!D.has_lattice() || !C.has_lattice())
        fail(Errc::invalid_input, "meet_hom check needs lattices on both sides");
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (m.img[D.meet(x, y)] != C.meet(m.img[x], m.img[y])) return bad(x, y);
      break;
    case MapMode::join_hom:
      if (!D.has_join() || !C.has_join())
        fail(Errc::invalid_input, "join_hom check needs join structure on both sides");
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (m.img[D.join(x, y)] != C.join(m.img[x], m.img[y])) return bad(x, y);
      break;
    case MapMode::lattice_hom: {
      MapCheck c = map_check(m, MapMode::meet_hom);
      if (!c.ok) return c;
      c = map_check(m, MapMode::join_hom);
      if (!c.ok) return c;
      break;
    }
    case MapMode::embedding: {
      MapCheck c = map_check(m, MapMode::lattice_hom);
      if (!c.ok) return c;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (x != y && m.img[x] == m.img[y]) return bad(x, y);
          if (C.leq(m.img[x], m.img[y]) && !D.leq(x, y)) return bad(x, y);
        }
      break;
    }
  }
  m.verified |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(mode));
  return MapCheck{true, {}};
}

inline MonotoneMap compose(const MonotoneMap& second, const MonotoneMap& first, std::string name = "") {
  if (first.cod.size() != second.dom.size())
    fail(Errc::invalid_input, "composition endpoint mismatch");
  std::vector<int> img(first.img.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = second.img[first.img[i]];
  if (name.empty()) name = second.name + "o" + first.name;
  return make_map(std::move(name), first.dom, second.cod, std::move(img));
}

inline bool same_assignment(const MonotoneMap& a, const MonotoneMap& b) { return a.img == b.img; }

inline MonotoneMap constant_map(std::string name, Carrier dom, Carrier cod, int value) {
  std::vector<int> img(static_cast<std::size_t>(dom.size()), value);
  return make_map(std::move(name), std::move(dom), std::move(cod), std::move(img));
}

inline MonotoneMap identity_map(const Carrier& c) {
  std::vector<int> img(c.size());
  for (int i = 0; i < c.size(); ++i) img[i] = i;
  return make_map("id", c, c, std::move(img));
}

}  // namespace isolat
