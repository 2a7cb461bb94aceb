// Posets, lattices, shapes, io round-trips, partial lattices, semilattice
// coproducts, maps, and the variety checks.

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "isolat/catalog.hpp"
#include "isolat/extend.hpp"
#include "isolat/io.hpp"
#include "isolat/jsl.hpp"
#include "isolat/lattice.hpp"
#include "isolat/map.hpp"
#include "isolat/partial.hpp"
#include "isolat/rng.hpp"
#include "isolat/shapes.hpp"
#include "isolat/subspaces.hpp"
#include "isolat/variety.hpp"

using namespace isolat;

TEST_CASE("covers close transitively") {
  Poset p = Poset::from_covers("c3", {"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  CHECK(p.leq(0, 2));
  CHECK(p.lt(0, 1));
  CHECK_FALSE(p.leq(2, 0));
  CHECK(p.cover_pairs().size() == 2);
}

TEST_CASE("bad poset input is rejected") {
  CHECK_THROWS_AS(Poset::from_covers("bad", {"x", "y"}, {{"x", "q"}}), Error);
  BitMatrix m(2);  // not reflexive
  m.set(0, 1, true);
  CHECK_THROWS_AS(Poset::from_leq("bad", {"x", "y"}, std::move(m)), Error);
}

TEST_CASE("linear extension respects the order") {
  Poset p = n5().poset();
  std::vector<int> order = p.linear_extension();
  std::vector<int> pos(static_cast<std::size_t>(p.size()));
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (p.lt(x, y)) CHECK(pos[static_cast<std::size_t>(x)] < pos[static_cast<std::size_t>(y)]);
}

TEST_CASE("meet and join tables from the order") {
  FiniteLattice sq = two_by_two();
  validate_lattice(sq);
  CHECK(sq.meet(1, 2) == sq.bottom());
  CHECK(sq.join(1, 2) == sq.top());
  // a poset with two incomparable upper bounds is not a lattice
  Poset p = Poset::from_covers("bowtie", {"x", "y", "p", "q"},
                               {{"x", "p"}, {"x", "q"}, {"y", "p"}, {"y", "q"}});
  CHECK_THROWS_AS(lattice_from_leq(p), Error);
}

TEST_CASE("products work coordinatewise, last factor fastest") {
  FiniteLattice pr = product({chain(2), chain(3)});
  REQUIRE(pr.size() == 6);
  const int x = pr.require("(1,0)"), y = pr.require("(0,2)");
  CHECK(pr.label(pr.meet(x, y)) == "(0,0)");
  CHECK(pr.label(pr.join(x, y)) == "(1,2)");
}

TEST_CASE("duality swaps the operations") {
  FiniteLattice d = dual(n5());
  FiniteLattice n = n5();
  for (int x = 0; x < n.size(); ++x)
    for (int y = 0; y < n.size(); ++y) {
      CHECK(d.meet(x, y) == n.join(x, y));
      CHECK(d.join(x, y) == n.meet(x, y));
    }
}

TEST_CASE("induced sublattices demand closure") {
  FiniteLattice sq = two_by_two();
  FiniteLattice sub = induced_sublattice(sq, {0, 1, 3}, "side");
  CHECK(sub.size() == 3);
  CHECK_THROWS_AS(induced_sublattice(sq, {1, 2}, "open"), Error);
  FiniteLattice cl = sublattice_closure(sq, {1, 2}, "closed");
  CHECK(cl.size() == 4);
}

TEST_CASE("downset lattices of small posets") {
  // 2-chain -> 3-chain of downsets; 2-antichain -> square
  CHECK(downsets(chain(2).poset()).size() == 3);
  Poset anti = Poset::from_covers("a2", {"x", "y"}, {});
  FiniteLattice dl = downsets(anti);
  CHECK(dl.size() == 4);
  CHECK(lattices_isomorphic(dl, two_by_two()));
}

TEST_CASE("ordinal sums stack blocks") {
  FiniteLattice four = ordinal_sum_lattice(chain(2), lattice_from_leq(Poset::from_covers(
                                                         "c2", {"p", "q"}, {{"p", "q"}})));
  CHECK(four.size() == 4);
  CHECK(four.leq(1, 2));  // old top under the next block's bottom
  CHECK_THROWS_AS(ordinal_sum_lattice(chain(2), chain(2)), Error);  // label clash
}

TEST_CASE("adjoined bounds sit outside the old order") {
  FiniteLattice l = adjoin_bottom(m3(), "bot");
  REQUIRE(l.size() == 6);
  CHECK(l.label(l.bottom()) == "bot");
  FiniteLattice t = adjoin_top(m3(), "tip");
  CHECK(t.label(t.top()) == "tip");
}

TEST_CASE("variety checks on the classic shapes") {
  CHECK(variety_check(boolean_cube(3)).distributive);
  CHECK(variety_check(chain(4)).distributive);
  VarietyReport vm = variety_check(m3());
  CHECK(vm.modular);
  CHECK_FALSE(vm.distributive);
  REQUIRE(vm.diamond_witness.has_value());
  VarietyReport vn = variety_check(n5());
  CHECK_FALSE(vn.modular);
  REQUIRE(vn.pentagon_witness.has_value());
}

TEST_CASE("isomorphism testing separates the five-element shapes") {
  CHECK(posets_isomorphic(chain(3).poset(), Poset::from_covers("r", {"p", "q", "r"}, {{"p", "q"}, {"q", "r"}})));
  CHECK_FALSE(lattices_isomorphic(m3(), n5()));
  CHECK(lattices_isomorphic(subspaces_f2(2), m3()));
}

TEST_CASE("catalog sizes and membership") {
  std::vector<FiniteLattice> c4 = lattice_catalog(4);
  REQUIRE(c4.size() == 5);  // 1 + 1 + 1 + 2 up to isomorphism
  std::vector<FiniteLattice> c5 = lattice_catalog(5);
  REQUIRE(c5.size() == 10);
  bool has_m3 = false, has_n5 = false;
  for (const FiniteLattice& l : c5) {
    validate_lattice(l);
    if (l.size() == 5 && lattices_isomorphic(l, m3())) has_m3 = true;
    if (l.size() == 5 && lattices_isomorphic(l, n5())) has_n5 = true;
  }
  CHECK(has_m3);
  CHECK(has_n5);
  for (std::size_t i = 0; i < c5.size(); ++i)
    for (std::size_t j = i + 1; j < c5.size(); ++j) CHECK_FALSE(lattices_isomorphic(c5[i], c5[j]));
}

TEST_CASE("map checks and their witnesses") {
  Carrier sq(two_by_two()), c2(chain(2));
  CHECK_THROWS_AS(make_map("broken", c2, sq, {0, 9}), Error);
  MonotoneMap down = make_map("down", sq, c2, {1, 0, 0, 1});
  MapCheck mc = map_check(down, MapMode::isotone);
  CHECK_FALSE(mc.ok);
  CHECK(!mc.witness[0].empty());
  // meet-hom but not join-hom: collapse both atoms of the square
  MonotoneMap squash = make_map("squash", sq, c2, {0, 0, 0, 1});
  CHECK(map_check(squash, MapMode::meet_hom).ok);
  CHECK_FALSE(map_check(squash, MapMode::join_hom).ok);
  MonotoneMap emb = make_map("emb", c2, Carrier(chain(3)), {0, 2});
  CHECK(map_check(emb, MapMode::embedding).ok);
  CHECK(emb.is_verified(MapMode::lattice_hom));
}

TEST_CASE("composition and identities") {
  Carrier a(chain(2)), b(chain(3)), c(chain(2));
  MonotoneMap f = make_map("f", a, b, {0, 2});
  MonotoneMap g = make_map("g", b, c, {0, 0, 1});
  MonotoneMap gf = compose(g, f);
  CHECK(same_assignment(gf, identity_map(a)));
  CHECK(constant_map("k", a, b, 1).img == std::vector<int>{1, 1});
  Carrier other(chain(4));
  CHECK_THROWS_AS(compose(make_map("h", other, c, {0, 0, 1, 1}), f), Error);
}

TEST_CASE("lattice text format round-trips") {
  const FiniteLattice m = m3();
  const std::string text = io::write_lattice(m);
  FiniteLattice back = io::read_lattice(text);
  REQUIRE(back.size() == m.size());
  for (int x = 0; x < m.size(); ++x) {
    CHECK(back.label(x) == m.label(x));
    for (int y = 0; y < m.size(); ++y) CHECK(back.leq(x, y) == m.leq(x, y));
  }
  CHECK_THROWS_AS(io::read_lattice("lattice l\nelements a b\ncover a < q\n"), Error);
  CHECK_THROWS_AS(io::read_lattice("nonsense\n"), Error);
}

TEST_CASE("partial lattice text format round-trips") {
  PartialLattice p = boolean_minus_bounds(boolean_cube(2));
  const std::string text = io::write_partial(p);
  PartialLattice back = io::read_partial(text);
  REQUIRE(back.size() == p.size());
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y) {
      CHECK(back.pmeet(x, y) == p.pmeet(x, y));
      CHECK(back.pjoin(x, y) == p.pjoin(x, y));
    }
}

TEST_CASE("map text format round-trips") {
  Carrier dom(two_by_two()), cod(m3());
  MonotoneMap f = make_map("f", dom, cod, {0, 1, 2, 4});
  const std::string text = io::write_map(f);
  std::istringstream in(text);
  std::vector<std::string> header;
  REQUIRE(io::next_line(in, header));
  MonotoneMap back = io::read_map_body(in, io::parse_map_header(header), dom, cod);
  CHECK(same_assignment(back, f));
  // every element needs an image
  std::istringstream partial_in("(0,0) -> 0\n");
  CHECK_THROWS_AS(io::read_map_body(partial_in, io::parse_map_header({"map", "g", ":", "d", "->", "c"}), dom, cod),
                  Error);
}

TEST_CASE("partial lattices validate their fragments") {
  PartialLattice whole = as_partial(m3());
  CHECK(whole.size() == 5);
  PartialLattice stripped = boolean_minus_bounds(boolean_cube(3));
  CHECK(stripped.size() == 6);
  CHECK(is_boolean(boolean_cube(2)));
  CHECK_FALSE(is_boolean(m3()));
  // the stripped 2-cube has two unrelated points: every assignment is a hom
  PartialLattice two = boolean_minus_bounds(boolean_cube(2));
  CHECK(enumerate_partial_homs(two, chain(2)).size() == 4);
}

TEST_CASE("complement joins collapse to one constant") {
  const FiniteLattice b = boolean_cube(3);
  const PartialLattice stripped = boolean_minus_bounds(b);
  const FiniteLattice m = m3();
  // constant assignments are partial homs; the constant is the join value
  std::vector<int> img(static_cast<std::size_t>(stripped.size()), m.require("a"));
  CHECK(complement_join_constant(b, m, stripped, img) == m.require("a"));
  // atoms to distinct diamond atoms: coatom meets break the hom property
  std::vector<int> bad(static_cast<std::size_t>(stripped.size()));
  for (int x = 0; x < stripped.size(); ++x) {
    const int el = b.require(stripped.label(x));
    bad[static_cast<std::size_t>(x)] =
        m.join(m.join(b.leq(b.require("(1,0,0)"), el) ? m.require("a") : 0,
                      b.leq(b.require("(0,1,0)"), el) ? m.require("b") : 0),
               b.leq(b.require("(0,0,1)"), el) ? m.require("c") : 0);
  }
  CHECK_THROWS_AS(complement_join_constant(b, m, stripped, bad), Error);
}

TEST_CASE("semilattice coproducts") {
  const FiniteJoinSemilattice two = FiniteJoinSemilattice::from_lattice(chain(2));
  const FiniteJoinSemilattice one = FiniteJoinSemilattice::from_lattice(chain(1));
  CHECK(free_product_jsl({one, one}).result.size() == 3);
  JslFreeProduct fp = free_product_jsl({two, two});
  CHECK(fp.result.size() == 8);
  // embeddings preserve and reflect order
  for (std::size_t i = 0; i < 2; ++i)
    for (int x = 0; x < two.size(); ++x)
      for (int y = 0; y < two.size(); ++y)
        CHECK(two.leq(x, y) == fp.result.leq(fp.embeddings[i][static_cast<std::size_t>(x)],
                                             fp.embeddings[i][static_cast<std::size_t>(y)]));
  CHECK(posets_isomorphic(free_product_jsl({two}).result.poset(), two.poset()));
}

TEST_CASE("isotone completion of partial maps") {
  Carrier sq(two_by_two()), m(m3());
  const std::vector<int> elems{0, 3};
  const std::vector<int> vals{0, 4};
  MonotoneMap ext = complete_extension(sq, elems, vals, m);
  CHECK(ext.img[0] == 0);
  CHECK(ext.img[3] == 4);
  CHECK(map_check(ext, MapMode::isotone).ok);
  CHECK(ext.img[1] == 0);  // join of the fixed values below
  const std::vector<int> reversed{4, 0};
  CHECK_THROWS_AS(complete_extension(sq, elems, reversed, m), Error);
}

TEST_CASE("seeded randomness is reproducible") {
  Rng a(7), b(7);
  for (int i = 0; i < 20; ++i) CHECK(a.below(1000) == b.below(1000));
  Carrier dom(two_by_two()), cod(n5());
  Rng r1(9), r2(9);
  MonotoneMap m1 = random_isotone_map(dom, cod, r1);
  MonotoneMap m2 = random_isotone_map(dom, cod, r2);
  CHECK(m1.img == m2.img);
  Rng r3(11);
  for (int i = 0; i < 50; ++i) CHECK(map_check(random_isotone_map(dom, cod, r3), MapMode::isotone).ok);
}
