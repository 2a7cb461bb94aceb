// Term parsing and the free-lattice order, canonical forms, the free
// distributive lattice, the free Boolean algebra, and the bound probes.

#include <catch2/catch_amalgamated.hpp>

#include <bit>

#include "isolat/fb.hpp"
#include "isolat/fd.hpp"
#include "isolat/lattice.hpp"
#include "isolat/rng.hpp"
#include "isolat/semilat.hpp"
#include "isolat/shapes.hpp"
#include "isolat/subspaces.hpp"
#include "isolat/term.hpp"

using namespace isolat;

static const std::vector<std::string> kGens{"a", "b", "c"};

TEST_CASE("terms parse with both operator spellings") {
  TermPtr t = parse_term("a & (b | c)", kGens);
  CHECK(render_term(t, kGens) == "a∧(b∨c)");
  TermPtr u = parse_term("a∧(b∨c)", kGens);
  CHECK(fl_eq(t, u));
  CHECK_THROWS_AS(parse_term("a &", kGens), Error);
  CHECK_THROWS_AS(parse_term("a & q", kGens), Error);
  CHECK_THROWS_AS(parse_term("", kGens), Error);
}

TEST_CASE("rendered terms parse back to equal terms") {
  Rng rng(5);
  auto random_term = [&](auto&& self, int depth) -> TermPtr {
    if (depth == 0 || rng.below(3) == 0) return make_gen(static_cast<int>(rng.below(3)));
    const auto kind = rng.below(2) == 0 ? LatticeTerm::Kind::meet : LatticeTerm::Kind::join;
    return make_node(kind, {self(self, depth - 1), self(self, depth - 1)});
  };
  for (int i = 0; i < 100; ++i) {
    TermPtr t = random_term(random_term, 4);
    CHECK(fl_eq(parse_term(render_term(t, kGens), kGens), t));
  }
}

TEST_CASE("complements parse but stay outside the pure order") {
  TermPtr t = parse_term("~a | b", kGens);
  CHECK(has_complement(t));
  CHECK(render_term(t, kGens) == "¬a∨b");
  CHECK_THROWS_AS(fl_leq(t, make_gen(0)), Error);
}

TEST_CASE("the generated order satisfies the classical laws") {
  TermPtr a = make_gen(0), b = make_gen(1), c = make_gen(2);
  CHECK(fl_leq(make_meet({a, b}), a));
  CHECK(fl_leq(a, make_join({a, b})));
  CHECK(fl_eq(make_join({a, make_meet({a, b})}), a));                       // absorption
  CHECK(fl_eq(make_meet({a, b}), make_meet({b, a})));                      // commutativity
  CHECK(fl_eq(make_join({make_join({a, b}), c}), make_join({a, b, c})));   // associativity
  TermPtr lhs = parse_term("a & (b | c)", kGens);
  TermPtr rhs = parse_term("(a & b) | (a & c)", kGens);
  CHECK(fl_leq(rhs, lhs));
  CHECK_FALSE(fl_leq(lhs, rhs));  // no distributivity for free
}

TEST_CASE("canonical forms collapse the textbook reductions") {
  auto canon = [](const std::string& s) { return render_term(canonical_form(parse_term(s, kGens), kGens).term, kGens); };
  CHECK(canon("a | (a & b)") == "a");
  CHECK(canon("a & (a | b)") == "a");
  CHECK(canon("(a | b) | a") == "a∨b");
  CHECK(canon("(a & b) & (b & c)") == "a∧b∧c");
  CHECK(canonical_form(make_gen(1), kGens).tag == TermTag::generator);
  CHECK(canonical_form(parse_term("a & b", kGens), kGens).tag == TermTag::meet_reducible);
  CHECK(canonical_form(parse_term("a | b", kGens), kGens).tag == TermTag::join_reducible);
}

TEST_CASE("canonical forms are equivalent fixpoints") {
  Rng rng(17);
  auto random_term = [&](auto&& self, int depth) -> TermPtr {
    if (depth == 0 || rng.below(3) == 0) return make_gen(static_cast<int>(rng.below(3)));
    const auto kind = rng.below(2) == 0 ? LatticeTerm::Kind::meet : LatticeTerm::Kind::join;
    return make_node(kind, {self(self, depth - 1), self(self, depth - 1)});
  };
  for (int i = 0; i < 200; ++i) {
    TermPtr t = random_term(random_term, 4);
    CanonicalTerm c = canonical_form(t, kGens);
    CHECK(fl_eq(c.term, t));
    CHECK(render_term(canonical_form(c.term, kGens).term, kGens) == render_term(c.term, kGens));
  }
}

TEST_CASE("term comparison is a strict total order on distinct renders") {
  TermPtr a = make_gen(0), b = make_gen(1);
  CHECK(term_compare(a, b, kGens) < 0);
  CHECK(term_compare(b, a, kGens) > 0);
  CHECK(term_compare(a, a, kGens) == 0);
  TermPtr m = make_meet({a, b}), j = make_join({a, b});
  CHECK(term_compare(m, j, kGens) != 0);
}

TEST_CASE("duality is an involution exchanging the operations") {
  TermPtr t = parse_term("a & (b | c)", kGens);
  CHECK(render_term(term_dual(t), kGens) == "a∨b∧c");  // meets bind tighter, no parens needed
  CHECK(fl_eq(term_dual(term_dual(t)), t));
}

TEST_CASE("evaluation respects the table operations") {
  const FiniteLattice m = m3();
  const std::vector<int> atoms{m.require("a"), m.require("b"), m.require("c")};
  CHECK(eval_term(parse_term("a & (b | c)", kGens), m, atoms) == m.require("a"));
  CHECK(eval_term(parse_term("(a & b) | (a & c)", kGens), m, atoms) == m.bottom());
  CHECK_THROWS_AS(eval_term(make_gen(2), m, {0, 1}), Error);
}

TEST_CASE("free distributive lattice sizes") {
  CHECK(fd_enumerate(1).size() == 1);
  CHECK(fd_enumerate(2).size() == 4);
  CHECK(fd_enumerate(3).size() == 18);
  CHECK(fd_enumerate(4).size() == 166);
}

TEST_CASE("antichain order and operations") {
  const FdElement a = fd_gen(0), b = fd_gen(1);
  CHECK(fd_leq(fd_meet(a, b), a));
  CHECK(fd_leq(a, fd_join(a, b)));
  CHECK_FALSE(fd_leq(a, b));
  CHECK(fd_from_term(parse_term("(a | b) & (a | c)", kGens)) ==
        fd_from_term(parse_term("a | (b & c)", kGens)));  // distributive collapse
  const FdLattice fdl = fd_lattice(kGens);
  REQUIRE(fdl.lattice.size() == 18);
  validate_lattice(fdl.lattice);
  CHECK(variety_check(fdl.lattice).distributive);
  CHECK(fdl.lattice.label(fdl.index_of(fd_gen(0))) == "a");
  CHECK_NOTHROW(fdl.lattice.require("a∧b∧c"));
  CHECK_NOTHROW(fdl.lattice.require("a∨b∨c"));
}

TEST_CASE("medians in distributive lattices pick the middle") {
  const FiniteLattice c3 = chain(3);
  CHECK(median_in(c3, 0, 2, 1) == 1);
  CHECK(median_in(c3, 2, 2, 0) == 2);
  const FiniteLattice m = m3();
  CHECK(median_in(m, m.require("a"), m.require("b"), m.require("c")) == m.bottom());
}

TEST_CASE("free Boolean algebra coincides with mask arithmetic") {
  const FiniteLattice f2 = fb_lattice(2);
  REQUIRE(f2.size() == 16);
  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 16; ++y) {
      CHECK(f2.meet(x, y) == (x & y));
      CHECK(f2.join(x, y) == (x | y));
    }
  CHECK(fb_gen(0, 2) == 0b1010u);
  CHECK(fb_gen(1, 2) == 0b1100u);
  CHECK(fb_complement(fb_gen(0, 2), 2) == 0b0101u);
  CHECK(fb_from_term(parse_term("~a | b", {"a", "b"}), 2) == (0b0101u | 0b1100u));
  CHECK_THROWS_AS(fb_lattice(4), Error);  // 2^16 elements: over the cap
}

TEST_CASE("prime implicants by literal dropping") {
  CHECK(prime_implicants(fb_full(2), 2).size() == 1);
  CHECK(prime_implicants(fb_full(2), 2)[0].fixed == 0);
  CHECK(prime_implicants(0b0010u, 2).size() == 1);
  CHECK(prime_implicants(0b0010u, 2)[0].fixed == 0b11u);
  CHECK(prime_implicants(0b0110u, 2).size() == 2);  // xor needs both minterm cubes
  // not (a and b): two one-literal implicants
  const auto pis = prime_implicants(0b0111u, 2);
  REQUIRE(pis.size() == 2);
  for (const FbCube& c : pis) CHECK(std::popcount(c.fixed) == 1);
}

TEST_CASE("implicant values bound the anchor set") {
  const FiniteLattice m = m3();
  const std::vector<int> xs{m.require("a"), m.require("b")};
  CHECK(implicant_join_value(m, xs, fb_gen(0, 2)) == xs[0]);
  CHECK(implicant_join_value(m, xs, fb_gen(0, 2) & fb_gen(1, 2)) == m.meet(xs[0], xs[1]));
  CHECK_THROWS_AS(implicant_join_value(m, xs, 0), Error);
  CHECK_THROWS_AS(implicant_join_value(m, xs, fb_full(2)), Error);
  // isotone in the Boolean argument even through complemented elements
  for (std::uint32_t u = 1; u < fb_full(2); ++u)
    for (std::uint32_t v = 1; v < fb_full(2); ++v)
      if (fb_leq(u, v)) CHECK(m.leq(implicant_join_value(m, xs, u), implicant_join_value(m, xs, v)));
}

TEST_CASE("bound translation and the sup probe") {
  const FiniteLattice m = m3();
  CHECK(bound_equivalence_check(m, {m.require("a"), m.require("b")}));
  CHECK(sup_via_extension_probe(m, {m.require("a"), m.require("b")}) == m.top());
  const FiniteLattice c4 = chain(4);
  CHECK(sup_via_extension_probe(c4, {1, 2}) == 2);
  const FiniteLattice b3 = boolean_cube(3);
  CHECK(sup_via_extension_probe(b3, {b3.require("(1,0,0)"), b3.require("(0,1,0)")}) == b3.require("(1,1,0)"));
  // a single cube atom has four upper bounds: past the probe's cap
  CHECK_THROWS_AS(sup_via_extension_probe(b3, {b3.require("(1,0,0)")}), Error);
}

TEST_CASE("subspace lattices over F2") {
  const FiniteLattice s2 = subspaces_f2(2);
  CHECK(s2.size() == 5);
  const FiniteLattice s3 = subspaces_f2(3);
  REQUIRE(s3.size() == 16);
  VarietyReport v = variety_check(s3);
  CHECK(v.modular);
  CHECK_FALSE(v.distributive);
  const std::vector<int> h = s3.poset().heights();
  int census[4] = {0, 0, 0, 0};
  for (int x = 0; x < s3.size(); ++x) ++census[h[static_cast<std::size_t>(x)]];
  CHECK(census[0] == 1);
  CHECK(census[1] == 7);
  CHECK(census[2] == 7);
  CHECK(census[3] == 1);
}
