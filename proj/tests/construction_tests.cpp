// The doubled-product constructions, the two-factor and free-factor forms,
// retract factoring, and the semilattice extensions.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "isolat/constructions.hpp"
#include "isolat/retract.hpp"
#include "isolat/rng.hpp"
#include "isolat/semilat.hpp"
#include "isolat/shapes.hpp"

using namespace isolat;

static bool has_tag(const FactorizationResult& fr, const std::string& tag) {
  return std::find(fr.verified.begin(), fr.verified.end(), tag) != fr.verified.end();
}

TEST_CASE("a single map extends over its doubled square") {
  Carrier sq(two_by_two()), m(m3());
  MonotoneMap phi = constant_map("phi", sq, m, m.require("a"));
  const int e = m.require("b");
  AnchoredExtension ext = anchored_extension(phi, e);
  REQUIRE(ext.extended.size() == 16);
  const FiniteLattice& x = ext.extended.lattice();
  CHECK(ext.extended_map.img[x.require("((0,0),0,1)")] == m.require("a"));
  CHECK(ext.extended_map.img[x.require("((0,0),1,0)")] == e);
  CHECK(ext.extended_map.img[x.require("((0,0),0,0)")] == m.bottom());  // a ∧ b
  CHECK(ext.extended_map.img[x.require("((0,0),1,1)")] == m.top());    // a ∨ b
  CHECK(map_check(ext.embed, MapMode::embedding).ok);
  CHECK(same_assignment(compose(ext.extended_map, ext.embed), phi));
  MonotoneMap askew = make_map("askew", Carrier(chain(2)), m, {m.top(), m.bottom()});
  CHECK_THROWS_AS(anchored_extension(askew, e), Error);
}

TEST_CASE("the fold joins the violators or meets the submerged") {
  const FiniteLattice m = m3();
  const int a = m.require("a"), b = m.require("b"), c = m.require("c");
  CHECK(anchored_fold(m, a, {b, c}) == m.top());
  CHECK(anchored_fold(m, a, {0, a}) == m.bottom());
  CHECK(anchored_fold(m, a, {b}) == b);
  CHECK_THROWS_AS(anchored_fold(m, a, {}), Error);
}

TEST_CASE("frames factor every map tuple through one intermediate") {
  std::vector<Carrier> ls{Carrier(chain(2)), Carrier(two_by_two())};
  AnchoredProductFrame frame = make_anchored_frame(ls);
  CHECK(frame.intermediate.size() == 8 * 16);
  Carrier m(n5());
  Rng rng(3);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<MonotoneMap> phis{random_isotone_map(ls[0], m, rng), random_isotone_map(ls[1], m, rng)};
    for (int e = 0; e < m.size(); ++e) {
      FactorizationResult fr{frame.intermediate, frame.injections, frame_projection(frame, phis, e), {}};
      CHECK_NOTHROW(verify_factorization(fr, phis));
    }
  }
}

TEST_CASE("the one-call form reports what it verified") {
  Carrier c2(chain(2)), m(m3());
  std::vector<MonotoneMap> phis{make_map("f", c2, m, {0, m.require("a")}),
                                make_map("g", Carrier(chain(3)), m, {0, m.require("b"), m.top()})};
  FactorizationResult fr = anchored_product_factorization(phis, m.require("c"));
  CHECK(has_tag(fr, "projection:isotone"));
  CHECK(has_tag(fr, "injection_0:embedding"));
  CHECK(has_tag(fr, "injection_1:embedding"));
  CHECK(has_tag(fr, "composite_0:equals_input"));
  CHECK(has_tag(fr, "composite_1:equals_input"));
}

TEST_CASE("two-factor selector rows land where they should") {
  Carrier c2(chain(2)), m(two_by_two());
  MonotoneMap phi0 = make_map("phi0", c2, m, {0, 1});
  MonotoneMap phi1 = make_map("phi1", Carrier(chain(2)), m, {0, 2});
  FactorizationResult fr = symmetric_pair_factorization(phi0, phi1, 1, 1);
  const FiniteLattice& x = fr.intermediate.lattice();
  CHECK(fr.projection.img[x.require("(1,0,1,0)")] == 1);                  // φ0 side
  CHECK(fr.projection.img[x.require("(1,0,0,1)")] == 0);                  // φ1 side
  CHECK(fr.projection.img[x.require("(1,1,0,0)")] == m.meet(1, 2));
  CHECK(fr.projection.img[x.require("(1,1,1,1)")] == m.join(1, 2));
  CHECK(map_check(fr.injections[0], MapMode::embedding).ok);
  CHECK(map_check(fr.injections[1], MapMode::embedding).ok);
}

TEST_CASE("iterated attachment multiplies sizes") {
  Carrier m(two_by_two());
  std::vector<MonotoneMap> phis{make_map("p", Carrier(chain(2)), m, {0, 3}),
                                make_map("q", Carrier(chain(2)), m, {0, 3})};
  FactorizationResult fr = iterated_pair_factorization(phis, {{0, 0}});
  CHECK(fr.intermediate.size() == 16);
  CHECK(has_tag(fr, "composite_1:equals_input"));
}

TEST_CASE("the free-factor projection evaluates antichains") {
  Carrier c2(chain(2)), m(chain(2));
  MonotoneMap phi = make_map("phi", c2, m, {0, 1});
  FactorizationResult fr = product_with_free_factor({phi}, {0});
  REQUIRE(fr.intermediate.size() == 2);  // FD(1) has a single element
  const FiniteLattice& x = fr.intermediate.lattice();
  CHECK(fr.projection.img[x.require("(0,g0)")] == 0);
  CHECK(fr.projection.img[x.require("(1,g0)")] == 1);
  // diamond codomain rejected: not distributive
  std::vector<MonotoneMap> bad{make_map("phi", c2, Carrier(m3()), {0, 4})};
  CHECK_THROWS_AS(product_with_free_factor(bad, {0}), Error);
}

TEST_CASE("mixed joinands collapse under the free-factor projection") {
  Carrier l0(chain(2)), l1(chain(2)), m(chain(2));
  std::vector<MonotoneMap> phis{make_map("phi0", l0, m, {0, 1}), make_map("phi1", l1, m, {0, 1})};
  FactorizationResult fr = product_with_free_factor(phis, {0, 0});
  const FiniteLattice& x = fr.intermediate.lattice();
  const int u = x.require("(1,0,g1)"), v = x.require("(0,1,g0)");
  CHECK(fr.projection.img[u] == 0);
  CHECK(fr.projection.img[v] == 0);
  CHECK(fr.projection.img[x.join(u, v)] == 1);
  CHECK_FALSE(map_check(fr.projection, MapMode::join_hom).ok);
  CHECK(map_check(fr.projection, MapMode::isotone).ok);
}

TEST_CASE("the median antichain survives its symmetry gauntlet") {
  const FdElement med = median_antichain();
  CHECK(med == (FdElement{{3, 5, 6}}));
  const FiniteLattice m = m3();
  const int a = m.require("a"), b = m.require("b"), c = m.require("c");
  CHECK(median_in(m, a, b, c) == m.bottom());
  CHECK(eval_term(term_dual(median_term(0, 1, 2)), m, {a, b, c}) == m.top());
}

TEST_CASE("convexity in chains and its witnesses") {
  const FiniteLattice c4 = chain(4);
  CHECK(is_convex(c4, {1, 2}));
  std::vector<std::string> w;
  CHECK_FALSE(is_convex(c4, {0, 2, 3}, &w));
  REQUIRE(w.size() == 3);
  CHECK(w[1] == "1");  // the hole
}

TEST_CASE("retractions onto convex sublattices majorize") {
  const FiniteLattice sq = two_by_two();
  Carrier csq(sq);
  MonotoneMap rho = make_map("rho", csq, csq, {0, 1, 0, 1});  // meet with the atom (0,1)
  RetractCheck rc = convex_retract_majorization_check(sq, {0, 1}, rho);
  CHECK(rc.ok);
  // on the diamond the same formula is no homomorphism
  const FiniteLattice m = m3();
  Carrier cm(m);
  std::vector<int> img;
  for (int x = 0; x < m.size(); ++x) img.push_back(m.meet(x, m.require("a")));
  MonotoneMap bad = make_map("rho", cm, cm, img);
  CHECK_THROWS_AS(convex_retract_majorization_check(m, {0, m.require("a")}, bad), Error);
  // a valid retraction onto a non-convex K gets a convexity witness back
  const FiniteLattice n = n5();
  Carrier cn(n);
  MonotoneMap skip = make_map("rho", cn, cn,
                              {n.require("0"), n.require("c"), n.require("0"), n.require("c"), n.require("c")});
  RetractCheck nc = convex_retract_majorization_check(n, {n.require("0"), n.require("c")}, skip);
  CHECK_FALSE(nc.ok);
  REQUIRE(nc.witness.size() == 3);
  CHECK(nc.witness[1] == "a");
}

TEST_CASE("compatible tuples factor maps that share the retract") {
  Carrier k(chain(2)), m(m3());
  MonotoneMap idk = identity_map(k);
  std::vector<MonotoneMap> embeds{idk, idk}, rhos{idk, idk};
  MonotoneMap phi = make_map("phi", k, m, {0, m.top()});
  FactorizationResult fr = retract_factorization(k, embeds, rhos, {phi, phi});
  CHECK(fr.intermediate.size() == 2);  // the diagonal copy of K
  CHECK(has_tag(fr, "projection:isotone"));
  // disagreement on the shared copy is rejected
  MonotoneMap other = make_map("phi2", k, m, {0, m.require("a")});
  CHECK_THROWS_AS(retract_factorization(k, embeds, rhos, {phi, other}), Error);
  // a non-convex embedding violates the hypotheses
  Carrier c3(chain(3));
  MonotoneMap gap = make_map("embed", k, c3, {0, 2});
  MonotoneMap back = make_map("rho", c3, k, {0, 0, 1});
  MonotoneMap phi3 = make_map("phi3", c3, m, {0, 0, m.top()});
  CHECK_THROWS_AS(retract_factorization(k, {gap}, {back}, {phi3}), Error);
}

TEST_CASE("convexity fails jointly but not sidewise") {
  ConvexityReport r = convexity_counterexample();
  CHECK(r.space.size() == 16);
  CHECK(r.convex_in_sides);
  CHECK(r.middle_strictly_between);
  CHECK_FALSE(r.convex_in_joint);
  CHECK(r.space.label(r.middle) == "{001}");
  CHECK(r.space.lt(r.zero, r.middle));
  CHECK(r.space.lt(r.middle, r.a));
}

TEST_CASE("formal joins take the values their picks dictate") {
  const FiniteJoinSemilattice two = FiniteJoinSemilattice::from_lattice(chain(2));
  JslFreeProduct fp = free_product_jsl({two, two});
  const FiniteLattice m = two_by_two();
  Carrier cm(m), f0(two), f1(two);
  std::vector<MonotoneMap> phis{make_map("phi0", f0, cm, {0, 1}), make_map("phi1", f1, cm, {0, 2})};
  MonotoneMap ext = jsl_product_extension(fp, phis);
  const int mixed = fp.result.join(fp.embeddings[0][1], fp.embeddings[1][1]);
  CHECK(ext.img[static_cast<std::size_t>(mixed)] == m.top());
  CHECK(ext.img[static_cast<std::size_t>(fp.embeddings[0][1])] == 1);
  // non-isotone inputs are refused
  Carrier f2(FiniteJoinSemilattice::from_lattice(chain(2)));
  std::vector<MonotoneMap> bad{make_map("phi0", f2, cm, {3, 0}), phis[1]};
  CHECK_THROWS_AS(jsl_product_extension(fp, bad), Error);
}

TEST_CASE("adjoined bottoms carry join-preserving pairs") {
  const FiniteLattice m = two_by_two();
  Carrier cm(m), a(chain(2)), b(chain(2));
  std::vector<MonotoneMap> phis{make_map("phi0", a, cm, {0, 1}), make_map("phi1", b, cm, {0, 2})};
  FactorizationResult fr = bounded_below_extension(phis, 0);
  CHECK(fr.intermediate.size() == 9);  // (2+1) × (2+1)
  CHECK(has_tag(fr, "projection:join_hom"));
  CHECK(map_check(fr.projection, MapMode::join_hom).ok);
  // the shared point must sit under every value
  CHECK_THROWS_AS(bounded_below_extension(phis, m.top()), Error);
  // meet-only maps are refused
  Carrier sq(two_by_two());
  std::vector<MonotoneMap> bad{make_map("squash", sq, cm, {0, 0, 0, 3}), phis[1]};
  CHECK_THROWS_AS(bounded_below_extension(bad, 0), Error);
}
