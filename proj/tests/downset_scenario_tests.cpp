// The closed-downset intermediate over a point and a square — every number
// here was worked out by hand from the 9-tuple poset — plus the scenario
// front end and report shapes.

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <set>

#include "isolat/downset_product.hpp"
#include "isolat/report.hpp"
#include "isolat/scenario.hpp"
#include "isolat/shapes.hpp"
#include "isolat/verify.hpp"

using namespace isolat;

namespace {

FiniteLattice point() {
  BitMatrix one(1);
  one.set(0, 0, true);
  return FiniteLattice::from_parts(Poset::from_leq_unchecked("pt", {"e"}, std::move(one)), {0}, {0});
}

FiniteLattice square() {
  return lattice_from_leq(
      Poset::from_covers("sq", {"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}));
}

}  // namespace

TEST_CASE("formal meets over a point and a square") {
  FormalMeetPoset p = formal_meet_poset({point(), square()});
  REQUIRE(p.size() == 9);  // 2·5 tuples minus the all-tops one
  const int ebar = p.order.require("(e,⊤1)");
  const int abar = p.order.require("(⊤0,a)");
  CHECK(p.order.leq(p.order.require("(e,a)"), ebar));
  CHECK(p.order.leq(p.order.require("(e,a)"), abar));
  CHECK_FALSE(p.order.leq(ebar, abar));
  CHECK(std::popcount(p.down[static_cast<std::size_t>(abar)]) == 4);   // (⊤0,a),(⊤0,0),(e,a),(e,0)
  CHECK(std::popcount(p.down[static_cast<std::size_t>(ebar)]) == 5);   // the whole (e,-) column
  // the mask encoding caps at 64 tuples
  CHECK_THROWS_AS(formal_meet_poset({chain(5), chain(5), chain(3)}), Error);
}

TEST_CASE("closing a downset joins its mentioned coordinates") {
  FormalMeetPoset p = formal_meet_poset({point(), square()});
  const std::uint64_t seed = p.down[static_cast<std::size_t>(p.order.require("(⊤0,a)"))] |
                             p.down[static_cast<std::size_t>(p.order.require("(⊤0,b)"))];
  CHECK_FALSE(downset_is_closed(p, seed));
  const std::uint64_t closed = downset_closure(p, seed);
  CHECK(downset_is_closed(p, closed));
  CHECK(closed == (closed | p.down[static_cast<std::size_t>(p.order.require("(⊤0,1)"))]));
  CHECK(std::popcount(closed) == 8);  // everything except (e,⊤1)
}

namespace {

// closure variant that only ever joins pairs of *maximal* members
std::uint64_t closure_via_maximal_pairs(const DownsetLattice& dl, std::uint64_t mask) {
  const FormalMeetPoset& p = dl.p;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> max = dl.maximal_members(mask);
    for (std::size_t i = 0; i < p.factors.size(); ++i) {
      std::vector<int> pure;
      for (int e : max)
        for (int x = 0; x < p.factors[i].size(); ++x)
          if (p.theta[i][x] == e) pure.push_back(x);
      for (std::size_t a = 0; a < pure.size(); ++a)
        for (std::size_t b = a + 1; b < pure.size(); ++b) {
          const std::uint64_t add =
              p.down[static_cast<std::size_t>(p.theta[i][p.factors[i].join(pure[a], pure[b])])];
          if ((mask & add) != add) {
            mask |= add;
            grew = true;
          }
        }
    }
  }
  return mask;
}

}  // namespace

TEST_CASE("joining only maximal members closes just as far") {
  detail::DownsetFixture fx = detail::downset_fixture();
  for (std::uint64_t u : fx.dl.families)
    for (std::uint64_t v : fx.dl.families)
      CHECK(closure_via_maximal_pairs(fx.dl, u | v) == downset_closure(fx.dl.p, u | v));
}

TEST_CASE("the closed downsets form the 22-element intermediate") {
  DownsetLattice dl = closed_downset_lattice({point(), square()});
  REQUIRE(dl.lat.size() == 22);  // counted by hand: 6+6+4+4+2 over the (S,T) split
  validate_lattice(dl.lat);
  VarietyReport v = variety_check(dl.lat);
  CHECK_FALSE(v.distributive);
  CHECK(v.pentagon_witness.has_value());
}

TEST_CASE("the embeddings land on principal downsets") {
  FiniteLattice l0 = point(), l1 = square();
  DownsetLattice dl = closed_downset_lattice({l0, l1});
  Carrier c0(l0), c1(l1);
  MonotoneMap xi0 = downset_embed(dl, c0, 0);
  MonotoneMap xi1 = downset_embed(dl, c1, 1);
  CHECK(xi0.is_verified(MapMode::embedding));
  CHECK(xi1.is_verified(MapMode::embedding));
  const std::uint64_t fam_a = dl.families[static_cast<std::size_t>(xi1.img[l1.require("a")])];
  CHECK(std::popcount(fam_a) == 4);
  CHECK(fam_a == dl.p.down[static_cast<std::size_t>(dl.p.theta[1][l1.require("a")])]);
}

TEST_CASE("distributivity fails between the embedded images") {
  detail::DownsetFixture fx = detail::downset_fixture();
  const FiniteLattice& lp = fx.dl.lat;
  const int lhs = lp.meet(fx.ebar, lp.join(fx.abar, fx.bbar));
  const int rhs = lp.join(lp.meet(fx.ebar, fx.abar), lp.meet(fx.ebar, fx.bbar));
  CHECK(lp.lt(rhs, lhs));
  CHECK(std::popcount(fx.dl.families[static_cast<std::size_t>(lhs)]) == 4);
  CHECK(std::popcount(fx.dl.families[static_cast<std::size_t>(rhs)]) == 3);
  // the left side is the principal downset of (e,1); the right side peaks twice
  std::vector<int> lm = fx.dl.maximal_members(fx.dl.families[static_cast<std::size_t>(lhs)]);
  REQUIRE(lm.size() == 1);
  CHECK(fx.dl.p.order.label(lm[0]) == "(e,1)");
  std::vector<int> rm = fx.dl.maximal_members(fx.dl.families[static_cast<std::size_t>(rhs)]);
  std::set<std::string> rl;
  for (int e : rm) rl.insert(fx.dl.p.order.label(e));
  CHECK(rl == std::set<std::string>{"(e,a)", "(e,b)"});
  CHECK(downset_nondistributive_check().ok);
}

TEST_CASE("the five defining families are an exact pentagon") {
  detail::DownsetFixture fx = detail::downset_fixture();
  PentagonFamilies p = find_pentagon(fx);
  auto sz = [&](int f) { return std::popcount(fx.dl.families[static_cast<std::size_t>(f)]); };
  CHECK(sz(p.f1) == 4);
  CHECK(sz(p.f2) == 5);
  CHECK(sz(p.f3) == 6);
  CHECK(sz(p.f4) == 8);
  CHECK(sz(p.f5) == 5);
  CHECK(lattices_isomorphic(induced_sublattice(fx.dl.lat, {p.f1, p.f2, p.f3, p.f5, p.f4}, "penta"), n5()));
  CHECK(downset_pentagon_check().ok);
}

TEST_CASE("readbacks recover the mentioned coordinates") {
  detail::DownsetFixture fx = detail::downset_fixture();
  const int lhs = fx.dl.lat.meet(fx.ebar, fx.dl.lat.join(fx.abar, fx.bbar));
  CHECK(downset_readback(fx.dl, 1, lhs) == 0);          // no (⊤0,-) members: fresh bottom
  CHECK(downset_readback(fx.dl, 1, fx.abar) ==
        fx.l1.require("a") + 1);                        // shifted past the adjoined bottom
  CHECK(downset_readback(fx.dl, 0, fx.ebar) == 1);      // the point, shifted
  Carrier lifted(adjoin_bottom(fx.l1, "⊥"));
  MonotoneMap pi1 = downset_readback_map(fx.dl, 1, lifted);
  CHECK(pi1.is_verified(MapMode::lattice_hom));
  FiberReport fr = fiber_distributivity_check(fx.dl);
  CHECK(fr.readback_tuple_is_hom);
  CHECK(fr.fibers_distributive);
  CHECK(fr.fiber_joins_are_unions);
  CHECK(fr.fiber_count == 10);  // (1+1)·(4+1) readback tuples, each fiber nonempty
}

TEST_CASE("the fold is the join over maximal members") {
  detail::DownsetFixture fx = detail::downset_fixture();
  Carrier m(fx.l1), c0(fx.l0), c1(fx.l1);
  const int a = fx.l1.require("a");
  std::vector<MonotoneMap> phis{make_map("phi0", c0, m, {a}),
                                make_map("phi1", c1, m, {0, 1, 2, 3})};
  const std::uint64_t fam_abar = fx.dl.families[static_cast<std::size_t>(fx.abar)];
  CHECK(downset_fold(fx.dl, phis, fam_abar) == a);
  const int rhs = fx.dl.lat.join(fx.dl.lat.meet(fx.ebar, fx.abar), fx.dl.lat.meet(fx.ebar, fx.bbar));
  CHECK(downset_fold(fx.dl, phis, fx.dl.families[static_cast<std::size_t>(rhs)]) == a);
  MonotoneMap psi = downset_projection(fx.dl, phis);
  CHECK(psi.is_verified(MapMode::join_hom));
  // a join-breaking map is rejected up front
  std::vector<MonotoneMap> bad{phis[0], make_map("collapse", c1, m, {0, 0, 0, 3})};
  CHECK_THROWS_AS(downset_projection(fx.dl, bad), Error);
}

TEST_CASE("the full factorization carries its verification tags") {
  CheckResult r = downset_projection_check();
  CHECK(r.ok);
  CHECK(downset_fiber_check().ok);
}

TEST_CASE("scenario files parse into runnable descriptions") {
  const std::string text =
      "scenario demo\n"
      "construction sup_probe\n"
      "lattice m3\n"
      "  elements 0 a b c 1\n"
      "  cover 0 < a\n  cover 0 < b\n  cover 0 < c\n"
      "  cover a < 1\n  cover b < 1\n  cover c < 1\n"
      "end\n"
      "arg set = a b\n"
      "expect sup_eq 1\n"
      "expect bounds_eq\n";
  Scenario sc = parse_scenario(text);
  CHECK(sc.name == "demo");
  CHECK(sc.construction == "sup_probe");
  REQUIRE(sc.lattices.size() == 1);
  REQUIRE(sc.expects.size() == 2);
  ScenarioResult r = run_scenario(sc);
  CHECK(r.status == "pass");
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].ok);
  CHECK(r.checks[1].ok);
}

TEST_CASE("scenario failures and errors are distinguished") {
  const std::string base =
      "scenario x\n"
      "construction sup_probe\n"
      "lattice c2\n  elements 0 1\n  cover 0 < 1\nend\n"
      "arg set = 0 1\n";
  ScenarioResult fail_r = run_scenario(parse_scenario(base + "expect sup_eq 0\n"));
  CHECK(fail_r.status == "fail");
  CHECK(fail_r.checks[0].witness == std::vector<std::string>{"1"});
  ScenarioResult err_r = run_scenario(parse_scenario(
      "scenario y\nconstruction warp\nlattice c2\n  elements 0 1\n  cover 0 < 1\nend\nexpect isotone\n"));
  CHECK(err_r.status == "error");
  CHECK_FALSE(err_r.error.empty());
  CHECK_THROWS_AS(parse_scenario(std::string("scenario z\nnot grammar\n")), Error);
  CHECK_THROWS_AS(parse_scenario(std::string("scenario z\nconstruction sup_probe\n")), Error);  // expects nothing
}

TEST_CASE("negated expectations flip the grade") {
  const std::string text =
      "scenario neg\n"
      "construction symmetric_pair\n"
      "lattice c2a\n  elements 0 1\n  cover 0 < 1\nend\n"
      "lattice c2b\n  elements 0 1\n  cover 0 < 1\nend\n"
      "lattice sq\n  elements 0 a b 1\n  cover 0 < a\n  cover 0 < b\n  cover a < 1\n  cover b < 1\nend\n"
      "map f : c2a -> sq\n  0 -> 0\n  1 -> a\nend\n"
      "map g : c2b -> sq\n  0 -> 0\n  1 -> b\nend\n"
      "arg e0 = 1\n"
      "arg e1 = 1\n"
      "expect isotone\n"
      "expect not lattice_hom\n";
  ScenarioResult r = run_scenario(parse_scenario(text));
  CHECK(r.status == "pass");
}

TEST_CASE("reports keep a stable key order") {
  SectionReport rep;
  rep.section = 3;
  rep.seed = 1;
  rep.max_size = 4;
  rep.checks.push_back({"sample", true, "fine", {}, {{"pairs", 2}}});
  rep.elapsed_ms = 5;
  const std::string dumped = section_report_to_json(rep).dump();
  CHECK(dumped.find("\"tool\"") < dumped.find("\"version\""));
  CHECK(dumped.find("\"version\"") < dumped.find("\"section\""));
  CHECK(dumped.find("\"checks\"") < dumped.find("\"elapsed_ms\""));
  ScenarioResult sr;
  sr.name = "demo";
  sr.status = "pass";
  const std::string rd = scenario_results_to_json({sr}, 1).dump();
  CHECK(rd.find("\"mode\":\"run\"") != std::string::npos);
  CHECK(rd.find("\"scenarios\"") < rd.find("\"elapsed_ms\""));
}
