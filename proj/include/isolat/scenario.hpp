#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isolat/constructions.hpp"
#include "isolat/downset_product.hpp"
#include "isolat/io.hpp"
#include "isolat/semilat.hpp"
#include "isolat/variety.hpp"

// Scenario files describe one construction plus a list of expected
// properties.  Grammar (line-based, '#' comments):
//
//   scenario <name>
//   construction anchored_product | symmetric_pair | prod_times_free
//              | downset_product | sup_probe
//   lattice <name> ... end            # inline lattice blocks
//   map <name> : <dom> -> <cod> ... end
//   arg <key> = <value> [<value> ...]
//   expect [not] <property> [<args>]
//
// Properties: isotone, join_hom, lattice_hom (of the projection),
// composite_eq, distributive, contains_n5 (of the intermediate),
// bounds_eq, sup_eq <label> (of a sup_probe).
//
// Map listing order is the φ order the construction consumes.

namespace isolat {

struct Expectation {
  std::string prop;
  bool negated = false;
  std::vector<std::string> args;
};

struct Scenario {
  std::string name;
  std::string construction;
  std::vector<FiniteLattice> lattices;  // file order
  std::vector<MonotoneMap> maps;        // file order, endpoints resolved
  std::map<std::string, std::vector<std::string>> args;
  std::vector<Expectation> expects;

  const FiniteLattice& lattice_named(const std::string& n) const {
    for (const auto& l : lattices)
      if (l.name() == n) return l;
    fail(Errc::parse_error, "scenario references unknown lattice '" + n + "'");
  }
};

inline Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::map<std::string, Carrier> carriers;
  std::vector<std::string> t;
  while (io::next_line(in, t)) {
    if (t[0] == "scenario" && t.size() == 2) {
      sc.name = t[1];
    } else if (t[0] == "construction" && t.size() == 2) {
      sc.construction = t[1];
    } else if (t[0] == "lattice" && t.size() == 2) {
      FiniteLattice l = io::read_lattice_body(in, t[1], /*terminated=*/true);
      if (carriers.count(t[1])) fail(Errc::parse_error, "duplicate lattice name '" + t[1] + "'");
      carriers.emplace(t[1], Carrier(l));
      sc.lattices.push_back(std::move(l));
    } else if (t[0] == "map") {
      io::MapHeader h = io::parse_map_header(t);
      auto d = carriers.find(h.dom), c = carriers.find(h.cod);
      if (d == carriers.end()) fail(Errc::parse_error, "map endpoint '" + h.dom + "' not defined");
      if (c == carriers.end()) fail(Errc::parse_error, "map endpoint '" + h.cod + "' not defined");
      sc.maps.push_back(io::read_map_body(in, h, d->second, c->second, /*terminated=*/true));
    } else if (t[0] == "arg" && t.size() >= 4 && t[2] == "=") {
      sc.args[t[1]] = std::vector<std::string>(t.begin() + 3, t.end());
    } else if (t[0] == "expect" && t.size() >= 2) {
      Expectation e;
      std::size_t at = 1;
      if (t[1] == "not") {
        if (t.size() < 3) fail(Errc::parse_error, "'expect not' needs a property");
        e.negated = true;
        at = 2;
      }
      e.prop = t[at];
      e.args.assign(t.begin() + at + 1, t.end());
      sc.expects.push_back(std::move(e));
    } else {
      fail(Errc::parse_error, "unrecognized scenario line starting with '" + t[0] + "'");
    }
  }
  if (sc.name.empty()) fail(Errc::parse_error, "scenario file missing 'scenario <name>'");
  if (sc.construction.empty()) fail(Errc::parse_error, "scenario '" + sc.name + "' missing construction");
  if (sc.expects.empty()) fail(Errc::parse_error, "scenario '" + sc.name + "' expects nothing");
  return sc;
}

inline Scenario parse_scenario(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

struct CheckOutcome {
  std::string prop;
  bool negated = false;
  bool ok = false;                   // expectation met (after negation)
  std::vector<std::string> witness;  // labels pinpointing a property failure
};

struct ScenarioResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "error"
  std::string error;   // message when status == "error"
  std::vector<CheckOutcome> checks;
};

namespace detail {

inline const std::vector<std::string>& scenario_arg(const Scenario& sc, const std::string& key) {
  auto it = sc.args.find(key);
  if (it == sc.args.end()) fail(Errc::parse_error, "scenario '" + sc.name + "' missing 'arg " + key + "'");
  return it->second;
}

inline int scenario_element(const Scenario& sc, const std::string& key, const Carrier& in) {
  const auto& v = scenario_arg(sc, key);
  if (v.size() != 1) fail(Errc::parse_error, "'arg " + key + "' takes one element label");
  return in.order().require(v[0]);
}

}  // namespace detail

// Executes the construction and grades each expectation.  Errors (parse-level
// inputs were already accepted; these are construction precondition failures
// or internal errors) surface in the result rather than throwing.
inline ScenarioResult run_scenario(const Scenario& sc) {
  ScenarioResult res;
  res.name = sc.name;
  try {
    // run the construction
    FactorizationResult fr;
    bool have_factorization = true;
    const FiniteLattice* probe_lattice = nullptr;
    std::vector<int> probe_set;
    if (sc.construction == "anchored_product") {
      if (sc.maps.empty()) fail(Errc::empty_list, "anchored_product needs at least one map");
      fr = anchored_product_factorization(sc.maps, detail::scenario_element(sc, "e", sc.maps[0].cod));
    } else if (sc.construction == "symmetric_pair") {
      if (sc.maps.size() != 2) fail(Errc::parse_error, "symmetric_pair needs exactly two maps");
      fr = symmetric_pair_factorization(sc.maps[0], sc.maps[1],
                                        detail::scenario_element(sc, "e0", sc.maps[0].dom),
                                        detail::scenario_element(sc, "e1", sc.maps[1].dom));
    } else if (sc.construction == "prod_times_free") {
      const auto& base = detail::scenario_arg(sc, "base");
      if (base.size() != sc.maps.size()) fail(Errc::parse_error, "'arg base' needs one label per map");
      std::vector<int> bs;
      for (std::size_t i = 0; i < base.size(); ++i) bs.push_back(sc.maps[i].dom.order().require(base[i]));
      fr = product_with_free_factor(sc.maps, bs);
    } else if (sc.construction == "downset_product") {
      fr = downset_product_factorization(sc.maps);
    } else if (sc.construction == "sup_probe") {
      have_factorization = false;
      if (sc.lattices.size() != 1) fail(Errc::parse_error, "sup_probe takes exactly one lattice");
      probe_lattice = &sc.lattices[0];
      for (const auto& l : detail::scenario_arg(sc, "set")) probe_set.push_back(probe_lattice->require(l));
    } else {
      fail(Errc::unknown_construction, "no construction named '" + sc.construction + "'");
    }

    // grade the expectations
    for (const Expectation& e : sc.expects) {
      CheckOutcome out;
      out.prop = e.prop;
      out.negated = e.negated;
      bool holds = false;
      if (e.prop == "isotone" || e.prop == "join_hom" || e.prop == "lattice_hom") {
        if (!have_factorization) fail(Errc::parse_error, "'" + e.prop + "' needs a factorization construction");
        const MapMode mode = e.prop == "isotone"    ? MapMode::isotone
                             : e.prop == "join_hom" ? MapMode::join_hom
                                                    : MapMode::lattice_hom;
        MapCheck c = map_check(fr.projection, mode);
        holds = c.ok;
        if (!c.ok) out.witness = {c.witness[0], c.witness[1]};
      } else if (e.prop == "composite_eq") {
        if (!have_factorization) fail(Errc::parse_error, "'composite_eq' needs a factorization construction");
        holds = true;
        for (std::size_t i = 0; i < sc.maps.size(); ++i) {
          if (!same_assignment(compose(fr.projection, fr.injections.at(i)), sc.maps[i])) {
            holds = false;
            out.witness = {sc.maps[i].name};
          }
        }
      } else if (e.prop == "distributive" || e.prop == "contains_n5") {
        if (!have_factorization) fail(Errc::parse_error, "'" + e.prop + "' needs a factorization construction");
        VarietyReport vr = variety_check(fr.intermediate.lattice());
        if (e.prop == "distributive") {
          holds = vr.distributive;
        } else {
          holds = vr.pentagon_witness.has_value();
          if (holds) out.witness.assign(vr.pentagon_witness->begin(), vr.pentagon_witness->end());
        }
      } else if (e.prop == "bounds_eq") {
        if (!probe_lattice) fail(Errc::parse_error, "'bounds_eq' needs the sup_probe construction");
        holds = bound_equivalence_check(*probe_lattice, probe_set);
      } else if (e.prop == "sup_eq") {
        if (!probe_lattice) fail(Errc::parse_error, "'sup_eq' needs the sup_probe construction");
        if (e.args.size() != 1) fail(Errc::parse_error, "'sup_eq' takes the expected element label");
        const int got = sup_via_extension_probe(*probe_lattice, probe_set);
        holds = got == probe_lattice->require(e.args[0]);
        if (!holds) out.witness = {probe_lattice->label(got)};
      } else {
        fail(Errc::parse_error, "unknown property '" + e.prop + "'");
      }
      out.ok = e.negated ? !holds : holds;
      res.checks.push_back(std::move(out));
    }
    res.status = "pass";
    for (const CheckOutcome& c : res.checks)
      if (!c.ok) res.status = "fail";
  } catch (const std::exception& err) {
    res.status = "error";
    res.error = err.what();
  }
  return res;
}

}  // namespace isolat
