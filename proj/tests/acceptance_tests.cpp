// End-to-end gate: nine behavior groups, one pass/fail line each.  Every
// threshold (counts, runtimes) is pinned here rather than read from anywhere
// else so a regression shows up as a FAIL line, never as a silently weaker
// run.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>

#include "isolat/isolat.hpp"

using namespace isolat;

namespace {

using Verdict = std::pair<bool, std::string>;

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion(int n, const char* label, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    Verdict v = body();
    ok = v.first;
    detail = v.second;
  } catch (const std::exception& e) {
    detail = std::string("unexpected exception: ") + e.what();
  }
  std::printf("criterion %d [%s]: %s (%.1fs) — %s\n", n, label, ok ? "PASS" : "FAIL",
              seconds_since(t0), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Folds one check into a running verdict, keeping the first failure's story.
bool fold(const CheckResult& c, bool& ok, std::string& detail) {
  if (!c.ok && ok) {
    ok = false;
    detail = c.name + ": " + c.detail;
  }
  return c.ok;
}

long long count_of(const CheckResult& c, const std::string& key) {
  auto it = c.counts.find(key);
  return it == c.counts.end() ? -1 : it->second;
}

}  // namespace

int main() {
  criterion(1, "anchored product sweep over the small-lattice catalog", []() -> Verdict {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult c = anchored_sweep(kDefaultSeed);
    const double secs = seconds_since(t0);
    const long long inst = count_of(c, "instances");
    const long long tuples = count_of(c, "map_tuples");
    const long long facts = count_of(c, "factorizations");
    if (!c.ok) return {false, c.detail};
    if (inst < 50) return {false, "only " + std::to_string(inst) + " lattice tuples (need >= 50)"};
    if (tuples < 500) return {false, "only " + std::to_string(tuples) + " map tuples (need >= 500)"};
    if (facts < 4 * tuples)
      return {false, "anchors not exhausted: " + std::to_string(facts) + " factorizations"};
    if (secs >= 60.0) return {false, "sweep exceeded its 60 s budget"};
    return {true, std::to_string(inst) + " lattice tuples, " + std::to_string(tuples) +
                      " map tuples, " + std::to_string(facts) + " factorizations, all invariants held"};
  });

  criterion(2, "pinned-coordinate fold is isotone and exact", []() -> Verdict {
    CheckResult c = sea_level_check();
    const long long pairs = count_of(c, "comparable_pairs");
    const long long pinned = count_of(c, "pinned_tuples");
    if (!c.ok) return {false, c.detail};
    if (pairs <= 0 || pinned <= 0) return {false, "sweep was empty"};
    return {true, std::to_string(pairs) + " comparable pairs monotone, " + std::to_string(pinned) +
                      " pinned tuples recovered exactly"};
  });

  criterion(3, "distributive order agrees with the term order on three generators", []() -> Verdict {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult c = generator_fixing_check();
    const double secs = seconds_since(t0);
    if (!c.ok) return {false, c.detail};
    if (count_of(c, "pairs") != 324) return {false, "expected all 324 ordered pairs"};
    if (secs >= 5.0) return {false, "comparison exceeded its 5 s budget"};
    return {true, "generators fixed; order matches on all 324 pairs"};
  });

  criterion(4, "free-factor collapse, medians, and canonical reducibility", []() -> Verdict {
    bool ok = true;
    std::string detail;
    fold(free_factor_join_failure_check(), ok, detail);
    fold(median_check(), ok, detail);
    CheckResult red = reducibility_check(3);
    fold(red, ok, detail);
    if (ok)
      detail = "joinands collapse while the join survives; medians check out; " +
               std::to_string(count_of(red, "terms_built")) +
               " canonical terms, none both meet- and join-reducible";
    return {ok, detail};
  });

  criterion(5, "bound equivalence and sup recovery through extension probes", []() -> Verdict {
    bool ok = true;
    std::string detail;
    fold(bound_equivalence_sweep(), ok, detail);
    fold(complement_constant_sweep(), ok, detail);
    CheckResult sup = sup_probe_sweep();
    fold(sup, ok, detail);
    const long long probes = count_of(sup, "probes");
    if (ok && probes < 100) {
      ok = false;
      detail = "only " + std::to_string(probes) + " sup probes (need >= 100)";
    }
    if (ok)
      detail = "bounds agree on every small subset; complement-join constant on all partial homs; " +
               std::to_string(probes) + " sup probes exact";
    return {ok, detail};
  });

  criterion(6, "retraction-based factorizations on seeded instances", []() -> Verdict {
    bool ok = true;
    std::string detail;
    CheckResult sweep = retract_sweep(kDefaultSeed);
    fold(sweep, ok, detail);
    const long long inst = count_of(sweep, "instances");
    if (ok && inst < 100) {
      ok = false;
      detail = "only " + std::to_string(inst) + " instances (need >= 100)";
    }
    fold(convexity_check(), ok, detail);
    if (ok)
      detail = std::to_string(inst) +
               " seeded instances factor through their retracts; the 16-element convexity "
               "counterexample behaves as catalogued";
    return {ok, detail};
  });

  criterion(7, "join-semilattice extension, bounded-below projection, coproduct sizes", []() -> Verdict {
    bool ok = true;
    std::string detail;
    fold(jsl_extension_check(), ok, detail);
    fold(bounded_below_check(), ok, detail);
    fold(jsl_size_check(), ok, detail);
    if (ok) detail = "extensions restrict correctly; projections preserve joins; sizes match";
    return {ok, detail};
  });

  criterion(8, "closed-downset intermediate over a point and a square", []() -> Verdict {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    fold(downset_nondistributive_check(), ok, detail);
    fold(downset_pentagon_check(), ok, detail);
    fold(downset_fiber_check(), ok, detail);
    fold(downset_projection_check(), ok, detail);
    const double secs = seconds_since(t0);
    if (ok && secs >= 30.0) {
      ok = false;
      detail = "downset checks exceeded their 30 s budget";
    }
    if (ok)
      detail = "distributivity fails principal-vs-nonprincipal; pentagon located; fibers "
               "distributive; projection preserves joins and recovers the inputs";
    return {ok, detail};
  });

  criterion(9, "term-order soundness on random samples", []() -> Verdict {
    CheckResult c = whitman_soundness(kDefaultSeed, 10000);
    if (!c.ok) return {false, c.detail};
    const long long samples = count_of(c, "samples");
    if (samples < 10000) return {false, "only " + std::to_string(samples) + " samples (need >= 10000)"};
    return {true, std::to_string(samples) + " samples sound; the distributive inequality fails "
                      "syntactically and has a diamond countermodel"};
  });

  if (failures == 0) {
    std::printf("all 9 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
