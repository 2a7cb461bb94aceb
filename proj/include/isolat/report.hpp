#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "isolat/scenario.hpp"
#include "isolat/verify.hpp"
#include "isolat/version.hpp"

// JSON reports.  Key order is fixed by construction (ordered_json) and the
// only run-to-run difference for a fixed seed is the trailing elapsed_ms,
// so reports from equal inputs are byte-identical up to that field.

namespace isolat {

using ordered_json = nlohmann::ordered_json;

inline ordered_json check_to_json(const CheckResult& c) {
  ordered_json j;
  j["name"] = c.name;
  j["status"] = c.ok ? "pass" : "fail";
  j["detail"] = c.detail;
  j["witness"] = c.witness;
  ordered_json counts = ordered_json::object();
  for (const auto& [k, v] : c.counts) counts[k] = v;  // std::map: keys already sorted
  j["counts"] = counts;
  return j;
}

inline ordered_json section_report_to_json(const SectionReport& rep) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["mode"] = "verify";
  j["section"] = rep.section;
  j["seed"] = rep.seed;
  j["max_size"] = rep.max_size;
  j["status"] = rep.all_ok() ? "pass" : "fail";
  j["checks"] = ordered_json::array();
  for (const CheckResult& c : rep.checks) j["checks"].push_back(check_to_json(c));
  j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

inline ordered_json scenario_results_to_json(const std::vector<ScenarioResult>& results, long long elapsed_ms) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["mode"] = "run";
  bool all = true;
  ordered_json arr = ordered_json::array();
  for (const ScenarioResult& r : results) {
    if (r.status != "pass") all = false;
    ordered_json s;
    s["scenario"] = r.name;
    s["status"] = r.status;
    if (!r.error.empty()) s["error"] = r.error;
    s["checks"] = ordered_json::array();
    for (const CheckOutcome& c : r.checks) {
      ordered_json e;
      e["property"] = (c.negated ? "not " : "") + c.prop;
      e["status"] = c.ok ? "pass" : "fail";
      e["witness"] = c.witness;
      s["checks"].push_back(e);
    }
    arr.push_back(s);
  }
  j["status"] = all ? "pass" : "fail";
  j["scenarios"] = arr;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

}  // namespace isolat
