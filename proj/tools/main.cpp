// Command-line front end: verification sections, scenario files, catalog
// emission, and free-lattice term comparison.
//
// Exit codes: 0 all checks pass, 1 a property failed, 2 bad input or an
// internal error.  Reports stay well-formed JSON in every case.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "isolat/io.hpp"
#include "isolat/report.hpp"
#include "isolat/scenario.hpp"
#include "isolat/term.hpp"
#include "isolat/verify.hpp"
#include "isolat/version.hpp"

namespace {

void write_report(const std::string& path, const isolat::ordered_json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) isolat::fail(isolat::Errc::invalid_input, "cannot open report file '" + path + "'");
  out << j.dump(2) << "\n";
}

int cmd_verify(int section, std::uint64_t seed, std::size_t max_size, const std::string& report_path) {
  isolat::SectionReport rep = isolat::verify_section(section, seed, max_size);
  write_report(report_path, isolat::section_report_to_json(rep));
  for (const isolat::CheckResult& c : rep.checks) {
    std::cout << (c.ok ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) std::cout << " — " << c.detail;
    std::cout << "\n";
    if (!c.ok && !c.witness.empty()) {
      std::cout << "       witness:";
      for (const std::string& w : c.witness) std::cout << " " << w;
      std::cout << "\n";
    }
  }
  std::cout << "section " << section << ": " << (rep.all_ok() ? "pass" : "FAIL") << " ("
            << rep.elapsed_ms << " ms, seed " << rep.seed << ")\n";
  return rep.all_ok() ? 0 : 1;
}

int cmd_run(const std::vector<std::string>& paths, const std::string& report_path) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<isolat::ScenarioResult> results;
  bool any_fail = false, any_error = false;
  for (const std::string& path : paths) {
    std::ifstream in(path);
    if (!in) isolat::fail(isolat::Errc::invalid_input, "cannot open scenario '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    isolat::Scenario sc = isolat::parse_scenario(buf.str());  // parse errors -> exit 2
    isolat::ScenarioResult r = isolat::run_scenario(sc);
    if (r.status == "fail") any_fail = true;
    if (r.status == "error") any_error = true;
    results.push_back(std::move(r));
  }
  const long long ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  write_report(report_path, isolat::scenario_results_to_json(results, ms));
  for (const isolat::ScenarioResult& r : results) {
    std::cout << "scenario " << r.name << ": " << r.status << "\n";
    for (const isolat::CheckOutcome& c : r.checks) {
      std::cout << "  " << (c.ok ? "[pass] " : "[FAIL] ") << (c.negated ? "not " : "") << c.prop;
      if (!c.ok && !c.witness.empty()) {
        std::cout << " — witness:";
        for (const std::string& w : c.witness) std::cout << " " << w;
      }
      std::cout << "\n";
    }
    if (!r.error.empty()) std::cout << "  error: " << r.error << "\n";
  }
  if (any_error) return 2;
  return any_fail ? 1 : 0;
}

int cmd_catalog(int max_size, const std::string& out_dir) {
  std::vector<isolat::FiniteLattice> cat = isolat::catalog_for_output(max_size);  // cap-checked
  std::filesystem::create_directories(out_dir);
  for (const isolat::FiniteLattice& l : cat) {
    const std::filesystem::path p = std::filesystem::path(out_dir) / (l.name() + ".lat");
    std::ofstream out(p);
    if (!out) isolat::fail(isolat::Errc::invalid_input, "cannot write '" + p.string() + "'");
    out << isolat::io::write_lattice(l);
  }
  std::cout << "wrote " << cat.size() << " lattices to " << out_dir << "\n";
  return 0;
}

int cmd_term(const std::string& op, const std::string& lhs, const std::string& rhs, const std::string& gens_csv) {
  if (op != "leq") isolat::fail(isolat::Errc::invalid_input, "supported term operation: leq");
  std::vector<std::string> gens;
  std::string cur;
  for (char ch : gens_csv) {
    if (ch == ',') {
      if (!cur.empty()) gens.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) gens.push_back(cur);
  const bool le = isolat::fl_leq(isolat::parse_term(lhs, gens), isolat::parse_term(rhs, gens));
  std::cout << (le ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(isolat::kToolName) + " — factorization toolkit for order-preserving maps between finite lattices"};
  app.set_version_flag("--version", isolat::kToolVersion);
  app.require_subcommand(1);

  int section = 0;
  std::uint64_t seed = isolat::kDefaultSeed;
  std::size_t max_size = 0;
  std::string verify_report;
  CLI::App* verify = app.add_subcommand("verify", "run a built-in verification section");
  verify->add_option("--section", section, "section number, 2 through 7")->required();
  verify->add_option("--seed", seed, "seed for the randomized sweeps");
  verify->add_option("--max-size", max_size, "catalog size cap (0 = section default)");
  verify->add_option("--report", verify_report, "write a JSON report to this path");

  std::vector<std::string> scenario_paths;
  std::string run_report;
  CLI::App* run = app.add_subcommand("run", "run scenario files");
  run->add_option("scenarios", scenario_paths, "scenario files")->required();
  run->add_option("--report", run_report, "write a JSON report to this path");

  int cat_max = 0;
  std::string out_dir;
  CLI::App* catalog = app.add_subcommand("catalog", "write the small-lattice catalog");
  catalog->add_option("--max-size", cat_max, "largest lattice size (at most 5)")->required();
  catalog->add_option("--out", out_dir, "output directory")->required();

  std::string term_op, term_lhs, term_rhs, term_gens = "a,b,c";
  CLI::App* term = app.add_subcommand("term", "compare free-lattice terms");
  term->add_option("op", term_op, "operation (leq)")->required();
  term->add_option("lhs", term_lhs, "left term")->required();
  term->add_option("rhs", term_rhs, "right term")->required();
  term->add_option("--gens", term_gens, "comma-separated generator names");

  try {
    app.parse(argc, argv);
    if (*verify) return cmd_verify(section, seed, max_size, verify_report);
    if (*run) return cmd_run(scenario_paths, run_report);
    if (*catalog) return cmd_catalog(cat_max, out_dir);
    if (*term) return cmd_term(term_op, term_lhs, term_rhs, term_gens);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const isolat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
