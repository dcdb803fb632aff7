// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <dpath/check/suites.hpp>

using namespace dpath::check;

namespace {

  struct Criterion {
    int                      number;
    std::string              title;
    std::vector<std::string> suites;
    double                   time_limit = 0;  // seconds, 0 for none
  };

  std::string first_failure(Report const& r) {
    if (r.error) {
      return "error: " + *r.error;
    }
    for (auto const& c : r.checks) {
      if (!c.pass) {
        return c.name + ": " + c.actual + " (expected " + c.expected + ")";
      }
    }
    return "";
  }

}  // namespace

int main(int argc, char** argv) {
  SuiteOptions o;
  o.seed        = 20261016;
  o.fixture_dir = argc > 1 ? argv[1] : DPATH_DEFAULT_FIXTURE_DIR;

  std::vector<Criterion> criteria{
      {1, "reparametrization algebra, 1000 instances", {"reparam-algebra"}, 10},
      {2, "normal-form uniqueness, 500 paths", {"normal-form"}},
      {3, "naturalization homomorphism, 500 pairs and 200 triples", {"naturalization"}},
      {4, "psi slices on the k/100 grid with constant control", {"psi-counterexample"}},
      {5, "saturation witness and single-cell predicates", {"saturation"}},
      {6, "chain trace counts and pack/unpack", {"chain-traces"}},
      {7, "natural-length profile and carrier sets", {"length-profile"}},
      {8, "Reedy relations up to degree 6 over 3 states", {"reedy-audit"}},
      {9, "pushout trace bijection on fixture instances", {"pushout"}, 60},
      {10, "flavor comparison of trace and g_trace", {"flavor"}},
  };

  bool all_ok = true;
  for (auto const& c : criteria) {
    auto        start = std::chrono::steady_clock::now();
    bool        ok    = true;
    std::string why;
    size_t      checks = 0;
    for (auto const& s : c.suites) {
      Report r = run_suite(s, o);
      checks += r.checks.size();
      if (r.status() != Status::pass) {
        ok = false;
        if (why.empty()) {
          why = first_failure(r);
        }
      }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      ok = false;
      if (why.empty()) {
        why = "took " + std::to_string(secs) + " s, limit "
              + std::to_string(c.time_limit) + " s";
      }
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.number << ". " << c.title << " ("
              << checks << " checks, " << std::fixed << std::setprecision(2) << secs
              << " s";
    if (c.time_limit > 0) {
      std::cout << ", limit " << c.time_limit << " s";
    }
    std::cout << ")";
    if (!ok) {
      std::cout << ": " << why;
    }
    std::cout << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
