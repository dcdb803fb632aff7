// Check records and their text and JSON renderings.

#ifndef DPATH_CHECK_REPORT_HPP_
#define DPATH_CHECK_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace dpath::check {

  inline constexpr int report_schema_version = 1;

  enum class Status { pass, fail, error };

  inline char const* status_name(Status s) {
    switch (s) {
      case Status::pass: return "pass";
      case Status::fail: return "fail";
      default: return "error";
    }
  }

  // basis: where the expected value comes from ("fixture", "oracle",
  // "definition", "exhaustive").
  struct CheckRecord {
    std::string name;
    std::string expected;
    std::string actual;
    std::string basis;
    bool        pass = false;
  };

  struct Report {
    std::string              suite;
    uint64_t                 seed = 0;
    std::vector<CheckRecord> checks;
    std::optional<std::string> error;
    std::optional<double>    seconds;

    Status status() const {
      if (error) {
        return Status::error;
      }
      for (auto const& c : checks) {
        if (!c.pass) {
          return Status::fail;
        }
      }
      return Status::pass;
    }

    // Records a check whose expected and actual values are strings.
    CheckRecord& add(std::string name, std::string expected, std::string actual,
                     std::string basis) {
      bool ok = expected == actual;
      checks.push_back({std::move(name), std::move(expected), std::move(actual),
                        std::move(basis), ok});
      return checks.back();
    }

    // Records "passed/total"; `witness` replaces the actual value on failure.
    CheckRecord& tally(std::string name, size_t passed, size_t total,
                       std::string basis, std::string const& witness = "") {
      std::string want = std::to_string(total) + "/" + std::to_string(total);
      std::string got  = std::to_string(passed) + "/" + std::to_string(total);
      if (passed != total && !witness.empty()) {
        got += "; first failure: " + witness;
      }
      checks.push_back({std::move(name), want, got, std::move(basis),
                        passed == total});
      return checks.back();
    }
  };

  // Counts passes and keeps the first failure's description.
  struct Tally {
    size_t      passed = 0;
    size_t      total  = 0;
    std::string witness;

    void operator()(bool ok, auto&& describe) {
      ++total;
      if (ok) {
        ++passed;
      } else if (witness.empty()) {
        witness = describe();
      }
    }
  };

  inline void add_tally(Report& r, std::string name, Tally const& t,
                        std::string basis) {
    r.tally(std::move(name), t.passed, t.total, std::move(basis), t.witness);
  }

  inline nlohmann::ordered_json to_json(Report const& r) {
    nlohmann::ordered_json j;
    j["schema"] = "dpath-report";
    j["version"] = report_schema_version;
    j["suite"]   = r.suite;
    j["seed"]    = r.seed;
    j["status"]  = status_name(r.status());
    if (r.error) {
      j["error"] = *r.error;
    }
    j["checks"] = nlohmann::ordered_json::array();
    for (auto const& c : r.checks) {
      nlohmann::ordered_json o;
      o["name"]     = c.name;
      o["expected"] = c.expected;
      o["actual"]   = c.actual;
      o["basis"]    = c.basis;
      o["pass"]     = c.pass;
      j["checks"].push_back(std::move(o));
    }
    if (r.seconds) {
      j["seconds"] = *r.seconds;
    }
    return j;
  }

  inline void print_text(std::ostream& os, Report const& r) {
    os << "suite " << r.suite << " (seed " << r.seed << "): "
       << status_name(r.status()) << "\n";
    if (r.error) {
      os << "  error: " << *r.error << "\n";
    }
    for (auto const& c : r.checks) {
      os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": "
         << c.actual;
      if (!c.pass) {
        os << " (expected " << c.expected << ")";
      }
      os << " [" << c.basis << "]\n";
    }
    if (r.seconds) {
      os << "  time: " << *r.seconds << " s\n";
    }
  }

}  // namespace dpath::check

#endif  // DPATH_CHECK_REPORT_HPP_
