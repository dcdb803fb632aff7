#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <dpath/check/suites.hpp>
#include <dpath/dpath.hpp>

using namespace dpath;
using json = nlohmann::ordered_json;

namespace {

  constexpr int exit_ok      = 0;
  constexpr int exit_failed  = 1;
  constexpr int exit_error   = 2;

  struct Options {
    std::string              space;
    std::vector<std::string> paths;
    std::string              cell;
    std::string              from;
    std::string              to;
    std::optional<size_t>    budget;
    int                      grid = 100;
    uint64_t                 seed = 1;
    std::string              flavor;
    std::string              suite;
    bool                     json   = false;
    bool                     timing = false;
  };

  json header(std::string const& command) {
    json j;
    j["schema"]  = "dpath-report";
    j["version"] = check::report_schema_version;
    j["command"] = command;
    return j;
  }

  std::optional<Flavor> flavor_override(Options const& o) {
    if (o.flavor.empty()) {
      return std::nullopt;
    }
    if (o.flavor == "G") {
      return Flavor::G;
    }
    if (o.flavor == "M") {
      return Flavor::M;
    }
    fail(Errc::invalid_argument, "--flavor must be G or M");
  }

  Loaded load_space(Options const& o) {
    if (o.space.empty()) {
      fail(Errc::invalid_argument, "--space is required");
    }
    return load_all(o.space, flavor_override(o));
  }

  // The named paths, or every path of the file when none is named.
  std::vector<std::pair<std::string, ExecutionPath>> pick_paths(Loaded const& l,
                                                                Options const& o) {
    std::vector<std::pair<std::string, ExecutionPath>> out;
    if (o.paths.empty()) {
      for (auto const& n : l.path_order) {
        out.emplace_back(n, l.paths.at(n));
      }
      return out;
    }
    for (auto const& n : o.paths) {
      auto it = l.paths.find(n);
      if (it == l.paths.end()) {
        fail(Errc::invalid_argument, o.space + ": no path named '" + n + "'");
      }
      out.emplace_back(n, it->second);
    }
    return out;
  }

  std::string interval(Rat const& a, Rat const& b) {
    return "[" + a.str() + "," + b.str() + "]";
  }

  int cmd_validate(Options const& o) {
    auto        l  = load_space(o);
    auto const& cx = *l.complex;
    size_t      boundary_points = 0;
    for (auto const& c : cx.cells()) {
      if (c.disk_dim == 0) {
        continue;
      }
      for (size_t i = 0; i < static_cast<size_t>(c.disk_dim); ++i) {
        for (int sign : {-1, 1}) {
          std::vector<Rat> z(c.disk_dim, Rat(0));
          z[i] = Rat(sign);
          auto img = cx.resolve_boundary(c.id, DiskPoint(z));
          if (cx.src(img.base) != c.src || cx.tgt(img.base) != c.tgt) {
            fail(Errc::validation, o.space + ": boundary of cell '" + c.id
                                       + "' does not run from src to tgt");
          }
          ++boundary_points;
        }
      }
    }
    if (o.json) {
      json j      = header("validate");
      j["status"] = "pass";
      j["file"]   = o.space;
      j["flavor"] = flavor_name(cx.flavor());
      j["states"] = cx.states().size();
      j["cells"]  = cx.cells().size();
      j["natpaths"] = l.natpaths.size();
      j["paths"]    = l.paths.size();
      j["families"] = l.families.size();
      j["boundary_points_resolved"] = boundary_points;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << o.space << ": ok (flavor " << flavor_name(cx.flavor()) << ", "
                << cx.states().size() << " states, " << cx.cells().size()
                << " cells, " << l.paths.size() << " paths, " << l.families.size()
                << " families)\n";
    }
    return exit_ok;
  }

  int cmd_naturalize(Options const& o) {
    auto l  = load_space(o);
    json js = header("naturalize");
    js["status"] = "pass";
    js["paths"]  = json::array();
    for (auto const& [name, p] : pick_paths(l, o)) {
      auto [nat, eta] = naturalize(p);
      auto stops      = stop_intervals(*l.complex, p);
      json j;
      j["name"]           = name;
      j["carrier"]        = carrier(p);
      j["natural_length"] = natural_length(p);
      j["trace"]          = nat.str();
      j["eta"]            = eta.str();
      j["stops"]          = json::array();
      for (auto const& s : stops) {
        j["stops"].push_back({{"interval", interval(s.a, s.b)}, {"at", describe(s.at)}});
      }
      if (!o.json) {
        std::string cs;
        for (auto const& c : carrier(p)) {
          cs += (cs.empty() ? "" : " ") + c;
        }
        std::cout << name << ":\n  carrier: " << cs << "\n  natural length: " << natural_length(p)
                  << "\n  trace: " << nat.str() << "\n  eta: " << eta.str()
                  << "\n  stops:";
        if (stops.empty()) {
          std::cout << " none";
        }
        std::cout << "\n";
        for (auto const& s : stops) {
          std::cout << "    " << interval(s.a, s.b) << " at " << describe(s.at) << "\n";
        }
      }
      js["paths"].push_back(std::move(j));
    }
    if (o.json) {
      std::cout << js.dump(2) << "\n";
    }
    return exit_ok;
  }

  int cmd_trace(Options const& o) {
    auto l  = load_space(o);
    json js = header("trace");
    js["status"] = "pass";
    js["paths"]  = json::array();
    for (auto const& [name, p] : pick_paths(l, o)) {
      auto        g = g_trace(p);
      std::string levels;
      json        lv = json::array();
      for (auto const& y : g.stop_levels) {
        levels += (levels.empty() ? "" : " ") + y.str();
        lv.push_back(y.str());
      }
      js["paths"].push_back({{"name", name}, {"trace", trace(p).str()}, {"g_stop_levels", lv}});
      if (!o.json) {
        std::cout << name << ": trace " << trace(p).str() << "; g_trace stops at {"
                  << levels << "}\n";
      }
    }
    if (o.json) {
      std::cout << js.dump(2) << "\n";
    }
    return exit_ok;
  }

  int cmd_compose(Options const& o) {
    auto l = load_space(o);
    if (o.paths.size() < 2) {
      fail(Errc::invalid_argument, "compose needs at least two --path options");
    }
    auto ps  = pick_paths(l, o);
    auto acc = ps[0].second;
    for (size_t i = 1; i < ps.size(); ++i) {
      acc = normalized_compose(*l.complex, acc, ps[i].second);
    }
    if (o.json) {
      json j      = header("compose");
      j["status"] = "pass";
      j["trace"]  = acc.base().str();
      j["reparam"] = acc.reparam().str();
      j["natural_length"] = acc.natural_length();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "trace: " << acc.base().str() << "\nreparam: " << acc.reparam().str()
                << "\nnatural length: " << acc.natural_length() << "\n";
    }
    return exit_ok;
  }

  int cmd_slice_check(Options const& o) {
    auto l = load_space(o);
    if (o.cell.empty()) {
      fail(Errc::invalid_argument, "--cell is required");
    }
    if (o.grid < 2) {
      fail(Errc::invalid_argument, "--grid must be at least 2");
    }
    json   rows = json::array();
    size_t hits = 0;
    for (int k = 1; k < o.grid; ++k) {
      Rat  h(k, o.grid);
      auto w = slice_meets_states(*l.complex, o.cell, h);
      hits += w.has_value();
      json row{{"h", h.str()}};
      if (w) {
        row["z"]     = w->z.str();
        row["state"] = w->state;
      }
      rows.push_back(std::move(row));
      if (!o.json) {
        std::cout << "h = " << h.str() << ": "
                  << (w ? w->z.str() + " -> state " + w->state : "no witness") << "\n";
      }
    }
    if (o.json) {
      json j         = header("slice-check");
      j["status"]    = "pass";
      j["cell"]      = o.cell;
      j["grid"]      = o.grid;
      j["witnesses"] = hits;
      j["heights"]   = std::move(rows);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << hits << " of " << o.grid - 1 << " heights meet a state\n";
    }
    return exit_ok;
  }

  int cmd_traces(Options const& o) {
    auto l = load_space(o);
    if (o.from.empty() || o.to.empty()) {
      fail(Errc::invalid_argument, "--from and --to are required");
    }
    auto ts = all_traces(*l.complex, o.from, o.to, o.budget);
    if (o.json) {
      json j         = header("traces");
      j["status"]    = "pass";
      j["from"]      = o.from;
      j["to"]        = o.to;
      j["count"]     = ts.traces.size();
      j["truncated"] = ts.truncated;
      j["traces"]    = json::array();
      for (auto const& t : ts.traces) {
        j["traces"].push_back(t.str());
      }
      std::cout << j.dump(2) << "\n";
    } else {
      for (auto const& t : ts.traces) {
        std::cout << t.str() << "\n";
      }
      std::cout << ts.traces.size() << " traces from " << o.from << " to " << o.to
                << (ts.truncated ? " (truncated by budget)" : "") << "\n";
    }
    return exit_ok;
  }

  int cmd_pushout_check(Options const& o) {
    if (o.space.empty() || o.cell.empty() || o.from.empty() || o.to.empty()) {
      fail(Errc::invalid_argument, "--space, --cell, --from and --to are required");
    }
    auto base  = load_complex(o.space, flavor_override(o));
    auto cells = parse_cells(read_file(o.cell), o.cell);
    if (cells.size() != 1) {
      fail(Errc::validation, o.cell + ": expected exactly one cell");
    }
    auto rep = pushout_trace_check(base, cells[0], o.from, o.to, o.budget);
    bool ok  = rep.bijection && rep.method_a_count == rep.method_b_count;
    if (o.json) {
      json j            = header("pushout-check");
      j["status"]       = ok ? "pass" : "fail";
      j["cell"]         = cells[0].id;
      j["from"]         = o.from;
      j["to"]           = o.to;
      j["direct"]       = rep.method_a_count;
      j["simplified"]   = rep.method_b_count;
      j["bijection"]    = rep.bijection;
      if (rep.mismatch_witness) {
        j["witness"] = *rep.mismatch_witness;
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "direct traces: " << rep.method_a_count
                << "\nsimplified elements: " << rep.method_b_count << "\n"
                << (ok ? "bijection verified" : "MISMATCH: " + rep.mismatch_witness.value_or(""))
                << "\n";
    }
    return ok ? exit_ok : exit_failed;
  }

  int cmd_suite(Options const& o) {
    check::SuiteOptions so;
    so.seed   = o.seed;
    so.grid   = o.grid;
    so.timing = o.timing;
    char const* dir = std::getenv("DPATH_SUITE_DIR");
    so.fixture_dir  = dir != nullptr && *dir != '\0' ? dir : DPATH_DEFAULT_FIXTURE_DIR;

    std::vector<std::string> names;
    if (o.suite == "all") {
      for (auto const& s : check::suites()) {
        names.push_back(s.first);
      }
    } else {
      names.push_back(o.suite);
    }
    std::vector<check::Report> reports;
    for (auto const& n : names) {
      reports.push_back(check::run_suite(n, so));
    }
    bool ok = true;
    for (auto const& r : reports) {
      ok = ok && r.status() == check::Status::pass;
    }
    if (o.json) {
      if (reports.size() == 1) {
        std::cout << check::to_json(reports[0]).dump(2) << "\n";
      } else {
        json j      = header("suite");
        j["status"] = ok ? "pass" : "fail";
        j["suites"] = json::array();
        for (auto const& r : reports) {
          j["suites"].push_back(check::to_json(r));
        }
        std::cout << j.dump(2) << "\n";
      }
    } else {
      for (auto const& r : reports) {
        check::print_text(std::cout, r);
      }
    }
    return ok ? exit_ok : exit_failed;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on globular complexes and their execution paths"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Structured output");
    sub->add_option("--flavor", o.flavor, "Override the file's flavor (G or M)");
  };
  auto space = [&](CLI::App* sub) {
    sub->add_option("--space", o.space, "Complex file")->required();
  };

  auto* validate = app.add_subcommand("validate", "Load and audit a complex file");
  space(validate);
  common(validate);

  auto* nat = app.add_subcommand("naturalize", "Carrier, natural length, eta and stops");
  space(nat);
  nat->add_option("--path", o.paths, "Path name (repeatable; default all)");
  common(nat);

  auto* tr = app.add_subcommand("trace", "Trace and G-trace of paths");
  space(tr);
  tr->add_option("--path", o.paths, "Path name (repeatable; default all)");
  common(tr);

  auto* comp = app.add_subcommand("compose", "Normalized composition of paths");
  space(comp);
  comp->add_option("--path", o.paths, "Path name, in order (at least two)")->required();
  common(comp);

  auto* slice = app.add_subcommand("slice-check", "Achronal slices of a cell on a grid");
  space(slice);
  slice->add_option("--cell", o.cell, "Cell id")->required();
  slice->add_option("--grid", o.grid, "Heights k/grid for 0 < k < grid");
  common(slice);

  auto* traces = app.add_subcommand("traces", "Enumerate traces between two states");
  space(traces);
  traces->add_option("--from", o.from)->required();
  traces->add_option("--to", o.to)->required();
  traces->add_option("--budget", o.budget, "Maximum carrier length");
  common(traces);

  auto* po = app.add_subcommand("pushout-check", "Compare direct and simplified traces");
  space(po);
  po->add_option("--cell", o.cell, "File holding the attached cell")->required();
  po->add_option("--from", o.from)->required();
  po->add_option("--to", o.to)->required();
  po->add_option("--budget", o.budget, "Maximum carrier length");
  common(po);

  auto* suite = app.add_subcommand("suite", "Run a named check suite, or 'all'");
  std::vector<std::string> suite_names{"all"};
  for (auto const& s : check::suites()) {
    suite_names.push_back(s.first);
  }
  suite->add_option("name", o.suite, "Suite name")->required();
  suite->add_option("--seed", o.seed, "Random seed");
  suite->add_option("--grid", o.grid, "Grid density for slice checks");
  suite->add_flag("--timing", o.timing, "Include wall-clock time");
  suite->add_flag("--json", o.json, "Structured output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      return cmd_validate(o);
    }
    if (*nat) {
      return cmd_naturalize(o);
    }
    if (*tr) {
      return cmd_trace(o);
    }
    if (*comp) {
      return cmd_compose(o);
    }
    if (*slice) {
      return cmd_slice_check(o);
    }
    if (*traces) {
      return cmd_traces(o);
    }
    if (*po) {
      return cmd_pushout_check(o);
    }
    if (std::find(suite_names.begin(), suite_names.end(), o.suite) == suite_names.end()) {
      fail(Errc::invalid_argument, "unknown suite '" + o.suite + "'");
    }
    return cmd_suite(o);
  } catch (Error const& e) {
    if (o.json) {
      json j      = header(app.get_subcommands().front()->get_name());
      j["status"] = "error";
      j["error"]  = {{"code", errc_name(e.code())}, {"message", e.what()}};
      std::cout << j.dump(2) << "\n";
    }
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    return exit_error;
  }
}
