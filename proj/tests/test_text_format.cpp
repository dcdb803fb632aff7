#include <catch_amalgamated.hpp>

#include <filesystem>

#include <dpath/dpath.hpp>

using namespace dpath;

namespace {

  std::string fixture(std::string const& name) {
    return std::string(DPATH_DEFAULT_FIXTURE_DIR) + "/" + name;
  }

  std::string data(std::string const& name) {
    return std::string(DPATH_TEST_DATA_DIR) + "/" + name;
  }

  Error error_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e;
    }
    FAIL("no error raised");
    return Error(Errc::invalid_argument, "");
  }

}  // namespace

TEST_CASE("shipped fixtures load and round trip") {
  size_t n = 0;
  for (auto const& entry : std::filesystem::recursive_directory_iterator(
           DPATH_DEFAULT_FIXTURE_DIR)) {
    if (entry.path().extension() != ".dps") {
      continue;
    }
    ++n;
    auto l = load_all(entry.path().string());
    REQUIRE(l.complex.has_value());
    auto again = parse_complex(serialize(*l.complex));
    CHECK(serialize(again) == serialize(*l.complex));
    CHECK(again.cells().size() == l.complex->cells().size());
  }
  CHECK(n >= 8);
}

TEST_CASE("paths and families from a file") {
  auto l = load_all(fixture("disk_over_ii.dps"));
  REQUIRE(l.paths.size() == 2);
  CHECK(l.path_order == std::vector<std::string>{"boundary", "interior"});
  CHECK(l.paths.at("boundary").natural_length() == 2);
  CHECK(l.paths.at("interior").natural_length() == 1);
  REQUIRE(l.families.count("sweep") == 1);
  auto prof = natural_length_profile(*l.complex, l.families.at("sweep"));
  REQUIRE(prof.size() == 2);
  CHECK(prof[0].length == 2);
  CHECK(prof[1].length == 1);

  auto g = load_all(fixture("glob_s1.dps"));
  CHECK_FALSE(is_regular(g.paths.at("up_stops")));
  CHECK(is_regular(g.paths.at("up_unit")));
}

TEST_CASE("cell files") {
  auto cells = parse_cells(read_file(fixture("pushout/disk_over_ii.cell")));
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].id == "d");
  CHECK(cells[0].disk_dim == 1);
  auto base = load_complex(fixture("pushout/disk_over_ii.dps"));
  CHECK(all_traces(attach_cell(base, cells[0]), "0", "2").traces.size() == 2);
}

TEST_CASE("errors carry locations") {
  auto psi = error_of([] { load_complex(data("psi_flavor_g.dps")); });
  CHECK(psi.code() == Errc::flavor);
  CHECK(std::string(psi.what()).find("psi_flavor_g.dps:10:") != std::string::npos);

  auto order = error_of([] { load_complex(data("later_cell.dps")); });
  CHECK(order.code() == Errc::validation);
  CHECK(std::string(order.what()).find("later_cell.dps:5:") != std::string::npos);
  CHECK(std::string(order.what()).find("skeletal order") != std::string::npos);

  auto rat = error_of([] { load_all(data("bad_rational.dps")); });
  CHECK(rat.code() == Errc::parse);
  CHECK(std::string(rat.what()).find("bad_rational.dps:6:") != std::string::npos);

  auto kw = error_of([] { parse_complex("space flavor=M\nstate 0\nedge a\n", "x.dps"); });
  CHECK(kw.code() == Errc::parse);
  CHECK(std::string(kw.what()).starts_with("x.dps:3:"));

  CHECK(error_of([] { parse_complex("state 0\n"); }).code() == Errc::parse);
  CHECK(error_of([] { parse_complex("space flavor=Q\n"); }).code() == Errc::parse);
  CHECK(error_of([] {
          parse_complex("space flavor=M\nstate 0\nstate 1\n"
                        "cell a dim=0 src=0 tgt=1 attach=endpoints extra=1\n");
        }).code() == Errc::parse);

  auto fam = error_of([] {
    auto cx = load_complex(fixture("disk_over_ii.dps"));
    parse_paths("family f : [0,1] d@(-1+2u)\n", cx, "f.dps");
  });
  CHECK(fam.code() == Errc::validation);
  CHECK(std::string(fam.what()).starts_with("f.dps:1:"));
}

TEST_CASE("step and coordinate syntax") {
  auto cx = load_complex(fixture("psi.dps"));
  auto l  = parse_paths("natpath a : e_minus\nnatpath b : psi@(1/2,-1/4)\n", cx);
  CHECK(l.natpaths.at("a") == NaturalPath{{Step{"e_minus", {}}}});
  CHECK(l.natpaths.at("b").steps[0].z == DiskPoint{Rat(1, 2), Rat(-1, 4)});
  CHECK(error_of([&] { parse_paths("natpath a : e_minus ;\n", cx); }).code()
        == Errc::parse);
  CHECK(error_of([&] { parse_paths("natpath a : psi@(2,0)\n", cx); }).code()
        == Errc::validation);

  auto f = parse_paths("family f : [0,1] psi@(-1/2+1/2u,u-1/2)\n", cx);
  auto const& seg = f.families.at("f").pieces.at(0).segments.at(0);
  CHECK(seg.z[0].c0 == Rat(-1, 2));
  CHECK(seg.z[0].c1 == Rat(1, 2));
  CHECK(seg.z[1].c0 == Rat(-1, 2));
  CHECK(seg.z[1].c1 == Rat(1));
  CHECK(error_of([&] { parse_paths("family f : [0,1] psi@(+u,0)\n", cx); }).code()
        == Errc::parse);
}
