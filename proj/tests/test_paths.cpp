#include <catch_amalgamated.hpp>

#include <dpath/check/random.hpp>
#include <dpath/check/refactor.hpp>
#include <dpath/paths.hpp>

using namespace dpath;

namespace {

  Errc code_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    FAIL("no error raised");
    return Errc::invalid_argument;
  }

  PLMap stop_half() { return make_pl(1, 1, {{0, 0}, {Rat(1, 2), 1}, {1, 1}}); }

  NaturalPath np(std::initializer_list<Step> s) { return NaturalPath{s}; }

}  // namespace

TEST_CASE("raw_to_normal on single segments") {
  auto cx = build_glob_S1(Flavor::M);
  auto p  = raw_to_normal(cx, {raw_segment("upper", DiskPoint{Rat(1, 3)},
                                           PLMap::identity(1), 1)});
  CHECK(p.base() == np({{"upper", DiskPoint{Rat(1, 3)}}}));
  CHECK(p.reparam() == PLMap::identity(1));

  auto q = raw_to_normal(cx, {raw_segment("upper", DiskPoint{-1},
                                          PLMap::identity(1), 1)});
  CHECK(q.base() == np({{"e_minus", {}}}));

  CHECK(code_of([&] {
          raw_to_normal(cx, {raw_segment("upper", DiskPoint{0},
                                         PLMap::identity(1), Rat(1, 2))});
        })
        == Errc::invalid_argument);
  CHECK(code_of([&] {
          raw_to_normal(cx, {raw_segment("e_plus", {}, PLMap::identity(1),
                                         Rat(1, 2)),
                             raw_segment("e_plus", {}, PLMap::identity(1),
                                         Rat(1, 2))});
        })
        == Errc::endpoint_mismatch);
}

TEST_CASE("a boundary point of the psi cell resolves through psi") {
  auto cx = build_psi_counterexample();
  auto p  = raw_to_normal(cx, {raw_segment("psi", DiskPoint{Rat(3, 5), Rat(4, 5)},
                                           PLMap::identity(1), 1)});
  CHECK(p.base() == np({{"upper", DiskPoint{Rat(3, 5)}}}));
  CHECK(p.reparam() == psi_map(Rat(3, 5)));
  CHECK_FALSE(is_regular(p));
  auto stops = stop_intervals(cx, p);
  REQUIRE(stops.size() == 2);
  CHECK(std::get<point::State>(stops[0].at).name == "0");
  CHECK(std::get<point::State>(stops[1].at).name == "1");
}

TEST_CASE("split paths renormalize identically") {
  auto cx = chain_of_globes({{"a"}, {"b"}}, Flavor::M);
  auto p  = ExecutionPath::make(cx, np({{"a", {}}, {"b", {}}}),
                                PLMap::linear(1, 2));
  auto halves = raw_segments(p);
  REQUIRE(halves.size() == 2);
  CHECK(halves[0].weight == Rat(1, 2));
  CHECK(raw_to_normal(cx, halves) == p);
}

TEST_CASE("normal form is independent of the raw factorization") {
  std::vector<GlobularComplex> cxs{build_glob_S1(Flavor::M),
                                   build_glob_S1(Flavor::G),
                                   build_psi_counterexample(),
                                   build_disk_over_two_segments(Flavor::M),
                                   build_disk_over_two_segments(Flavor::G)};
  check::Gen gen(21);
  for (auto const& cx : cxs) {
    for (int i = 0; i < 40; ++i) {
      auto p = gen.path(cx, 3);
      CHECK(raw_to_normal(cx, check::random_refactor(cx, p, gen)) == p);
    }
  }
}

TEST_CASE("naturalize, carrier, length") {
  auto cx = build_glob_S1(Flavor::M);
  auto p  = ExecutionPath::make(cx, np({{"upper", DiskPoint{0}}}), stop_half());
  auto [nat, eta] = naturalize(p);
  CHECK(nat == p.base());
  REQUIRE(flat_values(eta).size() == 1);
  auto stops = stop_intervals(cx, p);
  REQUIRE(stops.size() == 1);
  CHECK(stops[0].a == Rat(1, 2));
  CHECK(stops[0].b == Rat(1));
  CHECK(carrier(p) == std::vector<std::string>{"upper"});
  CHECK(is_minimal(p));

  check::Gen gen(22);
  auto       m = gen.m11();
  CHECK(naturalize(precompose(cx, p, m)).first == nat);
}

TEST_CASE("natural length on the disk over two segments") {
  auto cx  = build_disk_over_two_segments(Flavor::M);
  auto bnd = raw_to_normal(cx, {raw_segment("d", DiskPoint{1},
                                            PLMap::identity(1), 1)});
  auto in  = raw_to_normal(cx, {raw_segment("d", DiskPoint{Rat(1, 2)},
                                            PLMap::identity(1), 1)});
  CHECK(natural_length(bnd) == 2);
  CHECK(natural_length(in) == 1);
  CHECK(carrier(bnd) == std::vector<std::string>{"s1", "s2"});
}

TEST_CASE("moore composition") {
  auto cx = chain_of_globes({{"a"}, {"b"}, {"c"}, {"d"}, {"e"}}, Flavor::M);
  auto id = PLMap::identity(1);
  auto pa = ExecutionPath::make(cx, np({{"a", {}}}), id);
  auto pb = ExecutionPath::make(cx, np({{"b", {}}}), id);
  auto ab = moore_compose(cx, pa, pb, Rat(1, 2), Rat(1, 2));
  CHECK(ab.reparam() == PLMap::linear(1, 2));
  CHECK(ab == normalized_compose(cx, pa, pb));
  CHECK(code_of([&] { moore_compose(cx, pb, pa, Rat(1, 2), Rat(1, 2)); })
        == Errc::endpoint_mismatch);
  CHECK(code_of([&] { moore_compose(cx, pa, pb, Rat(1, 2), Rat(1, 3)); })
        == Errc::invalid_argument);

  auto p2 = ExecutionPath::make(cx, np({{"a", {}}, {"b", {}}}),
                                PLMap::linear(1, 2));
  auto p3 = ExecutionPath::make(cx, np({{"c", {}}, {"d", {}}, {"e", {}}}),
                                PLMap::linear(1, 3));
  auto p5 = moore_compose(cx, p2, p3, Rat(2, 5), Rat(3, 5));
  CHECK(natural_length(p5) == 5);
  CHECK(p5.reparam() == PLMap::linear(1, 5));
  CHECK(trace(p5) == concat(trace(p2), trace(p3)));

  auto pc = ExecutionPath::make(cx, np({{"c", {}}}), id);
  // each of a, b, c gets a third of [0,1] on both sides
  auto left  = moore_compose(cx, moore_compose(cx, pa, pb, Rat(1, 2), Rat(1, 2)),
                             pc, Rat(2, 3), Rat(1, 3));
  auto right = moore_compose(cx, pa, moore_compose(cx, pb, pc, Rat(1, 2), Rat(1, 2)),
                             Rat(1, 3), Rat(2, 3));
  CHECK(left == right);
}

TEST_CASE("precompose") {
  auto cx = build_glob_S1(Flavor::M);
  auto p  = ExecutionPath::make(cx, np({{"upper", DiskPoint{0}}}),
                                PLMap::identity(1));
  CHECK(precompose(cx, p, PLMap::identity(1)) == p);
  auto q = precompose(cx, p, stop_half());
  CHECK(carrier(q) == carrier(p));
  CHECK_FALSE(is_regular(q));
  CHECK(is_regular(p));

  auto g  = build_glob_S1(Flavor::G);
  auto pg = ExecutionPath::make(g, np({{"upper", DiskPoint{0}}}),
                                PLMap::identity(1));
  CHECK(code_of([&] { precompose(g, pg, stop_half()); }) == Errc::flavor);
  CHECK(code_of([&] {
          ExecutionPath::make(g, np({{"upper", DiskPoint{0}}}), stop_half());
        })
        == Errc::flavor);
}

TEST_CASE("evaluate") {
  auto cx = build_glob_S1(Flavor::M);
  auto p  = ExecutionPath::make(cx, np({{"upper", DiskPoint{Rat(1, 2)}}}),
                                PLMap::identity(1));
  CHECK(evaluate(cx, p, 0) == PointDescriptor{point::State{"0"}});
  CHECK(evaluate(cx, p, 1) == PointDescriptor{point::State{"1"}});
  CHECK(evaluate(cx, p, Rat(1, 3))
        == PointDescriptor{point::Interior{"upper", DiskPoint{Rat(1, 2)}, Rat(1, 3)}});
  CHECK(code_of([&] { evaluate(cx, p, 2); }) == Errc::invalid_argument);

  // closed convention at the ends of a stop interval
  auto q = precompose(cx, p, make_pl(1, 1, {{0, 0}, {Rat(1, 4), Rat(1, 2)},
                                            {Rat(3, 4), Rat(1, 2)}, {1, 1}}));
  auto stops = stop_intervals(cx, q);
  REQUIRE(stops.size() == 1);
  CHECK(evaluate(cx, q, Rat(1, 4)) == stops[0].at);
  CHECK(evaluate(cx, q, Rat(3, 4)) == stops[0].at);
}

TEST_CASE("traces and equivalence") {
  auto cx = build_glob_S1(Flavor::M);
  auto id = PLMap::identity(1);
  auto p  = ExecutionPath::make(cx, np({{"upper", DiskPoint{0}}}), id);
  auto q  = ExecutionPath::make(cx, np({{"upper", DiskPoint{Rat(1, 2)}}}), id);
  CHECK_FALSE(equivalent(p, q));
  check::Gen gen(23);
  for (int i = 0; i < 20; ++i) {
    CHECK(equivalent(p, precompose(cx, p, gen.m11())));
  }

  auto s = precompose(cx, p, stop_half());
  CHECK(g_trace(p).stop_levels.empty());
  CHECK(g_trace(s).stop_levels == std::set<Rat>{1});
  CHECK(g_trace(s).base == trace(s));
  CHECK(equivalent(p, s));
  CHECK_FALSE(g_trace(p) == g_trace(s));
  for (int i = 0; i < 50; ++i) {
    CHECK(g_trace(precompose(cx, s, gen.g11())) == g_trace(s));
  }
}
