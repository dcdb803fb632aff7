#include <catch_amalgamated.hpp>

#include <dpath/check/random.hpp>
#include <dpath/mooreflow.hpp>

using namespace dpath;

namespace {

  PLMap stop_half() { return make_pl(1, 1, {{0, 0}, {Rat(1, 2), 1}, {1, 1}}); }

  std::string show(ReedyObject<std::string> const& o) {
    std::string s;
    for (auto const& t : o.triples) {
      s += "(" + t.from + "," + std::to_string(t.eps) + "," + t.to + ")";
    }
    return s;
  }

}  // namespace

TEST_CASE("paths with lengths") {
  auto       cx = chain_of_globes({{"a"}, {"b"}, {"c"}}, Flavor::M);
  check::Gen gen(41);
  auto       p = ExecutionPath::make(cx, NaturalPath{{Step{"a", {}}}}, gen.m11());
  auto       q = ExecutionPath::make(cx, NaturalPath{{Step{"b", {}}}}, gen.m11());
  auto       r = ExecutionPath::make(cx, NaturalPath{{Step{"c", {}}}}, gen.m11());

  CHECK(at_length(p, 1).reparam == p.reparam());
  CHECK(to_unit(cx, at_length(p, 3)) == p);
  CHECK(at_length(p, Rat(5, 2)).length() == Rat(5, 2));

  auto pq = moore_compose_lengths(cx, at_length(p, 1), at_length(q, 1));
  CHECK(pq.length() == Rat(2));
  CHECK(to_unit(cx, pq) == normalized_compose(cx, p, q));

  auto a = at_length(p, Rat(1, 3)), b = at_length(q, 2), c = at_length(r, Rat(3, 4));
  CHECK(moore_compose_lengths(cx, moore_compose_lengths(cx, a, b), c)
        == moore_compose_lengths(cx, a, moore_compose_lengths(cx, b, c)));
  CHECK(to_unit(cx, moore_compose_lengths(cx, a, b))
        == moore_compose(cx, p, q, Rat(1, 7), Rat(6, 7)));
  CHECK(moore_compose_lengths(cx, a, b).base == concat(p.base(), q.base()));
}

TEST_CASE("regularization") {
  check::Gen gen(42);
  for (int i = 0; i < 50; ++i) {
    auto g = gen.m11(6);
    auto r = regularize(g);
    CHECK(r.regular.is_homeo());
    CHECK(compose(r.eta, r.regular) == g);
  }
}

TEST_CASE("the predicate of a map with a stop is not saturated") {
  auto          phi = stop_half();
  PathPredicate p{{phi}};
  CHECK_FALSE(predicate_member(p, PLMap::identity(1)));
  check::Gen gen(43);
  for (int i = 0; i < 30; ++i) {
    CHECK(predicate_member(p, compose(gen.m11(), phi)));
  }
  auto v = is_saturated(p);
  CHECK_FALSE(v.saturated);
  REQUIRE(v.chi.has_value());
  REQUIRE(v.phi.has_value());
  CHECK(*v.chi == PLMap::identity(1));
  CHECK(predicate_member(p, compose(*v.phi, *v.chi)));
  CHECK(predicate_member(saturate(p), PLMap::identity(1)));
}

TEST_CASE("saturation is idempotent and enlarging") {
  check::Gen gen(44);
  for (int i = 0; i < 20; ++i) {
    PathPredicate p{{gen.m11(), gen.m11()}};
    auto          s = saturate(p);
    for (int j = 0; j < 10; ++j) {
      auto chi = gen.m11();
      if (predicate_member(p, chi)) {
        CHECK(predicate_member(s, chi));
      }
      CHECK(predicate_member(s, chi) == predicate_member(saturate(s), chi));
    }
    CHECK(is_saturated(s).saturated);
  }
  auto cx = build_glob_S1(Flavor::M);
  for (auto const& c : cx.cells()) {
    CHECK(is_saturated(cell_path_predicate(cx, c.id)).saturated);
  }
}

TEST_CASE("reedy degree and arrows") {
  using O = ReedyObject<std::string>;
  std::pair<std::string, std::string> uv{"u", "v"};
  CHECK(reedy_degree(O{{{"u", 0, "v"}}, uv}) == 1);
  CHECK(reedy_degree(O{{{"x", 0, "u"}, {"u", 1, "v"}}, uv}) == 3);

  auto arrows = reedy_arrows(O{{{"x", 0, "y"}, {"y", 0, "z"}}, uv});
  REQUIRE(arrows.size() == 1);
  CHECK(arrows[0].gen == Generator{ArrowKind::composition, 1});
  CHECK(arrows[0].target == O{{{"x", 0, "z"}}, uv});

  auto inc = reedy_arrows(O{{{"u", 0, "v"}}, uv});
  REQUIRE(inc.size() == 1);
  CHECK(inc[0].gen == Generator{ArrowKind::inclusion, 1});
  CHECK(inc[0].target == O{{{"u", 1, "v"}}, uv});

  CHECK_FALSE(is_valid(O{{{"x", 1, "y"}}, uv}));
  CHECK_FALSE(is_valid(O{{{"x", 0, "y"}, {"z", 0, "w"}}, uv}));
}

TEST_CASE("reedy relations on small objects") {
  std::vector<std::string> s{"a", "b", "c"};
  auto audit = audit_relations<std::string>(s, {"a", "b"}, 6, show);
  CHECK(audit.ok());
  CHECK(audit.checks_a > 0);
  CHECK(audit.checks_b > 0);
  CHECK(audit.checks_c > 0);
  auto loop = audit_relations<std::string>(s, {"a", "a"}, 5, show);
  CHECK(loop.ok());
}

TEST_CASE("simplified elements") {
  using O = ReedyObject<std::string>;
  std::pair<std::string, std::string> uv{"0", "1"};
  NaturalPath                         a{{Step{"a", {}}}};
  DiagramElement one{O{{{"0", 1, "1"}}, uv}, {slot::Crossing{"d", DiskPoint{0}}}};
  CHECK(is_simplified(one));
  DiagramElement two{O{{{"0", 0, "1"}, {"1", 0, "2"}}, uv},
                     {slot::Base{a}, slot::Base{a}}};
  CHECK_FALSE(is_simplified(two));
  DiagramElement bnd{O{{{"0", 1, "1"}}, uv}, {slot::Boundary{a}}};
  CHECK_FALSE(is_simplified(bnd));
}

TEST_CASE("pushout trace check") {
  auto ii = chain_of_globes({{"s1"}, {"s2"}}, Flavor::M);
  NamedPath b{"s1s2", NaturalPath{{Step{"s1", {}}, Step{"s2", {}}}}};
  auto      r = pushout_trace_check(ii, {"d", 1, "0", "2", attach::TwoPaths{b, b}},
                                    "0", "2", std::nullopt);
  CHECK(r.bijection);
  CHECK(r.method_a_count == 2);
  CHECK(r.method_b_count == 2);

  auto      s0 = glob_of_finite_set({"a", "b"}, Flavor::M);
  NamedPath pa{"pa", NaturalPath{{Step{"a", {}}}}};
  NamedPath pb{"pb", NaturalPath{{Step{"b", {}}}}};
  auto      g = pushout_trace_check(s0, {"e", 1, "0", "1", attach::TwoPaths{pa, pb}},
                                    "0", "1", std::nullopt);
  CHECK(g.bijection);
  CHECK(g.method_a_count == 3);

  auto empty = pushout_trace_check(ii, {"d", 1, "0", "2", attach::TwoPaths{b, b}},
                                   "0", "0", std::nullopt);
  CHECK(empty.bijection);
  CHECK(empty.method_a_count == 0);
  CHECK(empty.method_b_count == 0);
}
