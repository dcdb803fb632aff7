#include <catch_amalgamated.hpp>

#include <dpath/check/random.hpp>
#include <dpath/spaces.hpp>

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

  Affine k(Rat c) { return {std::move(c), 0}; }

  // u |-> d crossed at 2u - 1: on the boundary at u = 0, 1.
  PathFamily disk_sweep() {
    return {"sweep",
            {{{0, 0, true, true}, {{"d", {k(-1)}}}},
             {{0, 1, false, false}, {{"d", {Affine{-1, 2}}}}},
             {{1, 1, true, true}, {{"d", {k(1)}}}}}};
  }

}  // namespace

TEST_CASE("chain traces") {
  auto c = chain_of_globes({{"a", "b"}, {"c"}}, Flavor::M);
  CHECK(chain_traces(c, "0", "2").traces.size() == 2);
  CHECK(chain_traces(c, "0", "1").traces.size() == 2);
  CHECK(chain_traces(c, "0", "0").traces.empty());
  CHECK(chain_traces(glob_of_finite_set({"a"}, Flavor::M), "0", "1").traces.size() == 1);
  CHECK(code_of([&] { chain_traces(c, "2", "0"); }) == Errc::invalid_argument);
  CHECK(code_of([] { chain_traces(build_glob_S1(Flavor::M), "0", "1"); })
        == Errc::invalid_argument);

  auto c3 = chain_of_globes({{"a", "b"}, {"c", "d", "e"}, {"f", "g"}}, Flavor::M);
  auto t  = chain_traces(c3, "0", "3");
  CHECK(t.traces.size() == 12);
  CHECK(t.traces == all_traces(c3, "0", "3").traces);
}

TEST_CASE("pack and unpack chain paths") {
  auto c = chain_of_globes({{"a", "b"}, {"c"}}, Flavor::M);
  auto p = pack_chain_path(glob_of_finite_set({"a"}, Flavor::M),
                           PLMap::identity(1), {{"a", {}}});
  CHECK(p.natural_length() == 1);

  check::Gen gen(31);
  for (int i = 0; i < 30; ++i) {
    auto phi1 = gen.map(gen.length(), 1, 4, true);
    auto phi2 = gen.map(gen.length(), 1, 4, true);
    Rat  w    = phi1.dom_len() + phi2.dom_len();
    auto phi  = compose(PLMap::linear(1, w), tensor({phi1, phi2}));
    std::vector<Step> zs{{gen.coin() ? "a" : "b", {}}, {"c", {}}};
    auto packed = pack_chain_path(c, phi, zs);
    CHECK(unpack_chain_path(packed) == std::pair{phi, zs});

    auto m1 = ExecutionPath::make(c, NaturalPath{{zs[0]}},
                                  compose(mu_inv(phi1.dom_len()), phi1));
    auto m2 = ExecutionPath::make(c, NaturalPath{{zs[1]}},
                                  compose(mu_inv(phi2.dom_len()), phi2));
    CHECK(packed == moore_compose(c, m1, m2, phi1.dom_len() / w,
                                  phi2.dom_len() / w));
  }
  CHECK(code_of([&] { pack_chain_path(c, PLMap::identity(1), {{"a", {}}, {"c", {}}}); })
        == Errc::length_mismatch);
}

TEST_CASE("achronal slices of the psi cell") {
  auto cx = build_psi_counterexample();
  auto lo = slice_meets_states(cx, "psi", Rat(3, 10));
  REQUIRE(lo.has_value());
  CHECK(lo->z == DiskPoint{0, 1});
  CHECK(lo->state == "0");
  auto hi = slice_meets_states(cx, "psi", Rat(4, 5));
  REQUIRE(hi.has_value());
  CHECK(hi->z == DiskPoint{-1, 0});
  CHECK(hi->state == "1");
  for (int j = 1; j < 100; ++j) {
    CHECK(slice_meets_states(cx, "psi", Rat(j, 100)).has_value());
  }
  CHECK(code_of([&] { slice_meets_states(cx, "psi", 1); }) == Errc::invalid_argument);
  CHECK(code_of([&] { slice_meets_states(cx, "e_plus", Rat(1, 2)); })
        == Errc::invalid_argument);
}

TEST_CASE("untwisted control has no slice witness") {
  auto cx = build_glob_S1(Flavor::M);
  cx.push({"k", 2, "0", "1",
           attach::Constant{{"p_plus", NaturalPath{{Step{"e_plus", {}}}}}}});
  for (int j = 1; j < 100; ++j) {
    CHECK_FALSE(slice_meets_states(cx, "k", Rat(j, 100)).has_value());
  }
  // hemispheres map their boundary to single segments too
  CHECK_FALSE(slice_meets_states(cx, "upper", Rat(1, 2)).has_value());
  // a length-2 boundary passes the middle state at height 1/2
  auto d = build_disk_over_two_segments(Flavor::M);
  auto w = slice_meets_states(d, "d", Rat(1, 2));
  REQUIRE(w.has_value());
  CHECK(w->state == "1");
  CHECK_FALSE(slice_meets_states(d, "d", Rat(1, 3)).has_value());
}

TEST_CASE("natural length profile and carriers") {
  auto cx   = build_disk_over_two_segments(Flavor::M);
  auto prof = natural_length_profile(cx, disk_sweep());
  REQUIRE(prof.size() == 2);
  CHECK(prof[0].length == 2);
  CHECK(prof[0].where == std::vector<UInterval>{{0, 0, true, true}, {1, 1, true, true}});
  CHECK(prof[1].length == 1);
  CHECK(prof[1].where == std::vector<UInterval>{{0, 1, false, false}});
  CHECK(carrier_set(cx, disk_sweep()).size() == 2);

  PathFamily constant{"const", {{{0, 1, true, true}, {{"d", {k(0)}}}}}};
  CHECK(natural_length_profile(cx, constant).size() == 1);
  CHECK(carrier_set(cx, constant).size() == 1);

  PathFamily two{"two",
                 {{{0, Rat(1, 2), true, false}, {{"s1", {}}, {"s2", {}}}},
                  {{Rat(1, 2), 1, true, true}, {{"d", {Affine{0, Rat(1, 2)}}}}}}};
  CHECK(carrier_set(cx, two).size() == 2);

  PathFamily bad{"bad", {{{0, 1, true, true}, {{"d", {Affine{-1, 2}}}}}}};
  CHECK(code_of([&] { carrier_set(cx, bad); }) == Errc::validation);
  PathFamily gap{"gap", {{{0, Rat(1, 2), true, false}, {{"d", {k(0)}}}},
                         {{Rat(1, 2), 1, false, true}, {{"d", {k(0)}}}}}};
  CHECK(code_of([&] { carrier_set(cx, gap); }) == Errc::validation);
}

TEST_CASE("all traces") {
  auto ii = chain_of_globes({{"s1"}, {"s2"}}, Flavor::M);
  CHECK(all_traces(ii, "0", "2").traces.size() == 1);
  auto d = all_traces(build_disk_over_two_segments(Flavor::M), "0", "2");
  CHECK(d.traces.size() == 2);
  CHECK(d.traces.count(NaturalPath{{Step{"d", DiskPoint{0}}}}) == 1);
  CHECK(all_traces(build_psi_counterexample(), "0", "1").traces.size() == 5);

  GlobularComplex loop(Flavor::M, {"0", "1"});
  loop.push({"f", 0, "0", "1", attach::Endpoints{}});
  loop.push({"b", 0, "1", "0", attach::Endpoints{}});
  CHECK(code_of([&] { all_traces(loop, "0", "1"); }) == Errc::budget);
  auto t = all_traces(loop, "0", "1", 5);
  CHECK(t.truncated);
  CHECK(t.traces.size() == 3);  // f, fbf, fbfbf
}
