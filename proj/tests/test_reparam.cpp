#include <catch_amalgamated.hpp>

#include <dpath/check/oracle.hpp>
#include <dpath/check/random.hpp>
#include <dpath/reparam.hpp>

using namespace dpath;

namespace {

  PLMap stop_half() { return make_pl(1, 1, {{0, 0}, {Rat(1, 2), 1}, {1, 1}}); }

  Errc code_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    FAIL("no error raised");
    return Errc::invalid_argument;
  }

}  // namespace

TEST_CASE("rationals are kept in lowest terms") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(3, -6).str() == "-1/2");
  CHECK(Rat(4, 2).str() == "2");
  CHECK(Rat::parse("-3/9") == Rat(-1, 3));
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(code_of([] { Rat::parse("1/0"); }) == Errc::parse);
  CHECK(code_of([] { Rat::parse("1.5"); }) == Errc::parse);
  CHECK(code_of([] { Rat::parse("2/-3"); }) == Errc::parse);
  CHECK(code_of([] { return Rat(1) / Rat(0); }) == Errc::invalid_argument);
}

TEST_CASE("make_pl validates and canonicalizes") {
  CHECK(make_pl(1, 1, {{0, 0}, {1, 1}}) == PLMap::identity(1));
  CHECK(make_pl(1, 1, {{0, 0}, {Rat(1, 2), Rat(1, 2)}, {1, 1}})
        == PLMap::identity(1));
  auto phi = stop_half();
  CHECK(phi.points().size() == 3);
  CHECK(make_pl(1, 1, phi.points()) == phi);

  CHECK(code_of([] { make_pl(1, 1, {{0, 0}, {Rat(1, 2), 1}, {1, Rat(1, 2)}}); })
        == Errc::invalid_argument);
  CHECK(code_of([] { make_pl(1, 1, {{0, 0}, {1, Rat(1, 2)}}); })
        == Errc::invalid_argument);
  CHECK(code_of([] { make_pl(0, 1, {{0, 0}, {0, 1}}); })
        == Errc::invalid_argument);
  CHECK(code_of([] { make_pl(1, 1, {{0, 0}, {Rat(1, 2), 0}, {Rat(1, 2), 1}, {1, 1}}); })
        == Errc::invalid_argument);
}

TEST_CASE("is_homeo") {
  CHECK(is_homeo(PLMap::identity(1)));
  CHECK_FALSE(is_homeo(stop_half()));
  CHECK(is_homeo(make_pl(1, 1, {{0, 0}, {Rat(1, 3), Rat(2, 3)}, {1, 1}})));
}

TEST_CASE("compose") {
  auto phi = stop_half();
  CHECK(compose(phi, PLMap::identity(1)) == phi);
  CHECK(compose(PLMap::identity(1), phi) == phi);
  CHECK(compose(phi, phi) == make_pl(1, 1, {{0, 0}, {Rat(1, 4), 1}, {1, 1}}));
  CHECK(code_of([&] { compose(phi, PLMap::identity(2)); })
        == Errc::length_mismatch);

  check::Gen g(11);
  for (int i = 0; i < 50; ++i) {
    auto a = g.g11(), b = g.g11();
    CHECK(is_homeo(compose(a, b)));
  }
}

TEST_CASE("tensor") {
  auto id = PLMap::identity(1);
  CHECK(tensor({id, id}) == PLMap::identity(2));
  CHECK(tensor({stop_half(), id})
        == make_pl(2, 2, {{0, 0}, {Rat(1, 2), 1}, {1, 1}, {2, 2}}));

  check::Gen g(12);
  for (int i = 0; i < 30; ++i) {
    auto a = g.map(g.length(), g.length(), 4, true);
    auto b = g.map(g.length(), g.length(), 4, true);
    auto c = g.map(g.length(), g.length(), 4, true);
    CHECK(tensor({tensor({a, b}), c}) == tensor({a, b, c}));
    CHECK(check::is_tensor(tensor({a, b, c}), {a, b, c}));
  }
}

TEST_CASE("decompose") {
  auto parts = decompose(PLMap::identity(2), {Rat(1), Rat(1)});
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == PLMap::identity(1));
  CHECK(parts[1] == PLMap::identity(1));

  auto m = make_pl(1, 2, {{0, 0}, {Rat(1, 2), 2}, {1, 2}});
  parts  = decompose(m, {Rat(1), Rat(1)});
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == PLMap::linear(Rat(1, 4), 1));
  CHECK(parts[1] == make_pl(Rat(3, 4), 1, {{0, 0}, {Rat(1, 4), 1}, {Rat(3, 4), 1}}));
  CHECK(tensor(parts) == m);

  // flat at the cut: min-preimage hands it to the later factor
  auto f  = make_pl(1, 2, {{0, 0}, {Rat(1, 4), 1}, {Rat(3, 4), 1}, {1, 2}});
  auto lo = decompose(f, {Rat(1), Rat(1)}, CutRule::min_preimage);
  auto hi = decompose(f, {Rat(1), Rat(1)}, CutRule::max_preimage);
  CHECK(lo[0].dom_len() == Rat(1, 4));
  CHECK(hi[0].dom_len() == Rat(3, 4));
  CHECK(tensor(lo) == f);
  CHECK(tensor(hi) == f);

  CHECK(code_of([&] { decompose(m, {Rat(1), Rat(2)}); })
        == Errc::invalid_argument);
  CHECK(code_of([&] { decompose(m, {Rat(2), Rat(0)}); })
        == Errc::invalid_argument);

  check::Gen g(13);
  for (int i = 0; i < 30; ++i) {
    auto h = g.map(1, 2, 6, false);
    CHECK(decompose(h, {Rat(1), Rat(1)}, CutRule::min_preimage)
          == decompose(h, {Rat(1), Rat(1)}, CutRule::max_preimage));
  }
}

TEST_CASE("flat_values") {
  CHECK(flat_values(PLMap::identity(1)).empty());
  auto fl = flat_values(stop_half());
  REQUIRE(fl.size() == 1);
  CHECK(fl[0] == FlatRecord{1, Rat(1, 2), 1});

  // a flat ending at the seam does not merge with one starting after a rise
  auto a = make_pl(1, 1, {{0, 0}, {Rat(1, 2), 1}, {1, 1}});
  auto b = make_pl(1, 1, {{0, 0}, {Rat(1, 2), 0}, {1, 1}});
  auto t = flat_values(tensor({a, b}));
  REQUIRE(t.size() == 1);
  CHECK(t[0] == FlatRecord{1, Rat(1, 2), Rat(3, 2)});

  check::Gen g(14);
  for (int i = 0; i < 50; ++i) {
    auto m = g.m11(6);
    CHECK(is_homeo(m) == flat_values(m).empty());
    std::vector<Rat> vals;
    for (auto const& f : flat_values(m)) {
      vals.push_back(f.value);
    }
    CHECK(vals == check::naive_flat_values(m.points()));
  }
}

TEST_CASE("factors_through") {
  auto phi = stop_half();
  auto self = factors_through(phi, phi);
  REQUIRE(self.has_value());
  CHECK(compose(*self, phi) == phi);
  CHECK_FALSE(factors_through(PLMap::identity(1), phi).has_value());

  check::Gen g(15);
  for (int i = 0; i < 50; ++i) {
    auto base = g.m11();
    auto psi0 = g.m11();
    auto w    = factors_through(compose(psi0, base), base);
    REQUIRE(w.has_value());
    CHECK(compose(*w, base) == compose(psi0, base));
  }
}

TEST_CASE("common_reparam") {
  auto id = PLMap::identity(1);
  CHECK(common_reparam(id, id) == std::pair{id, id});
  auto v = stop_half();
  CHECK(common_reparam(id, v) == std::pair{v, id});

  check::Gen g(16);
  for (int i = 0; i < 100; ++i) {
    Rat  l = g.length();
    auto u = g.map(1, l, 5, true);
    auto w = g.map(1, l, 5, true);
    auto [pu, pw] = common_reparam(u, w);
    CHECK(compose(pu, u) == compose(pw, w));
  }
}

TEST_CASE("mu") {
  CHECK(mu(1) == PLMap::identity(1));
  CHECK(mu(2) == make_pl(2, 1, {{0, 0}, {2, 1}}));
  CHECK(compose(mu(2), mu_inv(2)) == PLMap::identity(2));
  CHECK(code_of([] { mu(0); }) == Errc::invalid_argument);
}

TEST_CASE("text round trip") {
  auto m = make_pl(2, 3, {{0, 0}, {Rat(1, 3), 1}, {1, 1}, {2, 3}});
  CHECK(m.str() == "pl 2 3 : 0 0 ; 1/3 1 ; 1 1 ; 2 3");
  CHECK(PLMap::parse(m.str()) == m);
  CHECK(code_of([] { PLMap::parse("pl 1 1 : 0 0 ; 1"); }) == Errc::parse);
  CHECK(code_of([] { PLMap::parse("pl 1 1 : 0 0 ; 1 1/2"); }) == Errc::parse);
}

TEST_CASE("canonical form matches function equality") {
  check::Gen g(17);
  for (int i = 0; i < 100; ++i) {
    auto a = g.m11(3), b = g.m11(3);
    CHECK(check::same_function(a, b) == (a == b));
    CHECK(check::is_composite(compose(a, b), a, b));
  }
}
