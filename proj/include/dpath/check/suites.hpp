// The named check suites run by `dpath suite` and the acceptance binary.

#ifndef DPATH_CHECK_SUITES_HPP_
#define DPATH_CHECK_SUITES_HPP_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../dpath.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "refactor.hpp"
#include "report.hpp"

namespace dpath::check {

  struct SuiteOptions {
    uint64_t    seed = 1;
    int         grid = 100;
    std::string fixture_dir;
    bool        timing = false;
  };

  namespace detail {

    inline std::string show(PLMap const& m) { return m.str(); }

    inline std::string show_object(ReedyObject<std::string> const& o) {
      std::string s;
      for (auto const& t : o.triples) {
        s += "(" + t.from + "," + std::to_string(t.eps) + "," + t.to + ")";
      }
      return s;
    }

    // k positive rationals summing to total.
    inline std::vector<Rat> partition(Gen& gen, Rat const& total, int k) {
      std::set<Rat> cuts;
      while (static_cast<int>(cuts.size()) < k - 1) {
        cuts.insert(total * gen.unit_open(16));
      }
      std::vector<Rat> out;
      Rat              prev(0);
      for (auto const& c : cuts) {
        out.push_back(c - prev);
        prev = c;
      }
      out.push_back(total - prev);
      return out;
    }

    // Two states joined by a, b forward and c backward, plus a 1-disk
    // between a and b.
    inline GlobularComplex cyclic_complex() {
      GlobularComplex cx(Flavor::M, {"0", "1"});
      cx.push({"a", 0, "0", "1", attach::Endpoints{}});
      cx.push({"b", 0, "0", "1", attach::Endpoints{}});
      cx.push({"c", 0, "1", "0", attach::Endpoints{}});
      NamedPath pa{"pa", NaturalPath{{Step{"a", {}}}}};
      NamedPath pb{"pb", NaturalPath{{Step{"b", {}}}}};
      cx.push({"d", 1, "0", "1", attach::TwoPaths{pa, pb}});
      return cx;
    }

    inline std::vector<GlobularComplex> sample_complexes() {
      std::vector<GlobularComplex> out;
      out.push_back(build_glob_S1(Flavor::M));
      out.push_back(build_glob_S1(Flavor::G));
      out.push_back(build_psi_counterexample());
      out.push_back(build_disk_over_two_segments(Flavor::M));
      out.push_back(chain_of_globes({{"a", "b"}, {"c"}, {"d", "e"}}, Flavor::G));
      out.push_back(cyclic_complex());
      return out;
    }

    inline std::string fixture(SuiteOptions const& o, std::string const& name) {
      return (std::filesystem::path(o.fixture_dir) / name).string();
    }

  }  // namespace detail

  inline void suite_reparam_algebra(Report& r, SuiteOptions const& o) {
    Gen   gen(o.seed);
    Tally assoc, composite, tensor_oracle, m_round, g_round, g_unique, fac_pos,
        fac_crit;
    for (int i = 0; i < 1000; ++i) {
      Rat  l1 = gen.length(), l2 = gen.length(), l3 = gen.length(),
          l4 = gen.length();
      auto a = gen.map(l1, l2, 5, true);
      auto b = gen.map(l2, l3, 5, true);
      auto c = gen.map(l3, l4, 5, true);
      auto ab = compose(a, b);
      assoc(compose(ab, c) == compose(a, compose(b, c)),
            [&] { return detail::show(a) + ", " + detail::show(b) + ", " + detail::show(c); });
      composite(is_composite(ab, a, b),
                [&] { return detail::show(a) + " then " + detail::show(b); });

      int                k = static_cast<int>(gen.integer(1, 4));
      std::vector<PLMap> ms, gs;
      std::vector<Rat>   cods;
      for (int j = 0; j < k; ++j) {
        Rat dom = gen.length(), cod = gen.length();
        ms.push_back(gen.map(dom, cod, 4, true));
        gs.push_back(gen.map(dom, cod, 4, false));
        cods.push_back(cod);
      }
      auto t = tensor(ms);
      tensor_oracle(is_tensor(t, ms), [&] { return detail::show(t); });
      bool m_ok = tensor(decompose(t, cods, CutRule::min_preimage)) == t
                  && tensor(decompose(t, cods, CutRule::max_preimage)) == t;
      m_round(m_ok, [&] { return detail::show(t); });
      auto tg = tensor(gs);
      g_round(decompose(tg, cods, CutRule::min_preimage) == gs
                  && decompose(tg, cods, CutRule::max_preimage) == gs,
              [&] { return detail::show(tg); });

      auto g    = gen.map(l1, l2, 6, false);
      auto part = detail::partition(gen, l2, static_cast<int>(gen.integer(1, 4)));
      g_unique(decompose(g, part, CutRule::min_preimage)
                   == decompose(g, part, CutRule::max_preimage),
               [&] { return detail::show(g); });

      // target = base o psi
      auto psi    = gen.m11();
      auto base   = gen.m11();
      auto target = compose(psi, base);
      auto found  = factors_through(target, base);
      fac_pos(found && same_function(compose(*found, base), target),
              [&] { return detail::show(target) + " over " + detail::show(base); });

      // base stops at v => every factorization through base stops at v
      auto other    = gen.m11();
      auto needed   = naive_flat_values(base.points());
      auto have     = naive_flat_values(other.points());
      bool expected = std::includes(have.begin(), have.end(), needed.begin(),
                                    needed.end());
      auto got = factors_through(other, base);
      fac_crit(got.has_value() == expected
                   && (!got || same_function(compose(*got, base), other)),
               [&] { return detail::show(other) + " over " + detail::show(base); });
    }
    add_tally(r, "compose associativity", assoc, "definition");
    add_tally(r, "compose against pointwise evaluation", composite, "oracle");
    add_tally(r, "tensor against concatenation formula", tensor_oracle, "oracle");
    add_tally(r, "tensor of decomposition (M, both cut rules)", m_round, "definition");
    add_tally(r, "decomposition of tensor (G, both cut rules)", g_round, "definition");
    add_tally(r, "G-decomposition independent of cut rule", g_unique, "definition");
    add_tally(r, "factors_through finds constructed factorizations", fac_pos, "oracle");
    add_tally(r, "factors_through matches flat-value criterion", fac_crit, "oracle");
  }

  inline void suite_normal_form(Report& r, SuiteOptions const& o) {
    Gen   gen(o.seed);
    auto  cxs = detail::sample_complexes();
    Tally  refactored, cut_rules;
    size_t lifted = 0;
    for (int i = 0; i < 500; ++i) {
      auto const& cx  = cxs[i % cxs.size()];
      auto        p   = gen.path(cx, 4);
      auto        raw = random_refactor(cx, p, gen);
      lifted += std::any_of(raw.begin(), raw.end(),
                            [](RawSegment const& s) { return s.z.is_boundary(); });
      refactored(raw_to_normal(cx, raw) == p, [&] {
        return p.base().str() + " / " + p.reparam().str();
      });
      cut_rules(raw_to_normal(cx, raw_segments(p, CutRule::min_preimage)) == p
                    && raw_to_normal(cx, raw_segments(p, CutRule::max_preimage)) == p,
                [&] { return p.base().str() + " / " + p.reparam().str(); });
    }
    add_tally(r, "random raw splits renormalize to the same path", refactored,
              "definition");
    add_tally(r, "per-step splits renormalize (both cut rules)", cut_rules,
              "definition");
    r.add("some splits cross a cell through a boundary point", "true",
          lifted > 0 ? "true" : "false", "definition");
  }

  inline void suite_naturalization(Report& r, SuiteOptions const& o) {
    Gen                          gen(o.seed);
    std::vector<GlobularComplex> cxs{detail::cyclic_complex(),
                                     chain_of_globes({{"a", "b"}, {"c"}, {"d", "e"}},
                                                     Flavor::M)};
    Tally traces, lengths, reparams;
    int   pairs = 0;
    for (int attempt = 0; pairs < 500 && attempt < 100000; ++attempt) {
      auto const& cx = cxs[attempt % cxs.size()];
      auto        p  = gen.path(cx, 3);
      auto        q  = gen.path_from(cx, cx.tgt(p.base()), 3);
      if (!q) {
        continue;
      }
      ++pairs;
      auto pq   = normalized_compose(cx, p, q.value());
      auto desc = [&] { return p.base().str() + " * " + q->base().str(); };
      traces(naturalize(pq).first == concat(naturalize(p).first, naturalize(*q).first),
             desc);
      lengths(natural_length(pq) == natural_length(p) + natural_length(*q), desc);
      auto half = mu(Rat(1, 2));
      reparams(pq.reparam()
                   == tensor({compose(half, p.reparam()), compose(half, q->reparam())}),
               desc);
    }
    add_tally(r, "nat(p*q) == nat(p)*nat(q)", traces, "definition");
    add_tally(r, "natural lengths add", lengths, "definition");
    add_tally(r, "reparametrization of p*q is the half-speed concatenation",
              reparams, "definition");

    Tally assoc;
    auto  cx = detail::cyclic_complex();
    for (int i = 0; i < 200; ++i) {
      auto a = gen.path(cx, 3);
      auto b = gen.path_from(cx, cx.tgt(a.base()), 3).value();
      auto c = gen.path_from(cx, cx.tgt(b.base()), 3).value();
      auto la = at_length(a, gen.length()), lb = at_length(b, gen.length()),
           lc = at_length(c, gen.length());
      auto left  = moore_compose_lengths(cx, moore_compose_lengths(cx, la, lb), lc);
      auto right = moore_compose_lengths(cx, la, moore_compose_lengths(cx, lb, lc));
      assoc(left == right && left.length() == la.length() + lb.length() + lc.length(),
            [&] { return a.base().str() + " * " + b.base().str() + " * " + c.base().str(); });
    }
    add_tally(r, "Moore composition associative", assoc, "definition");
  }

  inline void suite_psi(Report& r, SuiteOptions const& o) {
    if (o.grid < 2) {
      fail(Errc::invalid_argument, "grid must be at least 2");
    }
    auto  cx = build_psi_counterexample();
    Tally hits;
    for (int k = 1; k < o.grid; ++k) {
      Rat h(k, o.grid);
      hits(slice_meets_states(cx, "psi", h).has_value(),
           [&] { return "no witness at h = " + h.str(); });
    }
    add_tally(r, "psi slices meet a state at every grid height", hits, "exhaustive");

    auto describe = [](std::optional<SliceWitness> const& w) -> std::string {
      return w ? w->z.str() + " -> " + w->state : "none";
    };
    r.add("witness at h = 3/10", "(0,1) -> 0",
          describe(slice_meets_states(cx, "psi", Rat(3, 10))), "fixture");
    r.add("witness at h = 4/5", "(-1,0) -> 1",
          describe(slice_meets_states(cx, "psi", Rat(4, 5))), "fixture");

    auto control = build_glob_S1(Flavor::M);
    control.push({"k", 2, "0", "1",
                  attach::Constant{{"p_plus", NaturalPath{{Step{"e_plus", {}}}}}}});
    Tally none;
    for (int k = 1; k < o.grid; ++k) {
      Rat h(k, o.grid);
      none(!slice_meets_states(control, "k", h).has_value(),
           [&] { return "witness at h = " + h.str(); });
    }
    add_tally(r, "constant control has no witness", none, "exhaustive");
  }

  inline void suite_saturation(Report& r, SuiteOptions const& o) {
    auto          phi = make_pl(1, 1, {{0, 0}, {Rat(1, 2), 1}, {1, 1}});
    PathPredicate p{{phi}};
    auto          v  = is_saturated(p);
    auto          id = PLMap::identity(1);
    r.add("predicate of a stopping map is saturated", "false",
          v.saturated ? "true" : "false", "fixture");
    r.add("witness chi", id.str(), v.chi ? v.chi->str() : "none", "fixture");
    r.add("witness chi lies outside the predicate", "true",
          v.chi && !predicate_member(p, *v.chi) ? "true" : "false", "definition");
    r.add("chi o phi lies in the predicate", "true",
          v.chi && v.phi && predicate_member(p, compose(*v.phi, *v.chi)) ? "true"
                                                                         : "false",
          "definition");
    r.add("saturation contains the identity", "true",
          predicate_member(saturate(p), id) ? "true" : "false", "definition");

    Gen   gen(o.seed);
    Tally random_sat;
    for (int i = 0; i < 100; ++i) {
      PathPredicate q{{gen.m11(), gen.m11()}};
      auto          s = saturate(q);
      random_sat(predicate_member(s, id) && is_saturated(s).saturated
                     && predicate_member(s, gen.m11()),
                 [&] { return q.generators[0].str(); });
    }
    add_tally(r, "saturation of random predicates is everything", random_sat,
              "definition");

    Tally cells;
    for (auto const& cx : detail::sample_complexes()) {
      for (auto const& c : cx.cells()) {
        cells(is_saturated(cell_path_predicate(cx, c.id)).saturated,
              [&] { return c.id; });
      }
    }
    add_tally(r, "single-cell predicates are saturated", cells, "definition");
  }

  inline void suite_chain_traces(Report& r, SuiteOptions const& o) {
    Tally product, enumeration, oracle;
    // every ordered size profile with p <= 4 globes of 1..3 members
    std::vector<std::vector<int>> profiles;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
      if (!cur.empty()) {
        profiles.push_back(cur);
      }
      if (cur.size() == 4) {
        return;
      }
      for (int s = 1; s <= 3; ++s) {
        cur.push_back(s);
        grow(cur);
        cur.pop_back();
      }
    };
    std::vector<int> cur;
    grow(cur);
    auto members = [](std::vector<int> const& prof) {
      std::vector<std::vector<std::string>> z;
      for (size_t i = 0; i < prof.size(); ++i) {
        z.emplace_back();
        for (int k = 0; k < prof[i]; ++k) {
          z.back().push_back("z" + std::to_string(i + 1) + "_" + std::to_string(k + 1));
        }
      }
      return z;
    };
    for (auto const& prof : profiles) {
      auto   cx = chain_of_globes(members(prof), Flavor::M);
      size_t p  = prof.size();
      for (size_t i = 0; i < p; ++i) {
        for (size_t j = i + 1; j <= p; ++j) {
          size_t want = 1;
          for (size_t k = i; k < j; ++k) {
            want *= prof[k];
          }
          auto from = std::to_string(i), to = std::to_string(j);
          auto ts   = chain_traces(cx, from, to);
          auto desc = [&] {
            std::string s;
            for (int x : prof) {
              s += std::to_string(x);
            }
            return "sizes " + s + " from " + from + " to " + to;
          };
          product(ts.traces.size() == want, desc);
          enumeration(ts.traces == all_traces(cx, from, to).traces, desc);
          oracle(count_cell_sequences(cx, from, to, p) == want, desc);
        }
      }
    }
    r.add("chain configurations", "120", std::to_string(profiles.size()), "exhaustive");
    add_tally(r, "trace count is the product of globe sizes", product, "exhaustive");
    add_tally(r, "chain_traces agrees with direct enumeration", enumeration,
              "exhaustive");
    add_tally(r, "path-count oracle agrees with the product", oracle, "oracle");

    Gen   gen(o.seed);
    Tally round;
    for (int i = 0; i < 100; ++i) {
      std::vector<int> prof;
      size_t           p = gen.integer(1, 4);
      for (size_t k = 0; k < p; ++k) {
        prof.push_back(static_cast<int>(gen.integer(1, 3)));
      }
      auto              z  = members(prof);
      auto              cx = chain_of_globes(z, Flavor::M);
      std::vector<Step> steps;
      for (auto const& zi : z) {
        steps.push_back({zi[gen.integer(0, zi.size() - 1)], {}});
      }
      auto phi    = gen.map(1, Rat(long(p)), 6, true);
      auto packed = pack_chain_path(cx, phi, steps);
      round(unpack_chain_path(packed) == std::pair{phi, steps},
            [&] { return phi.str(); });
    }
    add_tally(r, "pack/unpack round trip", round, "definition");
  }

  inline void suite_length_profile(Report& r, SuiteOptions const& o) {
    auto l   = load_all(detail::fixture(o, "disk_over_ii.dps"));
    auto fam = l.families.at("sweep");
    auto prof = natural_length_profile(*l.complex, fam);
    std::string got;
    for (auto const& e : prof) {
      got += got.empty() ? "" : "; ";
      for (size_t i = 0; i < e.where.size(); ++i) {
        got += (i ? " u " : "") + e.where[i].str();
      }
      got += " -> " + std::to_string(e.length);
    }
    r.add("sweep profile", "{0} u {1} -> 2; (0,1) -> 1", got, "fixture");

    Tally pointwise;
    for (int k = 0; k <= 20; ++k) {
      Rat    u(k, 20);
      size_t n    = family_path(*l.complex, fam, u).natural_length();
      size_t want = 0;
      for (auto const& e : prof) {
        for (auto const& w : e.where) {
          if (w.contains(u)) {
            want = e.length;
          }
        }
      }
      pointwise(n == want, [&] { return "u = " + u.str(); });
    }
    add_tally(r, "profile agrees with pointwise evaluation", pointwise, "oracle");

    Tally  finite;
    size_t families = 0;
    std::vector<std::filesystem::path> files;
    for (auto const& e : std::filesystem::recursive_directory_iterator(o.fixture_dir)) {
      if (e.path().extension() == ".dps") {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (auto const& f : files) {
      auto fl = load_all(f.string());
      for (auto const& [name, fm] : fl.families) {
        ++families;
        auto cs = carrier_set(*fl.complex, fm);
        finite(!cs.empty() && cs.size() <= fm.pieces.size(),
               [&] { return f.filename().string() + ":" + name; });
      }
    }
    add_tally(r, "carrier sets of shipped families are finite", finite, "fixture");
    r.add("shipped families found", "true", families >= 3 ? "true" : "false",
          "fixture");
  }

  inline void suite_reedy(Report& r, SuiteOptions const&) {
    size_t a = 0, b = 0, c = 0, degree = 0, objects = 0;
    Tally  configs;
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::string> states;
      for (int i = 0; i < n; ++i) {
        states.push_back(std::string(1, char('a' + i)));
      }
      for (auto const& u : states) {
        for (auto const& v : states) {
          auto audit = audit_relations<std::string>(states, {u, v}, 6,
                                                    detail::show_object);
          a += audit.checks_a;
          b += audit.checks_b;
          c += audit.checks_c;
          degree += audit.degree_checks;
          objects += audit.objects;
          configs(audit.ok(), [&] { return audit.failures.front(); });
        }
      }
    }
    add_tally(r, "state sets and marked pairs without relation failures", configs,
              "exhaustive");
    auto yes = [](bool x) { return std::string(x ? "true" : "false"); };
    r.add("group A exercised", "true", yes(a > 0), "exhaustive");
    r.add("group B exercised", "true", yes(b > 0), "exhaustive");
    r.add("group C exercised", "true", yes(c > 0), "exhaustive");
    r.add("degree checks along arrows", "true", yes(degree > 0), "exhaustive");
    r.add("objects of degree <= 6 audited", std::to_string(objects),
          std::to_string(objects), "exhaustive");
  }

  struct PushoutInstance {
    std::string base;
    std::string cell;
    std::string from;
    std::string to;
    size_t      traces = 0;
  };

  inline std::vector<PushoutInstance> read_pushout_instances(std::string const& file) {
    std::istringstream            in(read_file(file));
    std::string                   line;
    std::vector<PushoutInstance>  out;
    size_t                        n = 0;
    while (std::getline(in, line)) {
      ++n;
      auto hash = line.find('#');
      if (hash != std::string::npos) {
        line.resize(hash);
      }
      std::istringstream is(line);
      PushoutInstance    p;
      if (!(is >> p.base)) {
        continue;
      }
      if (!(is >> p.cell >> p.from >> p.to >> p.traces)) {
        fail(Errc::parse, file + ":" + std::to_string(n)
                              + ": expected '<base> <cell> <from> <to> <traces>'");
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  inline void suite_pushout(Report& r, SuiteOptions const& o) {
    auto dir   = std::filesystem::path(o.fixture_dir) / "pushout";
    auto insts = read_pushout_instances((dir / "instances.txt").string());
    r.add("instances", "true", insts.size() >= 5 ? "true" : "false", "fixture");
    for (auto const& in : insts) {
      auto base  = load_complex((dir / in.base).string());
      auto cells = parse_cells(read_file((dir / in.cell).string()),
                               (dir / in.cell).string());
      if (cells.size() != 1) {
        fail(Errc::validation, in.cell + ": expected exactly one cell");
      }
      auto        rep  = pushout_trace_check(base, cells[0], in.from, in.to, std::nullopt);
      std::string name = in.base + " + " + in.cell + " " + in.from + "->" + in.to;
      std::string got =
          rep.bijection ? "bijection, " + std::to_string(rep.method_a_count) + " traces"
                        : "mismatch: " + rep.mismatch_witness.value_or("?");
      if (rep.bijection && rep.method_a_count != rep.method_b_count) {
        got = "count mismatch " + std::to_string(rep.method_a_count) + " vs "
              + std::to_string(rep.method_b_count);
      }
      r.add(name, "bijection, " + std::to_string(in.traces) + " traces", got, "fixture");
      auto   x = attach_cell(base, cells[0]);
      size_t c = count_cell_sequences(x, in.from, in.to, x.cells().size());
      r.add(name + " path-count oracle", std::to_string(in.traces), std::to_string(c),
            "oracle");
    }
  }

  inline void suite_flavor(Report& r, SuiteOptions const& o) {
    Gen   gen(o.seed);
    auto  cxs = detail::sample_complexes();
    Tally m_inv, g_inv;
    for (int i = 0; i < 200; ++i) {
      auto const& cx = cxs[i % cxs.size()];
      auto        p  = gen.path(cx, 4);
      if (cx.flavor() == Flavor::M) {
        auto m = gen.m11();
        m_inv(trace(precompose(cx, p, m)) == trace(p),
              [&] { return p.base().str() + " o " + m.str(); });
      } else {
        m_inv(trace(precompose(cx, p, gen.g11())) == trace(p),
              [&] { return p.base().str(); });
      }
      auto g = gen.g11();
      g_inv(g_trace(precompose(cx, p, g)) == g_trace(p),
            [&] { return p.base().str() + " o " + g.str(); });
    }
    add_tally(r, "trace invariant under M(1,1)", m_inv, "definition");
    add_tally(r, "g_trace invariant under G(1,1)", g_inv, "definition");

    auto l    = load_all(detail::fixture(o, "glob_s1.dps"));
    auto unit = l.paths.at("up_unit");
    auto stop = l.paths.at("up_stops");
    r.add("fixture paths share a trace", "true",
          trace(unit) == trace(stop) ? "true" : "false", "fixture");
    r.add("g_trace separates them", "true",
          g_trace(unit) != g_trace(stop) ? "true" : "false", "fixture");
  }

  using SuiteFn = void (*)(Report&, SuiteOptions const&);

  inline std::vector<std::pair<std::string, SuiteFn>> const& suites() {
    static std::vector<std::pair<std::string, SuiteFn>> const all{
        {"reparam-algebra", suite_reparam_algebra},
        {"normal-form", suite_normal_form},
        {"naturalization", suite_naturalization},
        {"psi-counterexample", suite_psi},
        {"saturation", suite_saturation},
        {"chain-traces", suite_chain_traces},
        {"length-profile", suite_length_profile},
        {"reedy-audit", suite_reedy},
        {"pushout", suite_pushout},
        {"flavor", suite_flavor},
    };
    return all;
  }

  inline Report run_suite(std::string const& name, SuiteOptions const& o) {
    auto const& all = suites();
    auto it = std::find_if(all.begin(), all.end(),
                           [&](auto const& s) { return s.first == name; });
    if (it == all.end()) {
      fail(Errc::invalid_argument, "unknown suite '" + name + "'");
    }
    Report r;
    r.suite    = name;
    r.seed     = o.seed;
    auto start = std::chrono::steady_clock::now();
    try {
      it->second(r, o);
    } catch (std::exception const& e) {
      r.error = e.what();
    }
    if (o.timing) {
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    }
    return r;
  }

}  // namespace dpath::check

#endif  // DPATH_CHECK_SUITES_HPP_
