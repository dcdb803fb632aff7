// Moore paths with lengths, saturation of path predicates, and the set-level
// path space of a single cell attachment.

#ifndef DPATH_MOOREFLOW_HPP_
#define DPATH_MOOREFLOW_HPP_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "complex.hpp"
#include "error.hpp"
#include "paths.hpp"
#include "rat.hpp"
#include "reedy.hpp"
#include "reparam.hpp"
#include "spaces.hpp"

namespace dpath {

  // base o reparam with reparam : [0, length] -> [0, n].
  struct LengthPath {
    NaturalPath base;
    PLMap       reparam;

    Rat const& length() const { return reparam.dom_len(); }

    friend bool operator==(LengthPath const&, LengthPath const&) = default;
  };

  inline LengthPath at_length(ExecutionPath const& p, Rat const& len) {
    if (len <= Rat(0)) {
      fail(Errc::invalid_argument, "path length must be positive");
    }
    return {p.base(), compose(mu(len), p.reparam())};
  }

  inline ExecutionPath to_unit(GlobularComplex const& cx, LengthPath const& q) {
    return ExecutionPath::make(cx, q.base, compose(mu_inv(q.length()), q.reparam));
  }

  inline LengthPath moore_compose_lengths(GlobularComplex const& cx,
                                          LengthPath const&      a,
                                          LengthPath const&      b) {
    if (cx.tgt(a.base) != cx.src(b.base)) {
      fail(Errc::endpoint_mismatch, "paths are not composable");
    }
    return {concat(a.base, b.base), tensor({a.reparam, b.reparam})};
  }

  // { g o psi : g a generator, psi in M(1,1) }, a set of reparametrizations
  // of the directed segment.
  struct PathPredicate {
    std::vector<PLMap> generators;
  };

  inline bool predicate_member(PathPredicate const& p, PLMap const& chi) {
    for (auto const& g : p.generators) {
      if (factors_through(chi, g)) {
        return true;
      }
    }
    return false;
  }

  // g == regular o eta with `regular` in G(1,1) and eta in M(1,1): the flats
  // of g are squeezed out of the domain.
  struct Regularization {
    PLMap regular;
    PLMap eta;
  };

  inline Regularization regularize(PLMap const& g) {
    if (g.dom_len() != Rat(1) || g.cod_len() != Rat(1)) {
      fail(Errc::invalid_argument, "regularize works on M(1,1)");
    }
    auto const& p = g.points();
    Rat         rising(0);
    for (size_t i = 1; i < p.size(); ++i) {
      if (p[i].v != p[i - 1].v) {
        rising += p[i].t - p[i - 1].t;
      }
    }
    // s(t): rising time spent before t, rescaled to [0,1]
    std::vector<Breakpoint> eta{{0, 0}}, reg{{0, 0}};
    Rat                     s(0);
    for (size_t i = 1; i < p.size(); ++i) {
      if (p[i].v != p[i - 1].v) {
        s += (p[i].t - p[i - 1].t) / rising;
        reg.push_back({s, p[i].v});
      }
      eta.push_back({p[i].t, s});
    }
    return {PLMap::make(1, 1, std::move(reg)), PLMap::make(1, 1, std::move(eta))};
  }

  // Closure under "chi o phi in P for some phi implies chi in P". For a
  // nonempty predicate this is all of M(1,1): given chi and a generator g,
  // some g o psi stops at every flat value of chi and hence factors through
  // chi. The closure is generated by any homeomorphism; the regularizations
  // of the generators are used.
  inline PathPredicate saturate(PathPredicate const& p) {
    PathPredicate out;
    for (auto const& g : p.generators) {
      PLMap r = regularize(g).regular;
      if (!predicate_member(out, r)) {
        out.generators.push_back(std::move(r));
      }
    }
    return out;
  }

  struct SaturationVerdict {
    bool saturated;
    // When not saturated: chi is outside P although chi o phi is inside.
    std::optional<PLMap> chi;
    std::optional<PLMap> phi;
  };

  // Compares P with its closure on the test family: generators, their
  // regularizations, pairwise common reparametrizations, and the identity.
  inline SaturationVerdict is_saturated(PathPredicate const& p) {
    PathPredicate      sat = saturate(p);
    std::vector<PLMap> family{PLMap::identity(1)};
    for (auto const& g : p.generators) {
      family.push_back(g);
      family.push_back(regularize(g).regular);
    }
    for (size_t i = 0; i < p.generators.size(); ++i) {
      for (size_t j = i + 1; j < p.generators.size(); ++j) {
        auto [a, b] = common_reparam(p.generators[i], p.generators[j]);
        family.push_back(compose(a, p.generators[i]));
      }
    }
    for (auto const& chi : family) {
      if (predicate_member(sat, chi) && !predicate_member(p, chi)) {
        // sat membership comes from a generator g with r o eta == g; chi is
        // some r o psi, and chi o (psi^{-1} o eta) = g lies in P
        for (auto const& g : p.generators) {
          auto reg = regularize(g);
          if (auto psi = factors_through(chi, reg.regular)) {
            if (psi->is_homeo()) {
              return {false, chi, compose(reg.eta, inverse(*psi))};
            }
          }
        }
        return {false, chi, std::nullopt};
      }
    }
    return {true, std::nullopt, std::nullopt};
  }

  // Reparametrizations chi for which delta_z o chi is an execution path of
  // the single cell: all of M(1,1).
  inline PathPredicate cell_path_predicate(GlobularComplex const& cx,
                                           std::string const&     cell_id) {
    (void)cx.cell(cell_id);
    return {{PLMap::identity(1)}};
  }

  namespace slot {
    // epsilon = 0: a path of the base complex.
    struct Base {
      NaturalPath path;
      friend bool operator==(Base const&, Base const&) = default;
    };
    // epsilon = 1, boundary point of the new cell resolved into the base.
    struct Boundary {
      NaturalPath path;
      friend bool operator==(Boundary const&, Boundary const&) = default;
    };
    // epsilon = 1, crossing of the new cell through an interior point.
    struct Crossing {
      std::string cell;
      DiskPoint   z;
      friend bool operator==(Crossing const&, Crossing const&) = default;
    };
  }  // namespace slot

  using Slot = std::variant<slot::Base, slot::Boundary, slot::Crossing>;

  struct DiagramElement {
    ReedyObject<std::string> object;
    std::vector<Slot>        slots;
  };

  inline bool is_simplified(DiagramElement const& e) {
    for (size_t i = 0; i < e.slots.size(); ++i) {
      if (std::holds_alternative<slot::Boundary>(e.slots[i])) {
        return false;
      }
      if (i > 0 && std::holds_alternative<slot::Base>(e.slots[i])
          && std::holds_alternative<slot::Base>(e.slots[i - 1])) {
        return false;
      }
    }
    return true;
  }

  // The trace of X represented by an element.
  inline NaturalPath element_trace(DiagramElement const& e) {
    NaturalPath out;
    for (auto const& s : e.slots) {
      std::visit(
          [&](auto const& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, slot::Crossing>) {
              out.steps.push_back({v.cell, v.z});
            } else {
              out = concat(std::move(out), v.path);
            }
          },
          s);
    }
    return out;
  }

  struct PushoutReport {
    size_t                     method_a_count = 0;
    size_t                     method_b_count = 0;
    bool                       bijection      = false;
    std::optional<std::string> mismatch_witness;
  };

  // Simplified elements over P^{src,tgt}(states of A) from `from` to `to`:
  // alternations of nonempty base paths and interior crossings of the new
  // cell, never two base paths in a row.
  inline std::vector<DiagramElement>
  simplified_elements(GlobularComplex const& a,
                      GlobularCell const&    cell,
                      std::string const&     from,
                      std::string const&     to,
                      size_t                 limit) {
    std::map<std::pair<std::string, std::string>, std::vector<NaturalPath>>
        base_paths;
    for (auto const& s : a.states()) {
      for (auto const& t : a.states()) {
        TraceSet ts = all_traces(a, s, t, limit);
        base_paths[{s, t}].assign(ts.traces.begin(), ts.traces.end());
      }
    }
    DiskPoint                   z = DiskPoint(std::vector<Rat>(cell.disk_dim, Rat(0)));
    std::vector<DiagramElement> out;
    DiagramElement              cur;
    std::function<void(std::string const&, size_t, bool)> walk =
        [&](std::string const& s, size_t len, bool after_base) {
          if (!cur.slots.empty() && s == to) {
            out.push_back(cur);
          }
          if (!after_base) {
            for (auto const& t : a.states()) {
              for (auto const& p : base_paths[{s, t}]) {
                if (len + p.length() > limit) {
                  continue;
                }
                cur.object.triples.push_back({s, 0, t});
                cur.slots.push_back(slot::Base{p});
                walk(t, len + p.length(), true);
                cur.slots.pop_back();
                cur.object.triples.pop_back();
              }
            }
          }
          if (s == cell.src && len + 1 <= limit) {
            cur.object.triples.push_back({s, 1, cell.tgt});
            cur.slots.push_back(slot::Crossing{cell.id, z});
            walk(cell.tgt, len + 1, false);
            cur.slots.pop_back();
            cur.object.triples.pop_back();
          }
        };
    cur.object.marked = {cell.src, cell.tgt};
    walk(from, 0, false);
    return out;
  }

  // Traces of attach_cell(a, cell) computed directly and through simplified
  // elements, with a check that element -> trace is a bijection.
  inline PushoutReport pushout_trace_check(GlobularComplex const& a,
                                           GlobularCell const&    cell,
                                           std::string const&     from,
                                           std::string const&     to,
                                           std::optional<size_t>  budget) {
    GlobularComplex x = attach_cell(a, cell);
    if (x.has_loops() && !budget) {
      fail(Errc::budget,
           "complex has loops; a length budget is required to enumerate");
    }
    size_t   limit  = x.has_loops() ? *budget : x.cells().size() + 1;
    TraceSet direct = all_traces(x, from, to, limit);
    auto     elems  = simplified_elements(a, cell, from, to, limit);

    PushoutReport r;
    r.method_a_count = direct.traces.size();
    r.method_b_count = elems.size();
    std::map<NaturalPath, size_t> seen;
    for (size_t i = 0; i < elems.size(); ++i) {
      if (!is_simplified(elems[i])) {
        r.mismatch_witness = "element " + std::to_string(i) + " is not simplified";
        return r;
      }
      NaturalPath t = element_trace(elems[i]);
      if (!seen.emplace(t, i).second) {
        r.mismatch_witness = "two elements give the trace " + t.str();
        return r;
      }
      if (direct.traces.count(t) == 0) {
        r.mismatch_witness = "element trace " + t.str() + " is not a direct trace";
        return r;
      }
    }
    for (auto const& t : direct.traces) {
      if (seen.count(t) == 0) {
        r.mismatch_witness = "direct trace " + t.str() + " has no element";
        return r;
      }
    }
    r.bijection = true;
    return r;
  }

}  // namespace dpath

#endif  // DPATH_MOOREFLOW_HPP_
