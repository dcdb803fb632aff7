// Execution paths of a globular complex, stored in normal form.
//
// Every execution path factors uniquely as base o reparam where base is a
// regular unit-speed NaturalPath of length n (its globular naturalization)
// and reparam is a map [0,1] -> [0,n] of M (of G under flavor G). Arbitrary
// paths enter only as lists of raw segments and are normalized on entry, so
// structural equality of ExecutionPath is equality of continuous paths.

#ifndef DPATH_PATHS_HPP_
#define DPATH_PATHS_HPP_

#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "complex.hpp"
#include "error.hpp"
#include "rat.hpp"
#include "reparam.hpp"

namespace dpath {

  class ExecutionPath {
   public:
    static ExecutionPath make(GlobularComplex const& cx,
                              NaturalPath            base,
                              PLMap                  reparam) {
      cx.check_path(base, cx.cells().size(), "path");
      if (reparam.dom_len() != Rat(1)
          || reparam.cod_len() != Rat(long(base.length()))) {
        fail(Errc::length_mismatch,
             "reparametrization must map [0,1] onto [0,"
                 + std::to_string(base.length()) + "]");
      }
      if (cx.flavor() == Flavor::G && !reparam.is_homeo()) {
        fail(Errc::flavor,
             "reparametrization has a flat, not allowed under flavor G");
      }
      return ExecutionPath(std::move(base), std::move(reparam));
    }

    NaturalPath const& base() const noexcept { return _base; }
    PLMap const&       reparam() const noexcept { return _reparam; }
    size_t natural_length() const noexcept { return _base.length(); }

    friend bool operator==(ExecutionPath const&,
                           ExecutionPath const&) = default;

   private:
    ExecutionPath(NaturalPath b, PLMap r)
        : _base(std::move(b)), _reparam(std::move(r)) {}

    NaturalPath _base;
    PLMap       _reparam;
  };

  // One factor of a raw Moore composition: the crossing of `cell` through z
  // (interior or boundary) reparametrized by phi : [0, weight] -> [0, 1].
  struct RawSegment {
    std::string cell;
    DiskPoint   z;
    PLMap       phi;
    Rat         weight;
  };

  inline RawSegment raw_segment(std::string cell,
                                DiskPoint   z,
                                PLMap const& unit_phi,
                                Rat const&   weight) {
    return {std::move(cell), std::move(z), compose(mu(weight), unit_phi),
            weight};
  }

  // Normal form of a raw Moore composition. Boundary points are resolved
  // through the attaching data into lower cells; recursion terminates because
  // attaching data only refers to earlier cells.
  inline ExecutionPath raw_to_normal(GlobularComplex const&         cx,
                                     std::vector<RawSegment> const& segs) {
    if (segs.empty()) {
      fail(Errc::invalid_argument, "raw path with no segments");
    }
    Rat                total(0);
    NaturalPath        base;
    std::vector<PLMap> blocks;
    blocks.reserve(segs.size());
    for (size_t i = 0; i < segs.size(); ++i) {
      auto const& s = segs[i];
      if (s.weight <= Rat(0)) {
        fail(Errc::invalid_argument, "segment weights must be positive");
      }
      if (s.phi.dom_len() != s.weight || s.phi.cod_len() != Rat(1)) {
        fail(Errc::length_mismatch,
             "segment " + std::to_string(i + 1)
                 + ": phi must map [0,weight] onto [0,1]");
      }
      if (cx.flavor() == Flavor::G && !s.phi.is_homeo()) {
        fail(Errc::flavor, "segment " + std::to_string(i + 1)
                               + ": phi has a flat under flavor G");
      }
      total += s.weight;
      auto const& c = cx.cell(s.cell);
      if (s.z.dim() != static_cast<size_t>(c.disk_dim)) {
        fail(Errc::invalid_argument,
             "segment " + std::to_string(i + 1) + ": point " + s.z.str()
                 + " has wrong dimension");
      }
      NaturalPath piece;
      PLMap       block = s.phi;
      if (s.z.is_interior()) {
        piece.steps.push_back({s.cell, s.z});
      } else if (s.z.is_boundary()) {
        BoundaryImage img = cx.resolve_boundary(s.cell, s.z);
        piece             = std::move(img.base);
        block             = compose(s.phi, img.reparam);
      } else {
        fail(Errc::invalid_argument, "segment " + std::to_string(i + 1)
                                         + ": point outside the disk");
      }
      if (!base.steps.empty() && cx.tgt(base) != cx.src(piece)) {
        fail(Errc::endpoint_mismatch,
             "segment " + std::to_string(i + 1)
                 + " does not start where the previous one ends");
      }
      base = concat(std::move(base), piece);
      blocks.push_back(std::move(block));
    }
    if (total != Rat(1)) {
      fail(Errc::invalid_argument,
           "segment weights sum to " + total.str() + ", expected 1");
    }
    return ExecutionPath::make(cx, std::move(base), tensor(blocks));
  }

  // Splits p into one raw segment per step, cutting the reparametrization at
  // preimages of the integer levels.
  inline std::vector<RawSegment> raw_segments(
      ExecutionPath const& p,
      CutRule              rule = CutRule::min_preimage) {
    std::vector<Rat>   ones(p.natural_length(), Rat(1));
    std::vector<PLMap> parts = decompose(p.reparam(), ones, rule);
    std::vector<RawSegment> out;
    for (size_t i = 0; i < parts.size(); ++i) {
      Rat w = parts[i].dom_len();
      out.push_back({p.base().steps[i].cell, p.base().steps[i].z,
                     std::move(parts[i]), std::move(w)});
    }
    return out;
  }

  inline std::pair<NaturalPath, PLMap> naturalize(ExecutionPath const& p) {
    return {p.base(), p.reparam()};
  }

  inline std::vector<std::string> carrier(ExecutionPath const& p) {
    return p.base().carrier();
  }

  inline size_t natural_length(ExecutionPath const& p) {
    return p.natural_length();
  }

  // Minimal paths cross a single cell.
  inline bool is_minimal(ExecutionPath const& p) {
    return p.natural_length() == 1;
  }

  inline bool is_regular(ExecutionPath const& p) {
    return p.reparam().is_homeo();
  }

  // (p mu_{l1} * q mu_{l2}) on [0,1] with l1 + l2 = 1.
  inline ExecutionPath moore_compose(GlobularComplex const& cx,
                                     ExecutionPath const&   p,
                                     ExecutionPath const&   q,
                                     Rat const&             l1,
                                     Rat const&             l2) {
    if (l1 <= Rat(0) || l2 <= Rat(0) || l1 + l2 != Rat(1)) {
      fail(Errc::invalid_argument, "weights must be positive and sum to 1");
    }
    if (cx.tgt(p.base()) != cx.src(q.base())) {
      fail(Errc::endpoint_mismatch, "paths are not composable");
    }
    return ExecutionPath::make(cx, concat(p.base(), q.base()),
                               tensor({compose(mu(l1), p.reparam()),
                                       compose(mu(l2), q.reparam())}));
  }

  inline ExecutionPath normalized_compose(GlobularComplex const& cx,
                                          ExecutionPath const&   p,
                                          ExecutionPath const&   q) {
    return moore_compose(cx, p, q, Rat(1, 2), Rat(1, 2));
  }

  // p o m for m in M(1,1).
  inline ExecutionPath precompose(GlobularComplex const& cx,
                                  ExecutionPath const&   p,
                                  PLMap const&           m) {
    if (m.dom_len() != Rat(1) || m.cod_len() != Rat(1)) {
      fail(Errc::length_mismatch, "precompose needs a map in M(1,1)");
    }
    if (cx.flavor() == Flavor::G && !m.is_homeo()) {
      fail(Errc::flavor, "precomposition by a map with a flat under flavor G");
    }
    return ExecutionPath::make(cx, p.base(), compose(m, p.reparam()));
  }

  namespace point {
    struct State {
      std::string name;
      friend bool operator==(State const&, State const&) = default;
    };
    struct Interior {
      std::string cell;
      DiskPoint   z;
      Rat         height;  // globe coordinate in (0,1)
      friend bool operator==(Interior const&, Interior const&) = default;
    };
  }  // namespace point

  using PointDescriptor = std::variant<point::State, point::Interior>;

  inline std::string describe(PointDescriptor const& d) {
    if (auto const* s = std::get_if<point::State>(&d)) {
      return "state " + s->name;
    }
    auto const& i = std::get<point::Interior>(d);
    return "cell " + i.cell + " at " + i.z.str() + " height "
           + i.height.str();
  }

  // The point of the natural path `base` at level y in [0, n].
  inline PointDescriptor point_at_level(GlobularComplex const& cx,
                                        NaturalPath const&     base,
                                        Rat const&             y) {
    if (y < Rat(0) || y > Rat(long(base.length()))) {
      fail(Errc::invalid_argument, "level outside the natural path");
    }
    long k = y.floor();
    if (y.is_integer()) {
      if (k == 0) {
        return point::State{cx.src(base)};
      }
      return point::State{cx.cell(base.steps[k - 1].cell).tgt};
    }
    auto const& st = base.steps[k];
    return point::Interior{st.cell, st.z, y - Rat(k)};
  }

  inline PointDescriptor evaluate(GlobularComplex const& cx,
                                  ExecutionPath const&   p,
                                  Rat const&             t) {
    if (t < Rat(0) || t > Rat(1)) {
      fail(Errc::invalid_argument, "evaluation point outside [0,1]");
    }
    return point_at_level(cx, p.base(), p.reparam()(t));
  }

  struct StopInterval {
    Rat             a;
    Rat             b;
    PointDescriptor at;
  };

  // Maximal intervals on which p is constant. Since the base is regular
  // these are exactly the flats of the reparametrization.
  inline std::vector<StopInterval> stop_intervals(GlobularComplex const& cx,
                                                  ExecutionPath const&   p) {
    std::vector<StopInterval> out;
    for (auto const& f : flat_values(p.reparam())) {
      out.push_back({f.a, f.b, point_at_level(cx, p.base(), f.value)});
    }
    return out;
  }

  inline NaturalPath const& trace(ExecutionPath const& p) { return p.base(); }

  // Reparametrization equivalence: equal naturalizations.
  inline bool equivalent(ExecutionPath const& p, ExecutionPath const& q) {
    return p.base() == q.base();
  }

  // Invariant of the quotient by precomposition with G(1,1): the trace
  // together with the levels at which the path stops.
  struct GTrace {
    NaturalPath   base;
    std::set<Rat> stop_levels;

    friend bool operator==(GTrace const&, GTrace const&) = default;
  };

  inline GTrace g_trace(ExecutionPath const& p) {
    GTrace g{p.base(), {}};
    for (auto const& f : flat_values(p.reparam())) {
      g.stop_levels.insert(f.value);
    }
    return g;
  }

}  // namespace dpath

#endif  // DPATH_PATHS_HPP_
