// Trace spaces and path families of finite globular complexes.
//
// Traces are naturalizations. A cell of positive disk dimension carries a
// continuum of traces (one per interior point); enumerations report it once,
// through the cell's canonical interior point.

#ifndef DPATH_SPACES_HPP_
#define DPATH_SPACES_HPP_

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "error.hpp"
#include "paths.hpp"
#include "rat.hpp"
#include "reparam.hpp"

namespace dpath {

  struct TraceSet {
    std::string           from;
    std::string           to;
    std::set<NaturalPath> traces;
    bool                  truncated = false;  // cut off by a length budget
  };

  namespace detail {
    inline long chain_index(GlobularComplex const& cx, std::string const& s) {
      if (!cx.has_state(s)) {
        fail(Errc::invalid_argument, "unknown state '" + s + "'");
      }
      try {
        size_t pos = 0;
        long   k   = std::stol(s, &pos);
        if (pos == s.size() && k >= 0) {
          return k;
        }
      } catch (std::exception const&) {
      }
      fail(Errc::invalid_argument,
           "state '" + s + "' is not a state of a chain of globes");
    }
  }  // namespace detail

  // Traces of a chain of globes from state i to state j: one per choice of a
  // member in each globe between them.
  inline TraceSet chain_traces(GlobularComplex const& chain,
                               std::string const&     from,
                               std::string const&     to) {
    long i = detail::chain_index(chain, from);
    long j = detail::chain_index(chain, to);
    if (i > j) {
      fail(Errc::invalid_argument, "no directed path from " + from + " to "
                                       + to + " in a chain");
    }
    TraceSet out{from, to, {}, false};
    if (i == j) {
      return out;
    }
    std::vector<std::vector<std::string>> members(j - i);
    for (auto const& c : chain.cells()) {
      long s = detail::chain_index(chain, c.src);
      long t = detail::chain_index(chain, c.tgt);
      if (c.disk_dim != 0 || t != s + 1) {
        fail(Errc::invalid_argument, "complex is not a chain of globes");
      }
      if (i <= s && t <= j) {
        members[s - i].push_back(c.id);
      }
    }
    std::vector<NaturalPath> acc{NaturalPath{}};
    for (auto const& globe : members) {
      std::vector<NaturalPath> next;
      for (auto const& prefix : acc) {
        for (auto const& m : globe) {
          NaturalPath p = prefix;
          p.steps.push_back({m, {}});
          next.push_back(std::move(p));
        }
      }
      acc = std::move(next);
    }
    out.traces.insert(acc.begin(), acc.end());
    return out;
  }

  // The path (delta_{z_1} phi_1) * ... * (delta_{z_p} phi_p) of a chain, with
  // phi_1 (x) ... (x) phi_p = phi.
  inline ExecutionPath pack_chain_path(GlobularComplex const& chain,
                                       PLMap const&           phi,
                                       std::vector<Step> const& zs) {
    if (phi.dom_len() != Rat(1) || phi.cod_len() != Rat(long(zs.size()))) {
      fail(Errc::length_mismatch,
           "reparametrization must map [0,1] onto [0,"
               + std::to_string(zs.size()) + "]");
    }
    return ExecutionPath::make(chain, NaturalPath{zs}, phi);
  }

  inline std::pair<PLMap, std::vector<Step>>
  unpack_chain_path(ExecutionPath const& p) {
    return {p.reparam(), p.base().steps};
  }

  struct SliceWitness {
    DiskPoint   z;      // boundary point of the cell
    std::string state;  // its image at the given height
  };

  namespace detail {
    // Rational points of S^1 from the stereographic parameter s:
    // ((1-s^2)/(1+s^2), 2s/(1+s^2)). x decreases from 1 to -1 as s runs over
    // [0, inf).
    inline DiskPoint circle_point(Rat const& s) {
      Rat d = Rat(1) + s * s;
      return DiskPoint{(Rat(1) - s * s) / d, Rat(2) * s / d};
    }

    // A rational point of the upper half circle with x in [lo, hi].
    inline std::optional<DiskPoint> circle_point_in(Rat const& lo,
                                                    Rat const& hi) {
      if (hi < lo || hi < Rat(-1) || lo > Rat(1)) {
        return std::nullopt;
      }
      if (hi >= Rat(1)) {
        return DiskPoint{1, 0};
      }
      if (lo <= Rat(-1)) {
        return DiskPoint{-1, 0};
      }
      // bisect on s; x(s) is continuous and decreasing
      Rat a(0), b(1);
      while (circle_point(b).coords[0] > hi) {
        b = b * Rat(2);
      }
      for (int it = 0; it < 200; ++it) {
        Rat       m = (a + b) / Rat(2);
        DiskPoint z = circle_point(m);
        if (z.coords[0] > hi) {
          a = m;
        } else if (z.coords[0] < lo) {
          b = m;
        } else {
          return z;
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  // A boundary point of `cell_id` whose image at height h is a state, if any.
  //
  // Decided exactly per attaching family. Two-path and constant families
  // reparametrize linearly, so the height-h point of a length-n image is a
  // state iff n*h is an integer. The psi family sends (x, y) to level
  // clamp(4h - 2 - x, 0, 1), which is state src iff x >= 4h - 2 and state
  // tgt iff x <= 4h - 3. Witnesses are searched clockwise from (-1, 0):
  // (-1,0), (0,1), (1,0), (0,-1), then other rational points.
  inline std::optional<SliceWitness>
  slice_meets_states(GlobularComplex const& cx,
                     std::string const&     cell_id,
                     Rat const&             h) {
    if (h <= Rat(0) || h >= Rat(1)) {
      fail(Errc::invalid_argument, "height must lie in (0,1)");
    }
    auto const& c = cx.cell(cell_id);
    if (c.disk_dim == 0) {
      fail(Errc::invalid_argument,
           "cell '" + cell_id + "' has no boundary to slice");
    }
    auto image_state = [&](DiskPoint const& z) -> std::optional<std::string> {
      BoundaryImage img   = cx.resolve_boundary(cell_id, z);
      Rat           level = img.reparam(h);
      if (!level.is_integer()) {
        return std::nullopt;
      }
      return std::get<point::State>(point_at_level(cx, img.base, level)).name;
    };
    auto axis = [&](size_t k, long sign) {
      std::vector<Rat> e(c.disk_dim, Rat(0));
      e[k] = Rat(sign);
      return DiskPoint(std::move(e));
    };
    std::vector<DiskPoint> order;
    if (c.disk_dim == 1) {
      order = {axis(0, -1), axis(0, 1)};
    } else {
      order = {axis(0, -1), axis(1, 1), axis(0, 1), axis(1, -1)};
    }
    return std::visit(
        [&](auto const& a) -> std::optional<SliceWitness> {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, attach::Endpoints>) {
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, attach::Psi>) {
            // feasible x-intervals for state src and state tgt
            std::vector<std::pair<Rat, Rat>> feasible{
                {max(Rat(-1), Rat(4) * h - Rat(2)), Rat(1)},
                {Rat(-1), min(Rat(1), Rat(4) * h - Rat(3))}};
            for (auto const& z : order) {
              for (auto const& [lo, hi] : feasible) {
                if (lo <= z.coords[0] && z.coords[0] <= hi) {
                  if (auto s = image_state(z)) {
                    return SliceWitness{z, *s};
                  }
                }
              }
            }
            for (auto const& [lo, hi] : feasible) {
              if (auto z = detail::circle_point_in(lo, hi)) {
                if (auto s = image_state(*z)) {
                  return SliceWitness{*z, *s};
                }
              }
            }
            return std::nullopt;
          } else {
            // every boundary point has a linear image of the same length
            for (auto const& z : order) {
              if (auto s = image_state(z)) {
                return SliceWitness{z, *s};
              }
            }
            return std::nullopt;
          }
        },
        c.attach);
  }

  // c0 + c1 u
  struct Affine {
    Rat c0;
    Rat c1;

    Rat at(Rat const& u) const { return c0 + c1 * u; }
    bool is_constant() const { return c1 == Rat(0); }

    std::string str() const {
      if (c1 == Rat(0)) {
        return c0.str();
      }
      std::string s = c0 == Rat(0) ? "" : c0.str();
      if (c1 == Rat(1)) {
        return s + (s.empty() ? "u" : "+u");
      }
      if (c1 == Rat(-1)) {
        return s + "-u";
      }
      std::string k = c1.str();
      return s + (s.empty() || c1 < Rat(0) ? "" : "+") + k + "u";
    }

    friend bool operator==(Affine const&, Affine const&) = default;
  };

  // An interval of the family parameter u.
  struct UInterval {
    Rat  lo;
    Rat  hi;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(Rat const& u) const {
      return (lo < u || (lo_closed && lo == u)) && (u < hi || (hi_closed && hi == u));
    }

    // A parameter value inside the interval.
    Rat sample() const { return lo == hi ? lo : (lo + hi) / Rat(2); }

    std::string str() const {
      if (lo == hi) {
        return "{" + lo.str() + "}";
      }
      return std::string(lo_closed ? "[" : "(") + lo.str() + "," + hi.str()
             + (hi_closed ? "]" : ")");
    }

    friend bool operator==(UInterval const&, UInterval const&) = default;
  };

  // One crossing of `cell` through z(u); the raw segments of a piece share
  // [0,1] equally and cross at unit speed.
  struct FamilySegment {
    std::string         cell;
    std::vector<Affine> z;

    DiskPoint at(Rat const& u) const {
      std::vector<Rat> c;
      for (auto const& a : z) {
        c.push_back(a.at(u));
      }
      return DiskPoint(std::move(c));
    }
  };

  struct FamilyPiece {
    UInterval                  where;
    std::vector<FamilySegment> segments;
  };

  // u |-> path(u) for u in [0,1], given piecewise by raw Moore compositions
  // whose points move affinely in u. Within a piece every point stays in the
  // open disk or stays on the boundary sphere, so the carrier is constant
  // on each piece.
  struct PathFamily {
    std::string              name;
    std::vector<FamilyPiece> pieces;
  };

  inline std::vector<RawSegment> family_raw(FamilyPiece const& piece,
                                            Rat const&         u) {
    std::vector<RawSegment> out;
    Rat w(1, long(piece.segments.size()));
    for (auto const& s : piece.segments) {
      out.push_back(raw_segment(s.cell, s.at(u), PLMap::identity(1), w));
    }
    return out;
  }

  inline ExecutionPath family_path(GlobularComplex const& cx,
                                   PathFamily const&      fam,
                                   Rat const&             u) {
    for (auto const& piece : fam.pieces) {
      if (piece.where.contains(u)) {
        return raw_to_normal(cx, family_raw(piece, u));
      }
    }
    fail(Errc::invalid_argument, "parameter outside the family's domain");
  }

  // Checks the piece layout and the interior/boundary dichotomy. ||z(u)||^2
  // is convex in u, so its values at the interval ends bound it inside.
  inline void check_family(GlobularComplex const& cx, PathFamily const& fam) {
    std::string what = "family '" + fam.name + "'";
    if (fam.pieces.empty()) {
      fail(Errc::validation, what + ": no pieces");
    }
    for (size_t i = 0; i < fam.pieces.size(); ++i) {
      auto const& w = fam.pieces[i].where;
      std::string wp = what + " piece " + w.str();
      if (w.hi < w.lo || (w.lo == w.hi && !(w.lo_closed && w.hi_closed))) {
        fail(Errc::validation, wp + ": empty interval");
      }
      if (i == 0 ? (w.lo != Rat(0) || !w.lo_closed)
                 : (w.lo != fam.pieces[i - 1].where.hi
                    || w.lo_closed == fam.pieces[i - 1].where.hi_closed)) {
        fail(Errc::validation, wp + ": pieces must partition [0,1] in order");
      }
      if (i + 1 == fam.pieces.size() && (w.hi != Rat(1) || !w.hi_closed)) {
        fail(Errc::validation, wp + ": pieces must cover [0,1]");
      }
      if (fam.pieces[i].segments.empty()) {
        fail(Errc::validation, wp + ": no segments");
      }
      for (auto const& s : fam.pieces[i].segments) {
        auto const& c = cx.cell(s.cell);
        if (s.z.size() != static_cast<size_t>(c.disk_dim)) {
          fail(Errc::validation,
               wp + ": point for '" + s.cell + "' has wrong dimension");
        }
        bool constant = std::all_of(s.z.begin(), s.z.end(),
                                    [](Affine const& a) { return a.is_constant(); });
        Rat  n_lo = s.at(w.lo).norm2(), n_hi = s.at(w.hi).norm2();
        if (constant) {
          if (n_lo > Rat(1)) {
            fail(Errc::validation, wp + ": point outside the disk");
          }
          continue;
        }
        bool ok = (w.lo_closed ? n_lo < Rat(1) : n_lo <= Rat(1))
                  && (w.hi_closed ? n_hi < Rat(1) : n_hi <= Rat(1));
        if (!ok) {
          fail(Errc::validation,
               wp + ": a moving point must stay inside the open disk; split "
                    "the piece where it reaches the boundary");
        }
      }
      // composability and resolution at a sample parameter
      try {
        raw_to_normal(cx, family_raw(fam.pieces[i], w.sample()));
      } catch (Error const& e) {
        fail(Errc::validation, wp + ": " + e.what());
      }
    }
  }

  struct ProfileEntry {
    std::vector<UInterval> where;
    size_t                 length;
  };

  // Natural length of path(u) as a function of u, grouped by value in
  // increasing order of first occurrence.
  inline std::vector<ProfileEntry>
  natural_length_profile(GlobularComplex const& cx, PathFamily const& fam) {
    check_family(cx, fam);
    std::vector<ProfileEntry> out;
    for (auto const& piece : fam.pieces) {
      size_t n  = family_path(cx, fam, piece.where.sample()).natural_length();
      auto   it = std::find_if(out.begin(), out.end(),
                               [&](ProfileEntry const& e) { return e.length == n; });
      if (it == out.end()) {
        out.push_back({{piece.where}, n});
      } else {
        it->where.push_back(piece.where);
      }
    }
    return out;
  }

  inline std::set<std::vector<std::string>>
  carrier_set(GlobularComplex const& cx, PathFamily const& fam) {
    check_family(cx, fam);
    std::set<std::vector<std::string>> out;
    for (auto const& piece : fam.pieces) {
      out.insert(carrier(family_path(cx, fam, piece.where.sample())));
    }
    return out;
  }

  // All traces from `from` to `to`, one canonical interior point per cell.
  // On a complex with loops a budget (maximum carrier length) is required;
  // on a loop-free complex it is ignored.
  inline TraceSet all_traces(GlobularComplex const& cx,
                             std::string const&     from,
                             std::string const&     to,
                             std::optional<size_t>  budget = std::nullopt) {
    if (!cx.has_state(from) || !cx.has_state(to)) {
      fail(Errc::invalid_argument, "unknown state");
    }
    bool loops = cx.has_loops();
    if (loops && !budget) {
      fail(Errc::budget,
           "complex has loops; a length budget is required to enumerate");
    }
    size_t   limit = loops ? *budget : cx.cells().size() + 1;
    TraceSet out{from, to, {}, false};
    NaturalPath cur;
    std::function<void(std::string const&)> walk = [&](std::string const& s) {
      if (!cur.steps.empty() && s == to) {
        out.traces.insert(cur);
      }
      for (auto const& c : cx.cells()) {
        if (c.src != s) {
          continue;
        }
        if (cur.steps.size() == limit) {
          out.truncated = true;
          return;
        }
        cur.steps.push_back({c.id, cx.canonical_interior(c.id)});
        walk(c.tgt);
        cur.steps.pop_back();
      }
    };
    walk(from);
    return out;
  }

}  // namespace dpath

#endif  // DPATH_SPACES_HPP_
