// Cellular multipointed d-spaces as finite globular complexes.
//
// A complex is a set of states plus an ordered list of globular cells. Cell k
// is a copy of Glob(D^n) glued along Glob(S^{n-1}) to the complex formed by
// the states and cells 0..k-1. Its attaching data says where each boundary
// point of D^n goes: nowhere for n = 0 (the cell is a directed segment), to
// one of two named paths for n = 1, and to a computable family for n >= 2.

#ifndef DPATH_COMPLEX_HPP_
#define DPATH_COMPLEX_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "error.hpp"
#include "rat.hpp"
#include "reparam.hpp"

namespace dpath {

  enum class Flavor { G, M };

  inline char const* flavor_name(Flavor f) { return f == Flavor::G ? "G" : "M"; }

  struct DiskPoint {
    std::vector<Rat> coords;

    DiskPoint() = default;
    DiskPoint(std::initializer_list<Rat> c) : coords(c) {}
    explicit DiskPoint(std::vector<Rat> c) : coords(std::move(c)) {}

    size_t dim() const noexcept { return coords.size(); }

    Rat norm2() const {
      Rat s(0);
      for (auto const& c : coords) {
        s += c * c;
      }
      return s;
    }

    bool is_interior() const { return norm2() < Rat(1); }
    bool is_boundary() const { return norm2() == Rat(1); }

    std::string str() const {
      std::string s = "(";
      for (size_t i = 0; i < coords.size(); ++i) {
        s += (i == 0 ? "" : ",") + coords[i].str();
      }
      return s + ")";
    }

    friend bool operator==(DiskPoint const&, DiskPoint const&) = default;
    friend auto operator<=>(DiskPoint const&, DiskPoint const&) = default;
  };

  // One unit-speed crossing of a cell through the interior point z.
  struct Step {
    std::string cell;
    DiskPoint   z;

    std::string str() const { return cell + "@" + z.str(); }

    friend bool operator==(Step const&, Step const&) = default;
    friend auto operator<=>(Step const&, Step const&) = default;
  };

  // A regular unit-speed path on [0, n]: step i is crossed on [i-1, i]. It is
  // the naturalization of every execution path with this carrier and these
  // interior points.
  struct NaturalPath {
    std::vector<Step> steps;

    size_t length() const noexcept { return steps.size(); }

    std::vector<std::string> carrier() const {
      std::vector<std::string> out;
      out.reserve(steps.size());
      for (auto const& s : steps) {
        out.push_back(s.cell);
      }
      return out;
    }

    std::string str() const {
      std::string s;
      for (size_t i = 0; i < steps.size(); ++i) {
        s += (i == 0 ? "" : " ; ") + steps[i].str();
      }
      return s;
    }

    friend bool operator==(NaturalPath const&, NaturalPath const&) = default;
    friend auto operator<=>(NaturalPath const&, NaturalPath const&) = default;
  };

  inline NaturalPath concat(NaturalPath a, NaturalPath const& b) {
    a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
    return a;
  }

  struct NamedPath {
    std::string name;
    NaturalPath path;

    friend bool operator==(NamedPath const&, NamedPath const&) = default;
  };

  namespace attach {
    struct Endpoints {
      friend bool operator==(Endpoints const&, Endpoints const&) = default;
    };
    // Boundary point -1 goes to `minus`, +1 to `plus`.
    struct TwoPaths {
      NamedPath minus;
      NamedPath plus;
      friend bool operator==(TwoPaths const&, TwoPaths const&) = default;
    };
    // Every boundary point goes to `path` at unit speed.
    struct Constant {
      NamedPath path;
      friend bool operator==(Constant const&, Constant const&) = default;
    };
    // Twisted disk over Glob(S^1): the boundary point (x, y) goes to the
    // hemisphere picked by the sign of y at parameter x, or to the shared
    // hemisphere boundary when y = 0, reparametrized by psi_map(x).
    struct Psi {
      std::string upper;
      std::string lower;
      friend bool operator==(Psi const&, Psi const&) = default;
    };
  }  // namespace attach

  using AttachingData = std::
      variant<attach::Endpoints, attach::TwoPaths, attach::Constant, attach::Psi>;

  struct GlobularCell {
    std::string   id;
    int           disk_dim = 0;
    std::string   src;
    std::string   tgt;
    AttachingData attach;

    friend bool operator==(GlobularCell const&, GlobularCell const&) = default;
  };

  // t |-> clamp(4t - 2 - x, 0, 1): breakpoints (0,0), ((2+x)/4, 0),
  // ((3+x)/4, 1), (1,1). Lies in M(1,1) but never in G(1,1).
  inline PLMap psi_map(Rat const& x) {
    if (x < Rat(-1) || x > Rat(1)) {
      fail(Errc::invalid_argument, "psi_map parameter outside [-1,1]");
    }
    std::vector<Breakpoint> pts{{0, 0},
                                {(Rat(2) + x) / Rat(4), 0},
                                {(Rat(3) + x) / Rat(4), 1},
                                {1, 1}};
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](auto const& a, auto const& b) { return a.t == b.t; }),
              pts.end());
    return PLMap::make(1, 1, std::move(pts));
  }

  // Image of a boundary point: an execution path of the earlier skeleton in
  // normal form (base path and reparametrization [0,1] -> [0,n]).
  struct BoundaryImage {
    NaturalPath base;
    PLMap       reparam;
  };

  class GlobularComplex {
   public:
    GlobularComplex(Flavor flavor, std::vector<std::string> states)
        : _flavor(flavor), _states(std::move(states)) {
      std::set<std::string> seen;
      for (auto const& s : _states) {
        if (s.empty()) {
          fail(Errc::validation, "empty state name");
        }
        if (!seen.insert(s).second) {
          fail(Errc::validation, "duplicate state '" + s + "'");
        }
      }
    }

    // Builds and validates the whole complex.
    static GlobularComplex make(Flavor                    flavor,
                                std::vector<std::string>  states,
                                std::vector<GlobularCell> cells) {
      GlobularComplex c(flavor, std::move(states));
      for (auto& cell : cells) {
        c.push(std::move(cell));
      }
      return c;
    }

    Flavor                           flavor() const noexcept { return _flavor; }
    std::vector<std::string> const&  states() const noexcept { return _states; }
    std::vector<GlobularCell> const& cells() const noexcept { return _cells; }

    bool has_state(std::string const& s) const {
      return std::find(_states.begin(), _states.end(), s) != _states.end();
    }

    bool has_cell(std::string const& id) const { return _index.count(id) != 0; }

    size_t index_of(std::string const& id) const {
      auto it = _index.find(id);
      if (it == _index.end()) {
        fail(Errc::validation, "unknown cell '" + id + "'");
      }
      return it->second;
    }

    GlobularCell const& cell(std::string const& id) const {
      return _cells[index_of(id)];
    }

    std::string const& src(NaturalPath const& p) const {
      return cell(p.steps.front().cell).src;
    }
    std::string const& tgt(NaturalPath const& p) const {
      return cell(p.steps.back().cell).tgt;
    }

    // Appends a cell after validating it against the current cells.
    void push(GlobularCell c) {
      check_cell(c, _cells.size());
      _index.emplace(c.id, _cells.size());
      _cells.push_back(std::move(c));
    }

    // Checks that p is a regular path of the complex formed by the states and
    // the first `limit` cells.
    void check_path(NaturalPath const& p,
                    size_t             limit,
                    std::string const& what) const {
      if (p.steps.empty()) {
        fail(Errc::validation, what + ": empty path");
      }
      for (size_t i = 0; i < p.steps.size(); ++i) {
        auto const& st = p.steps[i];
        auto        it = _index.find(st.cell);
        if (it == _index.end()) {
          fail(Errc::validation, what + ": unknown cell '" + st.cell + "'");
        }
        if (it->second >= limit) {
          fail(Errc::validation,
               what + ": skeletal order violated, cell '" + st.cell
                   + "' is not earlier");
        }
        auto const& c = _cells[it->second];
        if (st.z.dim() != static_cast<size_t>(c.disk_dim)) {
          fail(Errc::validation,
               what + ": point " + st.z.str() + " has wrong dimension for '"
                   + st.cell + "'");
        }
        if (!st.z.is_interior()) {
          fail(Errc::validation,
               what + ": point " + st.z.str() + " is not interior to '"
                   + st.cell + "'");
        }
        if (i > 0 && _cells[_index.at(p.steps[i - 1].cell)].tgt != c.src) {
          fail(Errc::validation,
               what + ": steps " + std::to_string(i) + " and "
                   + std::to_string(i + 1) + " are not composable");
        }
      }
    }

    // Where the boundary point z of cell `id` goes.
    BoundaryImage resolve_boundary(std::string const& id,
                                   DiskPoint const&   z) const {
      auto const& c = cell(id);
      if (z.dim() != static_cast<size_t>(c.disk_dim) || !z.is_boundary()) {
        fail(Errc::resolve,
             "point " + z.str() + " is not on the boundary of '" + id + "'");
      }
      return std::visit(
          [&](auto const& a) -> BoundaryImage {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, attach::Endpoints>) {
              fail(Errc::resolve, "segment '" + id + "' has no boundary");
            } else if constexpr (std::is_same_v<T, attach::TwoPaths>) {
              auto const& np = z.coords[0] < Rat(0) ? a.minus : a.plus;
              return {np.path, PLMap::linear(1, Rat(long(np.path.length())))};
            } else if constexpr (std::is_same_v<T, attach::Constant>) {
              return {a.path.path,
                      PLMap::linear(1, Rat(long(a.path.path.length())))};
            } else {
              Rat const& x = z.coords[0];
              Rat const& y = z.coords[1];
              PLMap      twist = psi_map(x);
              if (y > Rat(0)) {
                return {NaturalPath{{Step{a.upper, DiskPoint{x}}}}, twist};
              }
              if (y < Rat(0)) {
                return {NaturalPath{{Step{a.lower, DiskPoint{x}}}}, twist};
              }
              BoundaryImage under = resolve_boundary(a.upper, DiskPoint{x});
              return {under.base, compose(twist, under.reparam)};
            }
          },
          c.attach);
    }

    // Canonical interior point of a cell, used as the representative of the
    // continuum of traces crossing it.
    DiskPoint canonical_interior(std::string const& id) const {
      return DiskPoint(std::vector<Rat>(cell(id).disk_dim, Rat(0)));
    }

    // Whether the directed graph of cells (src -> tgt) has a cycle.
    bool has_loops() const {
      std::map<std::string, std::vector<std::string>> adj;
      for (auto const& c : _cells) {
        adj[c.src].push_back(c.tgt);
      }
      std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
      std::vector<std::pair<std::string, size_t>> stack;
      for (auto const& s : _states) {
        if (color[s] != 0) {
          continue;
        }
        stack.push_back({s, 0});
        color[s] = 1;
        while (!stack.empty()) {
          auto& [v, i] = stack.back();
          auto& out    = adj[v];
          if (i == out.size()) {
            color[v] = 2;
            stack.pop_back();
            continue;
          }
          std::string w = out[i++];
          if (color[w] == 1) {
            return true;
          }
          if (color[w] == 0) {
            color[w] = 1;
            stack.push_back({w, 0});
          }
        }
      }
      return false;
    }

    friend bool operator==(GlobularComplex const& a, GlobularComplex const& b) {
      return a._flavor == b._flavor && a._states == b._states
             && a._cells == b._cells;
    }

   private:
    void check_cell(GlobularCell const& c, size_t k) const {
      std::string what = "cell '" + c.id + "'";
      if (c.id.empty()) {
        fail(Errc::validation, "cell with empty id");
      }
      if (_index.count(c.id) != 0) {
        fail(Errc::validation, what + ": duplicate id");
      }
      if (!has_state(c.src) || !has_state(c.tgt)) {
        fail(Errc::validation, what + ": unknown endpoint state");
      }
      if (c.disk_dim < 0) {
        fail(Errc::validation, what + ": negative dimension");
      }
      auto check_ends = [&](NamedPath const& np) {
        std::string w = what + " path '" + np.name + "'";
        check_path(np.path, k, w);
        if (src(np.path) != c.src || tgt(np.path) != c.tgt) {
          fail(Errc::validation,
               w + ": endpoints do not match " + c.src + " -> " + c.tgt);
        }
      };
      std::visit(
          [&](auto const& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, attach::Endpoints>) {
              if (c.disk_dim != 0) {
                fail(Errc::validation,
                     what + ": endpoints attachment needs dim 0");
              }
            } else if constexpr (std::is_same_v<T, attach::TwoPaths>) {
              if (c.disk_dim != 1) {
                fail(Errc::validation,
                     what + ": two_paths attachment needs dim 1");
              }
              check_ends(a.minus);
              check_ends(a.plus);
            } else if constexpr (std::is_same_v<T, attach::Constant>) {
              if (c.disk_dim < 2) {
                fail(Errc::validation,
                     what + ": const attachment needs dim >= 2");
              }
              check_ends(a.path);
            } else {
              if (c.disk_dim != 2) {
                fail(Errc::validation, what + ": psi attachment needs dim 2");
              }
              if (_flavor == Flavor::G) {
                fail(Errc::flavor,
                     what
                         + ": psi attachment reparametrizes by maps outside G");
              }
              auto hemi = [&](std::string const& h) -> attach::TwoPaths const& {
                auto it = _index.find(h);
                if (it == _index.end() || it->second >= k) {
                  fail(Errc::validation,
                       what + ": hemisphere '" + h + "' is not an earlier cell");
                }
                auto const& hc = _cells[it->second];
                auto const* tp = std::get_if<attach::TwoPaths>(&hc.attach);
                if (tp == nullptr || hc.src != c.src || hc.tgt != c.tgt) {
                  fail(Errc::validation,
                       what + ": hemisphere '" + h
                           + "' must be a dim 1 cell with the same endpoints");
                }
                return *tp;
              };
              auto const& up = hemi(a.upper);
              auto const& lo = hemi(a.lower);
              if (a.upper == a.lower || up.minus.path != lo.minus.path
                  || up.plus.path != lo.plus.path) {
                fail(Errc::validation,
                     what + ": hemispheres must be distinct and share their "
                            "boundary paths");
              }
            }
          },
          c.attach);
    }

    Flavor                                  _flavor;
    std::vector<std::string>                _states;
    std::vector<GlobularCell>               _cells;
    std::unordered_map<std::string, size_t> _index;
  };

  // Returns base with `cell` appended; base is left unchanged.
  inline GlobularComplex attach_cell(GlobularComplex base, GlobularCell cell) {
    base.push(std::move(cell));
    return base;
  }

  // Glob(Z_1) * ... * Glob(Z_p): states "0".."p", and one directed segment
  // named after each member of Z_k from state k-1 to state k. Member names
  // must be distinct across the whole chain.
  inline GlobularComplex
  chain_of_globes(std::vector<std::vector<std::string>> const& families,
                  Flavor                                       flavor) {
    if (families.empty()) {
      fail(Errc::invalid_argument, "a chain needs at least one globe");
    }
    std::vector<std::string> states;
    for (size_t k = 0; k <= families.size(); ++k) {
      states.push_back(std::to_string(k));
    }
    GlobularComplex c(flavor, std::move(states));
    for (size_t k = 0; k < families.size(); ++k) {
      if (families[k].empty()) {
        fail(Errc::invalid_argument,
             "globe " + std::to_string(k + 1) + " of the chain is empty");
      }
      for (auto const& z : families[k]) {
        if (c.has_cell(z)) {
          fail(Errc::invalid_argument, "duplicate member '" + z + "'");
        }
        c.push({z, 0, std::to_string(k), std::to_string(k + 1),
                attach::Endpoints{}});
      }
    }
    return c;
  }

  inline GlobularComplex glob_of_finite_set(std::vector<std::string> const& z,
                                            Flavor flavor) {
    if (z.empty()) {
      fail(Errc::invalid_argument, "Glob of an empty set");
    }
    return chain_of_globes({z}, flavor);
  }

  // Glob(S^1) as two segments e_minus, e_plus (the points -1, +1 of S^0) and
  // two hemispheres upper, lower bounded by them.
  inline GlobularComplex build_glob_S1(Flavor flavor) {
    GlobularComplex c = glob_of_finite_set({"e_minus", "e_plus"}, flavor);
    NamedPath       pm{"p_minus", NaturalPath{{Step{"e_minus", {}}}}};
    NamedPath       pp{"p_plus", NaturalPath{{Step{"e_plus", {}}}}};
    c.push({"upper", 1, "0", "1", attach::TwoPaths{pm, pp}});
    c.push({"lower", 1, "0", "1", attach::TwoPaths{pm, pp}});
    return c;
  }

  // Glob(S^1) with a 2-disk glued along the psi-twisted self map.
  inline GlobularComplex build_psi_counterexample() {
    GlobularComplex c = build_glob_S1(Flavor::M);
    c.push({"psi", 2, "0", "1", attach::Psi{"upper", "lower"}});
    return c;
  }

  // I * I with a 1-disk glued along both boundary points to the length-2
  // path s1 s2: natural length 2 on the boundary and 1 inside.
  inline GlobularComplex build_disk_over_two_segments(Flavor flavor) {
    GlobularComplex c = chain_of_globes({{"s1"}, {"s2"}}, flavor);
    NamedPath       b{"s1s2", NaturalPath{{Step{"s1", {}}, Step{"s2", {}}}}};
    c.push({"d", 1, "0", "2", attach::TwoPaths{b, b}});
    return c;
  }

}  // namespace dpath

#endif  // DPATH_COMPLEX_HPP_
