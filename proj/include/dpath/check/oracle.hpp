// Independent reference computations for the checks.
//
// Everything here works on raw breakpoint lists with linear scans and direct
// formula evaluation. None of it calls the kernel's composition, tensor,
// decomposition or factorization routines, so agreement between the two is
// evidence rather than tautology.

#ifndef DPATH_CHECK_ORACLE_HPP_
#define DPATH_CHECK_ORACLE_HPP_

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "../complex.hpp"
#include "../rat.hpp"
#include "../reparam.hpp"

namespace dpath::check {

  // Value of the piecewise-linear interpolant of pts at t, by linear scan.
  inline Rat naive_eval(std::vector<Breakpoint> const& pts, Rat const& t) {
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      auto const& a = pts[i];
      auto const& b = pts[i + 1];
      if (a.t <= t && t <= b.t) {
        return a.v + (b.v - a.v) * (t - a.t) / (b.t - a.t);
      }
    }
    fail(Errc::invalid_argument, "naive_eval outside the domain");
  }

  inline Rat naive_eval(PLMap const& m, Rat const& t) {
    return naive_eval(m.points(), t);
  }

  // Sample grid: every given breakpoint abscissa plus midpoints and quarter
  // points between consecutive ones. Two PL maps agreeing on the union of
  // their breakpoints and all midpoints agree everywhere.
  inline std::vector<Rat> dense_grid(std::vector<Rat> ts) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<Rat> out;
    for (size_t i = 0; i < ts.size(); ++i) {
      out.push_back(ts[i]);
      if (i + 1 < ts.size()) {
        Rat d = ts[i + 1] - ts[i];
        out.push_back(ts[i] + d / Rat(4));
        out.push_back(ts[i] + d / Rat(2));
        out.push_back(ts[i] + d * Rat(3, 4));
      }
    }
    return out;
  }

  inline std::vector<Rat> abscissae(PLMap const& m) {
    std::vector<Rat> out;
    for (auto const& p : m.points()) {
      out.push_back(p.t);
    }
    return out;
  }

  // Function equality on the union of breakpoint grids.
  inline bool same_function(PLMap const& a, PLMap const& b) {
    if (a.dom_len() != b.dom_len() || a.cod_len() != b.cod_len()) {
      return false;
    }
    auto ts = abscissae(a);
    auto tb = abscissae(b);
    ts.insert(ts.end(), tb.begin(), tb.end());
    for (auto const& t : dense_grid(ts)) {
      if (naive_eval(a, t) != naive_eval(b, t)) {
        return false;
      }
    }
    return true;
  }

  // second(first(t)) checked against `result` on a grid fine enough to pin
  // down every piece of the composite: the first map's abscissae, the result's
  // abscissae, and the first map's preimages of the second map's breakpoints
  // found by scanning.
  inline bool is_composite(PLMap const& result,
                           PLMap const& first,
                           PLMap const& second) {
    if (result.dom_len() != first.dom_len()
        || result.cod_len() != second.cod_len()) {
      return false;
    }
    std::vector<Rat> ts = abscissae(first);
    auto             tr = abscissae(result);
    ts.insert(ts.end(), tr.begin(), tr.end());
    auto const& fp = first.points();
    for (auto const& q : second.points()) {
      for (size_t i = 0; i + 1 < fp.size(); ++i) {
        if (fp[i].v < q.t && q.t < fp[i + 1].v) {
          ts.push_back(fp[i].t
                       + (fp[i + 1].t - fp[i].t) * (q.t - fp[i].v)
                             / (fp[i + 1].v - fp[i].v));
        }
      }
    }
    for (auto const& t : dense_grid(ts)) {
      if (naive_eval(result, t) != naive_eval(second, naive_eval(first, t))) {
        return false;
      }
    }
    return true;
  }

  // The displayed piecewise formula for phi_1 (x) ... (x) phi_n, evaluated
  // directly at t.
  inline Rat tensor_formula(std::vector<PLMap> const& maps, Rat const& t) {
    Rat dt(0), dv(0);
    for (size_t i = 0; i < maps.size(); ++i) {
      Rat end = dt + maps[i].dom_len();
      if (t <= end || i + 1 == maps.size()) {
        return naive_eval(maps[i], t - dt) + dv;
      }
      dt = end;
      dv += maps[i].cod_len();
    }
    fail(Errc::invalid_argument, "tensor_formula on an empty list");
  }

  inline bool is_tensor(PLMap const& result, std::vector<PLMap> const& maps) {
    Rat              dl(0), cl(0);
    std::vector<Rat> ts = abscissae(result);
    for (auto const& m : maps) {
      for (auto const& p : m.points()) {
        ts.push_back(p.t + dl);
      }
      dl += m.dom_len();
      cl += m.cod_len();
    }
    if (result.dom_len() != dl || result.cod_len() != cl) {
      return false;
    }
    for (auto const& t : dense_grid(ts)) {
      if (naive_eval(result, t) != tensor_formula(maps, t)) {
        return false;
      }
    }
    return true;
  }

  // Flat values read straight off the breakpoints, merging runs of equal
  // values so that non-canonical input is handled too.
  inline std::vector<Rat> naive_flat_values(std::vector<Breakpoint> const& p) {
    std::vector<Rat> out;
    for (size_t i = 1; i < p.size(); ++i) {
      if (p[i].v == p[i - 1].v && (out.empty() || out.back() != p[i].v)) {
        out.push_back(p[i].v);
      }
    }
    return out;
  }

  // Number of cell sequences from `from` to `to` of length at most max_len,
  // by dynamic programming over lengths. With one canonical point per cell
  // this is the number of traces.
  inline size_t count_cell_sequences(GlobularComplex const& cx,
                                     std::string const&     from,
                                     std::string const&     to,
                                     size_t                 max_len) {
    std::map<std::string, size_t> ways{{from, 1}};
    size_t                        total = 0;
    for (size_t len = 1; len <= max_len; ++len) {
      std::map<std::string, size_t> next;
      for (auto const& c : cx.cells()) {
        auto it = ways.find(c.src);
        if (it != ways.end()) {
          next[c.tgt] += it->second;
        }
      }
      ways = std::move(next);
      if (ways.count(to)) {
        total += ways[to];
      }
    }
    return total;
  }

}  // namespace dpath::check

#endif  // DPATH_CHECK_ORACLE_HPP_
