// Reparametrization maps as exact piecewise-linear monotone surjections.
//
// A PLMap is a nondecreasing surjection [0, dom_len] -> [0, cod_len] given by
// its breakpoints; it belongs to the category M. It belongs to G (the
// nondecreasing homeomorphisms) exactly when its values strictly increase.
// Breakpoints are kept canonical: no interior breakpoint lies on the segment
// joining its neighbours, so two PLMaps are equal as functions if and only if
// they are equal as values.

#ifndef DPATH_REPARAM_HPP_
#define DPATH_REPARAM_HPP_

#include <algorithm>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rat.hpp"

namespace dpath {

  struct Breakpoint {
    Rat t;
    Rat v;

    friend bool operator==(Breakpoint const&, Breakpoint const&) = default;
  };

  // A maximal interval [a, b] of the domain on which a map is constant.
  struct FlatRecord {
    Rat value;
    Rat a;
    Rat b;

    friend bool operator==(FlatRecord const&, FlatRecord const&) = default;
  };

  class PLMap {
   public:
    // Validates and canonicalizes. Throws Errc::invalid_argument.
    static PLMap make(Rat dom_len, Rat cod_len, std::vector<Breakpoint> pts) {
      if (dom_len <= Rat(0) || cod_len <= Rat(0)) {
        fail(Errc::invalid_argument, "segment lengths must be positive");
      }
      if (pts.size() < 2) {
        fail(Errc::invalid_argument, "a map needs at least two breakpoints");
      }
      if (pts.front() != Breakpoint{0, 0}) {
        fail(Errc::invalid_argument, "first breakpoint must be (0,0)");
      }
      if (pts.back() != Breakpoint{dom_len, cod_len}) {
        fail(Errc::invalid_argument,
             "last breakpoint must be (" + dom_len.str() + ","
                 + cod_len.str() + ")");
      }
      for (size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i - 1].t < pts[i].t)) {
          fail(Errc::invalid_argument,
               "breakpoint abscissae must strictly increase");
        }
        if (pts[i].v < pts[i - 1].v) {
          fail(Errc::invalid_argument, "map must be nondecreasing");
        }
      }
      PLMap m;
      m._dom = std::move(dom_len);
      m._cod = std::move(cod_len);
      m._pts.reserve(pts.size());
      for (auto& p : pts) {
        while (m._pts.size() >= 2
               && collinear(m._pts[m._pts.size() - 2], m._pts.back(), p)) {
          m._pts.pop_back();
        }
        m._pts.push_back(std::move(p));
      }
      return m;
    }

    static PLMap linear(Rat dom_len, Rat cod_len) {
      Rat d = dom_len, c = cod_len;
      return make(std::move(dom_len), std::move(cod_len), {{0, 0}, {d, c}});
    }

    static PLMap identity(Rat len) { return linear(len, len); }

    Rat const& dom_len() const noexcept { return _dom; }
    Rat const& cod_len() const noexcept { return _cod; }
    std::vector<Breakpoint> const& points() const noexcept { return _pts; }

    Rat operator()(Rat const& t) const {
      if (t < Rat(0) || t > _dom) {
        fail(Errc::invalid_argument,
             "evaluation point " + t.str() + " outside [0," + _dom.str()
                 + "]");
      }
      auto it = std::lower_bound(
          _pts.begin(), _pts.end(), t,
          [](Breakpoint const& p, Rat const& x) { return p.t < x; });
      if (it->t == t) {
        return it->v;
      }
      auto const& hi = *it;
      auto const& lo = *(it - 1);
      return lo.v + (hi.v - lo.v) * (t - lo.t) / (hi.t - lo.t);
    }

    // Smallest (resp. largest) t with value y; y must lie in [0, cod_len].
    Rat min_preimage(Rat const& y) const {
      check_value(y);
      auto it = std::lower_bound(
          _pts.begin(), _pts.end(), y,
          [](Breakpoint const& p, Rat const& x) { return p.v < x; });
      if (it->v == y) {
        return it->t;
      }
      return interpolate_t(*(it - 1), *it, y);
    }

    Rat max_preimage(Rat const& y) const {
      check_value(y);
      auto it = std::upper_bound(
          _pts.begin(), _pts.end(), y,
          [](Rat const& x, Breakpoint const& p) { return x < p.v; });
      auto const& lo = *(it - 1);
      if (lo.v == y) {
        return lo.t;
      }
      return interpolate_t(lo, *it, y);
    }

    bool is_homeo() const {
      for (size_t i = 1; i < _pts.size(); ++i) {
        if (_pts[i].v == _pts[i - 1].v) {
          return false;
        }
      }
      return true;
    }

    // "pl <dom> <cod> : t0 v0 ; t1 v1 ; ..."
    std::string str() const {
      std::ostringstream os;
      os << "pl " << _dom << ' ' << _cod << " :";
      for (size_t i = 0; i < _pts.size(); ++i) {
        os << (i == 0 ? " " : " ; ") << _pts[i].t << ' ' << _pts[i].v;
      }
      return os.str();
    }

    static PLMap parse(std::string_view text) {
      std::istringstream is{std::string(text)};
      std::string word, dom, cod, colon;
      if (!(is >> word) || word != "pl" || !(is >> dom >> cod >> colon)
          || colon != ":") {
        fail(Errc::parse, "expected 'pl <dom> <cod> : ...' in '"
                              + std::string(text) + "'");
      }
      std::vector<Breakpoint> pts;
      std::string tok;
      std::vector<std::string> pair;
      auto flush = [&]() {
        if (pair.size() != 2) {
          fail(Errc::parse, "breakpoint needs exactly two rationals in '"
                                + std::string(text) + "'");
        }
        pts.push_back({Rat::parse(pair[0]), Rat::parse(pair[1])});
        pair.clear();
      };
      while (is >> tok) {
        if (tok == ";") {
          flush();
        } else {
          pair.push_back(tok);
        }
      }
      flush();
      try {
        return make(Rat::parse(dom), Rat::parse(cod), std::move(pts));
      } catch (Error const& e) {
        if (e.code() == Errc::parse) {
          throw;
        }
        fail(Errc::parse, std::string("invalid map: ") + e.what());
      }
    }

    friend bool operator==(PLMap const&, PLMap const&) = default;

   private:
    PLMap() = default;

    static bool collinear(Breakpoint const& a,
                          Breakpoint const& b,
                          Breakpoint const& c) {
      return (b.v - a.v) * (c.t - a.t) == (c.v - a.v) * (b.t - a.t);
    }

    static Rat interpolate_t(Breakpoint const& lo,
                             Breakpoint const& hi,
                             Rat const& y) {
      return lo.t + (hi.t - lo.t) * (y - lo.v) / (hi.v - lo.v);
    }

    void check_value(Rat const& y) const {
      if (y < Rat(0) || y > _cod) {
        fail(Errc::invalid_argument,
             "value " + y.str() + " outside [0," + _cod.str() + "]");
      }
    }

    Rat                     _dom;
    Rat                     _cod;
    std::vector<Breakpoint> _pts;
  };

  inline std::ostream& operator<<(std::ostream& os, PLMap const& m) {
    return os << m.str();
  }

  inline PLMap make_pl(Rat dom_len, Rat cod_len, std::vector<Breakpoint> pts) {
    return PLMap::make(std::move(dom_len), std::move(cod_len), std::move(pts));
  }

  inline bool is_homeo(PLMap const& m) { return m.is_homeo(); }

  // mu(l) : [0,l] -> [0,1], t |-> t/l, and its inverse.
  inline PLMap mu(Rat const& len) {
    if (len <= Rat(0)) {
      fail(Errc::invalid_argument, "mu needs a positive length");
    }
    return PLMap::linear(len, 1);
  }

  inline PLMap mu_inv(Rat const& len) {
    if (len <= Rat(0)) {
      fail(Errc::invalid_argument, "mu_inv needs a positive length");
    }
    return PLMap::linear(1, len);
  }

  // Returns second o first, i.e. t |-> second(first(t)).
  inline PLMap compose(PLMap const& first, PLMap const& second) {
    if (first.cod_len() != second.dom_len()) {
      fail(Errc::length_mismatch,
           "cannot compose: codomain length " + first.cod_len().str()
               + " differs from domain length " + second.dom_len().str());
    }
    auto const&      fp = first.points();
    auto const&      sp = second.points();
    std::vector<Rat> grid;
    grid.reserve(fp.size() + sp.size());
    for (size_t i = 0; i + 1 < fp.size(); ++i) {
      grid.push_back(fp[i].t);
      auto const& lo = fp[i];
      auto const& hi = fp[i + 1];
      if (lo.v == hi.v) {
        continue;
      }
      // preimages of the second map's breakpoints inside this rising piece
      for (auto const& q : sp) {
        if (lo.v < q.t && q.t < hi.v) {
          grid.push_back(lo.t + (hi.t - lo.t) * (q.t - lo.v) / (hi.v - lo.v));
        }
      }
    }
    grid.push_back(fp.back().t);
    std::vector<Breakpoint> pts;
    pts.reserve(grid.size());
    for (auto& t : grid) {
      Rat v = second(first(t));
      pts.push_back({std::move(t), std::move(v)});
    }
    return PLMap::make(first.dom_len(), second.cod_len(), std::move(pts));
  }

  // Concatenation: block i is maps[i] shifted by the lengths of the earlier
  // blocks in both domain and codomain.
  inline PLMap tensor(std::span<PLMap const> maps) {
    if (maps.empty()) {
      fail(Errc::invalid_argument, "tensor of an empty list");
    }
    std::vector<Breakpoint> pts;
    Rat                     dt(0), dv(0);
    pts.push_back({0, 0});
    for (auto const& m : maps) {
      auto const& mp = m.points();
      for (size_t i = 1; i < mp.size(); ++i) {
        pts.push_back({mp[i].t + dt, mp[i].v + dv});
      }
      dt += m.dom_len();
      dv += m.cod_len();
    }
    return PLMap::make(dt, dv, std::move(pts));
  }

  inline PLMap tensor(std::initializer_list<PLMap> maps) {
    return tensor(std::span<PLMap const>(maps.begin(), maps.size()));
  }

  // Restriction of m to [a, b], translated to start at (0, 0). The values at
  // a and b must differ.
  inline PLMap restrict_to(PLMap const& m, Rat const& a, Rat const& b) {
    Rat                     va = m(a), vb = m(b);
    std::vector<Breakpoint> pts;
    pts.push_back({0, 0});
    for (auto const& p : m.points()) {
      if (a < p.t && p.t < b) {
        pts.push_back({p.t - a, p.v - va});
      }
    }
    pts.push_back({b - a, vb - va});
    return PLMap::make(b - a, vb - va, std::move(pts));
  }

  enum class CutRule { min_preimage, max_preimage };

  // Writes m as a tensor of maps whose codomain lengths are `partition`.
  // With CutRule::min_preimage, a flat sitting at a cumulative level goes to
  // the later factor.
  inline std::vector<PLMap> decompose(PLMap const&         m,
                                      std::span<Rat const> partition,
                                      CutRule rule = CutRule::min_preimage) {
    if (partition.empty()) {
      fail(Errc::invalid_argument, "empty partition");
    }
    Rat sum(0);
    for (auto const& l : partition) {
      if (l <= Rat(0)) {
        fail(Errc::invalid_argument, "partition lengths must be positive");
      }
      sum += l;
    }
    if (sum != m.cod_len()) {
      fail(Errc::invalid_argument,
           "partition sums to " + sum.str() + ", expected "
               + m.cod_len().str());
    }
    std::vector<PLMap> out;
    out.reserve(partition.size());
    Rat level(0), cut(0);
    for (size_t i = 0; i < partition.size(); ++i) {
      level += partition[i];
      Rat next = i + 1 == partition.size()
                     ? m.dom_len()
                     : (rule == CutRule::min_preimage ? m.min_preimage(level)
                                                      : m.max_preimage(level));
      out.push_back(restrict_to(m, cut, next));
      cut = std::move(next);
    }
    return out;
  }

  inline std::vector<PLMap> decompose(PLMap const&               m,
                                      std::initializer_list<Rat> partition,
                                      CutRule rule = CutRule::min_preimage) {
    return decompose(
        m, std::span<Rat const>(partition.begin(), partition.size()), rule);
  }

  inline std::vector<FlatRecord> flat_values(PLMap const& m) {
    std::vector<FlatRecord> out;
    auto const&             p = m.points();
    for (size_t i = 1; i < p.size(); ++i) {
      if (p[i].v == p[i - 1].v) {
        out.push_back({p[i].v, p[i - 1].t, p[i].t});
      }
    }
    return out;
  }

  // Inverse of a homeomorphism.
  inline PLMap inverse(PLMap const& m) {
    if (!m.is_homeo()) {
      fail(Errc::invalid_argument, "only homeomorphisms are invertible");
    }
    std::vector<Breakpoint> pts;
    pts.reserve(m.points().size());
    for (auto const& p : m.points()) {
      pts.push_back({p.v, p.t});
    }
    return PLMap::make(m.cod_len(), m.dom_len(), std::move(pts));
  }

  // Finds psi in M(1,1) with target = base o psi (that is,
  // compose(psi, base) == target). Such a psi exists iff every flat value of
  // base is also a flat value of target. Off the flats of base, psi is forced
  // to base^{-1} o target; on a flat [c, d] of target whose value is the flat
  // [a, b] of base, psi runs affinely from a to b.
  inline std::optional<PLMap> factors_through(PLMap const& target,
                                              PLMap const& base) {
    if (target.dom_len() != Rat(1) || target.cod_len() != Rat(1)
        || base.dom_len() != Rat(1) || base.cod_len() != Rat(1)) {
      fail(Errc::invalid_argument, "factors_through works on M(1,1)");
    }
    auto base_flats   = flat_values(base);
    auto target_flats = flat_values(target);
    auto target_flat  = [&](Rat const& y) -> FlatRecord const* {
      for (auto const& f : target_flats) {
        if (f.value == y) {
          return &f;
        }
      }
      return nullptr;
    };
    for (auto const& f : base_flats) {
      if (target_flat(f.value) == nullptr) {
        return std::nullopt;
      }
    }
    auto base_flat = [&](Rat const& y) -> FlatRecord const* {
      for (auto const& f : base_flats) {
        if (f.value == y) {
          return &f;
        }
      }
      return nullptr;
    };
    // Grid: target's breakpoints plus target-preimages of base's breakpoint
    // values, so that base^{-1} o target is affine between grid points.
    std::vector<Rat> grid;
    auto const&      tp = target.points();
    for (size_t i = 0; i + 1 < tp.size(); ++i) {
      grid.push_back(tp[i].t);
      auto const& lo = tp[i];
      auto const& hi = tp[i + 1];
      if (lo.v == hi.v) {
        continue;
      }
      for (auto const& q : base.points()) {
        if (lo.v < q.v && q.v < hi.v) {
          grid.push_back(lo.t + (hi.t - lo.t) * (q.v - lo.v) / (hi.v - lo.v));
        }
      }
    }
    grid.push_back(tp.back().t);
    std::vector<Breakpoint> pts;
    for (auto const& t : grid) {
      Rat               y  = target(t);
      FlatRecord const* bf = base_flat(y);
      Rat               s;
      if (bf == nullptr) {
        s = base.min_preimage(y);
      } else {
        FlatRecord const* tf = target_flat(y);
        s = bf->a + (bf->b - bf->a) * (t - tf->a) / (tf->b - tf->a);
      }
      pts.push_back({t, std::move(s)});
    }
    PLMap psi = PLMap::make(1, 1, std::move(pts));
    if (compose(psi, base) != target) {
      // unreachable when the flat criterion is correct
      fail(Errc::invalid_argument, "factors_through witness check failed");
    }
    return psi;
  }

  // Given u, v in M(1,l), returns (phi_u, phi_v) in M(1,1) with
  // u o phi_u == v o phi_v. If u is invertible the answer is
  // (u^{-1} o v, id); if v is, (id, v^{-1} o u). Otherwise the pair is read
  // off a monotone staircase through {(a,b) : u(a) = v(b)} parametrized by
  // (a+b)/2.
  inline std::pair<PLMap, PLMap> common_reparam(PLMap const& u,
                                                PLMap const& v) {
    if (u.dom_len() != Rat(1) || v.dom_len() != Rat(1)
        || u.cod_len() != v.cod_len()) {
      fail(Errc::length_mismatch, "common_reparam needs u, v in M(1,l)");
    }
    if (u.is_homeo()) {
      return {compose(v, inverse(u)), PLMap::identity(1)};
    }
    if (v.is_homeo()) {
      return {PLMap::identity(1), compose(u, inverse(v))};
    }
    std::vector<Rat> levels;
    for (auto const& p : u.points()) {
      levels.push_back(p.v);
    }
    for (auto const& p : v.points()) {
      levels.push_back(p.v);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<Breakpoint> stair;  // (a, b) pairs
    auto push = [&](Rat a, Rat b) {
      if (stair.empty() || stair.back().t != a || stair.back().v != b) {
        stair.push_back({std::move(a), std::move(b)});
      }
    };
    for (auto const& y : levels) {
      push(u.min_preimage(y), v.min_preimage(y));
      push(u.max_preimage(y), v.max_preimage(y));
    }
    std::vector<Breakpoint> pu, pv;
    for (auto const& p : stair) {
      Rat s = (p.t + p.v) / Rat(2);
      pu.push_back({s, p.t});
      pv.push_back({s, p.v});
    }
    return {PLMap::make(1, 1, std::move(pu)), PLMap::make(1, 1, std::move(pv))};
  }

}  // namespace dpath

#endif  // DPATH_REPARAM_HPP_
