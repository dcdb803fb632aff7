// The small category P^{u,v}(S) indexing the path space of a cell attached
// along a boundary from u to v.
//
// Objects are chains ((u_0, e_1, u_1), ..., (u_{n-1}, e_n, u_n)) of states of
// S with e_i in {0, 1}, where e_i = 1 forces (u_{i-1}, u_i) = (u, v). The
// composition map c_i glues triples i and i+1 when both have e = 0; the
// inclusion map I_i turns a triple (u, 0, v) into (u, 1, v). Indices are
// 1-based as in the usual presentation.

#ifndef DPATH_REEDY_HPP_
#define DPATH_REEDY_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace dpath {

  template <typename S>
  struct Triple {
    S   from;
    int eps = 0;
    S   to;

    friend bool operator==(Triple const&, Triple const&) = default;
    friend auto operator<=>(Triple const&, Triple const&) = default;
  };

  template <typename S>
  struct ReedyObject {
    std::vector<Triple<S>> triples;
    std::pair<S, S>        marked;

    friend bool operator==(ReedyObject const&, ReedyObject const&) = default;
    friend auto operator<=>(ReedyObject const&, ReedyObject const&) = default;
  };

  template <typename S>
  bool is_valid(ReedyObject<S> const& o) {
    if (o.triples.empty()) {
      return false;
    }
    for (size_t i = 0; i < o.triples.size(); ++i) {
      auto const& t = o.triples[i];
      if (t.eps != 0 && t.eps != 1) {
        return false;
      }
      if (t.eps == 1 && std::pair(t.from, t.to) != o.marked) {
        return false;
      }
      if (i > 0 && o.triples[i - 1].to != t.from) {
        return false;
      }
    }
    return true;
  }

  // n + sum of the e_i.
  template <typename S>
  int reedy_degree(ReedyObject<S> const& o) {
    int d = static_cast<int>(o.triples.size());
    for (auto const& t : o.triples) {
      d += t.eps;
    }
    return d;
  }

  enum class ArrowKind { composition, inclusion };

  struct Generator {
    ArrowKind kind;
    size_t    index;  // 1-based

    std::string str() const {
      return (kind == ArrowKind::composition ? "c" : "I") + std::to_string(index);
    }

    friend bool operator==(Generator const&, Generator const&) = default;
  };

  // Target of g applied to o, if g is defined on o.
  template <typename S>
  std::optional<ReedyObject<S>> apply_generator(Generator const& g, ReedyObject<S> const& o) {
    size_t n = o.triples.size();
    size_t i = g.index;
    if (g.kind == ArrowKind::composition) {
      if (i < 1 || i + 1 > n) {
        return std::nullopt;
      }
      auto const& a = o.triples[i - 1];
      auto const& b = o.triples[i];
      if (a.eps != 0 || b.eps != 0) {
        return std::nullopt;
      }
      ReedyObject<S> r{{}, o.marked};
      for (size_t k = 0; k < n; ++k) {
        if (k == i - 1) {
          r.triples.push_back({a.from, 0, b.to});
        } else if (k != i) {
          r.triples.push_back(o.triples[k]);
        }
      }
      return r;
    }
    if (i < 1 || i > n) {
      return std::nullopt;
    }
    auto const& t = o.triples[i - 1];
    if (t.eps != 0 || std::pair(t.from, t.to) != o.marked) {
      return std::nullopt;
    }
    ReedyObject<S> r = o;
    r.triples[i - 1].eps = 1;
    return r;
  }

  template <typename S>
  struct Arrow {
    Generator      gen;
    ReedyObject<S> target;
  };

  template <typename S>
  std::vector<Arrow<S>> reedy_arrows(ReedyObject<S> const& o) {
    std::vector<Arrow<S>> out;
    for (size_t i = 1; i + 1 <= o.triples.size(); ++i) {
      if (auto t = apply_generator(Generator{ArrowKind::composition, i}, o)) {
        out.push_back(Arrow<S>{Generator{ArrowKind::composition, i}, std::move(*t)});
      }
    }
    for (size_t i = 1; i <= o.triples.size(); ++i) {
      if (auto t = apply_generator(Generator{ArrowKind::inclusion, i}, o)) {
        out.push_back(Arrow<S>{Generator{ArrowKind::inclusion, i}, std::move(*t)});
      }
    }
    return out;
  }

  // All valid objects over `states` with the given marked pair and degree at
  // most max_degree.
  template <typename S>
  std::vector<ReedyObject<S>> reedy_objects(std::vector<S> const& states,
                                            std::pair<S, S> const& marked,
                                            int                    max_degree) {
    std::vector<ReedyObject<S>> out;
    ReedyObject<S>              cur{{}, marked};
    std::function<void(S const&, int)> grow = [&](S const& at, int deg) {
      for (auto const& s : states) {
        for (int e = 0; e <= 1; ++e) {
          if (deg + 1 + e > max_degree) {
            continue;
          }
          if (e == 1 && std::pair(at, s) != marked) {
            continue;
          }
          cur.triples.push_back({at, e, s});
          out.push_back(cur);
          grow(s, deg + 1 + e);
          cur.triples.pop_back();
        }
      }
    };
    for (auto const& s : states) {
      grow(s, 0);
    }
    return out;
  }

  // Relation groups, writing x.y for "y first, then x":
  //   A: c_i . c_j = c_{j-1} . c_i            (i < j)
  //   B: I_i . I_j = I_j . I_i                (i != j)
  //   C: c_i . I_j = I_{j-1} . c_i            (j >= i + 2)
  //      c_i . I_j = I_j . c_i                (j <= i - 1)
  // Each relation is checked in both directions: whenever one side is
  // defined on an object, so is the other, with the same target.
  struct RelationAudit {
    size_t                   objects     = 0;
    size_t                   arrows      = 0;
    size_t                   checks_a    = 0;
    size_t                   checks_b    = 0;
    size_t                   checks_c    = 0;
    size_t                   degree_checks = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
  };

  template <typename S>
  RelationAudit audit_relations(std::vector<S> const& states,
                                std::pair<S, S> const& marked,
                                int                    max_degree,
                                std::function<std::string(ReedyObject<S> const&)> show) {
    RelationAudit a;
    auto          objs = reedy_objects(states, marked, max_degree);
    a.objects          = objs.size();
    constexpr auto C   = ArrowKind::composition;
    constexpr auto I   = ArrowKind::inclusion;

    auto then = [](ReedyObject<S> const& o, Generator first, Generator second)
        -> std::optional<ReedyObject<S>> {
      auto m = apply_generator(first, o);
      return m ? apply_generator(second, *m) : std::nullopt;
    };
    // lhs = y then x; rhs = y' then x'
    auto check = [&](size_t& counter, ReedyObject<S> const& o, Generator y,
                     Generator x, Generator y2, Generator x2) {
      auto l = then(o, y, x);
      if (!l) {
        return;
      }
      ++counter;
      auto r = then(o, y2, x2);
      if (!r || *r != *l) {
        a.failures.push_back(x.str() + "." + y.str() + " != " + x2.str() + "."
                             + y2.str() + " on " + show(o));
      }
    };

    for (auto const& o : objs) {
      size_t n = o.triples.size();
      for (auto const& arr : reedy_arrows(o)) {
        ++a.arrows;
        ++a.degree_checks;
        int expect = reedy_degree(o) + (arr.gen.kind == I ? 1 : -1);
        if (reedy_degree(arr.target) != expect || !is_valid(arr.target)) {
          a.failures.push_back("degree of " + arr.gen.str() + " on " + show(o));
        }
      }
      for (size_t i = 1; i <= n; ++i) {
        for (size_t j = 1; j <= n; ++j) {
          // A, both directions
          if (i < j) {
            check(a.checks_a, o, {C, j}, {C, i}, {C, i}, {C, j - 1});
            check(a.checks_a, o, {C, i}, {C, j - 1}, {C, j}, {C, i});
          }
          // B
          if (i != j) {
            check(a.checks_b, o, {I, j}, {I, i}, {I, i}, {I, j});
          }
          // C, both directions
          if (j >= i + 2) {
            check(a.checks_c, o, {I, j}, {C, i}, {C, i}, {I, j - 1});
            check(a.checks_c, o, {C, i}, {I, j - 1}, {I, j}, {C, i});
          }
          if (j + 1 <= i) {
            check(a.checks_c, o, {I, j}, {C, i}, {C, i}, {I, j});
            check(a.checks_c, o, {C, i}, {I, j}, {I, j}, {C, i});
          }
        }
      }
    }
    return a;
  }

}  // namespace dpath

#endif  // DPATH_REEDY_HPP_
