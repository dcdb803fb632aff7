// Seeded generators of random maps and paths for property checks.
//
// Uses mt19937_64, whose output sequence is fixed by the standard, and maps
// raw draws to ranges by hand so results do not depend on the library's
// distribution implementations.

#ifndef DPATH_CHECK_RANDOM_HPP_
#define DPATH_CHECK_RANDOM_HPP_

#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "../complex.hpp"
#include "../paths.hpp"
#include "../rat.hpp"
#include "../reparam.hpp"

namespace dpath::check {

  class Gen {
   public:
    explicit Gen(uint64_t seed) : _rng(seed) {}

    // Uniform in [lo, hi].
    long integer(long lo, long hi) {
      auto span = static_cast<uint64_t>(hi - lo + 1);
      return lo + static_cast<long>(_rng() % span);
    }

    bool coin(int num = 1, int den = 2) { return integer(1, den) <= num; }

    // Rational in the open interval (0, 1) with denominator at most `den`.
    Rat unit_open(long den = 12) {
      long q = integer(2, den);
      return Rat(integer(1, q - 1), q);
    }

    // Random map in M(dom, cod) with up to `pieces` pieces; flats appear
    // only if allow_flats.
    PLMap map(Rat const& dom, Rat const& cod, int pieces, bool allow_flats) {
      int                k = static_cast<int>(integer(1, pieces));
      std::set<Rat>      ts_set, vs_set;
      while (static_cast<int>(ts_set.size()) < k - 1) {
        ts_set.insert(dom * unit_open());
      }
      std::vector<Rat> ts(ts_set.begin(), ts_set.end());
      std::vector<Rat> vs;
      if (allow_flats) {
        std::multiset<Rat> raw;
        for (int i = 0; i < k - 1; ++i) {
          raw.insert(coin(1, 3) && !raw.empty() ? *raw.begin()
                                                : cod * unit_open());
        }
        vs.assign(raw.begin(), raw.end());
        // sometimes flat at an end
        if (!vs.empty() && coin(1, 4)) {
          vs.front() = 0;
        }
        if (!vs.empty() && coin(1, 4)) {
          vs.back() = cod;
        }
      } else {
        while (static_cast<int>(vs_set.size()) < k - 1) {
          vs_set.insert(cod * unit_open());
        }
        vs.assign(vs_set.begin(), vs_set.end());
      }
      std::vector<Breakpoint> pts{{0, 0}};
      for (int i = 0; i < k - 1; ++i) {
        pts.push_back({ts[i], vs[i]});
      }
      pts.push_back({dom, cod});
      return PLMap::make(dom, cod, std::move(pts));
    }

    PLMap m11(int pieces = 5) { return map(1, 1, pieces, true); }
    PLMap g11(int pieces = 5) { return map(1, 1, pieces, false); }

    Rat length() { return Rat(integer(1, 8), integer(1, 4)); }

    // Random point strictly inside D^dim. In dimension 1 the coordinate is
    // sometimes the first coordinate of a rational point of S^1, so that
    // such points can later be lifted to the boundary of a 2-disk.
    DiskPoint interior(size_t dim) {
      static constexpr long pyth[][2] = {{3, 5}, {4, 5}, {5, 13}, {12, 13},
                                         {8, 17}, {15, 17}, {0, 1}};
      if (dim == 1 && coin(1, 3)) {
        auto const& q = pyth[integer(0, std::size(pyth) - 1)];
        return DiskPoint{Rat(coin() ? q[0] : -q[0], q[1])};
      }
      for (;;) {
        std::vector<Rat> c;
        for (size_t i = 0; i < dim; ++i) {
          long q = integer(1, 12);
          c.push_back(Rat(integer(-q + 1, q - 1), q));
        }
        DiskPoint z(std::move(c));
        if (z.is_interior()) {
          return z;
        }
      }
    }

    // Random walk of at most max_len steps from a random state with an
    // outgoing cell.
    NaturalPath natural_path(GlobularComplex const& cx, size_t max_len) {
      std::vector<GlobularCell const*> starts;
      for (auto const& c : cx.cells()) {
        starts.push_back(&c);
      }
      if (starts.empty()) {
        fail(Errc::invalid_argument, "complex has no cells");
      }
      GlobularCell const* c   = starts[integer(0, starts.size() - 1)];
      size_t              len = integer(1, max_len);
      NaturalPath         p;
      for (;;) {
        p.steps.push_back({c->id, interior(c->disk_dim)});
        if (p.steps.size() == len) {
          break;
        }
        std::vector<GlobularCell const*> next;
        for (auto const& d : cx.cells()) {
          if (d.src == c->tgt) {
            next.push_back(&d);
          }
        }
        if (next.empty()) {
          break;
        }
        c = next[integer(0, next.size() - 1)];
      }
      return p;
    }

    ExecutionPath path(GlobularComplex const& cx, size_t max_len) {
      NaturalPath base = natural_path(cx, max_len);
      Rat         n(long(base.length()));
      PLMap       phi = map(1, n, 6, cx.flavor() == Flavor::M);
      return ExecutionPath::make(cx, std::move(base), std::move(phi));
    }

    // Random path starting at a given state, or nullopt if none exists.
    std::optional<ExecutionPath> path_from(GlobularComplex const& cx,
                                           std::string const&     state,
                                           size_t                 max_len) {
      for (int attempt = 0; attempt < 200; ++attempt) {
        auto p = path(cx, max_len);
        if (cx.src(p.base()) == state) {
          return p;
        }
      }
      return std::nullopt;
    }

    std::mt19937_64& engine() { return _rng; }

   private:
    std::mt19937_64 _rng;
  };

}  // namespace dpath::check

#endif  // DPATH_CHECK_RANDOM_HPP_
