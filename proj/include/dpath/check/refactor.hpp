// Random re-factorizations of an execution path into raw Moore compositions.
//
// The path's reparametrization is cut at integer levels (with a random choice
// of cut rule, which matters when it stops at a state), and runs of steps
// that form the boundary image of a higher cell are randomly replaced by a
// single segment through that boundary point.

#ifndef DPATH_CHECK_REFACTOR_HPP_
#define DPATH_CHECK_REFACTOR_HPP_

#include <optional>
#include <vector>

#include "../complex.hpp"
#include "../paths.hpp"
#include "random.hpp"

namespace dpath::check {

  // Square root of a nonnegative rational, if it is rational.
  inline std::optional<Rat> rational_sqrt(Rat const& q) {
    if (q < Rat(0)) {
      return std::nullopt;
    }
    mpz_class n = q.raw().get_num(), d = q.raw().get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t())
        || !mpz_perfect_square_p(d.get_mpz_t())) {
      return std::nullopt;
    }
    return Rat(mpq_class(sqrt(n), sqrt(d)));
  }

  // Boundary points of cells of cx whose image starts with step `st`.
  inline std::vector<std::pair<std::string, DiskPoint>>
  boundary_candidates(GlobularComplex const& cx, Step const& st) {
    std::vector<std::pair<std::string, DiskPoint>> out;
    for (auto const& c : cx.cells()) {
      if (c.disk_dim == 1) {
        out.push_back({c.id, DiskPoint{-1}});
        out.push_back({c.id, DiskPoint{1}});
      } else if (std::holds_alternative<attach::Psi>(c.attach)) {
        auto const& a = std::get<attach::Psi>(c.attach);
        out.push_back({c.id, DiskPoint{1, 0}});
        out.push_back({c.id, DiskPoint{-1, 0}});
        if ((st.cell == a.upper || st.cell == a.lower) && st.z.dim() == 1) {
          Rat const& x = st.z.coords[0];
          if (auto y = rational_sqrt(Rat(1) - x * x); y && *y != Rat(0)) {
            out.push_back({c.id, DiskPoint{x, st.cell == a.upper ? *y : -*y}});
          }
        }
      } else if (c.disk_dim >= 2) {
        std::vector<Rat> e(c.disk_dim, Rat(0));
        e[0] = 1;
        out.push_back({c.id, DiskPoint(e)});
      }
    }
    return out;
  }

  // phi : [0, W] -> [0, 1] with img o phi == block (block : [0, W] -> [0, k]),
  // if one exists.
  inline std::optional<PLMap> lift_block(PLMap const& block, PLMap const& img) {
    Rat   w = block.dom_len();
    Rat   k = block.cod_len();
    PLMap b = compose(compose(PLMap::linear(1, w), block), PLMap::linear(k, 1));
    PLMap r = compose(img, PLMap::linear(k, 1));
    auto  psi = factors_through(b, r);
    if (!psi) {
      return std::nullopt;
    }
    return compose(PLMap::linear(w, 1), *psi);
  }

  inline std::vector<RawSegment> random_refactor(GlobularComplex const& cx,
                                                 ExecutionPath const&   p,
                                                 Gen&                   gen) {
    auto rule  = gen.coin() ? CutRule::min_preimage : CutRule::max_preimage;
    auto parts = raw_segments(p, rule);
    auto const& steps = p.base().steps;
    std::vector<RawSegment> out;
    size_t                  i = 0;
    while (i < parts.size()) {
      if (gen.coin(1, 2)) {
        auto cands = boundary_candidates(cx, steps[i]);
        std::vector<std::pair<RawSegment, size_t>> lifts;
        for (auto const& [cell, z] : cands) {
          BoundaryImage img = cx.resolve_boundary(cell, z);
          size_t        k   = img.base.length();
          if (i + k > steps.size()
              || !std::equal(img.base.steps.begin(), img.base.steps.end(),
                             steps.begin() + i)) {
            continue;
          }
          std::vector<PLMap> blocks;
          for (size_t j = i; j < i + k; ++j) {
            blocks.push_back(parts[j].phi);
          }
          PLMap block = tensor(blocks);
          if (auto phi = lift_block(block, img.reparam)) {
            if (cx.flavor() == Flavor::G && !phi->is_homeo()) {
              continue;
            }
            Rat w = phi->dom_len();
            lifts.push_back({RawSegment{cell, z, std::move(*phi), w}, k});
          }
        }
        if (!lifts.empty()) {
          auto& pick = lifts[gen.integer(0, lifts.size() - 1)];
          out.push_back(std::move(pick.first));
          i += pick.second;
          continue;
        }
      }
      out.push_back(std::move(parts[i]));
      ++i;
    }
    return out;
  }

}  // namespace dpath::check

#endif  // DPATH_CHECK_REFACTOR_HPP_
