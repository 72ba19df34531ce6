#include "pcg/cosets.hpp"

#include "pcg/error.hpp"

namespace pcg {

  ParabolicContext::ParabolicContext(CommutationGraph const& g, VertexSet y)
      : graph(&g), subset(y) {
    if (!subset_of(y, g.all())) {
      throw Error(ErrorCode::UnknownVertex, "subset exceeds the graph");
    }
  }

  bool parabolic_member(ParabolicContext const& ctx, Word const& w) {
    return subset_of(support(*ctx.graph, w), ctx.subset);
  }

  DoubleCosetRep strip_divisors(ParabolicContext const& ctx, Word const& w) {
    auto const& g = *ctx.graph;
    auto        nf = minimal_form(g, w);
    auto const& l = nf.word().letters();

    // An occurrence joins the left divisor when it lies in Y and every
    // earlier occurrence it cannot pass has already joined.
    std::vector<Letter> left, middle;
    VertexSet           blocked = 0;
    for (Letter x : l) {
      Vertex v = x.vertex();
      if (contains(ctx.subset, v) && subset_of(blocked, g.neighbours(v))) {
        left.push_back(x);
      } else {
        middle.push_back(x);
        blocked |= bit(v);
      }
    }
    std::vector<Letter> right_rev, core_rev;
    blocked = 0;
    for (auto it = middle.rbegin(); it != middle.rend(); ++it) {
      Vertex v = it->vertex();
      if (contains(ctx.subset, v) && subset_of(blocked, g.neighbours(v))) {
        right_rev.push_back(*it);
      } else {
        core_rev.push_back(*it);
        blocked |= bit(v);
      }
    }
    std::vector<Letter> right(right_rev.rbegin(), right_rev.rend());
    std::vector<Letter> core(core_rev.rbegin(), core_rev.rend());
    return {minimal_form(g, Word(left)),
            minimal_form(g, Word(core)),
            minimal_form(g, Word(right))};
  }

  NormalForm double_coset_rep(ParabolicContext const& ctx, Word const& w) {
    return strip_divisors(ctx, w).core;
  }

  bool in_maln_unchecked(CommutationGraph const& g,
                         VertexSet               b,
                         NormalForm const&       w) {
    VertexSet s = letter_support(w.word());
    if (subset_of(s, b)) {
      return false;
    }
    VertexSet outside = s & ~b;
    for (Vertex y : members(b)) {
      // Need some x in supp(w) \ B that does not commute with y.
      if (subset_of(outside, g.neighbours(y))) {
        return false;
      }
    }
    return true;
  }

  bool in_maln(CommutationGraph const& g, VertexSet b, Word const& w) {
    if (b == 0 || !is_clique(g, b)) {
      throw Error(ErrorCode::NotAClique, g.names_of(b));
    }
    return in_maln_unchecked(g, b, minimal_form(g, w));
  }

}  // namespace pcg
