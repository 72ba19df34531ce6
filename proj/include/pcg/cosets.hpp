#ifndef PCG_COSETS_HPP_
#define PCG_COSETS_HPP_

#include "pcg/graph.hpp"
#include "pcg/words.hpp"

namespace pcg {

  // The canonical parabolic subgroup <Y> of the group on `graph`.
  struct ParabolicContext {
    CommutationGraph const* graph;
    VertexSet               subset;

    ParabolicContext(CommutationGraph const& g, VertexSet y);
  };

  // w = left · core · right with left, right in <Y> and lengths adding.
  struct DoubleCosetRep {
    NormalForm left;
    NormalForm core;
    NormalForm right;
  };

  bool parabolic_member(ParabolicContext const& ctx, Word const& w);

  // Maximal left divisor in <Y> first, then the maximal right divisor of
  // what remains.
  DoubleCosetRep strip_divisors(ParabolicContext const& ctx, Word const& w);

  // The unique minimal-length element of <Y> w <Y>.
  NormalForm double_coset_rep(ParabolicContext const& ctx, Word const& w);

  // Membership of w in {x : x^-1 <B> x ∩ <B> = 1} for a nonempty clique B.
  // Elements of <B> are never members.
  bool in_maln(CommutationGraph const& g, VertexSet b, Word const& w);

  // Same test on a minimal form that is already known, skipping the clique
  // check.
  bool in_maln_unchecked(CommutationGraph const& g,
                         VertexSet               b,
                         NormalForm const&       w);

}  // namespace pcg

#endif  // PCG_COSETS_HPP_
