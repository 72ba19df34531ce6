#ifndef PCG_HNN_HPP_
#define PCG_HNN_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "pcg/graph.hpp"
#include "pcg/words.hpp"

namespace pcg {

  // g0 t^e1 g1 ... t^em gm relative to the stable letter t, with every chunk
  // a normal form over A \ {t}.  chunks.size() == signs.size() + 1.
  struct HnnWord {
    Vertex                  t = 0;
    std::vector<NormalForm> chunks{NormalForm()};
    std::vector<int>        signs;

    std::size_t t_length() const noexcept {
      return signs.size();
    }

    bool operator==(HnnWord const&) const = default;
  };

  // Britton reduction: pinches t^e u t^-e with u in <lk(t)>, leftmost first.
  HnnWord hnn_factorize(CommutationGraph const& g, Vertex t, Word const& w);

  // Builds the factorization as given, without pinching.
  HnnWord hnn_from_parts(CommutationGraph const&        g,
                         Vertex                         t,
                         std::vector<NormalForm> const& chunks,
                         std::vector<int> const&        signs);

  Word to_word(CommutationGraph const& g, HnnWord const& h);

  std::size_t t_length(HnnWord const& h);

  // No interior chunk of <lk(t)> sits between opposite t-letters.
  bool is_reduced_hnn(CommutationGraph const& g, HnnWord const& h);

  bool is_cyclically_reduced_hnn(CommutationGraph const& g, HnnWord const& h);

  // A letter of the free product F(D+) * <t>: either t^{±1} or a double
  // coset symbol.  A symbol is stored as its D+ representative with a sign,
  // so d and d^-1 share `rep` and differ in `sign`.
  struct SigmaLetter {
    bool       is_t = false;
    int        sign = 1;
    NormalForm rep;

    SigmaLetter inv() const {
      return SigmaLetter{is_t, -sign, rep};
    }

    auto operator<=>(SigmaLetter const&) const = default;
  };

  // Unit letters; t-runs are expanded.
  struct SigmaWord {
    std::vector<SigmaLetter> letters;

    bool operator==(SigmaWord const&) const = default;
  };

  // The symbol of one chunk: empty when the chunk lies in <lk(t)>.
  std::vector<SigmaLetter> chunk_symbol(CommutationGraph const& g,
                                        Vertex                  t,
                                        NormalForm const&       chunk);

  SigmaWord sigma(CommutationGraph const& g, HnnWord const& h);

  SigmaWord free_reduce(SigmaWord const& w);
  SigmaWord cyclically_reduce(SigmaWord const& w);
  SigmaWord inverse(SigmaWord const& w);

  // Smallest p dividing |w| with w = (prefix of length p)^{|w|/p}.
  std::size_t primitive_period(SigmaWord const& w);
  bool        is_proper_power(SigmaWord const& w);

  // lk(t) must be a clique (or empty).
  bool chunk_is_thick(CommutationGraph const& g,
                      Vertex                  t,
                      NormalForm const&       chunk);

  bool is_t_thick(CommutationGraph const& g, HnnWord const& h);

  // Also cyclically reduced, with the wrap-around product gm·g0 thick.
  bool is_cyclically_t_thick(CommutationGraph const& g, HnnWord const& h);

  // The cyclically reduced image under sigma is not a proper power.  The
  // empty image counts as a root.
  bool is_t_root(CommutationGraph const& g, HnnWord const& h);

  struct UniquePositionSplit {
    SigmaWord   a;
    SigmaWord   b;
    std::size_t rotation = 0;
  };

  // A rotation of a primitive cyclic word written a·b where neither part
  // occurs anywhere else in the cyclic word or its inverse.  When several
  // splits of a rotation qualify, the one whose first part ends in a t-letter
  // wins.
  UniquePositionSplit unique_position_factorization(SigmaWord const& root);

  std::string format_sigma(CommutationGraph const& g,
                           Vertex                  t,
                           SigmaWord const&        w);
  std::string format_hnn(CommutationGraph const& g, HnnWord const& h);

}  // namespace pcg

#endif  // PCG_HNN_HPP_
