#ifndef PCG_WORDS_HPP_
#define PCG_WORDS_HPP_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/graph.hpp"

namespace pcg {

  // A generator or its inverse.  Codes order letters as a < a^-1 < b < ...
  // following the declared vertex order; that order drives shortlex.
  struct Letter {
    int code = 0;

    static constexpr Letter make(Vertex v, bool inverse = false) noexcept {
      return Letter{2 * v + (inverse ? 1 : 0)};
    }

    constexpr Vertex vertex() const noexcept {
      return code >> 1;
    }

    constexpr bool inverse() const noexcept {
      return (code & 1) != 0;
    }

    constexpr int sign() const noexcept {
      return inverse() ? -1 : 1;
    }

    constexpr Letter inv() const noexcept {
      return Letter{code ^ 1};
    }

    auto operator<=>(Letter const&) const = default;
  };

  // Distinct letters commute in the group iff their vertices are adjacent.
  // Letters on the same vertex never swap.
  inline bool commute(CommutationGraph const& g, Letter x, Letter y) noexcept {
    return g.adjacent(x.vertex(), y.vertex());
  }

  // A sequence of letters; the empty word is the identity.  Words do not own
  // a graph: every operation takes the governing graph explicitly.
  class Word {
   public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : _letters(std::move(letters)) {}

    std::vector<Letter> const& letters() const noexcept {
      return _letters;
    }

    std::size_t size() const noexcept {
      return _letters.size();
    }

    bool empty() const noexcept {
      return _letters.empty();
    }

    Letter operator[](std::size_t i) const {
      return _letters[i];
    }

    auto begin() const noexcept {
      return _letters.begin();
    }

    auto end() const noexcept {
      return _letters.end();
    }

    auto operator<=>(Word const&) const = default;

   private:
    std::vector<Letter> _letters;
  };

  Word operator*(Word const& a, Word const& b);
  Word inverse(Word const& w);
  Word power(Word const& w, int k);

  // Shortlex comparison (length first, then letter codes).
  bool shortlex_less(Word const& a, Word const& b);

  // Vertices that occur in the word as written.
  VertexSet letter_support(Word const& w);

  // The shortlex-least geodesic representative of a group element.  Only
  // minimal_form creates these, so equal elements compare equal as words.
  class NormalForm {
   public:
    NormalForm() = default;

    Word const& word() const noexcept {
      return _word;
    }

    std::size_t length() const noexcept {
      return _word.size();
    }

    bool is_identity() const noexcept {
      return _word.empty();
    }

    auto operator<=>(NormalForm const&) const = default;

   private:
    friend NormalForm minimal_form(CommutationGraph const&, Word const&);
    explicit NormalForm(Word w) : _word(std::move(w)) {}
    Word _word;
  };

  struct CyclicDecomposition {
    NormalForm conjugator;  // u
    NormalForm core;        // v, with w = u^-1 v u
  };

  // Tokens `name` or `name^k` (k != 0) separated by whitespace; a lone `1`
  // is the identity.
  Word parse_word(std::string_view text, CommutationGraph const& g);

  // Groups runs of one signed letter as name^k; the identity prints as `1`.
  std::string format_word(CommutationGraph const& g, Word const& w);

  inline std::string format_word(CommutationGraph const& g,
                                 NormalForm const&       w) {
    return format_word(g, w.word());
  }

  NormalForm minimal_form(CommutationGraph const& g, Word const& w);

  inline NormalForm minimal_form(CommutationGraph const& g,
                                 NormalForm const&       w) {
    return minimal_form(g, w.word());
  }

  // Removes cancellable pairs x u x^-1 (x commuting with u) until geodesic.
  // Does not reorder; the result has minimal length.
  std::vector<Letter> reduce_letters(CommutationGraph const&    g,
                                     std::vector<Letter> const& w);

  // Lexicographically least reordering of a word by commutations.
  std::vector<Letter> lex_first(CommutationGraph const&    g,
                                std::vector<Letter> const& w);

  bool equal(CommutationGraph const& g, Word const& a, Word const& b);

  VertexSet support(CommutationGraph const& g, Word const& w);

  // Letters y such that the element equals y·v with lengths adding, i.e. the
  // occurrence can be commuted to the front of a minimal form.
  std::vector<Letter> left_divisors(CommutationGraph const& g,
                                    NormalForm const&       w);
  std::vector<Letter> right_divisors(CommutationGraph const& g,
                                     NormalForm const&       w);

  CyclicDecomposition cyclic_reduce(CommutationGraph const& g, Word const& w);

  bool is_cyclically_minimal(CommutationGraph const& g, Word const& w);

  // Factors of a cyclically minimal element along the complement components
  // of its support, ordered by least vertex.
  std::vector<NormalForm> block_decomposition(CommutationGraph const& g,
                                              NormalForm const&       v);

  bool conjugate_test(CommutationGraph const& g,
                      Word const&             a,
                      Word const&             b);

}  // namespace pcg

#endif  // PCG_WORDS_HPP_
