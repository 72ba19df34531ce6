#include "pcg/words.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include "pcg/error.hpp"

namespace pcg {

  namespace {
    // Guards parse_word against runaway exponents.
    constexpr long kMaxParsedLength = 1'000'000;
  }

  Word operator*(Word const& a, Word const& b) {
    std::vector<Letter> out = a.letters();
    out.insert(out.end(), b.begin(), b.end());
    return Word(std::move(out));
  }

  Word inverse(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
      out.push_back(it->inv());
    }
    return Word(std::move(out));
  }

  Word power(Word const& w, int k) {
    Word base = k < 0 ? inverse(w) : w;
    Word out;
    for (int i = 0; i < std::abs(k); ++i) {
      out = out * base;
    }
    return out;
  }

  bool shortlex_less(Word const& a, Word const& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a.letters() < b.letters();
  }

  VertexSet letter_support(Word const& w) {
    VertexSet s = 0;
    for (Letter x : w) {
      s |= bit(x.vertex());
    }
    return s;
  }

  Word parse_word(std::string_view text, CommutationGraph const& g) {
    std::istringstream       in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) {
      tokens.push_back(tok);
    }
    if (tokens.empty()) {
      throw Error(ErrorCode::SyntaxError, "empty word (write 1 for identity)");
    }
    if (tokens.size() == 1 && tokens[0] == "1") {
      return Word();
    }
    std::vector<Letter> out;
    for (auto const& tok : tokens) {
      if (tok == "1") {
        throw Error(ErrorCode::SyntaxError, "`1` must appear alone");
      }
      auto        caret = tok.find('^');
      std::string name = tok.substr(0, caret);
      long        exponent = 1;
      if (caret != std::string::npos) {
        std::string_view e(tok);
        e.remove_prefix(caret + 1);
        if (!e.empty() && e.front() == '+') {
          e.remove_prefix(1);
        }
        auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
        if (e.empty() || ec != std::errc() || ptr != e.data() + e.size()) {
          throw Error(ErrorCode::SyntaxError, "bad exponent in '" + tok + "'");
        }
        if (exponent == 0) {
          throw Error(ErrorCode::ZeroExponent, tok);
        }
      }
      if (name.empty()) {
        throw Error(ErrorCode::SyntaxError, "missing generator in '" + tok + "'");
      }
      auto v = g.find(name);
      if (!v) {
        throw Error(ErrorCode::UnknownGenerator, name);
      }
      if (std::abs(exponent) + static_cast<long>(out.size()) > kMaxParsedLength) {
        throw Error(ErrorCode::SyntaxError, "word too long");
      }
      for (long i = 0; i < std::abs(exponent); ++i) {
        out.push_back(Letter::make(*v, exponent < 0));
      }
    }
    return Word(std::move(out));
  }

  std::string format_word(CommutationGraph const& g, Word const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) {
        ++j;
      }
      int k = static_cast<int>(j - i) * w[i].sign();
      if (!out.empty()) {
        out += ' ';
      }
      out += g.name(w[i].vertex());
      if (k != 1) {
        out += "^" + std::to_string(k);
      }
      i = j;
    }
    return out;
  }

  std::vector<Letter> reduce_letters(CommutationGraph const&    g,
                                     std::vector<Letter> const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter x : w) {
      bool cancelled = false;
      for (auto j = out.size(); j-- > 0;) {
        Letter y = out[j];
        if (y.vertex() == x.vertex()) {
          if (y == x.inv()) {
            out.erase(out.begin() + j);
            cancelled = true;
          }
          break;
        }
        if (!commute(g, x, y)) {
          break;
        }
      }
      if (!cancelled) {
        out.push_back(x);
      }
    }
    return out;
  }

  std::vector<Letter> lex_first(CommutationGraph const&    g,
                                std::vector<Letter> const& w) {
    std::vector<Letter> rest = w;
    std::vector<Letter> out;
    out.reserve(w.size());
    while (!rest.empty()) {
      std::size_t best = 0;
      VertexSet   before = 0;
      bool        found = false;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        Vertex v = rest[i].vertex();
        if (subset_of(before, g.neighbours(v))
            && (!found || rest[i] < rest[best])) {
          best = i;
          found = true;
        }
        before |= bit(v);
      }
      out.push_back(rest[best]);
      rest.erase(rest.begin() + best);
    }
    return out;
  }

  NormalForm minimal_form(CommutationGraph const& g, Word const& w) {
    return NormalForm(Word(lex_first(g, reduce_letters(g, w.letters()))));
  }

  bool equal(CommutationGraph const& g, Word const& a, Word const& b) {
    return minimal_form(g, a) == minimal_form(g, b);
  }

  VertexSet support(CommutationGraph const& g, Word const& w) {
    return letter_support(minimal_form(g, w).word());
  }

  namespace {
    // Positions of occurrences that commute past everything before them.
    std::vector<std::size_t> front_positions(CommutationGraph const&    g,
                                             std::vector<Letter> const& w) {
      std::vector<std::size_t> out;
      VertexSet                before = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        Vertex v = w[i].vertex();
        if (subset_of(before, g.neighbours(v))) {
          out.push_back(i);
        }
        before |= bit(v);
      }
      return out;
    }

    std::vector<std::size_t> back_positions(CommutationGraph const&    g,
                                            std::vector<Letter> const& w) {
      std::vector<std::size_t> out;
      VertexSet                after = 0;
      for (std::size_t i = w.size(); i-- > 0;) {
        Vertex v = w[i].vertex();
        if (subset_of(after, g.neighbours(v))) {
          out.push_back(i);
        }
        after |= bit(v);
      }
      std::reverse(out.begin(), out.end());
      return out;
    }
  }  // namespace

  std::vector<Letter> left_divisors(CommutationGraph const& g,
                                    NormalForm const&       w) {
    std::vector<Letter> out;
    for (auto i : front_positions(g, w.word().letters())) {
      out.push_back(w.word()[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Letter> right_divisors(CommutationGraph const& g,
                                     NormalForm const&       w) {
    std::vector<Letter> out;
    for (auto i : back_positions(g, w.word().letters())) {
      out.push_back(w.word()[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  CyclicDecomposition cyclic_reduce(CommutationGraph const& g, Word const& w) {
    std::vector<Letter> v = minimal_form(g, w).word().letters();
    std::vector<Letter> u_rev;  // u read right to left
    while (true) {
      auto fronts = front_positions(g, v);
      auto backs = back_positions(g, v);
      std::size_t lo = v.size(), hi = v.size();
      for (auto i : fronts) {
        for (auto j : backs) {
          if (i != j && v[j] == v[i].inv() && (lo == v.size() || v[i] < v[lo])) {
            lo = i;
            hi = j;
          }
        }
      }
      if (lo == v.size()) {
        break;
      }
      // v = y v' y^-1, so u grows on the left by y^-1.
      u_rev.push_back(v[lo].inv());
      v.erase(v.begin() + std::max(lo, hi));
      v.erase(v.begin() + std::min(lo, hi));
    }
    std::reverse(u_rev.begin(), u_rev.end());
    return {minimal_form(g, Word(u_rev)), minimal_form(g, Word(v))};
  }

  bool is_cyclically_minimal(CommutationGraph const& g, Word const& w) {
    auto nf = minimal_form(g, w);
    auto lefts = left_divisors(g, nf);
    auto rights = right_divisors(g, nf);
    for (Letter y : lefts) {
      if (std::binary_search(rights.begin(), rights.end(), y.inv())) {
        return false;
      }
    }
    return true;
  }

  std::vector<NormalForm> block_decomposition(CommutationGraph const& g,
                                              NormalForm const&       v) {
    if (!is_cyclically_minimal(g, v.word())) {
      throw Error(ErrorCode::NotCyclicallyMinimal, format_word(g, v));
    }
    std::vector<NormalForm> out;
    for (VertexSet comp :
         complement_components(g, letter_support(v.word()))) {
      std::vector<Letter> part;
      for (Letter x : v.word()) {
        if (contains(comp, x.vertex())) {
          part.push_back(x);
        }
      }
      out.push_back(minimal_form(g, Word(part)));
    }
    return out;
  }

  bool conjugate_test(CommutationGraph const& g,
                      Word const&             a,
                      Word const&             b) {
    auto ca = cyclic_reduce(g, a).core;
    auto cb = cyclic_reduce(g, b).core;
    if (ca.length() != cb.length()) {
      return false;
    }
    auto sorted = [](Word const& w) {
      auto l = w.letters();
      std::sort(l.begin(), l.end());
      return l;
    };
    if (sorted(ca.word()) != sorted(cb.word())) {
      return false;
    }
    // Closure of the core under moving a left divisor to the back.
    std::set<NormalForm>   seen{ca};
    std::deque<NormalForm> queue{ca};
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      if (cur == cb) {
        return true;
      }
      auto const& l = cur.word().letters();
      for (auto i : front_positions(g, l)) {
        std::vector<Letter> next = l;
        next.erase(next.begin() + i);
        next.push_back(l[i]);
        auto nf = minimal_form(g, Word(next));
        if (seen.insert(nf).second) {
          queue.push_back(nf);
        }
      }
    }
    return false;
  }

}  // namespace pcg
