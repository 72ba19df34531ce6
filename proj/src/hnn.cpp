#include "pcg/hnn.hpp"

#include <algorithm>
#include <optional>

#include "pcg/cosets.hpp"
#include "pcg/error.hpp"

namespace pcg {

  namespace {
    void check_t(CommutationGraph const& g, Vertex t) {
      if (t < 0 || t >= g.size()) {
        throw Error(ErrorCode::UnknownVertex, std::to_string(t));
      }
    }

    bool in_link_subgroup(CommutationGraph const& g,
                          Vertex                  t,
                          NormalForm const&       chunk) {
      return subset_of(letter_support(chunk.word()), g.neighbours(t));
    }
  }  // namespace

  HnnWord hnn_factorize(CommutationGraph const& g, Vertex t, Word const& w) {
    check_t(g, t);
    std::vector<std::vector<Letter>> done;
    std::vector<int>                 signs;
    std::vector<Letter>              cur;
    for (Letter x : w) {
      if (x.vertex() != t) {
        cur.push_back(x);
        continue;
      }
      int eps = x.sign();
      if (!signs.empty() && signs.back() == -eps
          && in_link_subgroup(g, t, minimal_form(g, Word(cur)))) {
        std::vector<Letter> merged = std::move(done.back());
        merged.insert(merged.end(), cur.begin(), cur.end());
        cur = std::move(merged);
        done.pop_back();
        signs.pop_back();
      } else {
        done.push_back(std::move(cur));
        cur.clear();
        signs.push_back(eps);
      }
    }
    done.push_back(std::move(cur));
    HnnWord h;
    h.t = t;
    h.signs = std::move(signs);
    h.chunks.clear();
    for (auto const& c : done) {
      h.chunks.push_back(minimal_form(g, Word(c)));
    }
    return h;
  }

  HnnWord hnn_from_parts(CommutationGraph const&        g,
                         Vertex                         t,
                         std::vector<NormalForm> const& chunks,
                         std::vector<int> const&        signs) {
    check_t(g, t);
    if (chunks.size() != signs.size() + 1) {
      throw Error(ErrorCode::BadParameter,
                  "a factorization needs one more chunk than t-letters");
    }
    for (auto const& c : chunks) {
      if (contains(letter_support(c.word()), t)) {
        throw Error(ErrorCode::BadParameter, "chunk contains the stable letter");
      }
    }
    for (int e : signs) {
      if (e != 1 && e != -1) {
        throw Error(ErrorCode::BadParameter, "t-exponents must be ±1");
      }
    }
    return HnnWord{t, chunks, signs};
  }

  Word to_word(CommutationGraph const&, HnnWord const& h) {
    std::vector<Letter> out = h.chunks[0].word().letters();
    for (std::size_t i = 0; i < h.signs.size(); ++i) {
      out.push_back(Letter::make(h.t, h.signs[i] < 0));
      auto const& c = h.chunks[i + 1].word().letters();
      out.insert(out.end(), c.begin(), c.end());
    }
    return Word(std::move(out));
  }

  std::size_t t_length(HnnWord const& h) {
    return h.t_length();
  }

  bool is_reduced_hnn(CommutationGraph const& g, HnnWord const& h) {
    for (std::size_t i = 1; i < h.chunks.size() - 1; ++i) {
      if (h.signs[i - 1] != h.signs[i] && in_link_subgroup(g, h.t, h.chunks[i])) {
        return false;
      }
    }
    return true;
  }

  bool is_cyclically_reduced_hnn(CommutationGraph const& g, HnnWord const& h) {
    auto m = h.t_length();
    if (m <= 1 || h.signs.front() == h.signs.back()) {
      return true;
    }
    auto wrap = minimal_form(g, h.chunks.back().word() * h.chunks.front().word());
    return !in_link_subgroup(g, h.t, wrap);
  }

  std::vector<SigmaLetter> chunk_symbol(CommutationGraph const& g,
                                        Vertex                  t,
                                        NormalForm const&       chunk) {
    ParabolicContext ctx(g, g.neighbours(t));
    auto             core = double_coset_rep(ctx, chunk.word());
    if (core.is_identity()) {
      return {};
    }
    auto inv = minimal_form(g, inverse(core.word()));
    if (!shortlex_less(inv.word(), core.word())) {
      return {SigmaLetter{false, 1, core}};
    }
    return {SigmaLetter{false, -1, inv}};
  }

  SigmaWord sigma(CommutationGraph const& g, HnnWord const& h) {
    SigmaWord out;
    for (std::size_t i = 0; i < h.chunks.size(); ++i) {
      if (i > 0) {
        out.letters.push_back(SigmaLetter{true, h.signs[i - 1], NormalForm()});
      }
      for (auto const& s : chunk_symbol(g, h.t, h.chunks[i])) {
        out.letters.push_back(s);
      }
    }
    return free_reduce(out);
  }

  SigmaWord free_reduce(SigmaWord const& w) {
    SigmaWord out;
    for (auto const& x : w.letters) {
      if (!out.letters.empty() && out.letters.back() == x.inv()) {
        out.letters.pop_back();
      } else {
        out.letters.push_back(x);
      }
    }
    return out;
  }

  SigmaWord cyclically_reduce(SigmaWord const& w) {
    auto        r = free_reduce(w).letters;
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == r[hi - 1].inv()) {
      ++lo;
      --hi;
    }
    return SigmaWord{{r.begin() + lo, r.begin() + hi}};
  }

  SigmaWord inverse(SigmaWord const& w) {
    SigmaWord out;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      out.letters.push_back(it->inv());
    }
    return out;
  }

  std::size_t primitive_period(SigmaWord const& w) {
    auto const& s = w.letters;
    std::size_t n = s.size();
    if (n == 0) {
      return 0;
    }
    // Failure function: fail[i] is the longest proper border of s[0..i).
    std::vector<std::size_t> fail(n + 1, 0);
    for (std::size_t i = 1, k = 0; i < n; ++i) {
      while (k > 0 && !(s[k] == s[i])) {
        k = fail[k];
      }
      if (s[k] == s[i]) {
        ++k;
      }
      fail[i + 1] = k;
    }
    std::size_t p = n - fail[n];
    return n % p == 0 ? p : n;
  }

  bool is_proper_power(SigmaWord const& w) {
    return !w.letters.empty() && primitive_period(w) < w.letters.size();
  }

  bool chunk_is_thick(CommutationGraph const& g,
                      Vertex                  t,
                      NormalForm const&       chunk) {
    VertexSet lk = g.neighbours(t);
    if (!is_clique(g, lk)) {
      throw Error(ErrorCode::LinkNotClique, g.names_of(lk));
    }
    return in_link_subgroup(g, t, chunk) || in_maln_unchecked(g, lk, chunk);
  }

  bool is_t_thick(CommutationGraph const& g, HnnWord const& h) {
    return std::all_of(h.chunks.begin(), h.chunks.end(), [&](auto const& c) {
      return chunk_is_thick(g, h.t, c);
    });
  }

  bool is_cyclically_t_thick(CommutationGraph const& g, HnnWord const& h) {
    if (!is_t_thick(g, h) || !is_cyclically_reduced_hnn(g, h)) {
      return false;
    }
    if (h.t_length() == 0) {
      return true;
    }
    auto wrap = minimal_form(g, h.chunks.back().word() * h.chunks.front().word());
    return chunk_is_thick(g, h.t, wrap);
  }

  bool is_t_root(CommutationGraph const& g, HnnWord const& h) {
    return !is_proper_power(cyclically_reduce(sigma(g, h)));
  }

  namespace {
    std::size_t occurrences(std::vector<SigmaLetter> const& cyc,
                            std::vector<SigmaLetter> const& pat) {
      std::size_t n = cyc.size(), count = 0;
      for (std::size_t p = 0; p < n; ++p) {
        bool match = true;
        for (std::size_t i = 0; i < pat.size() && match; ++i) {
          match = cyc[(p + i) % n] == pat[i];
        }
        count += match ? 1 : 0;
      }
      return count;
    }
  }  // namespace

  UniquePositionSplit unique_position_factorization(SigmaWord const& root) {
    auto const& w = root.letters;
    std::size_t n = w.size();
    if (n < 2 || !(cyclically_reduce(root) == root) || is_proper_power(root)) {
      throw Error(ErrorCode::NoSplitFound,
                  "root must be cyclically reduced, primitive, and of length "
                  "at least 2");
    }
    auto inv = inverse(root).letters;
    auto unique = [&](std::vector<SigmaLetter> const& part) {
      return occurrences(w, part) == 1 && occurrences(inv, part) == 0;
    };
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<SigmaLetter> rot(w.begin() + r, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + r);
      std::optional<std::size_t> first, integral;
      for (std::size_t i = 1; i < n; ++i) {
        std::vector<SigmaLetter> a(rot.begin(), rot.begin() + i);
        std::vector<SigmaLetter> b(rot.begin() + i, rot.end());
        if (unique(a) && unique(b)) {
          if (!first) {
            first = i;
          }
          if (!integral && a.back().is_t) {
            integral = i;
          }
        }
      }
      if (first) {
        std::size_t i = integral ? *integral : *first;
        return UniquePositionSplit{
            SigmaWord{{rot.begin(), rot.begin() + i}},
            SigmaWord{{rot.begin() + i, rot.end()}},
            r};
      }
    }
    throw Error(ErrorCode::NoSplitFound, "no uniquely positioned split");
  }

  std::string format_sigma(CommutationGraph const& g,
                           Vertex                  t,
                           SigmaWord const&        w) {
    if (w.letters.empty()) {
      return "1";
    }
    std::string out;
    auto const& l = w.letters;
    for (std::size_t i = 0; i < l.size();) {
      std::size_t j = i;
      while (j < l.size() && l[j] == l[i]) {
        ++j;
      }
      int k = static_cast<int>(j - i) * l[i].sign;
      if (!out.empty()) {
        out += ' ';
      }
      out += l[i].is_t ? g.name(t) : "[" + format_word(g, l[i].rep) + "]";
      if (k != 1) {
        out += "^" + std::to_string(k);
      }
      i = j;
    }
    return out;
  }

  std::string format_hnn(CommutationGraph const& g, HnnWord const& h) {
    std::string out = "(" + format_word(g, h.chunks[0]) + ")";
    for (std::size_t i = 0; i < h.signs.size(); ++i) {
      out += " " + g.name(h.t) + (h.signs[i] < 0 ? "^-1" : "");
      out += " (" + format_word(g, h.chunks[i + 1]) + ")";
    }
    return out;
  }

}  // namespace pcg
