// Randomised properties over small graphs.  Generators are plain
// std::mt19937_64 draws with fixed seeds so failures replay exactly.

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "pcg/cosets.hpp"
#include "pcg/hnn.hpp"
#include "pcg/words.hpp"

using namespace pcg;
using testing::w;

namespace {
  Word cyclically_minimal_word(CommutationGraph const& g, std::size_t len, std::mt19937_64& rng) {
    return cyclic_reduce(g, oracle::random_word(g, len, rng)).core.word();
  }

  Word word_over(VertexSet y, std::size_t len, std::mt19937_64& rng) {
    auto                ys = members(y);
    std::vector<Letter> out;
    for (std::size_t i = 0; i < len && !ys.empty(); ++i) {
      out.push_back(Letter::make(ys[rng() % ys.size()], (rng() & 1) != 0));
    }
    return Word(std::move(out));
  }

  // Every word of the given length over the graph's letters.
  void each_word(CommutationGraph const& g, std::size_t len,
                 std::function<void(Word const&)> const& f) {
    std::vector<Letter> cur(len);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == len) {
        f(Word(cur));
        return;
      }
      for (int x = 0; x < 2 * g.size(); ++x) {
        cur[i] = Letter{x};
        rec(i + 1);
      }
    };
    rec(0);
  }
}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("minimal form is idempotent and equal is an equivalence") {
    std::mt19937_64 rng(1);
    for (auto& [name, g] : oracle::catalog()) {
      for (int trial = 0; trial < 100; ++trial) {
        auto a = oracle::random_word(g, 1 + rng() % 10, rng);
        auto m = minimal_form(g, a);
        CHECK(minimal_form(g, m) == m);
        CHECK(equal(g, a, a));
        auto b = m.word() * w(g, "1");
        CHECK(equal(g, a, b) == equal(g, b, a));
        auto c = inverse(inverse(a));
        CHECK((!equal(g, a, b) || !equal(g, b, c) || equal(g, a, c)));
        CHECK(minimal_form(g, a * inverse(a)).is_identity());
      }
    }
  }

  TEST_CASE("support is an element invariant and grows under conjugation") {
    std::mt19937_64 rng(2);
    for (auto& [name, g] : oracle::catalog()) {
      for (int trial = 0; trial < 80; ++trial) {
        auto a = oracle::random_word(g, 1 + rng() % 9, rng);
        CHECK(support(g, a) == support(g, minimal_form(g, a).word()));
        auto v = cyclically_minimal_word(g, 1 + rng() % 6, rng);
        auto x = oracle::random_word(g, 1 + rng() % 4, rng);
        CHECK(subset_of(support(g, v), support(g, inverse(x) * v * x)));
      }
    }
  }

  TEST_CASE("length is additive on powers of cyclically minimal elements") {
    std::mt19937_64 rng(3);
    for (auto& [name, g] : oracle::catalog()) {
      for (int trial = 0; trial < 60; ++trial) {
        auto v = cyclically_minimal_word(g, 1 + rng() % 6, rng);
        CHECK(is_cyclically_minimal(g, v));
        auto len = minimal_form(g, v).length();
        for (int n = 1; n <= 4; ++n) {
          CHECK(minimal_form(g, power(v, n)).length() == static_cast<std::size_t>(n) * len);
        }
      }
    }
  }

  TEST_CASE("block decomposition multiplies back and blocks commute") {
    std::mt19937_64 rng(4);
    for (auto& [name, g] : oracle::catalog()) {
      for (int trial = 0; trial < 60; ++trial) {
        auto v = minimal_form(g, cyclically_minimal_word(g, 1 + rng() % 7, rng));
        auto blocks = block_decomposition(g, v);
        Word prod;
        for (auto const& b : blocks) {
          prod = prod * b.word();
        }
        CHECK(equal(g, prod, v.word()));
        for (std::size_t i = 0; i < blocks.size(); ++i) {
          for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            CHECK(equal(g, blocks[i].word() * blocks[j].word(), blocks[j].word() * blocks[i].word()));
            CHECK((support(g, blocks[i].word()) & support(g, blocks[j].word())) == 0);
          }
        }
      }
    }
  }

  TEST_CASE("conjugate test accepts conjugates and respects invariants") {
    std::mt19937_64 rng(5);
    for (auto& [name, g] : oracle::catalog()) {
      for (int trial = 0; trial < 60; ++trial) {
        auto a = oracle::random_word(g, 1 + rng() % 7, rng);
        auto x = oracle::random_word(g, 1 + rng() % 4, rng);
        auto b = inverse(x) * a * x;
        CHECK(conjugate_test(g, a, b));
        CHECK(conjugate_test(g, b, a));
        auto c = oracle::random_word(g, 1 + rng() % 7, rng);
        if (conjugate_test(g, a, c)) {
          CHECK(cyclic_reduce(g, a).core.length() == cyclic_reduce(g, c).core.length());
          CHECK(support(g, cyclic_reduce(g, a).core.word())
                == support(g, cyclic_reduce(g, c).core.word()));
        }
      }
    }
  }

  TEST_CASE("maln membership is stable on double cosets") {
    std::mt19937_64 rng(6);
    for (auto& [name, g] : oracle::catalog()) {
      for (VertexSet b = 1; b <= g.all(); ++b) {
        if (!is_clique(g, b)) {
          continue;
        }
        for (int trial = 0; trial < 10; ++trial) {
          auto x = oracle::random_word(g, 1 + rng() % 5, rng);
          bool in = in_maln(g, b, x);
          auto y = word_over(b, 2, rng) * x * word_over(b, 2, rng);
          CHECK(in_maln(g, b, y) == in);
        }
      }
    }
  }

  TEST_CASE("minimal length does not depend on vertex order") {
    std::mt19937_64 rng(7);
    for (auto& [name, g] : oracle::catalog()) {
      std::vector<Vertex> order(static_cast<std::size_t>(g.size()));
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      auto h = g.relabeled(order);
      for (int trial = 0; trial < 40; ++trial) {
        auto a = oracle::random_word(g, 1 + rng() % 8, rng);
        auto text = format_word(g, a);
        CHECK(minimal_form(g, a).length() == minimal_form(h, parse_word(text, h)).length());
      }
    }
  }

  TEST_CASE("repeated chunk patterns are never t-roots") {
    auto            g = testing::c5p();
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      auto q = oracle::random_word(g, 1 + rng() % 5, rng);
      std::vector<Letter> l = q.letters();
      l.push_back(Letter::make(0, (rng() & 1) != 0));
      Word base(l);
      auto h = hnn_factorize(g, 0, base);
      if (!is_cyclically_reduced_hnn(g, h) || h.t_length() == 0) {
        continue;
      }
      for (int k = 2; k <= 3; ++k) {
        CHECK_FALSE(is_t_root(g, hnn_factorize(g, 0, power(base, k))));
      }
    }
  }

  TEST_CASE("t-roots ending in t are not proper powers") {
    // Exhaustive over C'5 words of length 4 ending in t; the brute-force
    // search tries every root of length 1 or 2.
    auto g = testing::c5p();
    std::vector<Word> short_words;
    for (std::size_t len : {1u, 2u}) {
      each_word(g, len, [&](Word const& x) { short_words.push_back(x); });
    }
    std::size_t tested = 0;
    each_word(g, 3, [&](Word const& body) {
      auto l = body.letters();
      l.push_back(Letter::make(0));
      Word s(l);
      auto h = hnn_factorize(g, 0, s);
      if (h.t_length() == 0 || !is_cyclically_reduced_hnn(g, h) || !is_t_root(g, h)) {
        return;
      }
      ++tested;
      for (auto const& q : short_words) {
        int k = static_cast<int>(4 / q.size());
        CHECK_FALSE(equal(g, power(q, k), s));
      }
    });
    CHECK(tested > 0);
  }

  TEST_CASE("equal sigma images of rotations mean equal rotations") {
    auto g = testing::c5p();
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<Letter> l;
      int                 m = 1 + static_cast<int>(rng() % 2);
      for (int i = 0; i < m; ++i) {
        auto chunk = oracle::random_word(g, 1 + rng() % 3, rng);
        for (auto x : chunk) {
          if (x.vertex() != 0) {
            l.push_back(x);
          }
        }
        l.push_back(Letter::make(0));
      }
      Word s(l);
      auto h = hnn_factorize(g, 0, s);
      if (!is_cyclically_reduced_hnn(g, h) || !is_t_root(g, h) || h.t_length() == 0) {
        continue;
      }
      for (int n = 1; n <= 3; ++n) {
        auto sn = power(s, n).letters();
        std::vector<Word> rots;
        for (std::size_t i = 0; i < sn.size(); ++i) {
          if (i == 0 || sn[i - 1].vertex() == 0) {
            std::vector<Letter> r(sn.begin() + static_cast<long>(i), sn.end());
            r.insert(r.end(), sn.begin(), sn.begin() + static_cast<long>(i));
            rots.emplace_back(std::move(r));
          }
        }
        for (auto const& r1 : rots) {
          for (auto const& r2 : rots) {
            if (sigma(g, hnn_factorize(g, 0, r1)) == sigma(g, hnn_factorize(g, 0, r2))) {
              CHECK(equal(g, r1, r2));
            }
          }
        }
      }
    }
  }
}
