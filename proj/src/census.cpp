#include "pcg/census.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pcg/cosets.hpp"
#include "pcg/error.hpp"

namespace pcg::census {

  namespace {
    Int pow_int(long base, unsigned long e) {
      Int out;
      mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
      return out;
    }

    Int pow_int(Int const& base, unsigned long e) {
      Int out;
      mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
      return out;
    }

    Int binomial(unsigned long n, unsigned long k) {
      Int out;
      mpz_bin_uiui(out.get_mpz_t(), n, k);
      return out;
    }

    void check_d(int d) {
      if (d < 0) {
        throw Error(ErrorCode::BadParameter, "d must be >= 0");
      }
    }

    void check_k(int k) {
      if (k < 0) {
        throw Error(ErrorCode::BadParameter, "k must be >= 0");
      }
    }

    // Indices mod n-1 on a1..a_{n-1}.
    Vertex prev_index(int m, Vertex i) {
      return i == 1 ? m : i - 1;
    }

    Vertex next_index(int m, Vertex i) {
      return i == m ? 1 : i + 1;
    }

    // Would appending x to w create a prohibited factor ending at x?
    bool prohibited_end(int m, std::vector<Letter> const& w, Letter x) {
      Vertex      i = x.vertex();
      std::size_t p = w.size();
      while (p > 0 && w[p - 1].vertex() == prev_index(m, i)) {
        --p;
      }
      return p > 0 && w[p - 1].vertex() == next_index(m, i);
    }

    std::vector<Letter> alphabet(int m) {
      std::vector<Letter> out;
      for (Vertex v = 1; v <= m; ++v) {
        out.push_back(Letter::make(v, false));
        out.push_back(Letter::make(v, true));
      }
      return out;
    }

    bool freely_reduced(std::vector<Letter> const& w) {
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] == w[i - 1].inv()) {
          return false;
        }
      }
      return true;
    }

    // Freely reduced words over the given letters, grouped by length.
    std::vector<std::vector<std::vector<Letter>>>
    reduced_words(std::vector<Letter> const& letters, int d) {
      std::vector<std::vector<std::vector<Letter>>> out(d + 1);
      out[0].push_back({});
      for (int m = 1; m <= d; ++m) {
        for (auto const& w : out[m - 1]) {
          for (Letter x : letters) {
            if (!w.empty() && w.back() == x.inv()) {
              continue;
            }
            auto v = w;
            v.push_back(x);
            out[m].push_back(std::move(v));
          }
        }
      }
      return out;
    }

    void check_budget(std::size_t have, std::size_t budget) {
      if (have > budget) {
        throw Error(ErrorCode::BudgetExceeded,
                    "more than " + std::to_string(budget) + " words");
      }
    }

    VertexSet u_set(int n) {
      return bit(1) | bit(n - 1);
    }

    std::vector<NormalForm> lu_elements(CommutationGraph const& g, int n, int d) {
      std::vector<NormalForm> out;
      for (int p = -d; p <= d; ++p) {
        int rest = d - std::abs(p);
        for (int q = -rest; q <= rest; ++q) {
          std::vector<Letter> w;
          for (int i = 0; i < std::abs(p); ++i) {
            w.push_back(Letter::make(n - 1, p < 0));
          }
          for (int i = 0; i < std::abs(q); ++i) {
            w.push_back(Letter::make(1, q < 0));
          }
          out.push_back(minimal_form(g, Word(std::move(w))));
        }
      }
      return out;
    }
  }  // namespace

  void check_n(int n) {
    if (n < 5 || n > kMaxVertices) {
      throw Error(ErrorCode::BadParameter,
                  "n must lie in 5..64, got " + std::to_string(n));
    }
  }

  bool is_normal_form(int n, Word const& w, NfSystem system) {
    check_n(n);
    int m = n - 1;
    for (Letter x : w) {
      if (x.vertex() < 1 || x.vertex() > m) {
        throw Error(ErrorCode::BadAlphabet,
                    "letters must come from a1..a" + std::to_string(m));
      }
    }
    auto const& l = w.letters();
    if (!freely_reduced(l)) {
      return false;
    }
    if (system == NfSystem::Square) {
      if (n != 5) {
        throw Error(ErrorCode::BadParameter, "square normal forms need n = 5");
      }
      std::size_t i = 0;
      while (i < l.size() && l[i].vertex() % 2 == 0) {
        ++i;
      }
      return std::all_of(l.begin() + static_cast<std::ptrdiff_t>(i),
                         l.end(),
                         [](Letter x) { return x.vertex() % 2 == 1; });
    }
    std::vector<Letter> prefix;
    for (Letter x : l) {
      if (prohibited_end(m, prefix, x)) {
        return false;
      }
      prefix.push_back(x);
    }
    return true;
  }

  std::vector<Word>
  normal_forms(int n, int d, NfSystem system, std::size_t budget) {
    check_n(n);
    check_d(d);
    int               m = n - 1;
    std::vector<Word> out;
    if (system == NfSystem::Square) {
      if (n != 5) {
        throw Error(ErrorCode::BadParameter, "square normal forms need n = 5");
      }
      auto even = reduced_words({Letter::make(2), Letter::make(2, true),
                                 Letter::make(4), Letter::make(4, true)},
                                d);
      auto odd = reduced_words({Letter::make(1), Letter::make(1, true),
                                Letter::make(3), Letter::make(3, true)},
                               d);
      for (int len = 0; len <= d; ++len) {
        for (int i = len; i >= 0; --i) {
          for (auto const& w1 : even[i]) {
            for (auto const& w2 : odd[len - i]) {
              auto w = w1;
              w.insert(w.end(), w2.begin(), w2.end());
              out.emplace_back(std::move(w));
              check_budget(out.size(), budget);
            }
          }
        }
      }
      return out;
    }
    auto                             letters = alphabet(m);
    std::vector<std::vector<Letter>> level{{}};
    out.emplace_back();
    for (int len = 1; len <= d; ++len) {
      std::vector<std::vector<Letter>> next;
      for (auto const& w : level) {
        for (Letter x : letters) {
          if ((!w.empty() && w.back() == x.inv()) || prohibited_end(m, w, x)) {
            continue;
          }
          auto v = w;
          v.push_back(x);
          next.push_back(std::move(v));
          check_budget(out.size() + next.size(), budget);
        }
      }
      for (auto const& w : next) {
        out.emplace_back(w);
      }
      level = std::move(next);
    }
    return out;
  }

  LHCounts enumerate_LH(int n, int d, NfSystem system) {
    LHCounts out;
    out.by_length.assign(d + 1, 0);
    for (auto const& w : normal_forms(n, d, system)) {
      out.by_length[w.size()] += 1;
    }
    for (auto const& c : out.by_length) {
      out.total += c;
    }
    return out;
  }

  LHUCounts enumerate_LHU(int n, int d) {
    auto             g = cycle_with_chord(n);
    VertexSet        u = u_set(n);
    ParabolicContext ctx(g, u);
    LHUCounts        out;
    out.by_length.assign(d + 1, 0);
    for (auto const& w : normal_forms(n, d, NfSystem::General)) {
      if (!strip_divisors(ctx, w).left.is_identity()) {
        continue;
      }
      out.by_length[w.size()] += 1;
      out.total += 1;
      if (w.empty()) {
        continue;
      }
      Vertex first = w[0].vertex();
      if (first == 2) {
        out.b += 1;
      } else if (first == n - 2) {
        out.c += 1;
      } else {
        out.a += 1;
      }
      auto nf = minimal_form(g, w);
      if (!in_maln_unchecked(g, u, nf)) {
        out.e += 1;
      }
    }
    return out;
  }

  Int enumerate_LU(int n, int d) {
    check_n(n);
    check_d(d);
    return static_cast<unsigned long>(lu_elements(cycle_with_chord(n), n, d).size());
  }

  Int enumerate_e_prime(int n, int d) {
    auto      g = cycle_with_chord(n);
    VertexSet u = u_set(n);
    Int       out;
    for (auto const& w : normal_forms(n, d, NfSystem::General)) {
      auto nf = minimal_form(g, w);
      if (!subset_of(letter_support(nf.word()), u)
          && !in_maln_unchecked(g, u, nf)) {
        out += 1;
      }
    }
    return out;
  }

  Int enumerate_L0(int n, int d) {
    auto g = cycle_with_chord(n);
    Int  out;
    for (auto const& w : normal_forms(n, d, NfSystem::General)) {
      if (is_cyclically_minimal(g, w)) {
        out += 1;
      }
    }
    return out;
  }

  namespace formula {
    Int l_H(int d) {
      check_d(d);
      return d == 0 ? Int(1) : 1 + 8 * d * pow_int(3, d - 1);
    }

    Int l_HS(int m) {
      check_d(m);
      if (m == 0) {
        return 1;
      }
      return Int(8 * (2 * m + 1)) * pow_int(3, m) / 9;
    }

    Int l_HU(int d) {
      check_d(d);
      return Int(3 + 2 * d) * pow_int(3, d) / 3;
    }

    Int l_HU_exact(int m) {
      check_d(m);
      if (m == 0) {
        return 1;
      }
      return Int(4 * (2 + m)) * pow_int(3, m) / 9;
    }

    Int l_U(int d) {
      check_d(d);
      return 1 + 2 * Int(d) * (d + 1);
    }

    Int e(int d) {
      check_d(d);
      return 2 * (pow_int(3, d) - 1);
    }

    Int e_prime(int d) {
      check_d(d);
      return 8 * (pow_int(3, d) - 1) - 4 * Int(d) * (2 + d);
    }

    Int l_i(int d, int k) {
      check_k(k);
      return 2 * k * l_U(d);
    }

    Int l_i_S(int d) {
      return 2 * l_U(d);
    }

    Int l_ii_S(Int const& lH, Int const& lHU, int r) {
      if (r < 1) {
        throw Error(ErrorCode::BadParameter, "r must be >= 1");
      }
      return pow_int(2, r) * lH * pow_int(lHU, r - 1);
    }

    Int l_ii_S_total(Int const& lH, Int const& lHU, int k) {
      Int out;
      for (int r = 1; r <= k; ++r) {
        out += binomial(k - 1, r - 1) * l_ii_S(lH, lHU, r);
      }
      return out;
    }

    namespace {
      Int exact_ratio_series(Int const& top, Int const& bottom, int k) {
        check_k(k);
        if (bottom == 0) {
          throw Error(ErrorCode::NonIntegralFormula, "division by zero");
        }
        Int num = top * (pow_int(Int(2 * bottom + 1), k) - 1);
        if (num % bottom != 0) {
          throw Error(ErrorCode::NonIntegralFormula,
                      num.get_str() + " / " + bottom.get_str());
        }
        return num / bottom;
      }
    }  // namespace

    Int l_ii(Int const& lH, Int const& lHU, int k) {
      return exact_ratio_series(lH, lHU, k);
    }

    Int z2_ii(Int const& tH, Int const& tHU, int k) {
      return exact_ratio_series(tH, tHU, k);
    }

    double p_ii_bound(Int const& a_, Int const& b_, int d, int k) {
      double a = a_.get_d(), b = b_.get_d(), c = 2.0 * d;
      double sum = 0;
      for (int p = 1; p <= k; ++p) {
        sum += std::pow(2.0, p) * std::sqrt(a) * b * std::pow(c, (p + 1) / 2.0)
               / (a - c) * std::pow(std::sqrt(a) + std::sqrt(c), p - 1);
      }
      return sum;
    }
  }  // namespace formula

  namespace bounds {
    namespace {
      mpq_class q(Int const& v) {
        return mpq_class(v);
      }

      void check_large(int n) {
        if (n < 6) {
          throw Error(ErrorCode::BadParameter, "bounds need n >= 6");
        }
      }
    }  // namespace

    Interval l_HS(int n, int m) {
      check_large(n);
      int a = 2 * n - 5, g = 2 * n - 7;
      return {q(2 * (n - 1) * pow_int(g, m - 1)), q(2 * (n - 1) * pow_int(a, m - 1))};
    }

    Interval l_H(int n, int d) {
      check_large(n);
      int a = 2 * n - 5, g = 2 * n - 7;
      return {1 + mpq_class(n - 1, n - 4) * q(pow_int(g, d) - 1),
              1 + mpq_class(n - 1, n - 3) * q(pow_int(a, d) - 1)};
    }

    Interval l_HU_nontrivial(int n, int d) {
      check_large(n);
      return {q(pow_int(2 * n - 7, d) - 1), q(pow_int(2 * n - 5, d) - 1)};
    }

    Interval split_a(int n, int d) {
      check_large(n);
      return {mpq_class(n - 5, n - 4) * q(pow_int(2 * n - 7, d) - 1),
              mpq_class(n - 5, n - 3) * q(pow_int(2 * n - 5, d) - 1)};
    }

    Interval split_bc(int n, int d) {
      check_large(n);
      return {mpq_class(2, n - 4) * q(pow_int(2 * n - 7, d) - 1),
              mpq_class(2, n - 3) * q(pow_int(2 * n - 5, d) - 1)};
    }
  }  // namespace bounds

  ChunkTable::ChunkTable(int n, int d, std::size_t budget)
      : _n(n), _d(d), _graph(cycle_with_chord(n)) {
    check_d(d);
    VertexSet                 u = u_set(n);
    ParabolicContext          ctx(_graph, u);
    std::map<NormalForm, int> ids;
    _symbols.emplace_back();
    _sym_thick.push_back(true);
    auto intern = [&](NormalForm const& h) {
      auto sym = chunk_symbol(_graph, 0, h);
      bool thick = chunk_is_thick(_graph, 0, h);
      if (sym.empty()) {
        return 0;
      }
      auto [it, fresh] = ids.try_emplace(sym[0].rep, static_cast<int>(_symbols.size()));
      if (fresh) {
        _symbols.push_back(SigmaLetter{false, 1, sym[0].rep});
        _sym_thick.push_back(thick);
      } else if (_sym_thick[it->second] != thick) {
        throw std::logic_error("thickness differs within one double coset");
      }
      return it->second * sym[0].sign;
    };
    for (auto const& w : normal_forms(n, d, NfSystem::General, budget)) {
      auto h = minimal_form(_graph, w);
      int  code = intern(h);
      _lh.push_back(h);
      _lh_sym.push_back(code);
      if (is_cyclically_minimal(_graph, h.word())) {
        _l0.push_back(h);
      }
      if (strip_divisors(ctx, h.word()).left.is_identity()) {
        _lhu.push_back(h);
        _lhu_sym.push_back(code);
      }
    }
    _lu = lu_elements(_graph, n, d);
  }

  std::string convention_name(Convention c) {
    switch (c) {
      case Convention::AllChunksFree:
        return "all_chunks_free";
      case Convention::FirstChunkFree:
        return "first_chunk_free";
      case Convention::NoTrivialChunks:
        return "no_trivial_chunks";
    }
    return "?";
  }

  std::string mode_name(Mode m) {
    return m == Mode::Exhaustive ? "exhaustive" : "sample";
  }

  HnnWord formal_factorization(ChunkTable const& table, ComposedWord const& w) {
    HnnWord h;
    h.t = table.t();
    h.chunks = {w.head};
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
      int a = w.alphas[i];
      int s = a < 0 ? -1 : 1;
      for (int j = 0; j < std::abs(a); ++j) {
        h.signs.push_back(s);
        if (j + 1 < std::abs(a)) {
          h.chunks.emplace_back();
        }
      }
      h.chunks.push_back(i < w.tail.size() ? w.tail[i] : NormalForm());
    }
    return h;
  }

  Word to_word(ChunkTable const& table, ComposedWord const& w) {
    return pcg::to_word(table.graph(), formal_factorization(table, w));
  }

  ZFlags classify_Z(ChunkTable const& table, ComposedWord const& w) {
    auto const& g = table.graph();
    auto        h = formal_factorization(table, w);
    ZFlags      z;
    z.z1 = h.t_length() >= 1;
    z.z2 = z.z1 && is_t_thick(g, h);
    z.z3 = w.kind == Kind::Composed
           || (w.kind == Kind::Cyclic
               && !parabolic_member(ParabolicContext(g, table.u()), w.head.word()));
    z.z4 = is_t_root(g, h);
    return z;
  }

  bool code_sequence_is_power(std::vector<int> seq) {
    std::vector<int> r;
    for (int x : seq) {
      if (!r.empty() && r.back() == -x) {
        r.pop_back();
      } else {
        r.push_back(x);
      }
    }
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
      ++lo;
      --hi;
    }
    std::size_t n = hi - lo;
    if (n < 2) {
      return false;
    }
    std::vector<std::size_t> fail(n + 1, 0);
    for (std::size_t i = 1, k = 0; i < n; ++i) {
      while (k > 0 && r[lo + k] != r[lo + i]) {
        k = fail[k];
      }
      if (r[lo + k] == r[lo + i]) {
        ++k;
      }
      fail[i + 1] = k;
    }
    std::size_t p = n - fail[n];
    return p < n && n % p == 0;
  }

  namespace {
    // Compositions of l into r positive parts.
    void compositions(int l, int r, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
      if (r == 0) {
        if (l == 0) {
          out.push_back(cur);
        }
        return;
      }
      for (int p = 1; p <= l - (r - 1); ++p) {
        cur.push_back(p);
        compositions(l - p, r - 1, cur, out);
        cur.pop_back();
      }
    }

    // Every signed exponent vector (alpha_1..alpha_r) with sum |alpha_i| = l,
    // for l = 1..k.
    std::vector<std::vector<int>> exponent_vectors(int k) {
      std::vector<std::vector<int>> out;
      for (int l = 1; l <= k; ++l) {
        for (int r = 1; r <= l; ++r) {
          std::vector<std::vector<int>> comps;
          std::vector<int>              cur;
          compositions(l, r, cur, comps);
          for (auto const& c : comps) {
            for (unsigned mask = 0; mask < (1U << r); ++mask) {
              std::vector<int> a = c;
              for (int i = 0; i < r; ++i) {
                if ((mask >> i) & 1U) {
                  a[i] = -a[i];
                }
              }
              out.push_back(std::move(a));
            }
          }
        }
      }
      return out;
    }

    void push_t_run(std::vector<int>& seq, int a) {
      for (int j = 0; j < std::abs(a); ++j) {
        seq.push_back(a < 0 ? -kTCode : kTCode);
      }
    }

    // Shape flags shared by the enumerator and the counter.  `trivial` marks
    // positions whose chunk has no symbol.
    struct Shape {
      bool degenerate = false;
      bool nonreduced = false;
      bool noncyclic = false;
    };

    Shape shape_of(std::vector<int> const& alphas, std::vector<bool> const& trivial) {
      Shape       s;
      std::size_t r = alphas.size();
      auto        sgn = [](int a) { return a < 0 ? -1 : 1; };
      for (std::size_t i = 0; i < r; ++i) {
        s.degenerate = s.degenerate || trivial[i];
        if (i > 0 && trivial[i] && sgn(alphas[i - 1]) != sgn(alphas[i])) {
          s.nonreduced = true;
        }
      }
      s.noncyclic = !s.nonreduced && trivial[0] && sgn(alphas[r - 1]) != sgn(alphas[0]);
      return s;
    }

    struct U64Tally {
      std::uint64_t l0 = 0, l1 = 0, l2 = 0, z1 = 0, z2 = 0, z3 = 0, z4 = 0, zY = 0;
      std::uint64_t thick2 = 0, powers2 = 0, degenerate2 = 0, nonreduced2 = 0,
                    noncyclic2 = 0;

      ComposedTally to_tally() const {
        auto c = [](std::uint64_t v) { return Int(static_cast<unsigned long>(v)); };
        return ComposedTally{c(l0),     c(l1),          c(l2),          c(z1),
                             c(z2),     c(z3),          c(z4),          c(zY),
                             c(thick2), c(powers2),     c(degenerate2), c(nonreduced2),
                             c(noncyclic2)};
      }
    };

    void add(U64Tally& t, ZFlags const& z) {
      t.z1 += z.z1;
      t.z2 += z.z2;
      t.z3 += z.z3;
      t.z4 += z.z4;
      t.zY += z.all();
    }

    bool allowed_trivial(Convention c, std::size_t position) {
      switch (c) {
        case Convention::AllChunksFree:
          return true;
        case Convention::FirstChunkFree:
          return position == 0;
        case Convention::NoTrivialChunks:
          return false;
      }
      return false;
    }
  }  // namespace

  ComposedTally enumerate_composed(ChunkTable const& table,
                                   int               k,
                                   Convention        convention,
                                   Visitor const&    visit,
                                   std::uint64_t     budget) {
    check_k(k);
    auto const& lh = table.lh();
    auto const& lhu = table.lhu();
    auto const& lh_sym = table.lh_symbol();
    auto const& lhu_sym = table.lhu_symbol();

    auto exps = exponent_vectors(k);
    Int  planned = 0;
    for (auto const& a : exps) {
      planned += Int(static_cast<unsigned long>(lh.size()))
                 * pow_int(Int(static_cast<unsigned long>(lhu.size())), a.size() - 1);
    }
    if (planned > Int(static_cast<unsigned long>(budget))) {
      throw Error(ErrorCode::BudgetExceeded,
                  planned.get_str() + " composed words exceed the budget");
    }

    U64Tally  t;
    ParabolicContext uctx(table.graph(), table.u());
    for (auto const& h : table.l0()) {
      ComposedWord w{Kind::Cyclic, h, {}, {}};
      ZFlags       z{false, false, !parabolic_member(uctx, h.word()), true};
      t.l0 += 1;
      add(t, z);
      if (visit) {
        visit(w, z);
      }
    }
    for (int l = 1; l <= k; ++l) {
      for (int s : {1, -1}) {
        for (auto const& u : table.lu()) {
          ZFlags z{true, true, false, l == 1};
          t.l1 += 1;
          add(t, z);
          if (visit) {
            visit(ComposedWord{Kind::PowerOfT, u, {}, {s * l}}, z);
          }
        }
      }
    }

    std::vector<std::size_t> idx;
    std::vector<int>         seq;
    std::vector<bool>        trivial;
    for (auto const& alphas : exps) {
      std::size_t r = alphas.size();
      idx.assign(r, 0);
      trivial.assign(r, false);
      // Odometer over (lh index, lhu indices).
      while (true) {
        bool ok = true;
        bool thick = true;
        seq.clear();
        for (std::size_t i = 0; i < r; ++i) {
          int code = i == 0 ? lh_sym[idx[0]] : lhu_sym[idx[i]];
          trivial[i] = code == 0;
          if (trivial[i] && !allowed_trivial(convention, i)) {
            ok = false;
            break;
          }
          thick = thick && table.symbol_thick(code);
          if (code != 0) {
            seq.push_back(code);
          }
          push_t_run(seq, alphas[i]);
        }
        if (ok) {
          bool   power = code_sequence_is_power(seq);
          Shape  sh = shape_of(alphas, trivial);
          ZFlags z{true, thick, true, !power};
          t.l2 += 1;
          t.thick2 += thick;
          t.powers2 += power;
          t.degenerate2 += sh.degenerate;
          t.nonreduced2 += sh.nonreduced;
          t.noncyclic2 += sh.noncyclic;
          add(t, z);
          if (visit) {
            ComposedWord w{Kind::Composed, lh[idx[0]], {}, alphas};
            for (std::size_t i = 1; i < r; ++i) {
              w.tail.push_back(lhu[idx[i]]);
            }
            visit(w, z);
          }
        }
        std::size_t p = r;
        while (p > 0) {
          --p;
          std::size_t limit = p == 0 ? lh.size() : lhu.size();
          if (++idx[p] < limit) {
            break;
          }
          idx[p] = 0;
          if (p == 0) {
            p = r + 1;
            break;
          }
        }
        if (p == r + 1 || r == 0) {
          break;
        }
      }
    }
    return t.to_tally();
  }

  namespace {
    // Symbol weights for the counting engine.  first[s] counts L_H(d)
    // chunks with signed code s, rest[s] counts L_H^U(d) chunks.
    class SymbolWeights {
     public:
      explicit SymbolWeights(ChunkTable const& table)
          : _table(table), _size(table.symbols().size()) {
        _first.assign(2 * _size, 0);
        _rest.assign(2 * _size, 0);
        for (int c : table.lh_symbol()) {
          ++_first[slot(c)];
        }
        for (int c : table.lhu_symbol()) {
          ++_rest[slot(c)];
        }
      }

      std::uint64_t first(int code) const {
        return _first[slot(code)];
      }
      std::uint64_t rest(int code) const {
        return _rest[slot(code)];
      }

      // Sum over symbol ids x of prod over members of the block of the
      // weight of x^(orientation), thick symbols only when asked.
      // Members: counts of (first,+), (first,-), (rest,+), (rest,-).
      Int const& block_sum(std::array<int, 4> const& members, bool thick_only) {
        auto key = std::make_pair(members, thick_only);
        auto it = _cache.find(key);
        if (it != _cache.end()) {
          return it->second;
        }
        Int total = 0;
        for (std::size_t x = 1; x < _size; ++x) {
          int id = static_cast<int>(x);
          if (thick_only && !_table.symbol_thick(id)) {
            continue;
          }
          Int term = 1;
          term *= pow_int(Int(static_cast<unsigned long>(first(id))), members[0]);
          term *= pow_int(Int(static_cast<unsigned long>(first(-id))), members[1]);
          term *= pow_int(Int(static_cast<unsigned long>(rest(id))), members[2]);
          term *= pow_int(Int(static_cast<unsigned long>(rest(-id))), members[3]);
          total += term;
        }
        return _cache.emplace(key, std::move(total)).first->second;
      }

     private:
      std::size_t slot(int code) const {
        return code >= 0 ? 2 * static_cast<std::size_t>(code)
                         : 2 * static_cast<std::size_t>(-code) + 1;
      }

      ChunkTable const&                                  _table;
      std::size_t                                        _size;
      std::vector<std::uint64_t>                         _first, _rest;
      std::map<std::pair<std::array<int, 4>, bool>, Int> _cache;
    };

    // Set partitions of {0..n-1} as restricted growth strings.
    void set_partitions(int n, std::vector<int>& cur, int blocks,
                        std::vector<std::vector<int>>& out) {
      if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
      }
      for (int b = 0; b <= blocks; ++b) {
        cur.push_back(b);
        set_partitions(n, cur, std::max(blocks, b + 1), out);
        cur.pop_back();
      }
    }

    std::vector<std::vector<int>> const& partitions_of(int n) {
      static std::map<int, std::vector<std::vector<int>>> cache;
      auto it = cache.find(n);
      if (it == cache.end()) {
        std::vector<std::vector<int>> out;
        std::vector<int>              cur;
        set_partitions(n, cur, 0, out);
        it = cache.emplace(n, std::move(out)).first;
      }
      return it->second;
    }

    long factorial(int n) {
      long f = 1;
      for (int i = 2; i <= n; ++i) {
        f *= i;
      }
      return f;
    }
  }  // namespace

  ComposedTally count_composed(ChunkTable const& table,
                               int               k,
                               Convention        convention,
                               std::uint64_t     budget) {
    check_k(k);
    SymbolWeights weights(table);
    Int           lu_count = static_cast<unsigned long>(weights.first(0));
    Int           nontrivial_first = static_cast<unsigned long>(table.lh().size()) - lu_count;
    Int           nontrivial_rest = static_cast<unsigned long>(table.lhu().size() - 1);

    ComposedTally out;
    out.l0 = static_cast<unsigned long>(table.l0().size());
    out.l1 = 2 * k * Int(static_cast<unsigned long>(table.lu().size()));
    ParabolicContext uctx(table.graph(), table.u());
    Int              l0_in_u = 0;
    for (auto const& h : table.l0()) {
      if (parabolic_member(uctx, h.word())) {
        l0_in_u += 1;
      }
    }

    Int           thick_powers = 0;
    std::uint64_t work = 0;
    for (auto const& alphas : exponent_vectors(k)) {
      std::size_t r = alphas.size();
      for (unsigned mask = 0; mask < (1U << r); ++mask) {
        std::vector<bool> trivial(r);
        bool              ok = true;
        for (std::size_t i = 0; i < r; ++i) {
          trivial[i] = ((mask >> i) & 1U) != 0;
          ok = ok && (!trivial[i] || allowed_trivial(convention, i));
        }
        if (!ok) {
          continue;
        }
        Int                      fixed = trivial[0] ? lu_count : Int(1);
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < r; ++i) {
          if (!trivial[i]) {
            live.push_back(i);
          }
        }
        Int config_total = fixed;
        for (std::size_t i : live) {
          config_total *= i == 0 ? nontrivial_first : nontrivial_rest;
        }
        Shape sh = shape_of(alphas, trivial);
        out.l2 += config_total;
        if (sh.degenerate) {
          out.degenerate2 += config_total;
        }
        if (sh.nonreduced) {
          out.nonreduced2 += config_total;
        }
        if (sh.noncyclic) {
          out.noncyclic2 += config_total;
        }

        int  c = static_cast<int>(live.size());
        auto const& parts = partitions_of(c);
        for (auto const& pi : parts) {
          int classes = c == 0 ? 0 : *std::max_element(pi.begin(), pi.end()) + 1;
          auto const& merges = partitions_of(classes);
          work += (1UL << c) * merges.size();
          if (work > budget) {
            throw Error(ErrorCode::BudgetExceeded, "pattern count exceeds the budget");
          }
          for (unsigned orient = 0; orient < (1U << c); ++orient) {
            std::vector<int> seq;
            for (std::size_t i = 0, j = 0; i < r; ++i) {
              if (!trivial[i]) {
                int sign = ((orient >> j) & 1U) ? -1 : 1;
                seq.push_back(sign * (pi[j] + 1));
                ++j;
              }
              push_t_run(seq, alphas[i]);
            }
            bool power = code_sequence_is_power(seq);
            // Sum over injective class -> symbol maps by Möbius inversion on
            // the lattice of merges of classes.
            Int all = 0, thick = 0;
            for (auto const& sigma : merges) {
              int  blocks = classes == 0 ? 0 : *std::max_element(sigma.begin(), sigma.end()) + 1;
              Int  pa = 1, pt = 1;
              long mu = 1;
              for (int b = 0; b < blocks; ++b) {
                std::array<int, 4> members{0, 0, 0, 0};
                int                size = 0;
                for (int cl = 0; cl < classes; ++cl) {
                  size += sigma[cl] == b;
                }
                for (int j = 0; j < c; ++j) {
                  if (sigma[pi[j]] != b) {
                    continue;
                  }
                  bool inv = ((orient >> j) & 1U) != 0;
                  members[(live[j] == 0 ? 0 : 2) + (inv ? 1 : 0)] += 1;
                }
                mu *= ((size - 1) % 2 == 0 ? 1 : -1) * factorial(size - 1);
                pa *= weights.block_sum(members, false);
                pt *= weights.block_sum(members, true);
              }
              all += mu * pa;
              thick += mu * pt;
            }
            all *= fixed;
            thick *= fixed;
            out.thick2 += thick;
            if (power) {
              out.powers2 += all;
              thick_powers += thick;
            }
          }
        }
      }
    }
    out.z1 = out.l1 + out.l2;
    out.z2 = out.l1 + out.thick2;
    out.z3 = out.l0 - l0_in_u + out.l2;
    out.z4 = out.l0 + (k >= 1 ? Int(2 * Int(static_cast<unsigned long>(table.lu().size()))) : Int(0))
             + out.l2 - out.powers2;
    out.zY = out.thick2 - thick_powers;
    return out;
  }

  namespace {
    // Uniform integer in [0, bound) by rejection on whole 64-bit draws.
    Int uniform_below(std::mt19937_64& rng, Int const& bound) {
      std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
      while (true) {
        Int x = 0;
        for (std::size_t got = 0; got < bits; got += 64) {
          x <<= 64;
          std::uint64_t v = rng();
          x += Int(static_cast<unsigned long>(v >> 32)) * Int(1UL << 32)
               + Int(static_cast<unsigned long>(v & 0xffffffffUL));
        }
        Int mask = (Int(1) << bits) - 1;
        x &= mask;
        if (x < bound) {
          return x;
        }
      }
    }

    std::size_t uniform_index(std::mt19937_64& rng, std::size_t size) {
      return static_cast<std::size_t>(
          uniform_below(rng, Int(static_cast<unsigned long>(size))).get_ui());
    }

    struct Stratum {
      Kind             kind;
      std::vector<int> alphas;
      Int              weight;
    };
  }  // namespace

  DensityRow density(ChunkTable const&            table,
                     int                          k,
                     Mode                         mode,
                     std::uint64_t                samples,
                     std::optional<std::uint64_t> seed) {
    check_k(k);
    DensityRow row;
    row.params = Params{table.n(), table.d(), k};
    row.mode = mode;
    if (mode == Mode::Exhaustive) {
      row.tally = count_composed(table, k);
      mpq_class ratio(row.tally.zY, row.tally.total());
      row.rho_hat = ratio.get_d();
      return row;
    }
    if (!seed) {
      throw Error(ErrorCode::BadSeed, "sample mode needs --seed");
    }
    if (samples == 0) {
      throw Error(ErrorCode::BadParameter, "sample mode needs --samples >= 1");
    }
    row.seed = seed;
    row.samples = samples;

    Int lh = static_cast<unsigned long>(table.lh().size());
    Int lhu = static_cast<unsigned long>(table.lhu().size());
    std::vector<Stratum> strata;
    strata.push_back({Kind::Cyclic, {}, Int(static_cast<unsigned long>(table.l0().size()))});
    for (int l = 1; l <= k; ++l) {
      for (int s : {1, -1}) {
        strata.push_back({Kind::PowerOfT, {s * l}, Int(static_cast<unsigned long>(table.lu().size()))});
      }
    }
    for (auto const& a : exponent_vectors(k)) {
      strata.push_back({Kind::Composed, a, lh * pow_int(lhu, a.size() - 1)});
    }
    Int total = 0;
    for (auto const& s : strata) {
      total += s.weight;
      if (s.kind == Kind::Cyclic) {
        row.tally.l0 += s.weight;
      } else if (s.kind == Kind::PowerOfT) {
        row.tally.l1 += s.weight;
      } else {
        row.tally.l2 += s.weight;
      }
    }

    std::mt19937_64 rng(*seed);
    U64Tally        hits;
    for (std::uint64_t i = 0; i < samples; ++i) {
      Int pick = uniform_below(rng, total);
      auto it = strata.begin();
      while (pick >= it->weight) {
        pick -= it->weight;
        ++it;
      }
      ComposedWord w;
      w.kind = it->kind;
      w.alphas = it->alphas;
      switch (it->kind) {
        case Kind::Cyclic:
          w.head = table.l0()[uniform_index(rng, table.l0().size())];
          break;
        case Kind::PowerOfT:
          w.head = table.lu()[uniform_index(rng, table.lu().size())];
          break;
        case Kind::Composed:
          w.head = table.lh()[uniform_index(rng, table.lh().size())];
          for (std::size_t j = 1; j < w.alphas.size(); ++j) {
            w.tail.push_back(table.lhu()[uniform_index(rng, table.lhu().size())]);
          }
          break;
      }
      add(hits, classify_Z(table, w));
    }
    row.tally.z1 = static_cast<unsigned long>(hits.z1);
    row.tally.z2 = static_cast<unsigned long>(hits.z2);
    row.tally.z3 = static_cast<unsigned long>(hits.z3);
    row.tally.z4 = static_cast<unsigned long>(hits.z4);
    row.tally.zY = static_cast<unsigned long>(hits.zY);
    double p = static_cast<double>(hits.zY) / static_cast<double>(samples);
    row.rho_hat = p;
    row.rho_se = std::sqrt(p * (1 - p) / static_cast<double>(samples));
    return row;
  }

  DensityRow density(Params const&                p,
                     Mode                         mode,
                     std::uint64_t                samples,
                     std::optional<std::uint64_t> seed) {
    check_n(p.n);
    if (mode == Mode::Sample && !seed) {
      throw Error(ErrorCode::BadSeed, "sample mode needs --seed");
    }
    ChunkTable table(p.n, p.d);
    return density(table, p.k, mode, samples, seed);
  }

  CensusRow census_row(Params const&                p,
                       Mode                         mode,
                       std::uint64_t                samples,
                       std::optional<std::uint64_t> seed) {
    check_n(p.n);
    check_d(p.d);
    check_k(p.k);
    if (mode == Mode::Sample && !seed) {
      throw Error(ErrorCode::BadSeed, "sample mode needs --seed");
    }
    CensusRow row;
    row.params = p;
    row.lh = enumerate_LH(p.n, p.d, NfSystem::General);
    row.lhu = enumerate_LHU(p.n, p.d);
    row.l_U = enumerate_LU(p.n, p.d);
    row.e_prime = enumerate_e_prime(p.n, p.d);
    row.t_H = row.lh.total - row.e_prime;
    row.t_HU = row.lhu.total - row.lhu.e;
    ChunkTable table(p.n, p.d);
    row.density = density(table, p.k, mode, samples, seed);

    auto& f = row.formulas;
    if (p.n == 5) {
      f.emplace_back("l_H", formula::l_H(p.d));
      f.emplace_back("l_HU", formula::l_HU(p.d));
      f.emplace_back("e_prime", formula::e_prime(p.d));
    }
    f.emplace_back("e", formula::e(p.d));
    f.emplace_back("l_U", formula::l_U(p.d));
    f.emplace_back("l1", formula::l_i(p.d, p.k));
    f.emplace_back("l2", formula::l_ii(row.lh.total, row.lhu.total, p.k));
    f.emplace_back("z2_ii", formula::z2_ii(row.t_H, row.t_HU, p.k));
    return row;
  }

  namespace {
    std::string format_double(double v) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10g", v);
      return buf;
    }

    nlohmann::ordered_json big(Int const& v) {
      if (v.fits_slong_p()) {
        return v.get_si();
      }
      return v.get_str();
    }

    nlohmann::ordered_json tagged(Int const& v, char const* source) {
      return {{"value", big(v)}, {"source", source}};
    }
  }  // namespace

  std::string csv_header() {
    return "n,d,k,l_H,l_U,l_HU,e,e_prime,l1,l2,l_dk,z1,z2,z3,z4,zY,rho_hat,mode,seed";
  }

  std::string csv_line(CensusRow const& row) {
    auto const&        t = row.density.tally;
    std::ostringstream out;
    out << row.params.n << ',' << row.params.d << ',' << row.params.k << ','
        << row.lh.total << ',' << row.l_U << ',' << row.lhu.total << ','
        << row.lhu.e << ',' << row.e_prime << ',' << t.l1 << ',' << t.l2 << ','
        << t.total() << ',' << t.z1 << ',' << t.z2 << ',' << t.z3 << ',' << t.z4
        << ',' << t.zY << ',' << format_double(row.density.rho_hat) << ','
        << mode_name(row.density.mode) << ',';
    if (row.density.seed) {
      out << *row.density.seed;
    }
    return out.str();
  }

  std::string row_json(CensusRow const& row) {
    using nlohmann::ordered_json;
    auto const&  t = row.density.tally;
    ordered_json j;
    j["n"] = row.params.n;
    j["d"] = row.params.d;
    j["k"] = row.params.k;
    j["alpha"] = row.params.alpha();
    j["gamma"] = row.params.gamma();
    j["beta"] = row.params.beta();
    char const* en = "ENUMERATED";
    ordered_json counts;
    counts["l_H"] = tagged(row.lh.total, en);
    ordered_json by_len = ordered_json::array();
    for (auto const& c : row.lh.by_length) {
      by_len.push_back(big(c));
    }
    counts["l_HS"] = {{"value", by_len}, {"source", en}};
    counts["l_U"] = tagged(row.l_U, en);
    counts["l_HU"] = tagged(row.lhu.total, en);
    counts["e"] = tagged(row.lhu.e, en);
    counts["e_prime"] = tagged(row.e_prime, en);
    counts["t_H"] = tagged(row.t_H, en);
    counts["t_HU"] = tagged(row.t_HU, en);
    counts["a"] = tagged(row.lhu.a, en);
    counts["b"] = tagged(row.lhu.b, en);
    counts["c"] = tagged(row.lhu.c, en);
    counts["l_d0"] = tagged(t.l0, en);
    counts["l1"] = tagged(t.l1, en);
    counts["l2"] = tagged(t.l2, en);
    counts["l_dk"] = tagged(t.total(), en);
    j["counts"] = counts;
    ordered_json formulas;
    for (auto const& [name, v] : row.formulas) {
      formulas[name] = tagged(v, "FORMULA");
    }
    j["formulas"] = formulas;
    bool         exact = row.density.mode == Mode::Exhaustive;
    ordered_json z;
    z["z1"] = big(t.z1);
    z["z2"] = big(t.z2);
    z["z3"] = big(t.z3);
    z["z4"] = big(t.z4);
    z["zY"] = big(t.zY);
    z["source"] = exact ? "ENUMERATED" : "SAMPLED";
    j["z"] = z;
    j["convention"] = convention_name(Convention::AllChunksFree);
    j["mode"] = mode_name(row.density.mode);
    j["rho_hat"] = row.density.rho_hat;
    if (exact) {
      j["rho_se"] = nullptr;
      j["samples"] = nullptr;
      j["seed"] = nullptr;
    } else {
      j["rho_se"] = row.density.rho_se;
      j["samples"] = row.density.samples;
      j["seed"] = *row.density.seed;
    }
    return j.dump(2);
  }

  UniquenessReport check_uniqueness(int n, int max_len, NfSystem system) {
    check_n(n);
    auto                                g = cycle_with_chord(n);
    auto                                words = reduced_words(alphabet(n - 1), max_len);
    std::map<NormalForm, std::size_t>   hits;
    UniquenessReport                    rep;
    for (auto const& level : words) {
      for (auto const& w : level) {
        Word word(w);
        auto nf = minimal_form(g, word);
        auto& h = hits[nf];
        h += is_normal_form(n, word, system) ? 1 : 0;
        ++rep.words;
      }
    }
    rep.elements = hits.size();
    for (auto const& [nf, count] : hits) {
      rep.violations += count != 1;
    }
    return rep;
  }

}  // namespace pcg::census
