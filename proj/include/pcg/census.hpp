#ifndef PCG_CENSUS_HPP_
#define PCG_CENSUS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pcg/graph.hpp"
#include "pcg/hnn.hpp"
#include "pcg/words.hpp"

// Normal forms, counting formulas and composed words over the cycle with a
// chord C'_n (see cycle_with_chord).  Vertex t has index 0 and a_i has index
// i, so H = <a1, ..., a_{n-1}> is the group of an (n-1)-cycle and
// U = <lk(t)> = <a1, a_{n-1}>.

namespace pcg::census {

  using Int = mpz_class;

  inline constexpr std::size_t kDefaultBudget = 5'000'000;

  // General: freely reduced with no factor a_{i+1}^e a_{i-1}^b a_i^f (b may be
  // zero, indices mod n-1).  Square (n = 5 only): w1 w2 with w1 reduced over
  // {a2, a4} and w2 reduced over {a1, a3}.
  enum class NfSystem { General, Square };

  struct Params {
    int n = 5;
    int d = 0;
    int k = 0;

    int alpha() const {
      return 2 * n - 5;
    }
    int gamma() const {
      return 2 * n - 7;
    }
    int beta() const {
      return 2 * n - 9;
    }
  };

  void check_n(int n);

  bool is_normal_form(int n, Word const& w, NfSystem system);

  // All normal forms of length <= d, shortest first.
  std::vector<Word> normal_forms(int         n,
                                 int         d,
                                 NfSystem    system,
                                 std::size_t budget = kDefaultBudget);

  struct LHCounts {
    std::vector<Int> by_length;  // l_{H,S}(m), m = 0..d
    Int              total;      // l_H(d)
  };

  LHCounts enumerate_LH(int n, int d, NfSystem system);

  struct LHUCounts {
    std::vector<Int> by_length;  // exact length m, m = 0..d
    Int              total;      // l_H^U(d)
    Int              a, b, c;    // nontrivial forms split by first letter
    Int              e;          // outside U ∪ Maln_H(U)
  };

  LHUCounts enumerate_LHU(int n, int d);

  // |{a_{n-1}^p a1^q : |p| + |q| <= d}|.
  Int enumerate_LU(int n, int d);

  // Elements h of length <= d whose part after the maximal left U-divisor
  // lies outside U ∪ Maln_H(U).
  Int enumerate_e_prime(int n, int d);

  // Cyclically minimal elements of H of length <= d.
  Int enumerate_L0(int n, int d);

  namespace formula {
    Int l_H(int d);                // n = 5
    Int l_HS(int m);               // n = 5, exact length m
    Int l_HU(int d);               // n = 5
    Int l_HU_exact(int m);         // n = 5, exact length m
    Int l_U(int d);
    Int e(int d);
    Int e_prime(int d);
    Int l_i(int d, int k);
    Int l_i_S(int d);              // exact t-length, either sign
    // Type (ii) count for one composition into r parts, sign choices
    // included.
    Int l_ii_S(Int const& lH, Int const& lHU, int r);
    Int l_ii_S_total(Int const& lH, Int const& lHU, int k);
    // lH/lHU [(2 lHU + 1)^k - 1]; throws NonIntegralFormula when inexact.
    Int l_ii(Int const& lH, Int const& lHU, int k);
    Int z2_ii(Int const& tH, Int const& tHU, int k);
    // Upper bound on type (ii) t-powers with a = l_H^U(d), b = l_H(d),
    // c = 2d.
    double p_ii_bound(Int const& a, Int const& b, int d, int k);
  }  // namespace formula

  // Interval bounds for n >= 6 as exact rationals.
  struct Interval {
    mpq_class lo, hi;

    bool holds(Int const& v) const {
      return lo <= v && v <= hi;
    }
  };

  namespace bounds {
    Interval l_HS(int n, int m);
    Interval l_H(int n, int d);
    Interval l_HU_nontrivial(int n, int d);
    Interval split_a(int n, int d);
    Interval split_bc(int n, int d);
  }  // namespace bounds

  // Chunk data for composed words at fixed (n, d).
  class ChunkTable {
   public:
    ChunkTable(int n, int d, std::size_t budget = kDefaultBudget);

    int n() const noexcept {
      return _n;
    }
    int d() const noexcept {
      return _d;
    }
    CommutationGraph const& graph() const noexcept {
      return _graph;
    }
    Vertex t() const noexcept {
      return 0;
    }
    VertexSet u() const noexcept {
      return _graph.neighbours(0);
    }

    // L_H(d) and L_H^U(d) as canonical forms.
    std::vector<NormalForm> const& lh() const noexcept {
      return _lh;
    }
    std::vector<NormalForm> const& lhu() const noexcept {
      return _lhu;
    }
    // L(d,0) and L_U(d).
    std::vector<NormalForm> const& l0() const noexcept {
      return _l0;
    }
    std::vector<NormalForm> const& lu() const noexcept {
      return _lu;
    }

    // Signed symbol code of each chunk: 0 for chunks in U, otherwise ±id
    // with id indexing symbols().
    std::vector<int> const& lh_symbol() const noexcept {
      return _lh_sym;
    }
    std::vector<int> const& lhu_symbol() const noexcept {
      return _lhu_sym;
    }
    bool symbol_thick(int code) const {
      return _sym_thick.at(code < 0 ? -code : code);
    }
    std::vector<SigmaLetter> const& symbols() const noexcept {
      return _symbols;
    }

   private:
    int                      _n, _d;
    CommutationGraph         _graph;
    std::vector<NormalForm>  _lh, _lhu, _l0, _lu;
    std::vector<int>         _lh_sym, _lhu_sym;
    std::vector<SigmaLetter> _symbols;    // index 0 unused
    std::vector<bool>        _sym_thick;  // index 0: U itself
  };

  // Which chunks of a type (ii) word may be trivial.
  enum class Convention {
    AllChunksFree,     // u·g1 over L_H(d), g2..gr over L_H^U(d)
    FirstChunkFree,    // as above but g2..gr nontrivial
    NoTrivialChunks,   // g1, ..., gr all nontrivial
  };

  std::string convention_name(Convention c);

  enum class Kind { Cyclic, PowerOfT, Composed };

  // An element of L(d,k).  Cyclic: head in L(d,0).  PowerOfT: head u in
  // L_U(d) and one exponent.  Composed: head u·g1, tail g2..gr, exponents
  // alpha_1..alpha_r.
  struct ComposedWord {
    Kind                    kind = Kind::Cyclic;
    NormalForm              head;
    std::vector<NormalForm> tail;
    std::vector<int>        alphas;
  };

  // The factorization read off the composed shape, one chunk per t-letter
  // gap, without pinching.
  HnnWord formal_factorization(ChunkTable const& table, ComposedWord const& w);
  Word    to_word(ChunkTable const& table, ComposedWord const& w);

  struct ZFlags {
    bool z1 = false;  // outside H
    bool z2 = false;  // t-thick (only assessed outside H)
    bool z3 = false;  // outside <st(t)>: not in L_U nor of the form u t^l
    bool z4 = false;  // t-root

    bool all() const {
      return z1 && z2 && z3 && z4;
    }
    bool operator==(ZFlags const&) const = default;
  };

  ZFlags classify_Z(ChunkTable const& table, ComposedWord const& w);

  struct ComposedTally {
    Int l0, l1, l2;
    Int z1, z2, z3, z4, zY;
    Int thick2;         // type (ii) t-thick
    Int powers2;        // type (ii) t-powers
    Int degenerate2;    // type (ii) with some trivial chunk
    Int nonreduced2;    // type (ii) whose shape is not reduced
    Int noncyclic2;     // type (ii) reduced but not cyclically reduced

    Int total() const {
      return l0 + l1 + l2;
    }
  };

  // Visits every element of L(d,k), type (ii) under the given convention.
  // The callback, when set, sees each word with its flags.
  using Visitor = std::function<void(ComposedWord const&, ZFlags const&)>;

  ComposedTally enumerate_composed(ChunkTable const& table,
                                   int               k,
                                   Convention        convention,
                                   Visitor const&    visit = nullptr,
                                   std::uint64_t     budget = 100'000'000);

  // Exact tallies for the AllChunksFree convention without listing type (ii)
  // words one by one: periodic sequences are counted by Möbius inversion over
  // divisors, sequences with trivial chunks by summing over symbol choices.
  ComposedTally count_composed(ChunkTable const& table,
                               int               k,
                               Convention convention = Convention::AllChunksFree,
                               std::uint64_t     budget = 200'000'000);

  // Stand-alone classifier on a sequence of signed symbol codes: t-letters
  // are ±kTCode, symbols ±id.  Returns true when the cyclic reduction is a
  // proper power.
  inline constexpr int kTCode = 1 << 30;
  bool code_sequence_is_power(std::vector<int> seq);

  enum class Mode { Exhaustive, Sample };

  std::string mode_name(Mode m);

  struct DensityRow {
    Params                       params;
    Mode                         mode = Mode::Exhaustive;
    std::optional<std::uint64_t> seed;
    std::uint64_t                samples = 0;
    ComposedTally                tally;     // exact counts, or sample hits
    double                       rho_hat = 0;
    double                       rho_se = 0;  // binomial standard error
  };

  DensityRow density(Params const&                p,
                     Mode                         mode,
                     std::uint64_t                samples = 0,
                     std::optional<std::uint64_t> seed = std::nullopt);

  DensityRow density(ChunkTable const&            table,
                     int                          k,
                     Mode                         mode,
                     std::uint64_t                samples = 0,
                     std::optional<std::uint64_t> seed = std::nullopt);

  // Exact sizes l0, l1, l2 come from the chunk tables in both modes; the z
  // tallies are exact counts in exhaustive mode and sample hits otherwise.
  struct CensusRow {
    Params     params;
    LHCounts   lh;
    LHUCounts  lhu;
    Int        l_U, e_prime, t_H, t_HU;
    DensityRow density;
    // Closed-form values next to the enumerated ones, by column name.
    std::vector<std::pair<std::string, Int>> formulas;
  };

  CensusRow census_row(Params const&                p,
                       Mode                         mode = Mode::Exhaustive,
                       std::uint64_t                samples = 0,
                       std::optional<std::uint64_t> seed = std::nullopt);

  std::string csv_header();
  std::string csv_line(CensusRow const& row);
  std::string row_json(CensusRow const& row);

  struct UniquenessReport {
    std::size_t words = 0;       // freely reduced words examined
    std::size_t elements = 0;    // distinct canonical elements
    std::size_t violations = 0;  // elements without exactly one normal form
  };

  // Buckets freely reduced words of length <= max_len over a1..a_{n-1} by
  // canonical element and counts normal forms per bucket.
  UniquenessReport check_uniqueness(int n, int max_len, NfSystem system);

}  // namespace pcg::census

#endif  // PCG_CENSUS_HPP_
