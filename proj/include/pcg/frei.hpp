#ifndef PCG_FREI_HPP_
#define PCG_FREI_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pcg/graph.hpp"
#include "pcg/words.hpp"

namespace pcg {

  // Verdicts about the one-relator quotient G = 𝔾 / N(s^n).

  enum class Status { Embeds, DoesNotEmbed, Unknown, RestrictedEmbeds };

  std::string status_name(Status s);

  // Justification tags.
  namespace tag {
    // lk(t) a clique, s t-thick, s outside <st(t)>, s a t-root, n >= 3.
    inline constexpr char const* kThickRoot = "THICK_T_ROOT";
    // supp(s) a synchronised clique.
    inline constexpr char const* kSyncClique = "SYNCHRONISED_CLIQUE";
    // supp(s) synchronised and independent.
    inline constexpr char const* kSyncIndependent = "SYNCHRONISED_INDEPENDENT";
    // supp(s) synchronised: the amalgam factor off the support embeds.
    inline constexpr char const* kSyncAmalgam = "SYNCHRONISED_AMALGAM";
    // supp(s) a clique that is not synchronised: a commutator collapses.
    inline constexpr char const* kCliqueCollapse = "UNSYNCHRONISED_CLIQUE_COLLAPSE";
    // Thick t-root test passed after deleting central generators.
    inline constexpr char const* kCentralReduction = "CENTRAL_FACTOR_REDUCTION";
    // Thick t-root test passed after closing lk(t) into a chord on a cycle.
    inline constexpr char const* kCycleChord = "CYCLE_CHORD_REDUCTION";
  }  // namespace tag

  struct CollapseWitness {
    Vertex     t = 0;
    Vertex     x = 0;
    Vertex     a = 0;
    NormalForm tail;  // s^n with the t-letters removed
  };

  struct Conclusion {
    VertexSet                      subset = 0;
    Status                         status = Status::Unknown;
    std::string                    justification;
    std::optional<CollapseWitness> witness;
  };

  struct TheoremMainRecord {
    Vertex t = 0;
    bool   lk_clique = false;
    // Not evaluated when lk(t) is not a clique.
    std::optional<bool> t_thick;
    std::optional<bool> cyclically_t_thick;
    bool                not_in_star = false;
    bool                t_root = false;
    std::string         verdict;

    bool hypotheses_hold() const {
      return lk_clique && t_thick.value_or(false) && not_in_star && t_root;
    }
  };

  struct TheoremMainResult {
    TheoremMainRecord       record;
    std::vector<Conclusion> conclusions;
    std::optional<int>      order_of_s;
    bool                    word_problem = false;
  };

  struct AmalgamRecord {
    bool      synchronised = false;
    bool      supp_clique = false;
    bool      supp_independent = false;
    VertexSet y = 0;
    VertexSet lk_y = 0;
    VertexSet x = 0;
  };

  struct AmalgamResult {
    AmalgamRecord           record;
    std::vector<Conclusion> conclusions;
    std::optional<int>      order_of_s;
    bool                    word_problem = false;
    bool                    conjugacy_problem = false;
  };

  struct FreiReport {
    NormalForm                     s;
    int                            n = 1;
    std::vector<TheoremMainRecord> per_t;
    AmalgamRecord                  amalgam;
    std::vector<Conclusion>        conclusions;
    std::optional<int>             order_of_s;
    bool                           word_problem = false;
    bool                           conjugacy_problem = false;
  };

  TheoremMainResult
  check_theorem_main(CommutationGraph const& g, Word const& s, Vertex t, int n);

  AmalgamResult check_amalgam(CommutationGraph const& g, Word const& s, int n);

  // All candidate t in supp(s) unless only_t is given.
  FreiReport magnus_verdict(CommutationGraph const& g,
                            Word const&             s,
                            int                     n,
                            std::optional<Vertex>   only_t = std::nullopt);

  std::string report_json(CommutationGraph const& g, FreiReport const& r);
  std::string report_text(CommutationGraph const& g, FreiReport const& r);

}  // namespace pcg

#endif  // PCG_FREI_HPP_
