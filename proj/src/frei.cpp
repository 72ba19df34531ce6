#include "pcg/frei.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pcg/error.hpp"
#include "pcg/hnn.hpp"

namespace pcg {

  std::string status_name(Status s) {
    switch (s) {
      case Status::Embeds: return "EMBEDS";
      case Status::DoesNotEmbed: return "DOES_NOT_EMBED";
      case Status::Unknown: return "UNKNOWN";
      case Status::RestrictedEmbeds: return "RESTRICTED_EMBEDS";
    }
    return "UNKNOWN";
  }

  namespace {
    NormalForm checked_relator(CommutationGraph const& g, Word const& s, int n) {
      if (n < 1) {
        throw Error(ErrorCode::BadParameter, "the exponent n must be >= 1");
      }
      auto nf = minimal_form(g, s);
      if (nf.is_identity()) {
        throw Error(ErrorCode::BadParameter, "the relator must be nontrivial");
      }
      if (!is_cyclically_minimal(g, nf.word())) {
        throw Error(ErrorCode::NotCyclicallyMinimal, format_word(g, nf));
      }
      return nf;
    }

    int exponent_sum(Word const& w, Vertex v) {
      int e = 0;
      for (Letter x : w) {
        if (x.vertex() == v) {
          e += x.sign();
        }
      }
      return e;
    }

    bool is_embedding(Status s) {
      return s == Status::Embeds || s == Status::RestrictedEmbeds;
    }

    // Keeps the first copy of repeated conclusions and rejects a non-embedding
    // of a subset of something claimed to embed.
    std::vector<Conclusion> merge(std::vector<Conclusion> const& all,
                                  CommutationGraph const&        g) {
      std::vector<Conclusion> out;
      for (auto const& c : all) {
        bool dup = std::any_of(out.begin(), out.end(), [&](auto const& o) {
          return o.subset == c.subset && o.status == c.status
                 && o.justification == c.justification;
        });
        if (!dup) {
          out.push_back(c);
        }
      }
      for (auto const& p : out) {
        for (auto const& q : out) {
          if (is_embedding(p.status) && q.status == Status::DoesNotEmbed
              && subset_of(q.subset, p.subset)) {
            throw Error(ErrorCode::ConflictingVerdicts,
                        "<" + g.names_of(p.subset) + "> embeds ("
                            + p.justification + ") but <"
                            + g.names_of(q.subset) + "> does not ("
                            + q.justification + ")");
          }
        }
      }
      return out;
    }
  }  // namespace

  TheoremMainResult check_theorem_main(CommutationGraph const& g,
                                       Word const&             s,
                                       Vertex                  t,
                                       int                     n) {
    auto      nf = checked_relator(g, s, n);
    VertexSet supp = letter_support(nf.word());
    if (t < 0 || t >= g.size()) {
      throw Error(ErrorCode::UnknownVertex, std::to_string(t));
    }
    if (!contains(supp, t)) {
      throw Error(ErrorCode::TNotInSupport, g.name(t));
    }
    TheoremMainResult res;
    auto&             rec = res.record;
    rec.t = t;
    rec.lk_clique = is_clique(g, g.neighbours(t));
    auto h = hnn_factorize(g, t, nf.word());
    if (rec.lk_clique) {
      rec.t_thick = is_t_thick(g, h);
      rec.cyclically_t_thick = is_cyclically_t_thick(g, h);
    }
    rec.not_in_star = !subset_of(supp, star(g, t));
    rec.t_root = is_t_root(g, h);
    if (!rec.hypotheses_hold()) {
      rec.verdict = "FAILS";
      return res;
    }
    if (n < 3) {
      rec.verdict = "HOLDS_BELOW_RANGE";
      return res;
    }
    rec.verdict = "APPLIES";
    res.conclusions.push_back(
        {g.all() & ~bit(t), Status::Embeds, tag::kThickRoot, std::nullopt});
    res.order_of_s = n;
    res.word_problem = n >= 4;
    return res;
  }

  AmalgamResult check_amalgam(CommutationGraph const& g, Word const& s, int n) {
    auto          nf = checked_relator(g, s, n);
    AmalgamResult res;
    auto&         rec = res.record;
    rec.y = letter_support(nf.word());
    rec.lk_y = link(g, rec.y);
    rec.x = g.all() & ~(rec.y | rec.lk_y);
    rec.synchronised = is_synchronised(g, rec.y);
    rec.supp_clique = is_clique(g, rec.y);
    rec.supp_independent = is_independent(g, rec.y);

    if (rec.synchronised && (rec.supp_clique || rec.supp_independent)) {
      auto why = rec.supp_clique ? tag::kSyncClique : tag::kSyncIndependent;
      for (Vertex t : members(rec.y)) {
        res.conclusions.push_back(
            {g.all() & ~bit(t), Status::Embeds, why, std::nullopt});
      }
      res.order_of_s = n;
      res.word_problem = true;
      res.conjugacy_problem = rec.supp_clique || n >= 2;
    } else if (rec.synchronised) {
      VertexSet off = g.all() & ~rec.y;
      if (off != 0) {
        res.conclusions.push_back(
            {off, Status::Embeds, tag::kSyncAmalgam, std::nullopt});
      }
    } else if (rec.supp_clique) {
      for (Vertex t : members(rec.y)) {
        auto xs = members(rec.x & g.neighbours(t));
        if (xs.empty()) {
          continue;
        }
        CollapseWitness w;
        w.t = t;
        w.x = xs.front();
        w.a = members(rec.y & ~g.neighbours(w.x)).front();
        std::vector<Letter> tail;
        for (Vertex y : members(rec.y & ~bit(t))) {
          int e = n * exponent_sum(nf.word(), y);
          for (int i = 0; i < std::abs(e); ++i) {
            tail.push_back(Letter::make(y, e < 0));
          }
        }
        w.tail = minimal_form(g, Word(tail));
        res.conclusions.push_back(
            {g.all() & ~bit(t), Status::DoesNotEmbed, tag::kCliqueCollapse, w});
      }
    }
    return res;
  }

  namespace {
    // Deletes central generators and retries the thick t-root test on the
    // remaining factor.
    void central_reduction(CommutationGraph const&        g,
                           NormalForm const&              s,
                           int                            n,
                           std::vector<Vertex> const&     ts,
                           FreiReport&                    rep,
                           std::vector<Conclusion>&       out) {
      VertexSet z = central_vertices(g);
      VertexSet a0 = g.all() & ~z;
      if (z == 0 || a0 == 0) {
        return;
      }
      auto                  g0 = g.induced(a0);
      std::map<Vertex, int> to_new;
      for (Vertex v : members(a0)) {
        to_new[v] = static_cast<int>(to_new.size());
      }
      std::vector<Letter> s0;
      for (Letter x : s.word()) {
        if (!contains(z, x.vertex())) {
          s0.push_back(Letter::make(to_new[x.vertex()], x.inverse()));
        }
      }
      auto nf0 = minimal_form(g0, Word(s0));
      if (nf0.is_identity() || !is_cyclically_minimal(g0, nf0.word())) {
        return;
      }
      for (Vertex t : ts) {
        if (contains(z, t)
            || !contains(letter_support(nf0.word()), to_new[t])) {
          continue;
        }
        auto r = check_theorem_main(g0, nf0.word(), to_new[t], n);
        if (r.record.verdict == "APPLIES") {
          out.push_back({a0 & ~bit(t), Status::Embeds, tag::kCentralReduction,
                         std::nullopt});
          rep.order_of_s = n;
        }
      }
    }

    // On a cycle, adding the edge between the two neighbours of t makes lk(t)
    // a clique; what embeds there restricts to <A \ st(t)>.
    void cycle_chord(CommutationGraph const&    g,
                     NormalForm const&          s,
                     int                        n,
                     std::vector<Vertex> const& ts,
                     FreiReport&                rep,
                     std::vector<Conclusion>&   out) {
      if (!is_cycle(g)) {
        return;
      }
      for (Vertex t : ts) {
        auto nb = members(g.neighbours(t));
        auto g2 = g.with_edge(nb[0], nb[1]);
        auto s2 = minimal_form(g2, s.word());
        if (!contains(letter_support(s2.word()), t)
            || !is_cyclically_minimal(g2, s2.word())) {
          continue;
        }
        auto r = check_theorem_main(g2, s2.word(), t, n);
        if (r.record.verdict == "APPLIES") {
          out.push_back({g.all() & ~star(g, t), Status::RestrictedEmbeds,
                         tag::kCycleChord, std::nullopt});
          rep.order_of_s = n;
        }
      }
    }
  }  // namespace

  FreiReport magnus_verdict(CommutationGraph const& g,
                            Word const&             s,
                            int                     n,
                            std::optional<Vertex>   only_t) {
    FreiReport rep;
    rep.s = checked_relator(g, s, n);
    rep.n = n;
    VertexSet supp = letter_support(rep.s.word());
    std::vector<Vertex> ts;
    if (only_t) {
      if (*only_t < 0 || *only_t >= g.size()) {
        throw Error(ErrorCode::UnknownVertex, std::to_string(*only_t));
      }
      if (!contains(supp, *only_t)) {
        throw Error(ErrorCode::TNotInSupport, g.name(*only_t));
      }
      ts.push_back(*only_t);
    } else {
      ts = members(supp);
    }
    std::vector<Conclusion> all;
    for (Vertex t : ts) {
      auto r = check_theorem_main(g, rep.s.word(), t, n);
      rep.per_t.push_back(r.record);
      all.insert(all.end(), r.conclusions.begin(), r.conclusions.end());
      if (r.order_of_s) {
        rep.order_of_s = r.order_of_s;
      }
      rep.word_problem = rep.word_problem || r.word_problem;
    }
    auto am = check_amalgam(g, rep.s.word(), n);
    rep.amalgam = am.record;
    all.insert(all.end(), am.conclusions.begin(), am.conclusions.end());
    if (am.order_of_s) {
      rep.order_of_s = am.order_of_s;
    }
    rep.word_problem = rep.word_problem || am.word_problem;
    rep.conjugacy_problem = am.conjugacy_problem;
    central_reduction(g, rep.s, n, ts, rep, all);
    cycle_chord(g, rep.s, n, ts, rep, all);
    rep.conclusions = merge(all, g);
    return rep;
  }

  namespace {
    nlohmann::json names_json(CommutationGraph const& g, VertexSet s) {
      auto arr = nlohmann::json::array();
      for (Vertex v : members(s)) {
        arr.push_back(g.name(v));
      }
      return arr;
    }

    nlohmann::json optional_bool(std::optional<bool> b) {
      return b ? nlohmann::json(*b) : nlohmann::json(nullptr);
    }

    std::string commutator_text(CommutationGraph const& g,
                                CollapseWitness const&  w) {
      return "[" + g.name(w.x) + ", " + format_word(g, w.tail) + "]";
    }
  }  // namespace

  std::string report_json(CommutationGraph const& g, FreiReport const& r) {
    nlohmann::ordered_json j;
    j["s"] = format_word(g, r.s);
    j["n"] = r.n;
    j["per_t"] = nlohmann::ordered_json::array();
    for (auto const& p : r.per_t) {
      nlohmann::ordered_json e;
      e["t"] = g.name(p.t);
      e["lk_clique"] = p.lk_clique;
      e["t_thick"] = optional_bool(p.t_thick);
      e["cyclically_t_thick"] = optional_bool(p.cyclically_t_thick);
      e["not_in_star"] = p.not_in_star;
      e["t_root"] = p.t_root;
      e["verdict"] = p.verdict;
      j["per_t"].push_back(e);
    }
    nlohmann::ordered_json am;
    am["synchronised"] = r.amalgam.synchronised;
    am["supp_clique"] = r.amalgam.supp_clique;
    am["supp_independent"] = r.amalgam.supp_independent;
    am["decomposition"] = {{"Y", names_json(g, r.amalgam.y)},
                           {"lk_Y", names_json(g, r.amalgam.lk_y)},
                           {"X", names_json(g, r.amalgam.x)}};
    j["amalgam"] = am;
    j["conclusions"] = nlohmann::ordered_json::array();
    for (auto const& c : r.conclusions) {
      nlohmann::ordered_json e;
      e["subset"] = names_json(g, c.subset);
      e["status"] = status_name(c.status);
      e["justification"] = c.justification;
      if (c.witness) {
        e["witness"] = {{"t", g.name(c.witness->t)},
                        {"x", g.name(c.witness->x)},
                        {"a", g.name(c.witness->a)},
                        {"relation", commutator_text(g, *c.witness)}};
      }
      j["conclusions"].push_back(e);
    }
    j["order_of_s"] = r.order_of_s ? nlohmann::ordered_json(*r.order_of_s)
                                   : nlohmann::ordered_json("unknown");
    j["word_problem"] = r.word_problem ? "decidable" : "unknown";
    j["conjugacy_problem"] = r.conjugacy_problem ? "decidable" : "unknown";
    return j.dump(2);
  }

  std::string report_text(CommutationGraph const& g, FreiReport const& r) {
    std::ostringstream out;
    auto flag = [](std::optional<bool> b) {
      return b ? (*b ? "yes" : "no") : "n/a";
    };
    out << "relator s = " << format_word(g, r.s) << ", n = " << r.n << "\n";
    for (auto const& p : r.per_t) {
      out << "  t = " << g.name(p.t) << ": lk clique " << flag(p.lk_clique)
          << ", t-thick " << flag(p.t_thick) << " (cyclically "
          << flag(p.cyclically_t_thick) << "), outside star "
          << flag(p.not_in_star) << ", t-root " << flag(p.t_root) << " -> "
          << p.verdict << "\n";
    }
    auto const& a = r.amalgam;
    out << "  supp(s) = " << g.names_of(a.y) << ": synchronised "
        << flag(a.synchronised) << ", clique " << flag(a.supp_clique)
        << ", independent " << flag(a.supp_independent) << "; lk = "
        << g.names_of(a.lk_y) << ", X = " << g.names_of(a.x) << "\n";
    if (r.conclusions.empty()) {
      out << "  no embedding conclusions\n";
    }
    for (auto const& c : r.conclusions) {
      out << "  <" << g.names_of(c.subset) << "> " << status_name(c.status)
          << " [" << c.justification << "]";
      if (c.witness) {
        out << " witness " << commutator_text(g, *c.witness) << " = 1 in G";
      }
      out << "\n";
    }
    out << "  order of s: "
        << (r.order_of_s ? std::to_string(*r.order_of_s) : "unknown") << "\n";
    out << "  word problem: " << (r.word_problem ? "decidable" : "unknown")
        << "\n";
    out << "  conjugacy problem: "
        << (r.conjugacy_problem ? "decidable" : "unknown") << "\n";
    return out.str();
  }

}  // namespace pcg
