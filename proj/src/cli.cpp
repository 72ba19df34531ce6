#include "pcg/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcg/census.hpp"
#include "pcg/error.hpp"
#include "pcg/frei.hpp"
#include "pcg/graph.hpp"
#include "pcg/hnn.hpp"
#include "pcg/words.hpp"

namespace pcg::cli {

  namespace {
    using nlohmann::ordered_json;

    struct Options {
      std::string                  graph, word, word2, t, mode = "exhaustive", out;
      std::optional<int>           n, d, k;
      std::optional<std::uint64_t> samples, seed;
      bool                         json = false;
    };

    // Raised for problems the parser cannot see, such as a missing flag that
    // only some subcommands need.
    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    void need(bool have, char const* flag, std::string const& cmd) {
      if (!have) {
        throw UsageError(cmd + " requires " + flag);
      }
    }

    std::string yes_no(bool b) {
      return b ? "true" : "false";
    }

    std::string cmd_normalize(Options const& o, CommutationGraph const& g) {
      auto nf = minimal_form(g, parse_word(o.word, g));
      if (o.json) {
        return ordered_json{{"word", format_word(g, nf)}, {"length", nf.length()}}.dump(2);
      }
      return format_word(g, nf);
    }

    std::string cmd_equal(Options const& o, CommutationGraph const& g) {
      bool r = equal(g, parse_word(o.word, g), parse_word(o.word2, g));
      return o.json ? ordered_json{{"equal", r}}.dump(2) : yes_no(r);
    }

    std::string cmd_conjugate(Options const& o, CommutationGraph const& g) {
      bool r = conjugate_test(g, parse_word(o.word, g), parse_word(o.word2, g));
      return o.json ? ordered_json{{"conjugate", r}}.dump(2) : yes_no(r);
    }

    std::string cmd_support(Options const& o, CommutationGraph const& g) {
      VertexSet s = support(g, parse_word(o.word, g));
      if (o.json) {
        ordered_json names = ordered_json::array();
        for (Vertex v : members(s)) {
          names.push_back(g.name(v));
        }
        return ordered_json{{"support", names}}.dump(2);
      }
      return g.names_of(s);
    }

    std::string cmd_hnn(Options const& o, CommutationGraph const& g) {
      Vertex t = g.index(o.t);
      auto   h = hnn_factorize(g, t, parse_word(o.word, g));
      bool   red = is_reduced_hnn(g, h);
      bool   cyc = is_cyclically_reduced_hnn(g, h);
      if (o.json) {
        ordered_json chunks = ordered_json::array();
        for (auto const& c : h.chunks) {
          chunks.push_back(format_word(g, c));
        }
        return ordered_json{{"t", g.name(t)},
                            {"chunks", chunks},
                            {"signs", h.signs},
                            {"t_length", h.t_length()},
                            {"reduced", red},
                            {"cyclically_reduced", cyc}}
            .dump(2);
      }
      std::ostringstream out;
      out << format_hnn(g, h) << '\n'
          << "t_length: " << h.t_length() << '\n'
          << "reduced: " << yes_no(red) << '\n'
          << "cyclically_reduced: " << yes_no(cyc);
      return out.str();
    }

    std::string cmd_sigma(Options const& o, CommutationGraph const& g) {
      Vertex t = g.index(o.t);
      auto   h = hnn_factorize(g, t, parse_word(o.word, g));
      auto   s = sigma(g, h);
      auto   c = cyclically_reduce(s);
      bool   root = !is_proper_power(c);
      std::optional<UniquePositionSplit> split;
      if (root && c.letters.size() >= 2) {
        split = unique_position_factorization(c);
      }
      if (o.json) {
        ordered_json j{{"t", g.name(t)},
                       {"sigma", format_sigma(g, t, s)},
                       {"cyclic", format_sigma(g, t, c)},
                       {"period", primitive_period(c)},
                       {"t_root", root}};
        if (split) {
          j["split"] = {{"a", format_sigma(g, t, split->a)},
                        {"b", format_sigma(g, t, split->b)},
                        {"rotation", split->rotation}};
        } else {
          j["split"] = nullptr;
        }
        return j.dump(2);
      }
      std::ostringstream out;
      out << "sigma: " << format_sigma(g, t, s) << '\n'
          << "cyclic: " << format_sigma(g, t, c) << '\n'
          << "t_root: " << yes_no(root);
      if (split) {
        out << "\nsplit: " << format_sigma(g, t, split->a) << " | "
            << format_sigma(g, t, split->b);
      }
      return out.str();
    }

    std::string cmd_check(Options const& o, CommutationGraph const& g) {
      std::optional<Vertex> t;
      if (!o.t.empty()) {
        t = g.index(o.t);
      }
      auto r = magnus_verdict(g, parse_word(o.word, g), *o.n, t);
      return o.json ? report_json(g, r) : report_text(g, r);
    }

    census::Mode parse_mode(std::string const& m) {
      return m == "sample" ? census::Mode::Sample : census::Mode::Exhaustive;
    }

    std::string cmd_census(Options const& o) {
      census::Params p{*o.n, *o.d, *o.k};
      auto row = census::census_row(p, parse_mode(o.mode), o.samples.value_or(0), o.seed);
      if (o.json) {
        return census::row_json(row);
      }
      return census::csv_header() + "\n" + census::csv_line(row);
    }

    std::string cmd_density(Options const& o) {
      census::Params p{*o.n, *o.d, *o.k};
      auto r = census::density(p, parse_mode(o.mode), o.samples.value_or(0), o.seed);
      auto const& t = r.tally;
      auto big = [](census::Int const& v) -> ordered_json {
        if (v.fits_slong_p()) {
          return v.get_si();
        }
        return v.get_str();
      };
      bool exact = r.mode == census::Mode::Exhaustive;
      if (o.json) {
        ordered_json j{{"n", p.n},
                       {"d", p.d},
                       {"k", p.k},
                       {"mode", census::mode_name(r.mode)},
                       {"l_dk", big(t.total())},
                       {"z1", big(t.z1)},
                       {"z2", big(t.z2)},
                       {"z3", big(t.z3)},
                       {"z4", big(t.z4)},
                       {"zY", big(t.zY)},
                       {"rho_hat", r.rho_hat}};
        j["rho_se"] = exact ? ordered_json(nullptr) : ordered_json(r.rho_se);
        j["samples"] = exact ? ordered_json(nullptr) : ordered_json(r.samples);
        j["seed"] = exact ? ordered_json(nullptr) : ordered_json(*r.seed);
        return j.dump(2);
      }
      std::ostringstream out;
      out << "n=" << p.n << " d=" << p.d << " k=" << p.k << " mode="
          << census::mode_name(r.mode) << '\n'
          << "l_dk: " << t.total() << '\n';
      if (exact) {
        out << "z1: " << t.z1 << "\nz2: " << t.z2 << "\nz3: " << t.z3
            << "\nz4: " << t.z4 << "\nzY: " << t.zY << '\n'
            << "rho_hat: " << r.rho_hat;
      } else {
        out << "samples: " << r.samples << " seed: " << *r.seed << '\n'
            << "hits z1: " << t.z1 << " z2: " << t.z2 << " z3: " << t.z3
            << " z4: " << t.z4 << " zY: " << t.zY << '\n'
            << "rho_hat: " << r.rho_hat << " ± " << r.rho_se;
      }
      return out.str();
    }
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partially commutative groups: canonical forms, HNN factorizations, "
                 "Freiheitssatz verdicts and the cycle-with-chord census"};
    app.name("pcg");
    app.require_subcommand(1, 1);
    Options o;

    auto add_graph = [&](CLI::App* c) {
      c->add_option("--graph", o.graph, "Graph file (`vertices ...` and `edge u v` lines)")
          ->required();
    };
    auto add_word = [&](CLI::App* c) {
      c->add_option("--word", o.word, "Word such as \"a b^-1 c^2\"")->required();
    };
    auto add_json = [&](CLI::App* c) {
      c->add_flag("--json", o.json, "JSON output");
      c->add_option("--out", o.out, "Write the result to PATH instead of stdout");
    };
    auto add_census = [&](CLI::App* c) {
      c->add_option("--n", o.n, "Cycle-with-chord parameter n >= 5")->required();
      c->add_option("--d", o.d, "Length budget for H-chunks")->required()->check(CLI::NonNegativeNumber);
      c->add_option("--k", o.k, "t-length budget")->required()->check(CLI::NonNegativeNumber);
      c->add_option("--mode", o.mode, "exhaustive or sample")
          ->check(CLI::IsMember({"exhaustive", "sample"}));
      c->add_option("--samples", o.samples, "Sample size for --mode sample");
      c->add_option("--seed", o.seed, "Seed for --mode sample");
      add_json(c);
    };

    auto* normalize = app.add_subcommand("normalize", "Shortlex minimal form of --word");
    add_graph(normalize);
    add_word(normalize);
    add_json(normalize);

    auto* eq = app.add_subcommand("equal", "Whether --word and --word2 are equal");
    auto* conj = app.add_subcommand("conjugate", "Whether --word and --word2 are conjugate");
    for (auto* c : {eq, conj}) {
      add_graph(c);
      add_word(c);
      c->add_option("--word2", o.word2, "Second word")->required();
      add_json(c);
    }

    auto* supp = app.add_subcommand("support", "Support of --word");
    add_graph(supp);
    add_word(supp);
    add_json(supp);

    auto* hnn = app.add_subcommand("hnn", "Reduced factorization relative to --t");
    auto* sig = app.add_subcommand("sigma", "Double-coset symbol word and t-root test");
    for (auto* c : {hnn, sig}) {
      add_graph(c);
      add_word(c);
      c->add_option("--t", o.t, "Stable letter")->required();
      add_json(c);
    }

    auto* check = app.add_subcommand("check", "Embedding verdicts for G / N(s^n)");
    add_graph(check);
    add_word(check);
    check->add_option("--t", o.t, "Restrict to this stable letter");
    check->add_option("--n", o.n, "Exponent n >= 1")->required()->check(CLI::PositiveNumber);
    add_json(check);

    auto* cen = app.add_subcommand("census", "Census row for (n, d, k)");
    auto* den = app.add_subcommand("density", "Density of L_Y in L(d, k)");
    add_census(cen);
    add_census(den);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return kOk;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (CLI::ParseError const& e) {
      err << "usage error: " << e.what() << '\n';
      return kUsageError;
    }

    std::string result;
    try {
      auto* sub = app.get_subcommands().front();
      std::string name = sub->get_name();
      if (name == "census" || name == "density") {
        if (o.mode == "sample") {
          need(o.samples.has_value(), "--samples with --mode sample", name);
        }
        result = name == "census" ? cmd_census(o) : cmd_density(o);
      } else {
        auto g = CommutationGraph::load(o.graph);
        if (name == "normalize") {
          result = cmd_normalize(o, g);
        } else if (name == "equal") {
          result = cmd_equal(o, g);
        } else if (name == "conjugate") {
          result = cmd_conjugate(o, g);
        } else if (name == "support") {
          result = cmd_support(o, g);
        } else if (name == "hnn") {
          result = cmd_hnn(o, g);
        } else if (name == "sigma") {
          result = cmd_sigma(o, g);
        } else {
          result = cmd_check(o, g);
        }
      }
    } catch (UsageError const& e) {
      err << "usage error: " << e.what() << '\n';
      return kUsageError;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return kDomainError;
    }

    if (!o.out.empty()) {
      std::ofstream f(o.out);
      if (!f || !(f << result << '\n')) {
        err << "error: cannot write " << o.out << '\n';
        return kDomainError;
      }
      return kOk;
    }
    out << result << '\n';
    return kOk;
  }

}  // namespace pcg::cli
