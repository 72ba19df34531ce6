#ifndef PCG_TESTS_HELPERS_HPP_
#define PCG_TESTS_HELPERS_HPP_

#include <string>

#include "pcg/graph.hpp"
#include "pcg/words.hpp"

namespace testing {

  inline pcg::CommutationGraph graph(std::string const& text) {
    return pcg::CommutationGraph::parse(text);
  }

  inline pcg::Word w(pcg::CommutationGraph const& g, std::string const& text) {
    return pcg::parse_word(text, g);
  }

  inline std::string nf(pcg::CommutationGraph const& g, std::string const& text) {
    return pcg::format_word(g, pcg::minimal_form(g, pcg::parse_word(text, g)));
  }

  // Graphs from the worked examples.
  inline pcg::CommutationGraph p4() {  // t - a - b - c
    return graph("vertices a b c t\nedge t a\nedge a b\nedge b c\n");
  }
  inline pcg::CommutationGraph path_abc() {  // a - b - c
    return graph("vertices a b c\nedge a b\nedge b c\n");
  }
  inline pcg::CommutationGraph c4() {
    return graph("vertices a b c d\nedge a b\nedge b c\nedge c d\nedge d a\n");
  }
  inline pcg::CommutationGraph c4_chord() {
    return graph("vertices a b c d\nedge a b\nedge b c\nedge c d\nedge d a\nedge a c\n");
  }
  inline pcg::CommutationGraph c5p() {
    return pcg::cycle_with_chord(5);
  }

}  // namespace testing

#endif  // PCG_TESTS_HELPERS_HPP_
