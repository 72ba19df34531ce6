#include "pcg/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <regex>
#include <sstream>

#include "pcg/error.hpp"

namespace pcg {

  std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::DuplicateVertex: return "DuplicateVertex";
      case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
      case ErrorCode::SelfLoop: return "SelfLoop";
      case ErrorCode::UnknownVertex: return "UnknownVertex";
      case ErrorCode::BadParameter: return "BadParameter";
      case ErrorCode::SyntaxError: return "SyntaxError";
      case ErrorCode::UnknownGenerator: return "UnknownGenerator";
      case ErrorCode::ZeroExponent: return "ZeroExponent";
      case ErrorCode::NotCyclicallyMinimal: return "NotCyclicallyMinimal";
      case ErrorCode::NotAClique: return "NotAClique";
      case ErrorCode::LinkNotClique: return "LinkNotClique";
      case ErrorCode::NoSplitFound: return "NoSplitFound";
      case ErrorCode::TNotInSupport: return "TNotInSupport";
      case ErrorCode::ConflictingVerdicts: return "ConflictingVerdicts";
      case ErrorCode::BadAlphabet: return "BadAlphabet";
      case ErrorCode::BudgetExceeded: return "BudgetExceeded";
      case ErrorCode::NonIntegralFormula: return "NonIntegralFormula";
      case ErrorCode::BadSeed: return "BadSeed";
    }
    return "Error";
  }

  int popcount(VertexSet s) noexcept {
    return std::popcount(s);
  }

  std::vector<Vertex> members(VertexSet s) {
    std::vector<Vertex> out;
    while (s != 0) {
      out.push_back(std::countr_zero(s));
      s &= s - 1;
    }
    return out;
  }

  namespace {
    bool valid_name(std::string const& s) {
      static std::regex const re("[A-Za-z_][A-Za-z0-9_]*");
      return std::regex_match(s, re);
    }
  }  // namespace

  CommutationGraph CommutationGraph::build(
      std::vector<std::string> const&                              vertices,
      std::vector<std::pair<std::string, std::string>> const& edges) {
    if (vertices.size() > static_cast<std::size_t>(kMaxVertices)) {
      throw Error(ErrorCode::BadParameter,
                  "at most " + std::to_string(kMaxVertices)
                      + " vertices are supported");
    }
    CommutationGraph g;
    for (auto const& v : vertices) {
      if (!valid_name(v)) {
        throw Error(ErrorCode::BadParameter, "invalid vertex name '" + v + "'");
      }
      if (g.find(v)) {
        throw Error(ErrorCode::DuplicateVertex, v);
      }
      g._names.push_back(v);
    }
    g._adj.assign(g._names.size(), 0);
    for (auto const& [a, b] : edges) {
      auto u = g.find(a);
      auto v = g.find(b);
      if (!u) {
        throw Error(ErrorCode::UnknownEndpoint, a);
      }
      if (!v) {
        throw Error(ErrorCode::UnknownEndpoint, b);
      }
      if (*u == *v) {
        throw Error(ErrorCode::SelfLoop, a);
      }
      g._adj[*u] |= bit(*v);
      g._adj[*v] |= bit(*u);
    }
    return g;
  }

  CommutationGraph CommutationGraph::parse(std::string_view text) {
    std::vector<std::string>                         vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    bool                                             seen_vertices = false;
    std::istringstream                               in{std::string(text)};
    std::string                                      line;
    int                                              lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream       ls(line);
      std::vector<std::string> tok;
      for (std::string s; ls >> s;) {
        tok.push_back(s);
      }
      if (tok.empty()) {
        continue;
      }
      auto where = "line " + std::to_string(lineno);
      if (tok[0] == "vertices") {
        if (seen_vertices) {
          throw Error(ErrorCode::SyntaxError,
                      where + ": more than one vertices line");
        }
        seen_vertices = true;
        vertices.assign(tok.begin() + 1, tok.end());
      } else if (tok[0] == "edge") {
        if (!seen_vertices) {
          throw Error(ErrorCode::SyntaxError,
                      where + ": edge before the vertices line");
        }
        if (tok.size() != 3) {
          throw Error(ErrorCode::SyntaxError,
                      where + ": expected `edge <u> <v>`");
        }
        edges.emplace_back(tok[1], tok[2]);
      } else {
        throw Error(ErrorCode::SyntaxError,
                    where + ": unknown directive '" + tok[0] + "'");
      }
    }
    if (!seen_vertices) {
      throw Error(ErrorCode::SyntaxError, "missing vertices line");
    }
    return build(vertices, edges);
  }

  CommutationGraph CommutationGraph::load(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorCode::BadParameter,
                  "cannot read graph file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  std::optional<Vertex> CommutationGraph::find(std::string_view name) const {
    auto it = std::find(_names.begin(), _names.end(), name);
    if (it == _names.end()) {
      return std::nullopt;
    }
    return static_cast<Vertex>(it - _names.begin());
  }

  Vertex CommutationGraph::index(std::string_view name) const {
    auto v = find(name);
    if (!v) {
      throw Error(ErrorCode::UnknownVertex, std::string(name));
    }
    return *v;
  }

  VertexSet
  CommutationGraph::vertex_set(std::vector<std::string> const& names) const {
    VertexSet s = 0;
    for (auto const& n : names) {
      s |= bit(index(n));
    }
    return s;
  }

  std::vector<std::pair<Vertex, Vertex>> CommutationGraph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < size(); ++u) {
      for (Vertex v : members(_adj[u])) {
        if (u < v) {
          out.emplace_back(u, v);
        }
      }
    }
    return out;
  }

  CommutationGraph CommutationGraph::induced(VertexSet s) const {
    std::vector<std::string>                         vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (Vertex v : members(s & all())) {
      vs.push_back(_names[v]);
    }
    for (auto [u, v] : edges()) {
      if (contains(s, u) && contains(s, v)) {
        es.emplace_back(_names[u], _names[v]);
      }
    }
    return build(vs, es);
  }

  CommutationGraph CommutationGraph::with_edge(Vertex u, Vertex v) const {
    if (u == v) {
      throw Error(ErrorCode::SelfLoop, _names.at(u));
    }
    CommutationGraph g = *this;
    g._adj.at(u) |= bit(v);
    g._adj.at(v) |= bit(u);
    return g;
  }

  CommutationGraph
  CommutationGraph::relabeled(std::vector<Vertex> const& order) const {
    std::vector<std::string>                         vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (Vertex v : order) {
      vs.push_back(_names.at(v));
    }
    for (auto [u, v] : edges()) {
      es.emplace_back(_names[u], _names[v]);
    }
    auto g = build(vs, es);
    if (g.size() != size()) {
      throw Error(ErrorCode::BadParameter, "relabeling must be a permutation");
    }
    return g;
  }

  std::string CommutationGraph::names_of(VertexSet s) const {
    std::string out = "{";
    bool        first = true;
    for (Vertex v : members(s)) {
      out += (first ? "" : ",") + _names.at(v);
      first = false;
    }
    return out + "}";
  }

  std::string CommutationGraph::to_text() const {
    std::string out = "vertices";
    for (auto const& n : _names) {
      out += " " + n;
    }
    out += "\n";
    for (auto [u, v] : edges()) {
      out += "edge " + _names[u] + " " + _names[v] + "\n";
    }
    return out;
  }

  namespace {
    void check_subset(CommutationGraph const& g, VertexSet y) {
      if (!subset_of(y, g.all())) {
        throw Error(ErrorCode::UnknownVertex, "vertex set exceeds the graph");
      }
    }
  }  // namespace

  VertexSet link(CommutationGraph const& g, VertexSet y) {
    check_subset(g, y);
    if (y == 0) {
      throw Error(ErrorCode::BadParameter, "the link of the empty set");
    }
    VertexSet out = g.all();
    for (Vertex v : members(y)) {
      out &= g.neighbours(v);
    }
    return out;
  }

  VertexSet star(CommutationGraph const& g, Vertex v) {
    if (v < 0 || v >= g.size()) {
      throw Error(ErrorCode::UnknownVertex, std::to_string(v));
    }
    return g.neighbours(v) | bit(v);
  }

  bool is_clique(CommutationGraph const& g, VertexSet y) {
    check_subset(g, y);
    for (Vertex v : members(y)) {
      if (!subset_of(y & ~bit(v), g.neighbours(v))) {
        return false;
      }
    }
    return true;
  }

  bool is_independent(CommutationGraph const& g, VertexSet y) {
    check_subset(g, y);
    for (Vertex v : members(y)) {
      if ((g.neighbours(v) & y) != 0) {
        return false;
      }
    }
    return true;
  }

  bool is_synchronised(CommutationGraph const& g, VertexSet y) {
    VertexSet bound = y | link(g, y);
    for (Vertex v : members(y)) {
      if (!subset_of(star(g, v), bound)) {
        return false;
      }
    }
    return true;
  }

  VertexSet central_vertices(CommutationGraph const& g) {
    VertexSet out = 0;
    for (Vertex v = 0; v < g.size(); ++v) {
      if (star(g, v) == g.all()) {
        out |= bit(v);
      }
    }
    return out;
  }

  std::vector<VertexSet> complement_components(CommutationGraph const& g,
                                               VertexSet               y) {
    check_subset(g, y);
    std::vector<VertexSet> out;
    VertexSet              left = y;
    while (left != 0) {
      VertexSet comp = left & (~left + 1);
      VertexSet frontier = comp;
      while (frontier != 0) {
        VertexSet next = 0;
        for (Vertex v : members(frontier)) {
          next |= left & ~g.neighbours(v) & ~bit(v);
        }
        frontier = next & ~comp;
        comp |= next;
      }
      out.push_back(comp);
      left &= ~comp;
    }
    return out;
  }

  namespace {
    std::vector<std::string> cycle_names(int n) {
      std::vector<std::string> vs{"t"};
      for (int i = 1; i < n; ++i) {
        vs.push_back("a" + std::to_string(i));
      }
      return vs;
    }

    std::vector<std::pair<std::string, std::string>> cycle_edges(int n) {
      std::vector<std::pair<std::string, std::string>> es;
      es.emplace_back("t", "a1");
      for (int i = 1; i + 1 < n; ++i) {
        es.emplace_back("a" + std::to_string(i), "a" + std::to_string(i + 1));
      }
      es.emplace_back("a" + std::to_string(n - 1), "t");
      return es;
    }
  }  // namespace

  CommutationGraph cycle_with_chord(int n) {
    if (n < 5 || n > kMaxVertices) {
      throw Error(ErrorCode::BadParameter,
                  "cycle_with_chord needs 5 <= n <= 64, got "
                      + std::to_string(n));
    }
    auto es = cycle_edges(n);
    es.emplace_back("a1", "a" + std::to_string(n - 1));
    return CommutationGraph::build(cycle_names(n), es);
  }

  CommutationGraph cycle_graph(int n) {
    if (n < 4 || n > kMaxVertices) {
      throw Error(ErrorCode::BadParameter,
                  "cycle_graph needs 4 <= n <= 64, got " + std::to_string(n));
    }
    return CommutationGraph::build(cycle_names(n), cycle_edges(n));
  }

  bool is_cycle(CommutationGraph const& g) {
    if (g.size() < 4) {
      return false;
    }
    for (Vertex v = 0; v < g.size(); ++v) {
      if (popcount(g.neighbours(v)) != 2) {
        return false;
      }
    }
    VertexSet seen = 1, frontier = 1;
    while (frontier != 0) {
      VertexSet next = 0;
      for (Vertex v : members(frontier)) {
        next |= g.neighbours(v);
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == g.all();
  }

}  // namespace pcg
