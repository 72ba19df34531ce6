#ifndef PCG_GRAPH_HPP_
#define PCG_GRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcg {

  using Vertex = int;

  // Subsets of the generating set, one bit per vertex in declaration order.
  using VertexSet = std::uint64_t;

  inline constexpr int kMaxVertices = 64;

  constexpr VertexSet bit(Vertex v) noexcept {
    return VertexSet{1} << v;
  }

  constexpr bool contains(VertexSet s, Vertex v) noexcept {
    return (s >> v) & 1U;
  }

  constexpr bool subset_of(VertexSet a, VertexSet b) noexcept {
    return (a & ~b) == 0;
  }

  int popcount(VertexSet s) noexcept;

  // Members of s in increasing vertex order.
  std::vector<Vertex> members(VertexSet s);

  // Simple undirected graph whose edges are the commuting pairs of
  // generators.  Immutable once built.
  class CommutationGraph {
   public:
    static CommutationGraph
    build(std::vector<std::string> const&                              vertices,
          std::vector<std::pair<std::string, std::string>> const& edges);

    // Text format: one `vertices a b c` line, then `edge a b` lines; `#`
    // starts a comment.
    static CommutationGraph parse(std::string_view text);
    static CommutationGraph load(std::filesystem::path const& path);

    int size() const noexcept {
      return static_cast<int>(_names.size());
    }

    VertexSet all() const noexcept {
      return size() == kMaxVertices ? ~VertexSet{0} : bit(size()) - 1;
    }

    std::string const& name(Vertex v) const {
      return _names.at(v);
    }

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    std::optional<Vertex> find(std::string_view name) const;

    // Throws UnknownVertex.
    Vertex index(std::string_view name) const;
    VertexSet vertex_set(std::vector<std::string> const& names) const;

    bool adjacent(Vertex u, Vertex v) const noexcept {
      return contains(_adj[u], v);
    }

    VertexSet neighbours(Vertex v) const noexcept {
      return _adj[v];
    }

    std::vector<std::pair<Vertex, Vertex>> edges() const;

    // Induced subgraph on s, keeping the relative vertex order.
    CommutationGraph induced(VertexSet s) const;

    // Same vertices with one extra edge.
    CommutationGraph with_edge(Vertex u, Vertex v) const;

    // Same graph with vertices declared in the given order.
    CommutationGraph relabeled(std::vector<Vertex> const& order) const;

    std::string names_of(VertexSet s) const;
    std::string to_text() const;

    bool operator==(CommutationGraph const&) const = default;

   private:
    std::vector<std::string> _names;
    std::vector<VertexSet>   _adj;
  };

  // lk(Y): vertices adjacent to every member of Y.  Y must be nonempty.
  VertexSet link(CommutationGraph const& g, VertexSet y);

  VertexSet star(CommutationGraph const& g, Vertex v);

  bool is_clique(CommutationGraph const& g, VertexSet y);
  bool is_independent(CommutationGraph const& g, VertexSet y);

  // Every star of a member of Y stays inside Y ∪ lk(Y).
  bool is_synchronised(CommutationGraph const& g, VertexSet y);

  // Vertices that commute with every other vertex.
  VertexSet central_vertices(CommutationGraph const& g);

  // Connected components of the complement graph restricted to Y, ordered by
  // their least vertex.
  std::vector<VertexSet> complement_components(CommutationGraph const& g,
                                               VertexSet               y);

  // C'_n: vertices t, a1, ..., a_{n-1}; cycle t-a1-...-a_{n-1}-t plus the
  // chord a1-a_{n-1}.  n >= 5.
  CommutationGraph cycle_with_chord(int n);

  // C_n with the same vertex names as cycle_with_chord(n), no chord.  n >= 4.
  CommutationGraph cycle_graph(int n);

  // Connected, every vertex of degree 2, at least 4 vertices.
  bool is_cycle(CommutationGraph const& g);

}  // namespace pcg

#endif  // PCG_GRAPH_HPP_
