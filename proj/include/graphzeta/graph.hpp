#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphzeta/types.hpp"

namespace gz {

using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> members);

  const std::vector<Vertex>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const;
  bool is_subset_of(const VertexSet& other) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

/// Finite simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  struct Options {
    bool require_connected = true;
  };

  Graph() = default;

  /// Throws SimplicityError on loops or repeated edges and ConnectivityError
  /// when the graph is disconnected (unless the option is switched off).
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges, Options options);
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
    return from_edges(vertex_count, edges, Options{});
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  int max_degree() const noexcept { return max_degree_; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  bool adjacent(Vertex a, Vertex b) const;
  bool is_regular() const noexcept;
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
  int max_degree_ = 0;
};

Graph build_graph(std::span<const Edge> edges);
Graph build_graph(std::size_t vertex_count, std::span<const Edge> edges);

bool is_connected(const Graph& g);

/// Combinatorial distances from `source`; unreachable vertices get -1.
std::vector<int> distances_from(const Graph& g, Vertex source);

VertexSet ball(const Graph& g, Vertex v, int radius);
VertexSet ball(const Graph& g, const VertexSet& centers, int radius);

/// Vertices of K with at least one neighbour outside K.
VertexSet frontier(const Graph& g, const VertexSet& k);

/// Subgraph induced on `vertices`, relabelled in the order of `vertices`.
Graph induced_subgraph(const Graph& g, const VertexSet& vertices, Graph::Options options = {});

/// Edge-list text: one "u v" pair per line, '#' starts a comment. Labels are
/// integers; they are mapped onto dense indices in increasing label order.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

template <class Scalar>
SparseMatrix<Scalar> adjacency_matrix(const Graph& g) {
  std::vector<Eigen::Triplet<Scalar>> entries;
  entries.reserve(2 * g.edge_count());
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    for (Vertex w : g.neighbors(v)) entries.emplace_back(v, w, Scalar(1));
  SparseMatrix<Scalar> a(g.vertex_count(), g.vertex_count());
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

/// Diagonal of Q = D - I.
Eigen::VectorXd q_diagonal(const Graph& g);

Eigen::MatrixXd dense_adjacency(const Graph& g);

}  // namespace gz
