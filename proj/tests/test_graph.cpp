#include <doctest.h>

#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "graphzeta/builders.hpp"
#include "graphzeta/errors.hpp"
#include "graphzeta/graph.hpp"
#include "oracles.hpp"

using namespace gz;

namespace {

Graph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> edges(pairs.begin(), pairs.end());
  return Graph::from_edges(n, edges);
}

VertexSet naive_frontier(const Graph& g, const VertexSet& k) {
  std::vector<Vertex> out;
  for (Vertex v : k) {
    bool outside = false;
    for (Vertex w : g.neighbors(v)) outside = outside || !k.contains(w);
    if (outside) out.push_back(v);
  }
  return VertexSet(out);
}

}  // namespace

TEST_CASE("build rejects loops, repeated edges and disconnected input") {
  const std::vector<Edge> loop{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(build_graph(loop), SimplicityError);
  const std::vector<Edge> twice{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(build_graph(twice), SimplicityError);
  const std::vector<Edge> split{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(build_graph(split), ConnectivityError);
  CHECK_NOTHROW(Graph::from_edges(4, split, Graph::Options{false}));
}

TEST_CASE("C4 and K4 basics") {
  const Graph c4 = finite_family(Family::Cycle, 4);
  CHECK(c4.vertex_count() == 4);
  CHECK(c4.edge_count() == 4);
  CHECK(c4.is_regular());
  CHECK(c4.max_degree() == 2);
  const Graph k4 = finite_family(Family::Complete, 4);
  CHECK(k4.edge_count() == 6);
  CHECK(k4.max_degree() == 3);
  const Graph path = finite_family(Family::Path, 3);
  CHECK_FALSE(path.is_regular());
}

TEST_CASE("ball and frontier examples") {
  const Graph c4 = finite_family(Family::Cycle, 4);
  CHECK(ball(c4, 0, 0) == VertexSet({0}));
  CHECK(ball(c4, 0, 1) == VertexSet({0, 1, 3}));
  CHECK(ball(c4, 0, 2) == VertexSet({0, 1, 2, 3}));
  const Graph path = finite_family(Family::Path, 5);
  CHECK(frontier(path, VertexSet({0, 1, 2})) == VertexSet({2}));
  CHECK(frontier(path, VertexSet({0, 1, 2, 3, 4})).empty());
  CHECK(ball(path, VertexSet({0, 4}), 1) == VertexSet({0, 1, 3, 4}));
}

TEST_CASE("frontier and ball agree with direct definitions on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 12)(rng);
    const Graph g = from_pairs(n, oracle::random_connected(n, 0.25, rng));
    std::vector<Vertex> members;
    for (int v = 0; v < n; ++v)
      if (std::bernoulli_distribution(0.5)(rng)) members.push_back(v);
    const VertexSet k(members);
    CHECK(frontier(g, k) == naive_frontier(g, k));
    for (Vertex v = 0; v < n; ++v) {
      CHECK(ball(g, v, 1).size() == static_cast<std::size_t>(g.degree(v)) + 1);
      const auto dist = distances_from(g, v);
      std::vector<Vertex> within;
      for (Vertex w = 0; w < n; ++w)
        if (dist[w] <= 2) within.push_back(w);
      CHECK(ball(g, v, 2) == VertexSet(within));
    }
  }
}

TEST_CASE("adjacency norm is bounded by the maximum degree") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 14)(rng);
    const Graph g = from_pairs(n, oracle::random_connected(n, 0.3, rng));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_adjacency(g));
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(norm <= g.max_degree() + 1e-12);
    CHECK(q_diagonal(g).minCoeff() >= 0.0);
  }
}

TEST_CASE("edge list round trip and parse errors") {
  std::istringstream in("# square\n10 20\n20 30\n30 40\n40 10  # closing edge\n");
  const Graph g = read_edge_list(in);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 4);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(3, 0));
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream back(out.str());
  CHECK(read_edge_list(back).edges() == g.edges());

  std::istringstream bad("1 x\n");
  CHECK_THROWS_AS(read_edge_list(bad), ParseError);
  std::istringstream odd("1 2 3\n");
  CHECK_THROWS_AS(read_edge_list(odd), ParseError);
}

TEST_CASE("induced subgraph relabels in member order") {
  const Graph k4 = finite_family(Family::Complete, 4);
  const Graph sub = induced_subgraph(k4, VertexSet({1, 2, 3}));
  CHECK(sub.vertex_count() == 3);
  CHECK(sub.edge_count() == 3);
  const Graph c4 = finite_family(Family::Cycle, 4);
  CHECK_THROWS_AS(induced_subgraph(c4, VertexSet({0, 2})), ConnectivityError);
}
