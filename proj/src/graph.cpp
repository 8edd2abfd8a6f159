#include "graphzeta/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

#include "graphzeta/errors.hpp"

namespace gz {

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges, Options options) {
  Graph g;
  g.adjacency_.assign(vertex_count, {});
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= vertex_count ||
        static_cast<std::size_t>(b) >= vertex_count)
      throw BadParameter("edge (" + std::to_string(a) + "," + std::to_string(b) +
                         ") references a vertex outside 0.." + std::to_string(vertex_count) + "-1");
    if (a == b) throw SimplicityError("self-loop at vertex " + std::to_string(a));
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto& nbrs = g.adjacency_[v];
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
      throw SimplicityError("repeated edge at vertex " + std::to_string(v));
    g.max_degree_ = std::max(g.max_degree_, static_cast<int>(nbrs.size()));
  }
  g.edge_count_ = edges.size();
  if (options.require_connected && !is_connected(g))
    throw ConnectivityError("graph with " + std::to_string(vertex_count) +
                            " vertices is not connected");
  return g;
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  const auto& nbrs = adjacency_.at(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

bool Graph::is_regular() const noexcept {
  return std::all_of(adjacency_.begin(), adjacency_.end(),
                     [&](const auto& n) { return static_cast<int>(n.size()) == max_degree_; });
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex v = 0; v < static_cast<Vertex>(adjacency_.size()); ++v)
    for (Vertex w : adjacency_[v])
      if (v < w) out.emplace_back(v, w);
  return out;
}

Graph build_graph(std::span<const Edge> edges) {
  Vertex top = -1;
  for (const auto& [a, b] : edges) top = std::max({top, a, b});
  return Graph::from_edges(static_cast<std::size_t>(top + 1), edges);
}

Graph build_graph(std::size_t vertex_count, std::span<const Edge> edges) {
  return Graph::from_edges(vertex_count, edges);
}

std::vector<int> distances_from(const Graph& g, Vertex source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<Vertex> frontier_queue;
  dist.at(source) = 0;
  frontier_queue.push(source);
  while (!frontier_queue.empty()) {
    Vertex v = frontier_queue.front();
    frontier_queue.pop();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        frontier_queue.push(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  const auto dist = distances_from(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

VertexSet ball(const Graph& g, const VertexSet& centers, int radius) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<Vertex> q;
  for (Vertex c : centers) {
    dist.at(c) = 0;
    q.push(c);
  }
  std::vector<Vertex> members(centers.begin(), centers.end());
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    if (dist[v] == radius) continue;
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        members.push_back(w);
        q.push(w);
      }
    }
  }
  return VertexSet(std::move(members));
}

VertexSet ball(const Graph& g, Vertex v, int radius) { return ball(g, VertexSet({v}), radius); }

VertexSet frontier(const Graph& g, const VertexSet& k) {
  std::vector<Vertex> out;
  for (Vertex v : k) {
    const auto nbrs = g.neighbors(v);
    if (std::any_of(nbrs.begin(), nbrs.end(), [&](Vertex w) { return !k.contains(w); }))
      out.push_back(v);
  }
  return VertexSet(std::move(out));
}

Graph induced_subgraph(const Graph& g, const VertexSet& vertices, Graph::Options options) {
  std::vector<Vertex> index(g.vertex_count(), -1);
  Vertex next = 0;
  for (Vertex v : vertices) index.at(v) = next++;
  std::vector<Edge> edges;
  for (Vertex v : vertices)
    for (Vertex w : g.neighbors(v))
      if (v < w && index[w] >= 0) edges.emplace_back(index[v], index[w]);
  return Graph::from_edges(vertices.size(), edges, options);
}

Graph read_edge_list(std::istream& in) {
  std::vector<std::pair<long long, long long>> raw;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long a = 0, b = 0;
    if (!(fields >> a)) continue;
    if (!(fields >> b))
      throw ParseError("edge list line " + std::to_string(line_number) + ": expected two labels");
    std::string extra;
    if (fields >> extra)
      throw ParseError("edge list line " + std::to_string(line_number) + ": trailing text '" +
                       extra + "'");
    raw.emplace_back(a, b);
  }
  std::map<long long, Vertex> labels;
  for (const auto& [a, b] : raw) {
    labels.emplace(a, 0);
    labels.emplace(b, 0);
  }
  Vertex next = 0;
  for (auto& [label, index] : labels) index = next++;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [a, b] : raw) edges.emplace_back(labels[a], labels[b]);
  return Graph::from_edges(labels.size(), edges);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

Eigen::VectorXd q_diagonal(const Graph& g) {
  Eigen::VectorXd q(g.vertex_count());
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) q[v] = g.degree(v) - 1.0;
  return q;
}

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  return Eigen::MatrixXd(adjacency_matrix<double>(g));
}

}  // namespace gz
