#include "graphzeta/builders.hpp"

#include <algorithm>
#include <map>

#include "graphzeta/errors.hpp"

namespace gz {

Graph finite_family(Family family, int n) {
  std::vector<Edge> edges;
  switch (family) {
    case Family::Cycle:
      if (n < 3) throw BadParameter("cycle needs n >= 3");
      for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
      break;
    case Family::Complete:
      if (n < 2) throw BadParameter("complete graph needs n >= 2");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      break;
    case Family::Path:
      if (n < 2) throw BadParameter("path graph needs n >= 2");
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case Family::Petersen:
      n = 10;
      for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);
      }
      break;
  }
  return build_graph(static_cast<std::size_t>(n), edges);
}

TraceContext periodic_lattice(const PeriodicSpec& spec, int window_radius) {
  return TraceContext::periodic(spec, window_radius);
}

namespace {

constexpr int kGasketLevelCap = 9;

}  // namespace

std::size_t gasket_vertex_count(int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return (p + 3) / 2;
}

ExhaustionScheme ExhaustionScheme::sierpinski_gasket(int max_level) {
  if (max_level < 1) throw BadParameter("gasket level must be at least 1");
  if (max_level > kGasketLevelCap)
    throw BudgetExceeded("gasket levels above " + std::to_string(kGasketLevelCap) +
                         " are beyond the desk-scale budget");
  auto data = std::make_shared<Data>();
  data->name = "sierpinski-gasket";
  data->copy_count = 3;
  data->degree_bound = 4;

  // vertices live on the triangular lattice; K_L has side 2^(L-1)
  using Coord = std::pair<int, int>;
  std::vector<Coord> coords{{0, 0}, {1, 0}, {0, 1}};
  std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}};
  data->levels.push_back(build_graph(coords.size(), edges));
  data->corners.push_back({0, 1, 2});

  for (int level = 2; level <= max_level; ++level) {
    const int h = 1 << (level - 2);
    std::map<Coord, Vertex> index;
    for (std::size_t i = 0; i < coords.size(); ++i) index.emplace(coords[i], static_cast<Vertex>(i));
    const std::size_t base_count = coords.size();
    std::vector<Coord> next_coords = coords;
    std::vector<Edge> next_edges = edges;
    std::vector<std::vector<Vertex>> maps;
    for (const Coord& shift : {Coord{0, 0}, Coord{h, 0}, Coord{0, h}}) {
      std::vector<Vertex> map(base_count);
      for (std::size_t v = 0; v < base_count; ++v) {
        const Coord c{coords[v].first + shift.first, coords[v].second + shift.second};
        auto [it, inserted] = index.emplace(c, static_cast<Vertex>(next_coords.size()));
        if (inserted) next_coords.push_back(c);
        map[v] = it->second;
      }
      if (shift != Coord{0, 0})
        for (const auto& [a, b] : edges) next_edges.emplace_back(map[a], map[b]);
      maps.push_back(std::move(map));
    }
    data->copy_maps.push_back(std::move(maps));
    coords = std::move(next_coords);
    edges = std::move(next_edges);
    data->levels.push_back(build_graph(coords.size(), edges));
    const int side = 1 << (level - 1);
    data->corners.push_back({index.at({0, 0}), index.at({side, 0}), index.at({0, side})});
  }
  ExhaustionScheme scheme;
  scheme.data_ = std::move(data);
  return scheme;
}

const Graph& ExhaustionScheme::level(int n) const {
  if (n < 1) throw BadParameter("levels start at 1");
  if (n > max_level())
    throw BudgetExceeded("level " + std::to_string(n) + " exceeds the built maximum " +
                         std::to_string(max_level()));
  return data_->levels[n - 1];
}

const std::vector<std::vector<Vertex>>& ExhaustionScheme::copies(int n) const {
  if (n < 1 || n >= max_level())
    throw BudgetExceeded("copies of K_" + std::to_string(n) + " need level " +
                         std::to_string(n + 1) + " to be built");
  return data_->copy_maps[n - 1];
}

std::vector<std::vector<Vertex>> ExhaustionScheme::embeddings(int n, int m) const {
  if (m < n) throw BadParameter("embeddings need m >= n");
  std::vector<std::vector<Vertex>> out;
  const auto count = level(n).vertex_count();
  std::vector<Vertex> identity(count);
  for (std::size_t i = 0; i < count; ++i) identity[i] = static_cast<Vertex>(i);
  out.push_back(std::move(identity));
  for (int k = n; k < m; ++k) {
    std::vector<std::vector<Vertex>> next;
    for (const auto& copy : copies(k)) {
      for (const auto& e : out) {
        std::vector<Vertex> composed(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) composed[i] = copy[e[i]];
        next.push_back(std::move(composed));
      }
    }
    out = std::move(next);
  }
  return out;
}

VertexSet ExhaustionScheme::tile_frontier(int n) const {
  level(n);
  return VertexSet(data_->corners[n - 1]);
}

VertexSet ExhaustionScheme::invariant_frontier(int n) const {
  const Graph& ambient = level(n + 2);
  std::vector<Vertex> pulled;
  for (const auto& e : embeddings(n, n + 2)) {
    const VertexSet image(e);
    std::vector<Vertex> inverse(ambient.vertex_count(), -1);
    for (std::size_t i = 0; i < e.size(); ++i) inverse[e[i]] = static_cast<Vertex>(i);
    for (Vertex v : frontier(ambient, image)) pulled.push_back(inverse[v]);
  }
  return VertexSet(std::move(pulled));
}

double ExhaustionScheme::amenability_ratio(int n) const {
  return static_cast<double>(invariant_frontier(n).size()) /
         static_cast<double>(level(n).vertex_count());
}

int ExhaustionScheme::minimal_level(int n, std::span<const Vertex> vertices) const {
  const std::size_t count = level(n).vertex_count();
  std::vector<Vertex> current(vertices.begin(), vertices.end());
  for (Vertex v : current)
    if (v < 0 || static_cast<std::size_t>(v) >= count)
      throw CycleTooLarge("vertex " + std::to_string(v) + " is outside K_" + std::to_string(n));
  int s = n;
  while (s > 1) {
    bool descended = false;
    for (const auto& copy : copies(s - 1)) {
      std::vector<Vertex> inverse(level(s).vertex_count(), -1);
      for (std::size_t i = 0; i < copy.size(); ++i) inverse[copy[i]] = static_cast<Vertex>(i);
      if (std::all_of(current.begin(), current.end(), [&](Vertex v) { return inverse[v] >= 0; })) {
        for (Vertex& v : current) v = inverse[v];
        --s;
        descended = true;
        break;
      }
    }
    if (!descended) break;
  }
  return s;
}

TraceContext ExhaustionScheme::context(int n) const {
  ExhaustionScheme self = *this;
  return TraceContext::self_similar(level(n), n, degree_bound(),
                                    [self](int k) { return self.context(k); }, name());
}

TraceContext gasket_exhaustion(int level) {
  return ExhaustionScheme::sierpinski_gasket(level).context(level);
}

Multiplicity average_multiplicity(const ExhaustionScheme& scheme, int n, const CycleClass& c) {
  if (n > scheme.max_level())
    throw CycleTooLarge("level " + std::to_string(n) + " is not built");
  std::span<const Vertex> cyc(c.representative.vertices);
  Multiplicity m;
  m.level_of_class = scheme.minimal_level(n, cyc);
  const int s = m.level_of_class;
  double copies = 1.0;
  for (int k = s; k < n; ++k) copies *= scheme.copy_count();
  m.estimate = copies / static_cast<double>(scheme.level(n).vertex_count());
  // |K_n| = (3^n + 3)/2, so 3^(n-s)/|K_n| -> 2/3^s
  double limit = 2.0;
  for (int k = 0; k < s; ++k) limit /= scheme.copy_count();
  m.limit = limit;
  return m;
}

double average_multiplicity(const PeriodicSpec& spec, const CycleClass&) {
  spec.validate();
  return 1.0;
}

}  // namespace gz
