#include "graphzeta/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include <json.hpp>

#include "graphzeta/errors.hpp"

namespace gz {

std::vector<int> PeriodicSpec::degrees() const {
  std::vector<int> deg(domain.size(), 0);
  for (const auto& e : edges) {
    ++deg.at(e.from);
    ++deg.at(e.to);
  }
  return deg;
}

int PeriodicSpec::max_degree() const {
  const auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

namespace {

Offset negate(Offset o) { return {-o[0], -o[1]}; }
Offset add(Offset a, Offset b) { return {a[0] + b[0], a[1] + b[1]}; }
Offset sub(Offset a, Offset b) { return {a[0] - b[0], a[1] - b[1]}; }

long long gcd_ll(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }

}  // namespace

void PeriodicSpec::validate() const {
  if (rank != 1 && rank != 2) throw BadParameter("periodic rank must be 1 or 2");
  if (domain.empty()) throw BadParameter("periodic fundamental domain is empty");
  std::set<std::string> seen(domain.begin(), domain.end());
  if (seen.size() != domain.size())
    throw FreenessViolation("fundamental domain repeats a label, so the action is not free");

  const int n = static_cast<int>(domain.size());
  // each directed lift (i, j, o) must appear once; (i, j, o) and (j, i, -o) are the same edge
  std::set<std::tuple<int, int, int, int>> lifts;
  for (const auto& e : edges) {
    if (e.from < 0 || e.to < 0 || e.from >= n || e.to >= n)
      throw BadParameter("periodic edge references a label outside the domain");
    if (rank == 1 && e.offset[1] != 0) throw BadParameter("rank-1 offsets must be 1-dimensional");
    if (e.from == e.to && e.offset == Offset{0, 0})
      throw SimplicityError("periodic edge is a self-loop at '" + domain[e.from] + "'");
    const auto a = std::make_tuple(e.from, e.to, e.offset[0], e.offset[1]);
    const auto b = std::make_tuple(e.to, e.from, -e.offset[0], -e.offset[1]);
    if (lifts.count(a) || lifts.count(b))
      throw SimplicityError("periodic edge between '" + domain[e.from] + "' and '" +
                            domain[e.to] + "' is repeated");
    lifts.insert(a);
    if (a != b) lifts.insert(b);
  }

  // connected quotient and translations generating the full lattice
  std::vector<std::vector<std::pair<int, Offset>>> adj(n);
  for (const auto& e : edges) {
    adj[e.from].push_back({e.to, e.offset});
    adj[e.to].push_back({e.from, negate(e.offset)});
  }
  std::vector<Offset> potential(n, Offset{0, 0});
  std::vector<bool> reached(n, false);
  std::queue<int> q;
  q.push(0);
  reached[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const auto& [w, o] : adj[v]) {
      if (!reached[w]) {
        reached[w] = true;
        potential[w] = add(potential[v], o);
        q.push(w);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end())
    throw ConnectivityError("periodic quotient graph is disconnected");
  std::vector<Offset> generators;
  for (const auto& e : edges) {
    Offset c = sub(add(potential[e.from], e.offset), potential[e.to]);
    if (c != Offset{0, 0}) generators.push_back(c);
  }
  bool full = false;
  if (rank == 1) {
    long long g = 0;
    for (const auto& c : generators) g = gcd_ll(g, c[0]);
    full = g == 1;
  } else {
    long long g = 0;  // gcd of all 2x2 minors equals the lattice index
    for (std::size_t i = 0; i < generators.size(); ++i)
      for (std::size_t j = i + 1; j < generators.size(); ++j)
        g = gcd_ll(g, 1LL * generators[i][0] * generators[j][1] -
                          1LL * generators[i][1] * generators[j][0]);
    full = g == 1;
  }
  if (!full)
    throw ConnectivityError("periodic graph is disconnected: cycle translations do not generate Z^" +
                            std::to_string(rank));
}

MatrixXc PeriodicSpec::fiber(double theta1, double theta2) const {
  const int n = static_cast<int>(domain.size());
  MatrixXc a = MatrixXc::Zero(n, n);
  for (const auto& e : edges) {
    const Complex phase = std::polar(1.0, theta1 * e.offset[0] + theta2 * e.offset[1]);
    a(e.from, e.to) += phase;
    a(e.to, e.from) += std::conj(phase);
  }
  return a;
}

PeriodicSpec PeriodicSpec::z_lattice() {
  return PeriodicSpec{{"0"}, {{0, 0, {1, 0}}}, 1};
}

PeriodicSpec PeriodicSpec::ladder() {
  return PeriodicSpec{{"bottom", "top"}, {{0, 1, {0, 0}}, {0, 0, {1, 0}}, {1, 1, {1, 0}}}, 1};
}

PeriodicSpec PeriodicSpec::square_lattice() {
  return PeriodicSpec{{"0"}, {{0, 0, {1, 0}}, {0, 0, {0, 1}}}, 2};
}

PeriodicSpec parse_periodic_spec(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("periodic graph JSON is not valid: ") + e.what());
  }
  try {
    PeriodicSpec spec;
    spec.rank = doc.value("rank", 1);
    std::map<std::string, int> index;
    for (const auto& label : doc.at("domain")) {
      std::string name = label.is_string() ? label.get<std::string>() : label.dump();
      index.emplace(name, static_cast<int>(spec.domain.size()));
      spec.domain.push_back(name);
    }
    auto lookup = [&](const nlohmann::json& label) {
      std::string name = label.is_string() ? label.get<std::string>() : label.dump();
      auto it = index.find(name);
      if (it == index.end()) throw ParseError("periodic edge uses unknown label '" + name + "'");
      return it->second;
    };
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("periodic edge must be [from, to, [offset]]");
      PeriodicSpec::Edge edge;
      edge.from = lookup(e[0]);
      edge.to = lookup(e[1]);
      const auto& o = e[2];
      if (!o.is_array() || static_cast<int>(o.size()) != spec.rank)
        throw ParseError("periodic edge offset must have " + std::to_string(spec.rank) + " entries");
      for (int k = 0; k < spec.rank; ++k) edge.offset[k] = o[k].get<int>();
      spec.edges.push_back(edge);
    }
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed periodic graph: ") + e.what());
  }
}

std::string to_json(const PeriodicSpec& spec) {
  nlohmann::json doc;
  doc["domain"] = spec.domain;
  doc["rank"] = spec.rank;
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : spec.edges) {
    nlohmann::json offset = nlohmann::json::array();
    for (int k = 0; k < spec.rank; ++k) offset.push_back(e.offset[k]);
    doc["edges"].push_back({spec.domain[e.from], spec.domain[e.to], offset});
  }
  return doc.dump();
}

PeriodicWindow realize_window(const PeriodicSpec& spec, int radius) {
  spec.validate();
  if (radius < 1) throw BadParameter("periodic window radius must be at least 1");
  const int n = static_cast<int>(spec.domain_size());
  std::vector<std::vector<std::pair<int, Offset>>> adj(n);
  for (const auto& e : spec.edges) {
    adj[e.from].push_back({e.to, e.offset});
    adj[e.to].push_back({e.from, negate(e.offset)});
  }

  using Key = std::pair<Offset, int>;
  std::map<Key, Vertex> index;
  PeriodicWindow w;
  w.radius = radius;
  std::vector<int> dist;
  std::queue<Vertex> q;
  auto intern = [&](Offset cell, int label, int d) {
    auto [it, inserted] = index.emplace(Key{cell, label}, static_cast<Vertex>(w.cells.size()));
    if (inserted) {
      w.cells.push_back(cell);
      w.labels.push_back(label);
      dist.push_back(d);
      q.push(it->second);
    }
    return it->second;
  };
  std::vector<Vertex> domain;
  for (int i = 0; i < n; ++i) domain.push_back(intern({0, 0}, i, 0));
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    if (dist[v] == radius) continue;
    for (const auto& [to, o] : adj[w.labels[v]]) intern(add(w.cells[v], o), to, dist[v] + 1);
  }
  std::vector<Edge> edges;
  for (Vertex v = 0; v < static_cast<Vertex>(w.cells.size()); ++v) {
    for (const auto& [to, o] : adj[w.labels[v]]) {
      auto it = index.find(Key{add(w.cells[v], o), to});
      if (it != index.end() && v < it->second) edges.emplace_back(v, it->second);
    }
  }
  w.graph = Graph::from_edges(w.cells.size(), edges);
  w.domain = VertexSet(domain);
  const auto deg = spec.degrees();
  for (int label : w.labels) w.true_degrees.push_back(deg[label]);
  return w;
}

}  // namespace gz
