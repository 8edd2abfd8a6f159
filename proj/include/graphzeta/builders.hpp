#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "graphzeta/cycles.hpp"
#include "graphzeta/graph.hpp"
#include "graphzeta/operators.hpp"
#include "graphzeta/periodic.hpp"

namespace gz {

enum class Family { Cycle, Complete, Petersen, Path };

/// Throws BadParameter outside the valid range of n (ignored for Petersen).
Graph finite_family(Family family, int n = 0);

/// Periodic trace context realized on the ball of `window_radius` around
/// the fundamental domain.
TraceContext periodic_lattice(const PeriodicSpec& spec, int window_radius);

/// Substitution scheme: K_{n+1} is the union of `copy_count` images of K_n
/// glued at frontier vertices. Levels are 1-based; vertex indices of K_n are
/// a prefix of those of K_{n+1}.
class ExhaustionScheme {
 public:
  /// Sierpinski gasket graphs, K_1 a triangle, up to `max_level`.
  static ExhaustionScheme sierpinski_gasket(int max_level);

  const std::string& name() const noexcept { return data_->name; }
  int max_level() const noexcept { return static_cast<int>(data_->levels.size()); }
  int copy_count() const noexcept { return data_->copy_count; }
  int degree_bound() const noexcept { return data_->degree_bound; }

  /// Throws BudgetExceeded above max_level.
  const Graph& level(int n) const;
  /// Images of K_n in K_{n+1}: copies(n)[c][v] is the K_{n+1} index of vertex v.
  const std::vector<std::vector<Vertex>>& copies(int n) const;
  /// All images of K_n inside K_m, m >= n, as vertex maps.
  std::vector<std::vector<Vertex>> embeddings(int n, int m) const;
  /// Frontier of K_n as a substitution tile: the vertices glued to other tiles.
  VertexSet tile_frontier(int n) const;
  /// Union of pullbacks of the frontiers of the copies of K_n in K_{n+2}.
  VertexSet invariant_frontier(int n) const;
  double amenability_ratio(int n) const;

  /// Smallest s such that the vertices lie in one copy of K_s inside K_n.
  int minimal_level(int n, std::span<const Vertex> vertices) const;

  TraceContext context(int n) const;

 private:
  struct Data {
    std::string name;
    int copy_count = 0;
    int degree_bound = 0;
    std::vector<Graph> levels;                                // index n-1
    std::vector<std::vector<std::vector<Vertex>>> copy_maps;  // index n-1: K_n -> K_{n+1}
    std::vector<std::vector<Vertex>> corners;                 // index n-1
  };
  std::shared_ptr<const Data> data_;
};

/// Self-similar trace context of the gasket at the given level.
TraceContext gasket_exhaustion(int level);

/// Vertex count of the gasket at level n: (3^n + 3)/2.
std::size_t gasket_vertex_count(int n);

struct Multiplicity {
  int level_of_class = 0;  // s(C)
  double limit = 0.0;      // lim c^{n-s}/|K_n|
  double estimate = 0.0;   // c^{n-s}/|K_n| at the level the class was found
};

/// Average multiplicity of a class given by vertices of K_n. Throws
/// CycleTooLarge when the class does not fit in K_n.
Multiplicity average_multiplicity(const ExhaustionScheme& scheme, int n, const CycleClass& c);

/// Free Z^r actions have trivial cycle stabilizers, so mu = 1.
double average_multiplicity(const PeriodicSpec& spec, const CycleClass& c);

}  // namespace gz
