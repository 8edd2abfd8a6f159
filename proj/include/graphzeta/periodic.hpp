#pragma once

#include <array>
#include <string>
#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/types.hpp"

namespace gz {

using Offset = std::array<int, 2>;  // second entry is zero for rank 1

/// Infinite graph with a free Z or Z^2 translation action, described by a
/// fundamental domain and edges carrying the translation of their far end.
struct PeriodicSpec {
  struct Edge {
    int from = 0;  // index into domain
    int to = 0;
    Offset offset{0, 0};
  };

  std::vector<std::string> domain;
  std::vector<Edge> edges;
  int rank = 1;

  std::size_t domain_size() const noexcept { return domain.size(); }
  /// Degrees of the domain vertices in the infinite graph.
  std::vector<int> degrees() const;
  int max_degree() const;

  /// Throws FreenessViolation, SimplicityError, ConnectivityError or
  /// BadParameter when the data does not describe a valid periodic graph.
  void validate() const;

  /// Fibre matrix A(theta) of the Bloch decomposition.
  MatrixXc fiber(double theta1, double theta2 = 0.0) const;

  static PeriodicSpec z_lattice();
  static PeriodicSpec ladder();
  static PeriodicSpec square_lattice();
};

/// JSON text {"domain": [...], "edges": [[i, j, [o...]], ...], "rank": r}.
PeriodicSpec parse_periodic_spec(const std::string& json_text);
std::string to_json(const PeriodicSpec& spec);

/// Ball of the given radius around the fundamental domain (cell 0).
struct PeriodicWindow {
  Graph graph;
  VertexSet domain;                 // window indices of the cell-0 representatives
  std::vector<int> true_degrees;    // degrees in the infinite graph
  std::vector<Offset> cells;        // cell of each window vertex
  std::vector<int> labels;          // domain label of each window vertex
  int radius = 0;
};

PeriodicWindow realize_window(const PeriodicSpec& spec, int radius);

}  // namespace gz
