#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/types.hpp"

namespace gz {

/// Closed path v_0, ..., v_m = v_0. The closing vertex is stored.
struct ClosedPath {
  std::vector<Vertex> vertices;

  int length() const noexcept { return static_cast<int>(vertices.size()) - 1; }
  Vertex base() const { return vertices.front(); }
  friend bool operator==(const ClosedPath&, const ClosedPath&) = default;
  friend auto operator<=>(const ClosedPath&, const ClosedPath&) = default;
};

struct PathStats {
  int bc = 0;
  int cbc = 0;
  bool has_tail = false;
  bool primitive = true;
  int effective_length = 0;  // smallest rotation period
};

struct CycleClass {
  ClosedPath representative;  // lexicographically least rotation
  int length = 0;
  int effective_length = 0;
  int cbc = 0;
  double multiplicity = 0.0;
};

struct EnumerationOptions {
  std::uint64_t budget = 10'000'000;  // partial paths visited, summed over one call
  int max_length = 14;
};

/// Reads ZETA_BUDGET from the environment when set.
EnumerationOptions enumeration_options_from_env();

/// Calls `visit` once for every closed path of length m based at x.
void for_each_closed_path(const Graph& g, Vertex x, int m, const EnumerationOptions& options,
                          const std::function<void(std::span<const Vertex>)>& visit);

std::vector<ClosedPath> closed_paths(const Graph& g, Vertex x, int m,
                                     const EnumerationOptions& options = {});

PathStats path_stats(const ClosedPath& p);

/// Cyclic period of the vertex sequence v_0..v_{m-1}.
int rotation_period(std::span<const Vertex> cyclic);

ClosedPath canonical_rotation(const ClosedPath& p);

/// Repeatedly removes the first and last step while v_1 = v_{m-1}.
ClosedPath strip_tail(const ClosedPath& p);

/// Path counts over all base vertices, unnormalized. by_cbc[k] counts closed
/// paths with cbc = k; tailed_by_bc[k] counts tailed ones with bc = k.
struct PathCensus {
  int length = 0;
  std::size_t vertex_count = 0;
  std::vector<std::uint64_t> by_cbc;
  std::vector<std::uint64_t> tailed_by_bc;
};

PathCensus closed_path_census(const Graph& g, int m, const EnumerationOptions& options = {});

struct BruteCounts {
  Complex n;  // N_m(u)
  Complex t;  // t_m(u)
};

/// Evaluates the census polynomials at u with the normalized mean 1/|V|.
BruteCounts evaluate_census(const PathCensus& census, Complex u);

BruteCounts brute_counts(const Graph& g, int m, Complex u, const EnumerationOptions& options = {});

/// Every rotation class of closed paths of length exactly m, primitive or
/// not. Multiplicity is 1/|V|.
std::vector<CycleClass> cycle_classes(const Graph& g, int m, const EnumerationOptions& options = {});

/// Primitive rotation classes of length <= max_length.
std::vector<CycleClass> primitive_cycle_classes(const Graph& g, int max_length,
                                                const EnumerationOptions& options = {});

/// Truncated Euler product over primitive classes with |C| <= max_length.
/// Throws DomainError when |z| >= 1/alpha(u).
Complex euler_product(const Graph& g, int max_length, Complex z, Complex u,
                      const EnumerationOptions& options = {});

}  // namespace gz
