#include "graphzeta/cycles.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "graphzeta/errors.hpp"
#include "graphzeta/operators.hpp"

namespace gz {

EnumerationOptions enumeration_options_from_env() {
  EnumerationOptions options;
  if (const char* env = std::getenv("ZETA_BUDGET"); env && *env) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw BadParameter(std::string("ZETA_BUDGET is not a nonnegative integer: '") + env + "'");
    options.budget = value;
  }
  return options;
}

namespace {

void check_length(int m, const EnumerationOptions& options) {
  if (m < 1) throw BadParameter("closed path length must be at least 1");
  if (m > options.max_length)
    throw BudgetExceeded("closed path length " + std::to_string(m) + " exceeds the guard " +
                         std::to_string(options.max_length));
}

struct Walker {
  const Graph& g;
  int m;
  std::uint64_t budget;
  std::uint64_t& visited;
  const std::function<void(std::span<const Vertex>)>& visit;
  std::vector<Vertex> path;
  std::vector<int> dist_to_base;

  void step() {
    if (++visited > budget)
      throw BudgetExceeded("closed path enumeration exceeded budget of " + std::to_string(budget) +
                           " partial paths");
    const int depth = static_cast<int>(path.size()) - 1;
    const Vertex last = path.back();
    if (depth == m) {
      if (last == path.front()) visit(path);
      return;
    }
    for (Vertex w : g.neighbors(last)) {
      // prune branches that can no longer return in time
      if (dist_to_base[w] > m - depth - 1) continue;
      path.push_back(w);
      step();
      path.pop_back();
    }
  }
};

void walk(const Graph& g, Vertex x, int m, const EnumerationOptions& options,
          std::uint64_t& visited, const std::function<void(std::span<const Vertex>)>& visit) {
  Walker walker{g, m, options.budget, visited, visit, {x}, distances_from(g, x)};
  walker.path.reserve(m + 1);
  walker.step();
}

}  // namespace

void for_each_closed_path(const Graph& g, Vertex x, int m, const EnumerationOptions& options,
                          const std::function<void(std::span<const Vertex>)>& visit) {
  check_length(m, options);
  std::uint64_t visited = 0;
  walk(g, x, m, options, visited, visit);
}

std::vector<ClosedPath> closed_paths(const Graph& g, Vertex x, int m,
                                     const EnumerationOptions& options) {
  std::vector<ClosedPath> out;
  for_each_closed_path(g, x, m, options, [&](std::span<const Vertex> p) {
    out.push_back(ClosedPath{{p.begin(), p.end()}});
  });
  return out;
}

int rotation_period(std::span<const Vertex> cyclic) {
  const int m = static_cast<int>(cyclic.size());
  for (int p = 1; p < m; ++p) {
    if (m % p != 0) continue;
    bool periodic = true;
    for (int i = 0; i + p < m && periodic; ++i) periodic = cyclic[i] == cyclic[i + p];
    if (periodic) return p;
  }
  return m;
}

namespace {

PathStats stats_of(std::span<const Vertex> v) {
  const int m = static_cast<int>(v.size()) - 1;
  PathStats s;
  for (int i = 1; i < m; ++i)
    if (v[i - 1] == v[i + 1]) ++s.bc;
  s.cbc = s.bc;
  if (m >= 2 && v[m - 1] == v[1]) ++s.cbc;  // bump at the seam v_0
  s.has_tail = m >= 2 && v[1] == v[m - 1];
  s.effective_length = rotation_period(v.first(m));
  s.primitive = s.effective_length == m;
  return s;
}

}  // namespace

PathStats path_stats(const ClosedPath& p) {
  if (p.length() < 1 || p.vertices.front() != p.vertices.back())
    throw BadParameter("path_stats expects a closed path of positive length");
  return stats_of(p.vertices);
}

ClosedPath canonical_rotation(const ClosedPath& p) {
  const int m = p.length();
  std::span<const Vertex> cyc(p.vertices.data(), m);
  int best = 0;
  for (int r = 1; r < m; ++r) {
    for (int i = 0; i < m; ++i) {
      const Vertex a = cyc[(r + i) % m], b = cyc[(best + i) % m];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  ClosedPath out;
  out.vertices.reserve(m + 1);
  for (int i = 0; i < m; ++i) out.vertices.push_back(cyc[(best + i) % m]);
  out.vertices.push_back(out.vertices.front());
  return out;
}

ClosedPath strip_tail(const ClosedPath& p) {
  std::vector<Vertex> v = p.vertices;
  while (v.size() >= 3 && v[1] == v[v.size() - 2]) {
    v.pop_back();
    v.erase(v.begin());
  }
  return ClosedPath{std::move(v)};
}

PathCensus closed_path_census(const Graph& g, int m, const EnumerationOptions& options) {
  check_length(m, options);
  PathCensus census;
  census.length = m;
  census.vertex_count = g.vertex_count();
  census.by_cbc.assign(m + 1, 0);
  census.tailed_by_bc.assign(m + 1, 0);
  std::uint64_t visited = 0;
  for (Vertex x = 0; x < static_cast<Vertex>(g.vertex_count()); ++x) {
    walk(g, x, m, options, visited, [&](std::span<const Vertex> p) {
      const PathStats s = stats_of(p);
      ++census.by_cbc[s.cbc];
      if (s.has_tail) ++census.tailed_by_bc[s.bc];
    });
  }
  return census;
}

BruteCounts evaluate_census(const PathCensus& census, Complex u) {
  BruteCounts out{0.0, 0.0};
  for (int k = census.length; k >= 0; --k) {  // Horner in u
    out.n = out.n * u + static_cast<double>(census.by_cbc[k]);
    out.t = out.t * u + static_cast<double>(census.tailed_by_bc[k]);
  }
  const double mean = 1.0 / static_cast<double>(census.vertex_count);
  out.n *= mean;
  out.t *= mean;
  return out;
}

BruteCounts brute_counts(const Graph& g, int m, Complex u, const EnumerationOptions& options) {
  return evaluate_census(closed_path_census(g, m, options), u);
}

namespace {

void collect_classes(const Graph& g, int m, const EnumerationOptions& options, bool primitive_only,
                     std::uint64_t& visited, std::map<ClosedPath, CycleClass>& classes) {
  const double mu = 1.0 / static_cast<double>(g.vertex_count());
  for (Vertex x = 0; x < static_cast<Vertex>(g.vertex_count()); ++x) {
    walk(g, x, m, options, visited, [&](std::span<const Vertex> p) {
      // each class is met once per rotation; keep only the canonical one
      const PathStats s = stats_of(p);
      if (primitive_only && !s.primitive) return;
      ClosedPath path{{p.begin(), p.end()}};
      ClosedPath rep = canonical_rotation(path);
      if (rep != path) return;
      classes.emplace(rep, CycleClass{rep, m, s.effective_length, s.cbc, mu});
    });
  }
}

}  // namespace

std::vector<CycleClass> cycle_classes(const Graph& g, int m, const EnumerationOptions& options) {
  check_length(m, options);
  std::map<ClosedPath, CycleClass> classes;
  std::uint64_t visited = 0;
  collect_classes(g, m, options, false, visited, classes);
  std::vector<CycleClass> out;
  out.reserve(classes.size());
  for (auto& [rep, c] : classes) out.push_back(std::move(c));
  return out;
}

std::vector<CycleClass> primitive_cycle_classes(const Graph& g, int max_length,
                                                const EnumerationOptions& options) {
  std::map<ClosedPath, CycleClass> classes;
  std::uint64_t visited = 0;
  for (int m = 2; m <= max_length; ++m) {
    check_length(m, options);
    collect_classes(g, m, options, true, visited, classes);
  }
  std::vector<CycleClass> out;
  out.reserve(classes.size());
  for (auto& [rep, c] : classes) out.push_back(std::move(c));
  std::stable_sort(out.begin(), out.end(),
                   [](const CycleClass& a, const CycleClass& b) { return a.length < b.length; });
  return out;
}

Complex euler_product(const Graph& g, int max_length, Complex z, Complex u,
                      const EnumerationOptions& options) {
  const UBound bound = alpha_bound(g.max_degree(), u);
  if (std::abs(z) >= 1.0 / bound.alpha)
    throw DomainError("euler_product needs |z| < 1/alpha = " + std::to_string(1.0 / bound.alpha));
  if (z == Complex(0.0)) return 1.0;
  // (1 - x)^(-mu) with the principal log; |x| < 1 inside the disc
  Complex log_value = 0.0;
  for (const CycleClass& c : primitive_cycle_classes(g, max_length, options)) {
    const Complex x = ipow(z, c.length) * ipow(u, c.cbc);
    log_value -= c.multiplicity * std::log(1.0 - x);
  }
  return std::exp(log_value);
}

}  // namespace gz
