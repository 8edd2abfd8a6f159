#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

#include "graphzeta/builders.hpp"
#include "graphzeta/cycles.hpp"
#include "graphzeta/errors.hpp"
#include "graphzeta/operators.hpp"
#include "graphzeta/zeta.hpp"
#include "oracles.hpp"

using namespace gz;

namespace {

ClosedPath path(std::vector<Vertex> v) { return ClosedPath{std::move(v)}; }

struct Fixture {
  const char* name;
  int n;
  std::vector<std::pair<int, int>> edges;
};

std::vector<Fixture> fixtures() {
  return {{"C4", 4, oracle::cycle_edges(4)},
          {"C5", 5, oracle::cycle_edges(5)},
          {"K4", 4, oracle::complete_edges(4)},
          {"Petersen", 10, oracle::petersen_edges()}};
}

Graph graph_of(const Fixture& f) {
  std::vector<Edge> e(f.edges.begin(), f.edges.end());
  return Graph::from_edges(f.n, e);
}

}  // namespace

TEST_CASE("closed path examples") {
  const Graph c4 = finite_family(Family::Cycle, 4);
  const auto two = closed_paths(c4, 0, 2);
  CHECK(two == std::vector<ClosedPath>{path({0, 1, 0}), path({0, 3, 0})});
  CHECK(closed_paths(c4, 0, 3).empty());
  const Graph k4 = finite_family(Family::Complete, 4);
  CHECK(closed_paths(k4, 0, 3).size() == 6);
}

TEST_CASE("closed paths match unpruned enumeration") {
  for (const auto& f : fixtures()) {
    const Graph g = graph_of(f);
    const auto adj = oracle::adjacency_lists(f.n, f.edges);
    for (int m = 1; m <= 7; ++m) {
      const auto walks = oracle::closed_walks(adj, 0, m);
      std::vector<ClosedPath> expected;
      for (const auto& w : walks) expected.push_back(path(std::vector<Vertex>(w.begin(), w.end())));
      std::sort(expected.begin(), expected.end());
      auto got = closed_paths(g, 0, m);
      std::sort(got.begin(), got.end());
      CHECK_MESSAGE(got == expected, f.name << " m=" << m);
    }
  }
}

TEST_CASE("path statistics examples") {
  // Length-2 returns count as tailed: v_1 = v_{m-1}.
  const PathStats back = path_stats(path({0, 1, 0}));
  CHECK(back.bc == 1);
  CHECK(back.cbc == 2);
  CHECK(back.has_tail);
  CHECK(back.primitive);

  const PathStats square = path_stats(path({0, 1, 2, 3, 0}));
  CHECK(square.bc == 0);
  CHECK(square.cbc == 0);
  CHECK_FALSE(square.has_tail);
  CHECK(square.primitive);
  CHECK(square.effective_length == 4);

  const PathStats twice = path_stats(path({0, 1, 0, 1, 0}));
  CHECK_FALSE(twice.primitive);
  CHECK(twice.effective_length == 2);
  CHECK(twice.cbc == 4);

  const PathStats lolly = path_stats(path({0, 1, 2, 3, 1, 0}));
  CHECK(lolly.has_tail);
  CHECK(lolly.bc == 0);
  CHECK(lolly.cbc == 1);
}

TEST_CASE("cbc agrees with the cyclic definition and exceeds bc by at most two") {
  for (const auto& f : fixtures()) {
    const auto adj = oracle::adjacency_lists(f.n, f.edges);
    for (int m = 2; m <= 6; ++m)
      for (int x = 0; x < f.n; ++x)
        for (const auto& w : oracle::closed_walks(adj, x, m)) {
          const PathStats s = path_stats(path(std::vector<Vertex>(w.begin(), w.end())));
          CHECK(s.cbc == oracle::cyclic_bumps(w));
          CHECK(s.bc == oracle::linear_bumps(w));
          CHECK(s.cbc - s.bc >= 0);
          CHECK(s.cbc - s.bc <= 2);
          CHECK(s.has_tail == (w[1] == w[m - 1]));
        }
  }
}

TEST_CASE("tail stripping leaves a tailless closed path of the right length") {
  const Graph k4 = finite_family(Family::Complete, 4);
  for (int m = 2; m <= 7; ++m)
    for (const auto& p : closed_paths(k4, 0, m)) {
      const ClosedPath s = strip_tail(p);
      int k = 0;
      while (2 * (k + 1) <= m && p.vertices[k + 1] == p.vertices[m - k - 1]) ++k;
      CHECK(s.length() == m - 2 * k);
      CHECK(s.vertices.front() == s.vertices.back());
      if (s.length() >= 2) CHECK_FALSE(path_stats(s).has_tail);
    }
}

TEST_CASE("rotations and canonical form") {
  const std::vector<Vertex> cyclic{0, 1, 0, 1};
  CHECK(rotation_period(cyclic) == 2);
  const std::vector<Vertex> tri{2, 0, 1};
  CHECK(rotation_period(tri) == 3);
  CHECK(canonical_rotation(path({2, 0, 1, 2})) == path({0, 1, 2, 0}));
  CHECK(canonical_rotation(path({1, 0, 2, 1})) == path({0, 2, 1, 0}));
}

TEST_CASE("brute counts reproduce frozen edge-operator values") {
  // Frozen from tr((B - (1-u)J)^m)/|V| with B the directed edge matrix.
  const Complex u3(0.3, 0.2);
  struct Row {
    const char* name;
    Complex u;
    std::vector<Complex> n;
  };
  const std::vector<Row> rows{
      {"C4", 0.0, {0, 0, 0, 2, 0, 0}},
      {"C4", 0.5, {0, 0.5, 0, 3.125, 0, 5.28125}},
      {"C4", u3, {0, {0.1, 0.24}, 0, {2.1762, 0.504}, 0, {0.75313, 2.302344}}},
      {"C5", 0.0, {0, 0, 0, 0, 2, 0}},
      {"C5", 0.5, {0, 0.5, 0, 1.125, 2, 2.28125}},
      {"C5", u3, {0, {0.1, 0.24}, 0, {0.1762, 0.504}, 2, {0.15313, 0.862344}}},
      {"K4", 0.0, {0, 0, 6, 6, 0, 24}},
      {"K4", 0.5, {0, 0.75, 6, 9.1875, 22.5, 63.796875}},
      {"K4", u3, {0, {0.15, 0.36}, 6, {6.5643, 1.476}, {10.5, 9.6}, {37.857495, 16.821516}}},
      {"Petersen", 0.0, {0, 0, 0, 0, 12, 12}},
      {"Petersen", 0.5, {0, 0.75, 0, 3.1875, 12, 24.796875}},
      {"Petersen", u3, {0, {0.15, 0.36}, 0, {0.5643, 1.476}, 12, {13.257495, 5.301516}}},
  };
  for (const auto& row : rows) {
    const auto fx = fixtures();
    const auto it = std::find_if(fx.begin(), fx.end(), [&](const Fixture& f) { return std::string(f.name) == row.name; });
    const Graph g = graph_of(*it);
    for (int m = 1; m <= 6; ++m) {
      const Complex got = brute_counts(g, m, row.u).n;
      CHECK_MESSAGE(std::abs(got - row.n[m - 1]) < 1e-9, row.name << " m=" << m << " u=" << row.u);
    }
  }
}

TEST_CASE("brute counts agree with the live edge-operator oracle") {
  const std::vector<Complex> us{0.0, 1.0, 0.5, {0.3, 0.2}, {-0.7, 1.1}};
  for (const auto& f : fixtures()) {
    const Graph g = graph_of(f);
    for (Complex u : us) {
      const auto expected = oracle::edge_traces(f.n, f.edges, u, 8);
      for (int m = 1; m <= 8; ++m)
        CHECK_MESSAGE(std::abs(brute_counts(g, m, u).n - expected[m]) < 1e-9 * (1 + std::abs(expected[m])),
                      f.name << " m=" << m);
    }
  }
}

TEST_CASE("t_m examples") {
  const Graph k4 = finite_family(Family::Complete, 4);
  const Complex u(0.4, -0.1);
  CHECK(std::abs(brute_counts(k4, 1, u).t) < 1e-15);
  CHECK(std::abs(brute_counts(k4, 2, u).t - 3.0 * u) < 1e-14);
  CHECK(std::abs(brute_counts(k4, 2, u).n - 3.0 * u * u) < 1e-14);
  const Graph c4 = finite_family(Family::Cycle, 4);
  CHECK(std::abs(brute_counts(c4, 4, 0.0).n - 2.0) < 1e-15);
}

TEST_CASE("class sums reproduce path counts") {
  const Complex u(0.3, 0.2);
  for (const auto& f : fixtures()) {
    const Graph g = graph_of(f);
    for (int m = 1; m <= 7; ++m) {
      Complex sum = 0.0;
      for (const auto& c : cycle_classes(g, m))
        sum += c.multiplicity * double(c.effective_length) * ipow(u, c.cbc);
      CHECK(std::abs(sum - brute_counts(g, m, u).n) < 1e-12);
    }
  }
}

TEST_CASE("primitive classes") {
  const Graph c4 = finite_family(Family::Cycle, 4);
  int squares = 0;
  for (const auto& c : primitive_cycle_classes(c4, 4))
    if (c.length == 4 && c.cbc == 0) ++squares;
  CHECK(squares == 2);
  const Graph k4 = finite_family(Family::Complete, 4);
  int triangles = 0;
  for (const auto& c : primitive_cycle_classes(k4, 3))
    if (c.length == 3) ++triangles;
  CHECK(triangles == 8);
  CHECK(primitive_cycle_classes(k4, 1).empty());
}

TEST_CASE("Euler product against closed forms and the series") {
  const Graph c4 = finite_family(Family::Cycle, 4);
  CHECK(std::abs(euler_product(c4, 8, 0.0, 0.0) - 1.0) < 1e-15);
  const double z = 0.3;
  CHECK(std::abs(euler_product(c4, 12, z, 0.0) - std::pow(1 - std::pow(z, 4), -0.5)) < 1e-6);

  const Graph k4 = finite_family(Family::Complete, 4);
  const auto ctx = TraceContext::finite(k4);
  const Complex u(0.3, 0.2), zk(0.05, 0.03);
  const Complex series = zeta_eval(log_zeta_series(ctx, u, 40), zk).value;
  CHECK(std::abs(euler_product(k4, 10, zk, u) - series) < 1e-6);
  const double alpha = alpha_bound(3, u).alpha;
  CHECK_THROWS_AS(euler_product(k4, 4, 1.0 / alpha, u), DomainError);
}

TEST_CASE("enumeration budget") {
  const Graph k4 = finite_family(Family::Complete, 4);
  EnumerationOptions tight;
  tight.budget = 50;
  CHECK_THROWS_AS(closed_paths(k4, 0, 8, tight), BudgetExceeded);
  CHECK_THROWS_AS(brute_counts(k4, 8, 0.5, tight), BudgetExceeded);

  setenv("ZETA_BUDGET", "1234", 1);
  CHECK(enumeration_options_from_env().budget == 1234);
  unsetenv("ZETA_BUDGET");
  CHECK(enumeration_options_from_env().budget == EnumerationOptions{}.budget);
}
