#include "graphzeta/operators.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

#include "graphzeta/errors.hpp"

namespace gz {

UBound alpha_bound(int d, Complex u) {
  if (d < 1) throw BadParameter("degree bound must be at least 1");
  UBound b;
  b.u = u;
  b.m = std::max({std::abs(u), std::abs(1.0 - u), 1.0});
  const double dd = d;
  b.alpha = (dd + std::sqrt(dd * dd + 4.0 * b.m * (dd - 1.0 + b.m))) / 2.0;
  return b;
}

const char* context_kind_name(ContextKind kind) noexcept {
  switch (kind) {
    case ContextKind::Finite: return "finite";
    case ContextKind::Periodic: return "periodic";
    case ContextKind::SelfSimilar: return "self-similar";
  }
  return "unknown";
}

TraceContext TraceContext::finite(Graph g) {
  TraceContext ctx;
  ctx.kind_ = ContextKind::Finite;
  std::vector<Vertex> all(g.vertex_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
  ctx.support_ = VertexSet(std::move(all));
  ctx.weight_ = 1.0 / static_cast<double>(g.vertex_count());
  ctx.degree_bound_ = g.max_degree();
  ctx.q_ = gz::q_diagonal(g);
  ctx.a_ = adjacency_matrix<Complex>(g);
  ctx.graph_ = std::move(g);
  return ctx;
}

TraceContext TraceContext::periodic(const PeriodicSpec& spec, int window_radius) {
  PeriodicWindow w = realize_window(spec, window_radius);
  TraceContext ctx;
  ctx.kind_ = ContextKind::Periodic;
  ctx.support_ = w.domain;
  ctx.weight_ = 1.0;
  ctx.degree_bound_ = spec.max_degree();
  ctx.window_radius_ = window_radius;
  ctx.q_.resize(w.true_degrees.size());
  for (std::size_t i = 0; i < w.true_degrees.size(); ++i) ctx.q_[i] = w.true_degrees[i] - 1.0;
  ctx.a_ = adjacency_matrix<Complex>(w.graph);
  ctx.graph_ = std::move(w.graph);
  ctx.spec_ = std::make_shared<const PeriodicSpec>(spec);
  return ctx;
}

TraceContext TraceContext::self_similar(Graph section, int level, int degree_bound,
                                        LevelFactory levels, std::string scheme_name) {
  TraceContext ctx = finite(std::move(section));
  ctx.kind_ = ContextKind::SelfSimilar;
  ctx.level_ = level;
  ctx.degree_bound_ = std::max(ctx.degree_bound_, degree_bound);
  ctx.levels_ = std::move(levels);
  ctx.label_ = std::move(scheme_name);
  return ctx;
}

int TraceContext::max_exact_propagation() const noexcept {
  return kind_ == ContextKind::Periodic ? window_radius_ - 1 : INT_MAX;
}

bool TraceContext::is_regular() const noexcept {
  const double q = degree_bound_ - 1.0;
  return (q_.array() == q).all();
}

TraceContext TraceContext::normalized() const {
  TraceContext out = *this;
  out.weight_ = 1.0 / static_cast<double>(support_.size());
  return out;
}

std::optional<TraceContext> TraceContext::previous_level() const {
  if (kind_ != ContextKind::SelfSimilar || level_ <= 1 || !levels_) return std::nullopt;
  return levels_(level_ - 1);
}

std::string TraceContext::describe() const {
  std::ostringstream out;
  out << context_kind_name(kind_);
  switch (kind_) {
    case ContextKind::Finite:
      out << "(|V|=" << graph_.vertex_count() << ", |E|=" << graph_.edge_count() << ")";
      break;
    case ContextKind::Periodic:
      out << "(|F|=" << support_.size() << ", rank=" << (spec_ ? spec_->rank : 0)
          << ", window_radius=" << window_radius_ << ", tau(I)=" << identity_trace() << ")";
      break;
    case ContextKind::SelfSimilar:
      out << "(" << label_ << ", level=" << level_ << ", |K_n|=" << graph_.vertex_count() << ")";
      break;
  }
  return out.str();
}

void require_propagation(const TraceContext& ctx, int r) {
  if (r > ctx.max_exact_propagation())
    throw WindowTooSmall("propagation " + std::to_string(r) + " needs window radius >= " +
                         std::to_string(r + 1) + ", have " + std::to_string(ctx.window_radius()));
}

Complex trace(const TraceContext& ctx, const MatrixXc& t) {
  Complex sum = 0.0;
  for (Vertex x : ctx.support()) sum += t(x, x);
  return ctx.weight() * sum;
}

Complex trace(const TraceContext& ctx, const OperatorWindow& t) {
  require_propagation(ctx, t.propagation);
  return trace(ctx, t.matrix);
}

std::vector<OperatorWindow> a_sequence(const TraceContext& ctx, Complex u, int max_order) {
  if (max_order < 0) throw BadParameter("order must be nonnegative");
  require_propagation(ctx, max_order);
  const auto n = static_cast<Eigen::Index>(ctx.graph().vertex_count());
  const VectorXc q = ctx.q_diagonal().cast<Complex>();
  auto blocks = a_recursion<Complex>(ctx.adjacency(), q, u, max_order, MatrixXc::Identity(n, n).eval());
  std::vector<OperatorWindow> out;
  out.reserve(blocks.size());
  for (std::size_t m = 0; m < blocks.size(); ++m)
    out.push_back(OperatorWindow{std::move(blocks[m]), static_cast<int>(m)});
  return out;
}

namespace {

/// A_m(u)(x, x) for x in the support, m = 0..M, in column chunks so that
/// large sections never hold a dense |V| x |V| block. Column x of A_m lives
/// in the ball of radius m around x, so each chunk runs on the ball of
/// radius M around its vertices.
std::vector<VectorXc> support_diagonals(const TraceContext& ctx, Complex u, int max_order) {
  require_propagation(ctx, max_order);
  const Graph& g = ctx.graph();
  const auto& support = ctx.support().members();
  const auto s = static_cast<Eigen::Index>(support.size());
  const Complex c = 1.0 - u;
  std::vector<VectorXc> diag(max_order + 1, VectorXc::Zero(s));
  std::vector<Eigen::Index> local(g.vertex_count(), -1);
  constexpr Eigen::Index chunk = 128;
  for (Eigen::Index start = 0; start < s; start += chunk) {
    const Eigen::Index k = std::min(chunk, s - start);
    const VertexSet centers(std::vector<Vertex>(support.begin() + start, support.begin() + start + k));
    const VertexSet region = ball(g, centers, max_order);
    const auto n = static_cast<Eigen::Index>(region.size());
    for (Eigen::Index i = 0; i < n; ++i) local[region.members()[i]] = i;
    std::vector<Eigen::Triplet<Complex>> entries;
    VectorXc q(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vertex v = region.members()[i];
      q[i] = ctx.q_diagonal()[v];
      for (Vertex w : g.neighbors(v))
        if (local[w] >= 0) entries.emplace_back(i, local[w], 1.0);
    }
    SparseMatrixC a(n, n);
    a.setFromTriplets(entries.begin(), entries.end());
    const VectorXc shift_two = c * (q.array() + 1.0);
    const VectorXc shift_rest = c * (q.array() + u);

    std::vector<Eigen::Index> rows(k);
    for (Eigen::Index j = 0; j < k; ++j) rows[j] = local[support[start + j]];
    MatrixXc prev2 = MatrixXc::Zero(n, k);
    for (Eigen::Index j = 0; j < k; ++j) prev2(rows[j], j) = 1.0;
    auto record = [&](int m, const MatrixXc& block) {
      for (Eigen::Index j = 0; j < k; ++j) diag[m](start + j) = block(rows[j], j);
    };
    record(0, prev2);
    if (max_order > 0) {
      MatrixXc prev1 = a * prev2;
      record(1, prev1);
      for (int m = 2; m <= max_order; ++m) {
        MatrixXc next = a * prev1;
        next -= (m == 2 ? shift_two : shift_rest).asDiagonal() * prev2;
        record(m, next);
        prev2.swap(prev1);
        prev1.swap(next);
      }
    }
    for (Vertex v : region) local[v] = -1;
  }
  return diag;
}

struct DiagonalTraces {
  std::vector<Complex> tau_a;   // tau(A_m)
  std::vector<Complex> tau_qa;  // tau((Q - (1-2u)I) A_m)
  Complex tau_q_plus_i;
  Complex tau_q_minus_i;
};

DiagonalTraces diagonal_traces(const TraceContext& ctx, Complex u, int max_order) {
  const auto diag = support_diagonals(ctx, u, max_order);
  const auto& support = ctx.support().members();
  VectorXc qs(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) qs[i] = ctx.q_diagonal()[support[i]];
  DiagonalTraces out;
  const double w = ctx.weight();
  const VectorXc shifted = qs.array() - (1.0 - 2.0 * u);
  for (const auto& d : diag) {
    out.tau_a.push_back(w * d.sum());
    out.tau_qa.push_back(w * shifted.cwiseProduct(d).sum());
  }
  out.tau_q_plus_i = w * (qs.array() + 1.0).sum();
  out.tau_q_minus_i = w * (qs.array() - 1.0).sum();
  return out;
}

TNSequence tn_core(const TraceContext& ctx, Complex u, int max_order) {
  if (max_order < 1) throw BadParameter("order must be at least 1");
  const DiagonalTraces tr = diagonal_traces(ctx, u, max_order);
  const Complex c = 1.0 - u;
  TNSequence s;
  s.u = u;
  s.tau_a = tr.tau_a;
  s.t.assign(max_order + 1, 0.0);
  s.n.assign(max_order + 1, 0.0);
  if (max_order >= 2) s.t[2] = u * tr.tau_q_plus_i;
  for (int m = 3; m <= max_order; ++m) s.t[m] = tr.tau_qa[m - 2] + c * c * s.t[m - 2];
  for (int m = 1; m <= max_order; ++m) {
    Complex closed = 0.0;
    for (int j = 1; j <= (m - 1) / 2; ++j) closed += ipow(c, 2 * j - 2) * tr.tau_qa[m - 2 * j];
    if (m % 2 == 0) closed += u * ipow(c, m - 2) * tr.tau_q_plus_i;
    s.closed_form_gap =
        std::max(s.closed_form_gap, std::abs(closed - s.t[m]) / std::max(1.0, std::abs(s.t[m])));
    s.n[m] = s.tau_a[m] - c * s.t[m];
  }
  return s;
}

}  // namespace

TNSequence tn_sequence(const TraceContext& ctx, Complex u, int max_order) {
  TNSequence s = tn_core(ctx, u, max_order);
  if (auto previous = ctx.previous_level()) {
    const TNSequence p = tn_core(*previous, u, max_order);
    std::vector<Complex> delta(max_order + 1, 0.0);
    for (int m = 0; m <= max_order; ++m) delta[m] = s.n[m] - p.n[m];
    s.level_delta = std::move(delta);
  }
  return s;
}

std::vector<Complex> b_traces(const TraceContext& ctx, Complex u, int max_order) {
  const DiagonalTraces tr = diagonal_traces(ctx, u, max_order);
  const Complex c = 1.0 - u;
  std::vector<Complex> out(max_order + 1);
  for (int m = 0; m <= max_order; ++m) {
    Complex sum = 0.0;
    for (int k = 1; k <= m / 2; ++k) sum += ipow(c, 2 * k - 1) * tr.tau_qa[m - 2 * k];
    out[m] = tr.tau_a[m] - sum;
  }
  return out;
}

BSequence b_sequence(const TraceContext& ctx, Complex u, int max_order) {
  const auto a = a_sequence(ctx, u, max_order);
  const auto n = static_cast<Eigen::Index>(ctx.graph().vertex_count());
  const Complex c = 1.0 - u;
  const VectorXc shifted = ctx.q_diagonal().cast<Complex>().array() - (1.0 - 2.0 * u);
  BSequence out;
  for (int m = 0; m <= max_order; ++m) {
    MatrixXc sum = MatrixXc::Zero(n, n);
    for (int k = 1; k <= m / 2; ++k) sum += ipow(c, 2 * k - 1) * a[m - 2 * k].matrix;
    OperatorWindow b{a[m].matrix - shifted.asDiagonal() * sum, m};
    out.tau_b.push_back(trace(ctx, b));
    out.b.push_back(std::move(b));
  }
  if (max_order >= 1) {
    const TNSequence s = tn_core(ctx, u, max_order);
    const Complex tau_q_minus_i =
        trace(ctx, MatrixXc((ctx.q_diagonal().array() - 1.0).cast<Complex>().matrix().asDiagonal()));
    for (int m = 1; m <= max_order; ++m) {
      Complex expected = s.n[m];
      if (m % 2 == 0) expected -= ipow(c, m) * tau_q_minus_i;
      out.hook_gap = std::max(out.hook_gap, std::abs(out.tau_b[m] - expected));
    }
  }
  return out;
}

}  // namespace gz
