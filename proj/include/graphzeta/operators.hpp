#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/periodic.hpp"
#include "graphzeta/types.hpp"

namespace gz {

struct UBound {
  Complex u;
  double m = 1.0;      // M(u) = max(|u|, |1-u|, 1)
  double alpha = 0.0;  // (d + sqrt(d^2 + 4M(d-1+M)))/2
};

UBound alpha_bound(int d, Complex u);

enum class ContextKind { Finite, Periodic, SelfSimilar };

const char* context_kind_name(ContextKind kind) noexcept;

/// Complex matrix over the vertices of a context's window, tagged with its
/// propagation radius.
struct OperatorWindow {
  MatrixXc matrix;
  int propagation = 0;
};

class TraceContext;
using LevelFactory = std::function<TraceContext(int)>;

/// Where traces are taken. Finite graphs use the mean (1/|V|) sum over all
/// vertices. Periodic graphs sum exact diagonal entries over the fundamental
/// domain of a window, so tau(I) = |F|. Self-similar graphs use the normalized
/// trace of the finite section K_n.
class TraceContext {
 public:
  static TraceContext finite(Graph g);
  static TraceContext periodic(const PeriodicSpec& spec, int window_radius);
  /// `levels` rebuilds the context at another level, for convergence deltas.
  static TraceContext self_similar(Graph section, int level, int degree_bound,
                                   LevelFactory levels, std::string scheme_name);

  ContextKind kind() const noexcept { return kind_; }
  /// The graph carrying matrices: the whole graph, the window, or K_n.
  const Graph& graph() const noexcept { return graph_; }
  /// Vertices whose diagonal entries are summed.
  const VertexSet& support() const noexcept { return support_; }
  /// Factor applied to the diagonal sum.
  double weight() const noexcept { return weight_; }
  double identity_trace() const noexcept { return weight_ * static_cast<double>(support_.size()); }
  int degree_bound() const noexcept { return degree_bound_; }
  /// Largest propagation for which diagonal entries over the support are exact.
  int max_exact_propagation() const noexcept;
  int window_radius() const noexcept { return window_radius_; }
  int level() const noexcept { return level_; }
  bool is_normalized() const noexcept { return std::abs(identity_trace() - 1.0) < 1e-14; }
  /// Q = D - I with the degrees of the underlying (possibly infinite) graph.
  const Eigen::VectorXd& q_diagonal() const noexcept { return q_; }
  const SparseMatrixC& adjacency() const noexcept { return a_; }
  const PeriodicSpec* periodic_spec() const noexcept { return spec_.get(); }
  /// Strictly (q+1)-regular in the sense every vertex of the underlying graph has degree d.
  bool is_regular() const noexcept;

  /// Same context with tau(I) = 1. Identity for finite and self-similar.
  TraceContext normalized() const;
  /// Context one level down, for self-similar contexts with level > 1.
  std::optional<TraceContext> previous_level() const;
  std::string describe() const;

 private:
  ContextKind kind_ = ContextKind::Finite;
  Graph graph_;
  VertexSet support_;
  double weight_ = 1.0;
  int degree_bound_ = 0;
  int window_radius_ = 0;
  int level_ = 0;
  Eigen::VectorXd q_;
  SparseMatrixC a_;
  std::shared_ptr<const PeriodicSpec> spec_;
  LevelFactory levels_;
  std::string label_;
};

/// Throws WindowTooSmall when propagation r cannot be handled exactly.
void require_propagation(const TraceContext& ctx, int r);

Complex trace(const TraceContext& ctx, const OperatorWindow& t);
Complex trace(const TraceContext& ctx, const MatrixXc& t);

/// Columns A_m(u) X for m = 0..M, from the symmetric form of the recursion
/// A_m = A A_{m-1} - (1-u)(Q+uI) A_{m-2}, A_2 = A^2 - (1-u)(Q+I).
/// Works for any scalar type, including integers at u = 1.
template <class Scalar, class Sparse, class Block>
std::vector<Block> a_recursion(const Sparse& a, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& q,
                               Scalar u, int max_order, const Block& x0) {
  std::vector<Block> out;
  out.reserve(max_order + 1);
  out.push_back(x0);
  if (max_order >= 1) out.push_back(a * x0);
  const Scalar c = Scalar(1) - u;
  for (int m = 2; m <= max_order; ++m) {
    Block next = a * out[m - 1];
    const Scalar shift = (m == 2) ? Scalar(1) : u;
    next -= (c * (q.array() + shift)).matrix().asDiagonal() * out[m - 2];
    out.push_back(std::move(next));
  }
  return out;
}

/// A_0(u), ..., A_M(u) as full window matrices.
std::vector<OperatorWindow> a_sequence(const TraceContext& ctx, Complex u, int max_order);

struct TNSequence {
  Complex u;
  std::vector<Complex> t;      // index m = 0..M, t[0] unused (0)
  std::vector<Complex> n;      // N_m(u)
  std::vector<Complex> tau_a;  // tau(A_m(u))
  /// max over m of |closed form - recursion| / max(1, |t_m|)
  double closed_form_gap = 0.0;
  /// Self-similar only: N_m at this level minus N_m one level down.
  std::optional<std::vector<Complex>> level_delta;
};

TNSequence tn_sequence(const TraceContext& ctx, Complex u, int max_order);

struct BSequence {
  std::vector<OperatorWindow> b;  // B_0..B_M
  std::vector<Complex> tau_b;
  /// max over m of |tau(B_m) - (N_m - [m even](1-u)^m tau(Q-I))|
  double hook_gap = 0.0;
};

BSequence b_sequence(const TraceContext& ctx, Complex u, int max_order);

/// tau(B_m(u)) for m = 0..M using only the support columns.
std::vector<Complex> b_traces(const TraceContext& ctx, Complex u, int max_order);

}  // namespace gz
