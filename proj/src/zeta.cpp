#include "graphzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "graphzeta/errors.hpp"
#include "graphzeta/quadrature.hpp"

namespace gz {

SeriesTruncation log_zeta_series(const TraceContext& ctx, Complex u, int max_order) {
  if (max_order < 1) throw BadParameter("series order must be at least 1");
  const TNSequence tn = tn_sequence(ctx, u, max_order);
  const UBound b = alpha_bound(ctx.degree_bound(), u);
  SeriesTruncation s;
  s.u = u;
  s.alpha = b.alpha;
  s.radius = 1.0 / b.alpha;
  // |N_m| <= (tau(I) + 4M) m alpha^m, so |c_m| <= (tau(I) + 4M) alpha^m
  s.bound_constant = ctx.identity_trace() + 4.0 * b.m;
  s.context = ctx.describe();
  s.coefficients.assign(max_order + 1, 0.0);
  for (int m = 1; m <= max_order; ++m) s.coefficients[m] = tn.n[m] / static_cast<double>(m);
  return s;
}

ZetaValue zeta_eval(const SeriesTruncation& s, Complex z) {
  const double r = std::abs(z);
  if (r >= s.radius)
    throw DomainError("|z| = " + std::to_string(r) + " is outside the series disc of radius " +
                      std::to_string(s.radius));
  Complex log_value = 0.0;
  for (int m = s.order(); m >= 1; --m) log_value = (log_value + s.coefficients[m]) * z;
  ZetaValue out;
  out.value = std::exp(log_value);
  const double x = s.alpha * r;
  const double tail = s.bound_constant * std::pow(x, s.order() + 1) / (1.0 - x);
  out.error_bound = std::abs(out.value) * std::expm1(tail);
  return out;
}

MatrixPath pencil_path(Complex z, Complex u) {
  MatrixPath p;
  p.eval = [z, u](double s, const MatrixXc& a, const VectorXc& q) {
    const Complex w = s * z;
    const VectorXc quad = (1.0 - u) * (q.array() + u);
    const auto n = a.rows();
    MatrixXc t = MatrixXc::Identity(n, n) - w * a;
    t.diagonal() += quad * (w * w);
    MatrixXc dt = -z * a;
    dt.diagonal() += quad * (2.0 * w * z);
    return std::make_pair(std::move(t), std::move(dt));
  };
  std::ostringstream desc;
  desc << "radial pencil I - sz A + (1-u)(Q+uI)(sz)^2, s in [0,1], z=" << z << ", u=" << u;
  p.description = desc.str();
  return p;
}

MatrixPath segment_path(const MatrixXc& target) {
  MatrixPath p;
  p.eval = [target](double s, const MatrixXc&, const VectorXc&) {
    const auto n = target.rows();
    const MatrixXc id = MatrixXc::Identity(n, n);
    return std::make_pair(MatrixXc((1.0 - s) * id + s * target), MatrixXc(target - id));
  };
  p.description = "segment (1-s) I + s T";
  return p;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// log det of one fibre along the path, continued from log det I = 0.
class FiberLogDet {
 public:
  FiberLogDet(const MatrixPath& path, MatrixXc a, VectorXc q, double tol)
      : path_(path), a_(std::move(a)), q_(std::move(q)), tol_(tol) {}

  Complex continued() {
    Complex value = 0.0;
    const int initial = 16;
    for (int k = 0; k < initial; ++k)
      value = advance(double(k) / initial, value, double(k + 1) / initial, 0);
    return value;
  }

  Complex integrated() {
    std::function<Complex(double)> integrand = [&](double s) {
      auto [t, dt] = path_.eval(s, a_, q_);
      Eigen::PartialPivLU<MatrixXc> lu(t);
      check(lu, s);
      return Complex(lu.solve(dt).trace());
    };
    Complex previous = integrate<Complex>(integrand, 0.0, 1.0, 4, 16);
    for (int panels = 8; panels <= 1024; panels *= 2) {
      Complex current = integrate<Complex>(integrand, 0.0, 1.0, panels, 16);
      if (std::abs(current - previous) <= 1e-13 * (1.0 + std::abs(current))) return current;
      previous = current;
    }
    return previous;
  }

  int steps() const noexcept { return steps_; }

 private:
  void check(const Eigen::PartialPivLU<MatrixXc>& lu, double s) const {
    if (!(lu.rcond() > tol_))
      throw SingularPencil("pencil is numerically singular at s = " + std::to_string(s) +
                           " along " + path_.description);
  }

  /// principal-branch log det from the LU factors, up to a multiple of 2 pi i
  Complex raw_log_det(double s) {
    ++steps_;
    auto [t, dt] = path_.eval(s, a_, q_);
    Eigen::PartialPivLU<MatrixXc> lu(t);
    check(lu, s);
    const MatrixXc& lu_matrix = lu.matrixLU();
    double modulus = 0.0, phase = 0.0;
    for (Eigen::Index i = 0; i < lu_matrix.rows(); ++i) {
      modulus += std::log(std::abs(lu_matrix(i, i)));
      phase += std::arg(lu_matrix(i, i));
    }
    if (lu.permutationP().determinant() < 0) phase += std::numbers::pi;
    return {modulus, phase};
  }

  Complex advance(double s0, Complex v0, double s1, int depth) {
    const Complex raw = raw_log_det(s1);
    const double k = std::round((v0.imag() - raw.imag()) / kTwoPi);
    const Complex v1 = raw + Complex(0.0, kTwoPi * k);
    if (std::abs(v1.imag() - v0.imag()) > 0.5 && depth < 40) {
      const double mid = 0.5 * (s0 + s1);
      return advance(mid, advance(s0, v0, mid, depth + 1), s1, depth + 1);
    }
    return v1;
  }

  const MatrixPath& path_;
  MatrixXc a_;
  VectorXc q_;
  double tol_;
  int steps_ = 0;
};

}  // namespace

DetResult det_tau(const TraceContext& ctx, const MatrixPath& path, DetOptions options) {
  DetResult r;
  Complex sum_cont = 0.0, sum_int = 0.0;
  auto run = [&](MatrixXc a, VectorXc q) {
    FiberLogDet fiber(path, std::move(a), std::move(q), options.singular_tol);
    sum_cont += fiber.continued();
    if (options.check_branch) sum_int += fiber.integrated();
    r.steps += fiber.steps();
  };
  double average = 1.0;
  if (ctx.kind() == ContextKind::Periodic) {
    const PeriodicSpec& spec = *ctx.periodic_spec();
    const auto deg = spec.degrees();
    VectorXc q(deg.size());
    for (std::size_t i = 0; i < deg.size(); ++i) q[i] = deg[i] - 1.0;
    const int k = options.torus_nodes;
    const int k2 = spec.rank == 2 ? k : 1;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k2; ++j)
        run(spec.fiber(kTwoPi * i / k, spec.rank == 2 ? kTwoPi * j / k : 0.0), q);
    average = 1.0 / (static_cast<double>(k) * k2);
  } else {
    run(MatrixXc(ctx.adjacency()), ctx.q_diagonal().cast<Complex>());
  }
  // periodic: Tr_Gamma log T is the torus average of tr log T(theta); the
  // context weight is 1 for Tr_Gamma and 1/|F| once normalized
  const double fiber_scale = average * ctx.weight();
  r.log_value = fiber_scale * sum_cont;
  r.value = std::exp(r.log_value);
  if (options.check_branch) {
    r.log_integral = fiber_scale * sum_int;
    r.branch_gap = std::abs(r.log_value - r.log_integral);
  }
  return r;
}

Complex det_tau(const TraceContext& ctx, const MatrixXc& t) {
  if (ctx.kind() == ContextKind::Periodic)
    throw BadParameter("a single window matrix has no determinant in a periodic context; use a path");
  Eigen::ComplexEigenSolver<MatrixXc> solver(t, false);
  const VectorXc ev = solver.eigenvalues();
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= 1e-14 * std::max(1.0, t.norm()))
      throw ConvexHullViolation("operator has a zero eigenvalue");
    double a = std::arg(ev[i]);
    if (a < 0) a += kTwoPi;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  double best_gap = angles.front() + kTwoPi - angles.back();
  double cut = angles.back() + 0.5 * best_gap;
  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double gap = angles[i] - angles[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      cut = angles[i - 1] + 0.5 * gap;
    }
  }
  if (best_gap <= std::numbers::pi)
    throw ConvexHullViolation("0 lies in the convex hull of the spectrum");
  // arguments taken in (cut - 2 pi, cut] with cut in (0, 2 pi]
  cut = std::fmod(cut, kTwoPi);
  if (cut <= 0) cut += kTwoPi;
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double a = std::arg(ev[i]);
    while (a > cut) a -= kTwoPi;
    while (a <= cut - kTwoPi) a += kTwoPi;
    sum += Complex(std::log(std::abs(ev[i])), a);
  }
  return std::exp(ctx.weight() * sum);
}

const char* euler_kind_name(EulerKind kind) noexcept {
  switch (kind) {
    case EulerKind::FiniteNormalized: return "finite-normalized";
    case EulerKind::Average: return "average";
    case EulerKind::L2: return "L2";
  }
  return "unknown";
}

EulerChar euler_characteristic(const TraceContext& ctx) {
  EulerChar e;
  double sum = 0.0;
  for (Vertex x : ctx.support()) sum += ctx.q_diagonal()[x] - 1.0;
  e.value = -0.5 * ctx.weight() * sum;
  switch (ctx.kind()) {
    case ContextKind::Finite: e.kind = EulerKind::FiniteNormalized; break;
    case ContextKind::Periodic: e.kind = EulerKind::L2; break;
    case ContextKind::SelfSimilar: e.kind = EulerKind::Average; break;
  }
  if (ctx.kind() != ContextKind::Periodic) {
    const auto& g = ctx.graph();
    e.direct = (static_cast<double>(g.vertex_count()) - static_cast<double>(g.edge_count())) /
               static_cast<double>(g.vertex_count());
  }
  return e;
}

DetFormulaCheck verify_det_formula(const TraceContext& ctx, Complex u, Complex z, int max_order) {
  const UBound b = alpha_bound(ctx.degree_bound(), u);
  if (std::abs(z) >= 0.5 / b.alpha)
    throw DomainError("determinant check needs |z| < 1/(2 alpha) = " + std::to_string(0.5 / b.alpha));
  const SeriesTruncation s = log_zeta_series(ctx, u, max_order);
  const ZetaValue zv = zeta_eval(s, z);
  const DetResult det = det_tau(ctx, pencil_path(z, u));
  const double chi = euler_characteristic(ctx).value;
  const Complex c = 1.0 - u;
  const Complex prefactor = std::exp(-chi * std::log(1.0 - c * c * z * z));
  DetFormulaCheck out;
  out.inverse_zeta = 1.0 / zv.value;
  out.determinant_side = prefactor * det.value;
  out.residual = std::abs(out.inverse_zeta - out.determinant_side);
  out.branch_gap = det.branch_gap;
  out.truncation_bound = zv.error_bound / std::max(1e-300, std::norm(zv.value));
  return out;
}

std::vector<Complex> taylor_coefficients(const std::function<Complex(Complex)>& f, double radius,
                                         int nodes, int order) {
  if (order >= nodes) throw BadParameter("Taylor order must be below the number of nodes");
  std::vector<Complex> samples(nodes);
  for (int j = 0; j < nodes; ++j) samples[j] = f(std::polar(radius, kTwoPi * j / nodes));
  std::vector<Complex> out(order + 1);
  for (int k = 0; k <= order; ++k) {
    Complex sum = 0.0;
    for (int j = 0; j < nodes; ++j) sum += samples[j] * std::polar(1.0, -kTwoPi * j * k / nodes);
    out[k] = sum / (static_cast<double>(nodes) * std::pow(radius, k));
  }
  return out;
}

namespace {

std::vector<Complex> log_det_taylor(const TraceContext& ctx, Complex u, int order, int nodes) {
  const UBound b = alpha_bound(ctx.degree_bound(), u);
  DetOptions options;
  options.check_branch = false;
  auto f = [&](Complex z) { return det_tau(ctx, pencil_path(z, u), options).log_value; };
  return taylor_coefficients(f, 0.9 / b.alpha, nodes, order);
}

}  // namespace

std::vector<Complex> log_zeta_taylor(const TraceContext& ctx, Complex u, int order, int nodes) {
  const UBound b = alpha_bound(ctx.degree_bound(), u);
  const double chi = euler_characteristic(ctx).value;
  const Complex c = 1.0 - u;
  DetOptions options;
  options.check_branch = false;
  auto f = [&](Complex z) {
    return chi * std::log(1.0 - c * c * z * z) - det_tau(ctx, pencil_path(z, u), options).log_value;
  };
  return taylor_coefficients(f, 0.9 / b.alpha, nodes, order);
}

std::vector<Complex> trace_log_taylor(const TraceContext& ctx, Complex u, int order, int nodes) {
  auto a = log_det_taylor(ctx, u, order, nodes);
  for (int m = 0; m <= order; ++m) a[m] *= -static_cast<double>(m);
  return a;
}

}  // namespace gz
