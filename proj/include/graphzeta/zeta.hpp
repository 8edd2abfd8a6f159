#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphzeta/operators.hpp"
#include "graphzeta/types.hpp"

namespace gz {

/// Coefficients c_m = N_m(u)/m of log Z(z, u), valid for |z| < 1/alpha(u).
struct SeriesTruncation {
  Complex u;
  std::vector<Complex> coefficients;  // index 0..M, c_0 = 0
  double radius = 0.0;
  double alpha = 0.0;
  /// |c_m| <= bound_constant * alpha^m for every m
  double bound_constant = 0.0;
  std::string context;

  int order() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
};

SeriesTruncation log_zeta_series(const TraceContext& ctx, Complex u, int max_order);

struct ZetaValue {
  Complex value;
  double error_bound = 0.0;  // from the tail of the log series
};

/// exp(sum c_m z^m). Throws DomainError when |z| >= radius.
ZetaValue zeta_eval(const SeriesTruncation& s, Complex z);

/// s -> (T(s), T'(s)) on [0, 1] with T(0) = I, built from the operator
/// symbols (A, diagonal of Q) the context hands over: the whole adjacency
/// for finite graphs or a Bloch fibre for periodic ones.
struct MatrixPath {
  std::function<std::pair<MatrixXc, MatrixXc>(double s, const MatrixXc& a, const VectorXc& q)> eval;
  std::string description;
};

/// s -> I - (sz) A + (1-u)(Q+uI)(sz)^2
MatrixPath pencil_path(Complex z, Complex u);
/// s -> (1-s) I + s T; only meaningful for finite contexts
MatrixPath segment_path(const MatrixXc& target);

struct DetOptions {
  bool check_branch = true;   // also integrate tau(T' T^{-1}) and report the gap
  double singular_tol = 1e-12;
  int torus_nodes = 256;      // per direction, periodic contexts
};

struct DetResult {
  Complex value;
  Complex log_value;      // continued along the path
  Complex log_integral;   // integral of tau(T' T^{-1}), when requested
  double branch_gap = 0.0;
  int steps = 0;
};

/// Analytic determinant exp tau log T(1), branch fixed by continuity from
/// T(0) = I. Throws SingularPencil if T(s) is numerically singular on the path.
DetResult det_tau(const TraceContext& ctx, const MatrixPath& path, DetOptions options = {});

/// Analytic determinant of a single matrix using the logarithm cut along the
/// bisector of the widest angular gap of its spectrum. Finite and
/// self-similar contexts only. Throws ConvexHullViolation if 0 lies in the
/// convex hull of the spectrum.
Complex det_tau(const TraceContext& ctx, const MatrixXc& t);

enum class EulerKind { FiniteNormalized, Average, L2 };
const char* euler_kind_name(EulerKind kind) noexcept;

struct EulerChar {
  double value = 0.0;            // -tau(Q-I)/2
  EulerKind kind = EulerKind::FiniteNormalized;
  std::optional<double> direct;  // (|V| - |E|)/|V| on the finite graph or section
};

EulerChar euler_characteristic(const TraceContext& ctx);

struct DetFormulaCheck {
  double residual = 0.0;
  Complex inverse_zeta;  // 1/Z from the series
  Complex determinant_side;
  double branch_gap = 0.0;
  double truncation_bound = 0.0;
};

/// Compares 1/Z from the series with (1-(1-u)^2 z^2)^(-chi) det_tau(pencil).
/// Throws DomainError unless |z| < 1/(2 alpha(u)).
DetFormulaCheck verify_det_formula(const TraceContext& ctx, Complex u, Complex z, int max_order);

/// Taylor coefficients a_0..a_order of f from `nodes` samples on |z| = radius.
std::vector<Complex> taylor_coefficients(const std::function<Complex(Complex)>& f, double radius,
                                         int nodes, int order);

/// log Z(z, u) = chi log(1-(1-u)^2 z^2) - log det_tau(pencil), fitted on
/// |z| = 0.9/alpha(u). Coefficient m approximates N_m(u)/m.
std::vector<Complex> log_zeta_taylor(const TraceContext& ctx, Complex u, int order, int nodes = 128);

/// -z d/dz log det_tau(pencil) coefficients, which approximate tau(B_m(u)).
std::vector<Complex> trace_log_taylor(const TraceContext& ctx, Complex u, int order, int nodes = 128);

}  // namespace gz
