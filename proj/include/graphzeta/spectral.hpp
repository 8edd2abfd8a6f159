#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "graphzeta/operators.hpp"
#include "graphzeta/types.hpp"

namespace gz {

struct SpectralAtom {
  double lambda = 0.0;
  double weight = 0.0;
};

/// Spectral distribution F(lambda) = tau(E(lambda)) of the adjacency
/// operator, normalized to total mass 1 and supported in [-d, d].
///
/// Finite graphs give an exact step function. Periodic graphs carry the
/// trapezoid torus measure as atoms (used for Stieltjes sums) together with
/// an exact evaluator built from band crossings.
struct SpectralCDF {
  double d = 0.0;
  std::vector<SpectralAtom> atoms;  // sorted by lambda
  std::vector<double> grid;         // lambda_k = -d + 2dk/K, k = 0..K
  std::vector<double> values;       // F(lambda_k)
  bool step = true;
  std::function<double(double)> exact;  // continuous evaluator when !step
  std::optional<double> level_delta;    // self-similar: sup |F_n - F_{n-1}| on the grid
  int torus_nodes = 0;

  /// Right-continuous value; 0 below -d, 1 at and above d.
  double operator()(double lambda) const;
  int q() const noexcept { return static_cast<int>(d + 0.5) - 1; }
};

struct SpectralOptions {
  int torus_nodes = 0;  // 0 means grid_size
};

SpectralCDF spectral_cdf(const TraceContext& ctx, int grid_size, SpectralOptions options = {});

/// Step CDF of the empirical distribution of `eigenvalues`.
SpectralCDF step_cdf(const std::vector<double>& eigenvalues, double d, int grid_size);

/// Continuous CDF from an evaluator; atoms are the increments between grid
/// points placed at cell midpoints.
SpectralCDF smooth_cdf(std::function<double(double)> f, double d, int grid_size);

/// log(1 + c z^2 - lambda z) continued along the ray from 0 to z, via the
/// factorization (1 - rho_1 z)(1 - rho_2 z).
Complex radial_log_quadratic(Complex c, Complex lambda, Complex z);

/// Integral of F(lambda)/(g - lambda) over [-d, d]. Exact for step CDFs.
/// Throws SingularIntegrand when g lies on the support of dF.
Complex cauchy_integral(const SpectralCDF& f, Complex g, int panels = 64);

struct StieltjesResult {
  Complex value;      // det_tau((1 + q z^2) I - z A)
  Complex log_value;  // integral of the radial log against dF
  Complex by_parts;   // (1 - d z + q z^2) exp(z-integral of F)
  double identity_gap = 0.0;
};

/// Throws SingularIntegrand when 1 + q z^2 - lambda z vanishes on supp dF.
StieltjesResult stieltjes_log_det(const SpectralCDF& f, Complex z, int q);

/// Same Stieltjes sum for a general quadratic coefficient c.
Complex stieltjes_log(const SpectralCDF& f, Complex c, Complex z);

/// Largest subinterval of (-2 sqrt q, 2 sqrt q) on which F increases by less
/// than `tol`. Empty for q = 1 is not special-cased; callers decide.
std::optional<std::pair<double, double>> hole_extension_applicable(const SpectralCDF& f,
                                                                   double tol);

/// Band functions: sorted eigenvalues of the fibre matrix over a rank-1 torus.
std::vector<double> fiber_eigenvalues(const PeriodicSpec& spec, double theta1, double theta2 = 0.0);

}  // namespace gz
