#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "graphzeta/operators.hpp"
#include "graphzeta/spectral.hpp"
#include "graphzeta/types.hpp"

namespace gz {

struct RegionParams {
  double d = 0.0;
  int q = 0;
  Complex u = 0.0;
  double band = 1e-9;

  /// d = q + 1
  static RegionParams regular(int q, Complex u, double band = 1e-9);
};

struct GPsi {
  Complex g;    // (1 + (1-u)(q+u) z^2)/z
  Complex psi;  // 1/((1-u)(q+u) z)
};

/// Throws DomainError at z = 0.
Complex g_value(Complex z, Complex u, int q);
/// Throws DomainError at z = 0, u = 1 or u = -q.
GPsi g_and_psi(Complex z, Complex u, int q);

/// Within the band around Omega: |Im g| <= band and Re g in [-d-band, d+band].
bool omega_membership(Complex z, Complex u, const RegionParams& params);

/// Closed-form classifier: Omega_w separates 0 from infinity iff w is real
/// with 0 < w <= d^2/4.
bool omega_w_disconnects(Complex w, double d);

/// Grid flood fill on the complement of Omega_w = {z : w z^2 - t z + 1 = 0,
/// t in [-d, d]}, starting from the cell of 0.
bool omega_disconnection_oracle(Complex w, double d, int grid);

enum class XiRoute { Auto, Series, Determinant };

struct XiOptions {
  XiRoute route = XiRoute::Auto;
  double band = 1e-9;
  double series_tolerance = 1e-15;  // target for the truncation bound
};

struct XiValue {
  Complex value;
  XiRoute route = XiRoute::Auto;
  double error_estimate = 0.0;
};

/// Completed Bartholdi zeta. Inside |z| < 1/(2 alpha(u)) it is the series
/// times the prefactors; elsewhere (g - (q+1))/det_tau(g I - A), which needs
/// a strictly (q+1)-regular context. Throws DomainError inside the Omega band.
XiValue xi_bartholdi(const TraceContext& ctx, Complex z, Complex u, int q, XiOptions options = {});

/// exp(-integral of z F(lambda)/(1 + q z^2 - lambda z) over [-d, d]).
/// For step distributions, points on or outside |z| = 1/sqrt(q) whose Re g
/// lies in a flat gap inside (-2 sqrt q, 2 sqrt q) get the continuation from
/// inside the disc across the gap arc, so the value is analytic near the
/// roots of 1 + q z^2 - x z for x in the gap.
XiValue xi_ihara_spectral(const SpectralCDF& f, Complex z, int q, double band = 1e-9);

struct ContourOptions {
  const SpectralCDF* reference = nullptr;  // checked against phi on the real segments
  double tolerance = 1e-9;
  int panels = 32;
};

/// Integral of z phi(lambda)/(1 + q z^2 - lambda z) over the path from -d to
/// d that detours around 2 tau sqrt(q) on a semicircle of radius eps in the
/// half plane sigma Im(lambda) >= 0. Only q >= 2.
XiValue contour_xi(const std::function<Complex(Complex)>& phi, int sigma, int tau, double eps,
                   Complex z, int q, double d, ContourOptions options = {});

/// Straight-segment version of the same integral.
XiValue straight_xi(const std::function<Complex(Complex)>& phi, Complex z, int q, double d,
                    int panels = 32);

/// Points of the contour used by contour_xi, as lambda values.
std::vector<Complex> contour_points(int sigma, int tau, double eps, int q, double d, int samples);

struct ClairValue {
  Complex inverse_zeta;
  Complex zeta;
  Complex xi;
};

/// Bartholdi zeta of the Z-lattice: 1/Z = z h(g) with h(g) = (g + sqrt(g-2) sqrt(g+2))/2.
/// Throws DomainError when g is in the band around [-2, 2].
ClairValue clair_zeta(Complex z, Complex u, double band = 1e-9);

/// ((1+cz^2)/2)(1 + sqrt(1 - 4z^2/(1+cz^2)^2)), c = 1-u^2, principal root.
/// Agrees with clair_zeta near z = 0.
Complex clair_inverse_zeta_literal(Complex z, Complex u);

/// Roots of w z^2 - t z + 1 for each t.
std::vector<Complex> level_set_points(Complex w, const std::vector<Complex>& t_values);

enum class RegionKind { OmegaQ, OmegaW, OmegaTildeQ };

/// Point cloud of a singularity set, sampled with `samples` parameter values.
std::vector<Complex> region_points(RegionKind kind, Complex w, double d, int q, int sigma, int tau,
                                   double eps, int samples);

}  // namespace gz
