#include <doctest.h>

#include <random>

#include "graphzeta/builders.hpp"
#include "graphzeta/errors.hpp"
#include "graphzeta/functional.hpp"
#include "graphzeta/spectral.hpp"
#include "graphzeta/zeta.hpp"

using namespace gz;

namespace {

Complex random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> r(-radius, radius);
  return {r(rng), r(rng)};
}

}  // namespace

TEST_CASE("g is invariant under the involution psi") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Complex z = random_point(rng, 2.0), u = random_point(rng, 1.5);
    const int q = 1 + i % 4;
    const GPsi gp = g_and_psi(z, u, q);
    CHECK(std::abs(g_value(gp.psi, u, q) - gp.g) <= 1e-12 * (1 + std::abs(gp.g)));
    const Complex back = g_and_psi(gp.psi, u, q).psi;
    CHECK(std::abs(back - z) <= 1e-12 * (1 + std::abs(z)));
  }
  CHECK(std::abs(g_and_psi(0.3, 0.0, 2).psi - 1.0 / 0.6) < 1e-15);
  CHECK_THROWS_AS(g_value(0.0, 0.5, 2), DomainError);
  CHECK_THROWS_AS(g_and_psi(0.3, 1.0, 2), DomainError);
  CHECK_THROWS_AS(g_and_psi(0.3, -2.0, 2), DomainError);
}

TEST_CASE("Omega membership") {
  const RegionParams p = RegionParams::regular(2, 0.0);
  CHECK(p.d == 3.0);
  // |z| = 1/sqrt(q) gives g = 2 Re(z) q, real and inside [-d, d].
  CHECK(omega_membership(std::polar(1.0 / std::sqrt(2.0), 0.9), 0.0, p));
  CHECK_FALSE(omega_membership(0.1, 0.0, p));
  CHECK_FALSE(omega_membership(Complex(0.2, 0.3), 0.0, p));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Complex z = random_point(rng, 1.5), u = random_point(rng, 0.8);
    const Complex psi = g_and_psi(z, u, 2).psi;
    CHECK(omega_membership(z, u, p) == omega_membership(psi, u, p));
  }
}

TEST_CASE("Omega_w disconnection examples") {
  CHECK(omega_w_disconnects(0.5, 2.0));
  CHECK(omega_w_disconnects(1.0, 2.0));
  CHECK_FALSE(omega_w_disconnects(1.2, 2.0));
  CHECK_FALSE(omega_w_disconnects(0.0, 2.0));
  CHECK_FALSE(omega_w_disconnects(-0.5, 2.0));
  CHECK_FALSE(omega_w_disconnects(Complex(0.0, 1.0), 2.0));
  CHECK(omega_disconnection_oracle(0.5, 2.0, 256));
  CHECK_FALSE(omega_disconnection_oracle(Complex(0.0, 1.0), 2.0, 256));
  CHECK_FALSE(omega_disconnection_oracle(-0.5, 2.0, 256));
  CHECK_THROWS_AS(omega_disconnection_oracle(0.5, 2.0, 16), BadParameter);
}

TEST_CASE("level set points solve the quadratic") {
  const Complex w(0.4, 0.1);
  const std::vector<Complex> ts{-2.0, 0.0, 1.3};
  const auto pts = level_set_points(w, ts);
  CHECK(pts.size() == 2 * ts.size());
  for (Complex z : pts) {
    bool ok = false;
    for (Complex t : ts) ok = ok || std::abs(w * z * z - t * z + 1.0) < 1e-12;
    CHECK(ok);
  }
}

TEST_CASE("completed zeta on C4 against the closed form") {
  // Z(z, 0) = (1 - z^4)^{-1/2} on C4, q = 1: xi = (1 - z)^2 Z.
  const auto c4 = TraceContext::finite(finite_family(Family::Cycle, 4));
  for (Complex z : {Complex(0.1, 0.0), Complex(0.3, 0.0), Complex(0.2, 0.25)}) {
    const Complex expected = (1.0 - z) * (1.0 - z) * std::pow(1.0 - std::pow(z, 4), -0.5);
    CHECK(std::abs(xi_bartholdi(c4, z, 0.0, 1).value - expected) < 1e-12);
  }
  CHECK(std::abs(xi_bartholdi(c4, 0.0, 0.0, 1).value - 1.0) < 1e-15);
}

TEST_CASE("series and determinant routes agree on their overlap") {
  const std::vector<TraceContext> contexts{TraceContext::finite(finite_family(Family::Complete, 4)),
                                           TraceContext::finite(finite_family(Family::Petersen))};
  for (const auto& ctx : contexts)
    for (Complex u : {Complex(0.0), Complex(0.5), Complex(0.3, 0.2)}) {
      const double alpha = alpha_bound(3, u).alpha;
      for (double t : {0.3, 1.9, 4.0}) {
        const Complex z = std::polar(0.4 / alpha, t);
        const XiValue s = xi_bartholdi(ctx, z, u, 2, {XiRoute::Series});
        const XiValue d = xi_bartholdi(ctx, z, u, 2, {XiRoute::Determinant});
        CHECK(std::abs(s.value - d.value) < 1e-10);
      }
    }
}

TEST_CASE("xi domain errors") {
  const auto k4 = TraceContext::finite(finite_family(Family::Complete, 4));
  CHECK_THROWS_AS(xi_bartholdi(k4, std::polar(1.0 / std::sqrt(2.0), 1.0), 0.0, 2), DomainError);
  const auto path = TraceContext::finite(finite_family(Family::Path, 4));
  CHECK_THROWS_AS(xi_bartholdi(path, 2.0, 0.0, 1, {XiRoute::Determinant}), DomainError);
  CHECK_THROWS_AS(xi_bartholdi(k4, 0.3, 0.0, 2, {XiRoute::Series}), DomainError);
}

TEST_CASE("Bartholdi functional equation on regular fixtures") {
  std::mt19937_64 rng(17);
  const std::vector<TraceContext> contexts{TraceContext::finite(finite_family(Family::Complete, 4)),
                                           TraceContext::finite(finite_family(Family::Petersen))};
  const RegionParams p = RegionParams::regular(2, 0.0, 1e-6);
  for (const auto& ctx : contexts)
    for (int i = 0; i < 30; ++i) {
      const Complex z = random_point(rng, 1.2), u = random_point(rng, 0.6);
      if (std::abs(z) < 1e-3 || omega_membership(z, u, RegionParams::regular(2, u, 1e-6))) continue;
      const Complex psi = g_and_psi(z, u, 2).psi;
      const Complex a = xi_bartholdi(ctx, z, u, 2).value, b = xi_bartholdi(ctx, psi, u, 2).value;
      CHECK(std::abs(a - b) <= 1e-8 * (1 + std::abs(a)));
    }
  (void)p;
}

TEST_CASE("Ihara spectral route") {
  const auto k4 = TraceContext::finite(finite_family(Family::Complete, 4));
  const SpectralCDF f = spectral_cdf(k4, 256);
  CHECK(std::abs(xi_ihara_spectral(f, 0.0, 2).value - 1.0) < 1e-15);
  for (Complex z : {Complex(0.1, 0.0), Complex(0.2, -0.3), Complex(1.3, 0.4)})
    CHECK(std::abs(xi_ihara_spectral(f, z, 2).value - xi_bartholdi(k4, z, 0.0, 2).value) < 1e-10);

  // g = 0 lies in the gap (-1, 3) of K4 only through the flat piece; the
  // value there must be analytic: mean over a small circle equals the centre.
  const Complex centre(0.0, 1.0 / std::sqrt(2.0));
  const Complex mid = xi_ihara_spectral(f, centre * 0.999, 2).value;
  Complex mean = 0.0;
  const int n = 64;
  for (int k = 0; k < n; ++k)
    mean += xi_ihara_spectral(f, centre * 0.999 + std::polar(1e-3, 2 * std::numbers::pi * k / n), 2).value;
  CHECK(std::abs(mean / double(n) - mid) < 1e-8);
  const Complex on_arc = xi_ihara_spectral(f, centre, 2).value;
  CHECK(std::isfinite(on_arc.real()));
  CHECK(std::abs(on_arc - xi_ihara_spectral(f, centre * (1 - 1e-9), 2).value) < 1e-6);
  CHECK(std::abs(on_arc - xi_ihara_spectral(f, centre * (1 + 1e-9), 2).value) < 1e-6);
  // g = 2 sqrt(2) cos(theta) on the circle; g = -1 is the atom of K4.
  const Complex on_atom = std::polar(1.0 / std::sqrt(2.0), std::acos(-1.0 / (2.0 * std::sqrt(2.0))));
  CHECK_THROWS_AS(xi_ihara_spectral(f, on_atom, 2), SingularIntegrand);
}

TEST_CASE("contour integral matches the straight path for analytic phi") {
  auto phi = [](Complex lambda) { return (lambda + 3.0) / 6.0 + 0.1 * std::sin(lambda); };
  for (Complex z : {Complex(0.1, 0.05), Complex(-0.2, 0.3), Complex(0.35, -0.1)})
    for (int sigma : {1, -1})
      for (int tau : {1, -1}) {
        const XiValue c = contour_xi(phi, sigma, tau, 0.05, z, 2, 3.0);
        const XiValue s = straight_xi(phi, z, 2, 3.0);
        CHECK(std::abs(c.value - s.value) <= 1e-7);
      }
  CHECK_THROWS_AS(contour_xi(phi, 1, 1, 0.05, 0.1, 1, 2.0), BadParameter);
  CHECK_THROWS_AS(contour_xi(phi, 1, 1, 2.0, 0.1, 2, 3.0), BadParameter);
  const SpectralCDF wrong = smooth_cdf([](double x) { return (x + 3.0) / 6.0; }, 3.0, 128);
  ContourOptions options;
  options.reference = &wrong;
  CHECK_THROWS_AS(contour_xi(phi, 1, 1, 0.05, 0.1, 2, 3.0, options), AnalyticityViolation);
  const auto pts = contour_points(1, 1, 0.05, 2, 3.0, 8);
  for (Complex p : pts) CHECK(p.imag() >= -1e-15);
}

TEST_CASE("Z-lattice closed form") {
  CHECK(std::abs(clair_zeta(0.5, 0.0).zeta - 1.0) < 1e-15);
  CHECK(std::abs(clair_zeta(2.0, 0.0).zeta - 0.25) < 1e-15);
  CHECK(std::abs(clair_zeta(0.5, 0.0).xi - 0.25) < 1e-15);
  for (Complex z : {Complex(2.0, 1.0), Complex(-1.5, 0.2), Complex(0.3, -3.0)})
    CHECK(std::abs(clair_zeta(z, 0.0).zeta - 1.0 / (z * z)) < 1e-13);
  for (Complex z : {Complex(0.1, 0.05), Complex(-0.3, 0.2)})
    for (Complex u : {Complex(0.0), Complex(0.5), Complex(0.2, 0.1)})
      CHECK(std::abs(clair_zeta(z, u).inverse_zeta - clair_inverse_zeta_literal(z, u)) < 1e-14);
  CHECK_THROWS_AS(clair_zeta(std::polar(1.0, 0.7), 0.0), DomainError);
}

TEST_CASE("Z-lattice closed form against the periodic series") {
  const auto z = periodic_lattice(PeriodicSpec::z_lattice(), 40);
  for (Complex u : {Complex(0.0), Complex(0.5), Complex(0.2, 0.1)}) {
    const auto s = log_zeta_series(z, u, 36);
    const Complex point = std::polar(0.4 / s.alpha, 0.8);
    CHECK(std::abs(zeta_eval(s, point).value - clair_zeta(point, u).zeta) < 1e-10);
  }
}

TEST_CASE("region point clouds") {
  const auto omega_q = region_points(RegionKind::OmegaQ, 0.0, 3.0, 2, 1, 1, 0.05, 50);
  for (Complex z : omega_q) {
    const Complex g = (1.0 + 2.0 * z * z) / z;
    CHECK(std::abs(g.imag()) < 1e-12);
    CHECK(std::abs(g.real()) <= 3.0 + 1e-12);
  }
  const auto omega_w = region_points(RegionKind::OmegaW, 0.5, 2.0, 1, 1, 1, 0.05, 50);
  CHECK_FALSE(omega_w.empty());
  CHECK_THROWS_AS(region_points(RegionKind::OmegaQ, 0.0, 3.0, 2, 1, 1, 0.05, 1), BadParameter);
}
