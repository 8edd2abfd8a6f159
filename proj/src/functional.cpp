#include "graphzeta/functional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "graphzeta/errors.hpp"
#include "graphzeta/quadrature.hpp"
#include "graphzeta/zeta.hpp"

namespace gz {

RegionParams RegionParams::regular(int q, Complex u, double band) {
  return RegionParams{static_cast<double>(q + 1), q, u, band};
}

Complex g_value(Complex z, Complex u, int q) {
  if (z == Complex(0.0)) throw DomainError("g is undefined at z = 0");
  return (1.0 + (1.0 - u) * (static_cast<double>(q) + u) * z * z) / z;
}

GPsi g_and_psi(Complex z, Complex u, int q) {
  const Complex w = (1.0 - u) * (static_cast<double>(q) + u);
  if (w == Complex(0.0)) throw DomainError("psi is undefined for u = 1 or u = -q");
  return GPsi{g_value(z, u, q), 1.0 / (w * z)};
}

namespace {

bool in_band(Complex g, double d, double band) {
  return std::abs(g.imag()) <= band && g.real() >= -d - band && g.real() <= d + band;
}

}  // namespace

bool omega_membership(Complex z, Complex u, const RegionParams& params) {
  if (z == Complex(0.0)) return false;
  return in_band(g_value(z, u, params.q), params.d, params.band);
}

bool omega_w_disconnects(Complex w, double d) {
  if (d <= 0) throw BadParameter("d must be positive");
  return w.imag() == 0.0 && w.real() > 0.0 && w.real() <= d * d / 4.0;
}

namespace {

/// Both roots of w z^2 - t z + 1 = 0 (w != 0), computed without cancellation.
std::array<Complex, 2> quadratic_roots(Complex w, Complex t) {
  const Complex disc = std::sqrt(t * t - 4.0 * w);
  Complex big = (std::abs(t + disc) >= std::abs(t - disc)) ? t + disc : t - disc;
  const Complex z1 = big / (2.0 * w);
  const Complex z2 = 2.0 / big;
  return {z1, z2};
}

}  // namespace

std::vector<Complex> level_set_points(Complex w, const std::vector<Complex>& t_values) {
  std::vector<Complex> out;
  for (Complex t : t_values) {
    if (w == Complex(0.0)) {
      if (t != Complex(0.0)) out.push_back(1.0 / t);
      continue;
    }
    auto r = quadratic_roots(w, t);
    out.push_back(r[0]);
    out.push_back(r[1]);
  }
  return out;
}

bool omega_disconnection_oracle(Complex w, double d, int grid) {
  if (grid < 64) throw BadParameter("disconnection oracle needs grid >= 64");
  if (d <= 0) throw BadParameter("d must be positive");

  // bounding box: 3x the largest point of the curve
  double extent = 0.0;
  if (w == Complex(0.0)) {
    extent = 3.0 / d;
  } else {
    for (int k = 0; k <= 1024; ++k)
      for (Complex z : quadratic_roots(w, -d + 2.0 * d * k / 1024.0))
        extent = std::max(extent, 3.0 * std::abs(z));
  }
  const double cell = 2.0 * extent / grid;
  std::vector<char> blocked(static_cast<std::size_t>(grid) * grid, 0);
  auto mark = [&](Complex z) {
    const int i = static_cast<int>(std::floor((z.real() + extent) / cell));
    const int j = static_cast<int>(std::floor((z.imag() + extent) / cell));
    if (i >= 0 && j >= 0 && i < grid && j < grid) blocked[static_cast<std::size_t>(j) * grid + i] = 1;
  };

  if (w == Complex(0.0)) {
    // 1/t for t in [-d, d] \ {0}: the two half-lines |x| >= 1/d on the real axis
    for (int i = 0; i < grid; ++i) {
      const double x = -extent + (i + 0.5) * cell;
      if (std::abs(x) >= 1.0 / d) mark(Complex(x, 0.0));
    }
  } else {
    // adaptive sampling in t so consecutive points are less than half a cell apart
    std::function<void(double, std::array<Complex, 2>, double, std::array<Complex, 2>, int)> fill =
        [&](double t0, std::array<Complex, 2> r0, double t1, std::array<Complex, 2> r1, int depth) {
          // pair roots by proximity; they can swap labels at a double root
          if (std::abs(r0[0] - r1[0]) + std::abs(r0[1] - r1[1]) >
              std::abs(r0[0] - r1[1]) + std::abs(r0[1] - r1[0]))
            std::swap(r1[0], r1[1]);
          const double gap = std::max(std::abs(r0[0] - r1[0]), std::abs(r0[1] - r1[1]));
          if (gap < 0.5 * cell || depth > 40) {
            for (Complex z : r1) mark(z);
            return;
          }
          const double tm = 0.5 * (t0 + t1);
          const auto rm = quadratic_roots(w, tm);
          fill(t0, r0, tm, rm, depth + 1);
          fill(tm, rm, t1, r1, depth + 1);
        };
    const int coarse = 256;
    auto prev = quadratic_roots(w, -d);
    for (Complex z : prev) mark(z);
    for (int k = 1; k <= coarse; ++k) {
      const double t0 = -d + 2.0 * d * (k - 1) / coarse, t1 = -d + 2.0 * d * k / coarse;
      auto next = quadratic_roots(w, t1);
      fill(t0, prev, t1, next, 0);
      prev = next;
    }
  }

  const int start_i = static_cast<int>(std::floor(extent / cell));
  const int start_j = start_i;
  std::vector<char> seen(blocked.size(), 0);
  std::queue<std::pair<int, int>> q;
  auto push = [&](int i, int j) {
    const std::size_t k = static_cast<std::size_t>(j) * grid + i;
    if (!blocked[k] && !seen[k]) {
      seen[k] = 1;
      q.push({i, j});
    }
  };
  push(start_i, start_j);
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop();
    if (i == 0 || j == 0 || i == grid - 1 || j == grid - 1) return false;  // reached the far field
    push(i + 1, j);
    push(i - 1, j);
    push(i, j + 1);
    push(i, j - 1);
  }
  return true;
}

namespace {

Complex prefactor(Complex z, Complex u, int q) {
  const Complex c = 1.0 - u;
  return std::exp(0.5 * (q - 1.0) * std::log(1.0 - c * c * z * z));
}

Complex quadratic_factor(Complex z, Complex u, int q) {
  return 1.0 - (q + 1.0) * z + (1.0 - u) * (static_cast<double>(q) + u) * z * z;
}

XiValue xi_series(const TraceContext& ctx, Complex z, Complex u, int q, double tolerance) {
  const UBound b = alpha_bound(ctx.degree_bound(), u);
  const double x = b.alpha * std::abs(z);
  const double k = ctx.identity_trace() + 4.0 * b.m;
  int order = 1;
  while (order < 200 && k * std::pow(x, order + 1) / (1.0 - x) > tolerance) ++order;
  TraceContext series_ctx = ctx;
  if (ctx.kind() == ContextKind::Periodic && ctx.max_exact_propagation() < order) {
    series_ctx = TraceContext::periodic(*ctx.periodic_spec(), order + 1);
    if (ctx.is_normalized()) series_ctx = series_ctx.normalized();
  }
  const ZetaValue zv = zeta_eval(log_zeta_series(series_ctx, u, order), z);
  const Complex factor = prefactor(z, u, q) * quadratic_factor(z, u, q);
  return XiValue{factor * zv.value, XiRoute::Series, std::abs(factor) * zv.error_bound};
}

XiValue xi_determinant(const TraceContext& ctx, Complex g, int q) {
  if (!ctx.is_regular() || ctx.degree_bound() != q + 1)
    throw DomainError("the determinant route needs a strictly " + std::to_string(q + 1) +
                      "-regular context");
  const SpectralCDF f = spectral_cdf(ctx.normalized(), 16, SpectralOptions{1024});
  Complex log_det = 0.0;
  for (const auto& a : f.atoms) log_det += a.weight * std::log(g - a.lambda);
  return XiValue{(g - (q + 1.0)) / std::exp(log_det), XiRoute::Determinant, 1e-15};
}

}  // namespace

XiValue xi_bartholdi(const TraceContext& ctx, Complex z, Complex u, int q, XiOptions options) {
  if (z == Complex(0.0)) return XiValue{1.0, XiRoute::Series, 0.0};
  const TraceContext nctx = ctx.normalized();
  const Complex g = g_value(z, u, q);
  if (in_band(g, q + 1.0, options.band))
    throw DomainError("(z, u) lies in the singular band Omega");
  const UBound b = alpha_bound(nctx.degree_bound(), u);
  XiRoute route = options.route;
  if (route == XiRoute::Auto)
    route = std::abs(z) < 0.5 / b.alpha ? XiRoute::Series : XiRoute::Determinant;
  if (route == XiRoute::Series) {
    if (std::abs(z) >= 0.5 / b.alpha)
      throw DomainError("series route needs |z| < 1/(2 alpha)");
    return xi_series(nctx, z, u, q, options.series_tolerance);
  }
  return xi_determinant(nctx, g, q);
}

namespace {

/// Re g strictly between atoms of a step distribution, inside (-2 sqrt q, 2 sqrt q).
bool in_flat_gap(const SpectralCDF& f, double x, int q) {
  const double edge = 2.0 * std::sqrt(static_cast<double>(q));
  if (std::abs(x) >= edge) return false;
  for (const auto& a : f.atoms)
    if (a.weight > 0 && std::abs(x - a.lambda) < 1e-9 * std::max(1.0, f.d)) return false;
  return true;
}

}  // namespace

XiValue xi_ihara_spectral(const SpectralCDF& f, Complex z, int q, double band) {
  if (z == Complex(0.0)) return XiValue{1.0, XiRoute::Determinant, 0.0};
  const Complex g = (1.0 + static_cast<double>(q) * z * z) / z;
  const bool on_band = in_band(g, f.d, band);
  if (on_band && !f.step) throw SingularIntegrand("1 + q z^2 - lambda z vanishes on the support of dF");
  if (f.step && (on_band || q * std::norm(z) >= 1.0) && in_flat_gap(f, g.real(), q)) {
    // Continue from inside the disc across the arc over the gap: atoms above
    // Re g keep the branch they have inside, where Im g has the sign of -Im z.
    const double side = z.imag() >= 0 ? 1.0 : -1.0;
    Complex log_sum = 0.0;
    for (const auto& a : f.atoms) {
      const Complex l = a.lambda < g.real() ? std::log(g - a.lambda)
                                            : std::log(a.lambda - g) - Complex(0.0, side * std::numbers::pi);
      log_sum += a.weight * l;
    }
    return XiValue{(g - f.d) * std::exp(-log_sum), XiRoute::Determinant, 0.0};
  }
  const Complex integral = cauchy_integral(f, g);
  XiValue out{std::exp(-integral), XiRoute::Determinant, 0.0};
  if (!f.step) out.error_estimate = std::abs(out.value) * std::abs(integral - cauchy_integral(f, g, 32));
  return out;
}

namespace {

struct Segment {
  std::function<Complex(double)> point;
  std::function<Complex(double)> velocity;
};

std::vector<Segment> contour_segments(int sigma, int tau, double eps, int q, double d) {
  if (q < 2) throw BadParameter("contour evaluation is only available for q >= 2");
  if (sigma != 1 && sigma != -1) throw BadParameter("side sigma must be +1 or -1");
  if (tau != 1 && tau != -1) throw BadParameter("corner tau must be +1 or -1");
  const double c = 2.0 * tau * std::sqrt(static_cast<double>(q));
  if (!(eps > 0) || c - eps <= -d || c + eps >= d)
    throw BadParameter("semicircle radius must keep the detour inside (-d, d)");
  const double a = c - eps, b = c + eps;
  const double start = sigma > 0 ? std::numbers::pi : -std::numbers::pi;
  return {
      {[=](double s) { return Complex(-d + s * (a + d)); }, [=](double) { return Complex(a + d); }},
      {[=](double s) { return c + std::polar(eps, start * (1.0 - s)); },
       [=](double s) { return Complex(0.0, 1.0) * std::polar(eps, start * (1.0 - s)) * (-start); }},
      {[=](double s) { return Complex(b + s * (d - b)); }, [=](double) { return Complex(d - b); }},
  };
}

XiValue path_xi(const std::vector<Segment>& segments, const std::function<Complex(Complex)>& phi,
                Complex z, int q, int panels) {
  if (z == Complex(0.0)) return XiValue{1.0, XiRoute::Determinant, 0.0};
  const Complex qz2 = 1.0 + static_cast<double>(q) * z * z;
  auto total = [&](int p) {
    Complex sum = 0.0;
    for (const auto& seg : segments) {
      std::function<Complex(double)> f = [&](double s) {
        const Complex lambda = seg.point(s);
        const Complex denom = qz2 - lambda * z;
        if (std::abs(denom) < 1e-13 * (1.0 + std::abs(qz2)))
          throw SingularIntegrand("1 + q z^2 - lambda z vanishes on the contour");
        return z * phi(lambda) / denom * seg.velocity(s);
      };
      sum += integrate<Complex>(f, 0.0, 1.0, p, 16);
    }
    return sum;
  };
  const Complex fine = total(panels);
  const Complex coarse = total(std::max(1, panels / 2));
  const Complex value = std::exp(-fine);
  return XiValue{value, XiRoute::Determinant, std::abs(value) * std::abs(fine - coarse)};
}

}  // namespace

std::vector<Complex> contour_points(int sigma, int tau, double eps, int q, double d, int samples) {
  std::vector<Complex> out;
  for (const auto& seg : contour_segments(sigma, tau, eps, q, d))
    for (int k = 0; k <= samples; ++k) out.push_back(seg.point(double(k) / samples));
  return out;
}

XiValue contour_xi(const std::function<Complex(Complex)>& phi, int sigma, int tau, double eps,
                   Complex z, int q, double d, ContourOptions options) {
  const auto segments = contour_segments(sigma, tau, eps, q, d);
  if (options.reference) {
    const double c = 2.0 * tau * std::sqrt(static_cast<double>(q));
    for (int k = 0; k <= 64; ++k) {
      const double lambda = -d + 2.0 * d * k / 64.0;
      if (std::abs(lambda - c) < eps) continue;
      const double gap = std::abs(phi(lambda) - (*options.reference)(lambda));
      if (gap > options.tolerance)
        throw AnalyticityViolation("phi differs from the distribution by " + std::to_string(gap) +
                                   " at lambda = " + std::to_string(lambda));
    }
  }
  return path_xi(segments, phi, z, q, options.panels);
}

XiValue straight_xi(const std::function<Complex(Complex)>& phi, Complex z, int q, double d,
                    int panels) {
  std::vector<Segment> segment{
      {[=](double s) { return Complex(-d + 2.0 * d * s); }, [=](double) { return Complex(2.0 * d); }}};
  return path_xi(segment, phi, z, q, panels);
}

ClairValue clair_zeta(Complex z, Complex u, double band) {
  if (z == Complex(0.0)) return ClairValue{1.0, 1.0, 1.0};
  const Complex c = 1.0 - u * u;
  const Complex g = (1.0 + c * z * z) / z;
  if (in_band(g, 2.0, band)) throw DomainError("(z, u) lies on the singular set of the Z-lattice");
  const Complex h = 0.5 * (g + std::sqrt(g - 2.0) * std::sqrt(g + 2.0));
  ClairValue out;
  out.inverse_zeta = z * h;
  out.zeta = 1.0 / out.inverse_zeta;
  out.xi = (1.0 - 2.0 * z + c * z * z) * out.zeta;
  return out;
}

Complex clair_inverse_zeta_literal(Complex z, Complex u) {
  const Complex c = 1.0 - u * u;
  const Complex p = 1.0 + c * z * z;
  return 0.5 * p * (1.0 + std::sqrt(1.0 - 4.0 * z * z / (p * p)));
}

std::vector<Complex> region_points(RegionKind kind, Complex w, double d, int q, int sigma, int tau,
                                   double eps, int samples) {
  if (samples < 2) throw BadParameter("need at least two samples");
  std::vector<Complex> t;
  switch (kind) {
    case RegionKind::OmegaQ:
      w = static_cast<double>(q);
      [[fallthrough]];
    case RegionKind::OmegaW:
      for (int k = 0; k <= samples; ++k) t.push_back(-d + 2.0 * d * k / samples);
      break;
    case RegionKind::OmegaTildeQ:
      w = static_cast<double>(q);
      t = contour_points(sigma, tau, eps, q, d, samples);
      break;
  }
  return level_set_points(w, t);
}

}  // namespace gz
