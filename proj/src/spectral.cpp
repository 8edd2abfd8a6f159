#include "graphzeta/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "graphzeta/errors.hpp"
#include "graphzeta/quadrature.hpp"

namespace gz {

namespace {

constexpr double kAtomMerge = 1e-9;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void fill_grid(SpectralCDF& f, int grid_size) {
  if (grid_size < 16) throw BadParameter("spectral grid needs at least 16 cells");
  f.grid.resize(grid_size + 1);
  f.values.resize(grid_size + 1);
  for (int k = 0; k <= grid_size; ++k) {
    f.grid[k] = -f.d + 2.0 * f.d * k / grid_size;
    f.values[k] = f(f.grid[k]);
  }
}

std::vector<SpectralAtom> merge_atoms(std::vector<SpectralAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const SpectralAtom& a, const SpectralAtom& b) { return a.lambda < b.lambda; });
  std::vector<SpectralAtom> out;
  for (const auto& a : atoms) {
    if (!out.empty() && a.lambda - out.back().lambda < kAtomMerge) {
      auto& b = out.back();
      const double w = a.weight + b.weight;
      if (w > 0) b.lambda = (a.lambda * a.weight + b.lambda * b.weight) / w;
      b.weight = w;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

/// Measure of {theta : lambda_b(theta) <= lambda} summed over bands, normalized
/// to 1, on a rank-1 torus sampled at nodes 0, h, ..., K h.
class BandCounter {
 public:
  BandCounter(const PeriodicSpec& spec, double theta2, int nodes)
      : spec_(&spec), theta2_(theta2), nodes_(nodes) {
    values_.reserve(nodes + 1);
    for (int j = 0; j <= nodes; ++j)
      values_.push_back(fiber_eigenvalues(spec, kTwoPi * j / nodes, theta2));
  }

  double operator()(double lambda) const {
    const int bands = static_cast<int>(values_.front().size());
    const double h = kTwoPi / nodes_;
    double measure = 0.0;
    for (int j = 0; j < nodes_; ++j) {
      for (int b = 0; b < bands; ++b) {
        const bool below0 = values_[j][b] <= lambda;
        const bool below1 = values_[j + 1][b] <= lambda;
        if (below0 && below1) {
          measure += h;
        } else if (below0 != below1) {
          double lo = kTwoPi * j / nodes_, hi = lo + h;
          for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            const bool below = fiber_eigenvalues(*spec_, mid, theta2_)[b] <= lambda;
            (below == below0 ? lo : hi) = mid;
          }
          const double cross = 0.5 * (lo + hi);
          measure += below0 ? cross - kTwoPi * j / nodes_ : kTwoPi * (j + 1) / nodes_ - cross;
        }
      }
    }
    return measure / (kTwoPi * bands);
  }

 private:
  const PeriodicSpec* spec_;
  double theta2_;
  int nodes_;
  std::vector<std::vector<double>> values_;
};

SpectralCDF periodic_cdf(const PeriodicSpec& spec, double d, int grid_size, int torus_nodes) {
  SpectralCDF f;
  f.d = d;
  f.step = false;
  const int bands = static_cast<int>(spec.domain_size());
  auto shared_spec = std::make_shared<PeriodicSpec>(spec);
  if (spec.rank == 1) {
    f.torus_nodes = torus_nodes;
    for (int j = 0; j < torus_nodes; ++j)
      for (double ev : fiber_eigenvalues(spec, kTwoPi * j / torus_nodes))
        f.atoms.push_back({ev, 1.0 / (static_cast<double>(torus_nodes) * bands)});
    auto counter = std::make_shared<BandCounter>(*shared_spec, 0.0, torus_nodes);
    f.exact = [shared_spec, counter](double lambda) { return (*counter)(lambda); };
  } else {
    // outer trapezoid in theta2 over exact rank-1 counts; coarser torus keeps cost bounded
    const int nodes = std::min(torus_nodes, 256);
    f.torus_nodes = nodes;
    const double w = 1.0 / (static_cast<double>(nodes) * nodes * bands);
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < nodes; ++j)
        for (double ev : fiber_eigenvalues(spec, kTwoPi * i / nodes, kTwoPi * j / nodes))
          f.atoms.push_back({ev, w});
    auto counters = std::make_shared<std::vector<BandCounter>>();
    for (int j = 0; j < nodes; ++j) counters->emplace_back(*shared_spec, kTwoPi * j / nodes, nodes);
    f.exact = [shared_spec, counters](double lambda) {
      double sum = 0.0;
      for (const auto& c : *counters) sum += c(lambda);
      return sum / static_cast<double>(counters->size());
    };
  }
  f.atoms = merge_atoms(std::move(f.atoms));
  fill_grid(f, grid_size);
  return f;
}

}  // namespace

double SpectralCDF::operator()(double lambda) const {
  if (lambda < -d) return 0.0;
  if (lambda >= d) return 1.0;
  if (!step && exact) return std::clamp(exact(lambda), 0.0, 1.0);
  double sum = 0.0;
  for (const auto& a : atoms) {
    if (a.lambda > lambda + 1e-10) break;
    sum += a.weight;
  }
  return std::min(sum, 1.0);
}

std::vector<double> fiber_eigenvalues(const PeriodicSpec& spec, double theta1, double theta2) {
  const MatrixXc a = spec.fiber(theta1, theta2);
  if (a.rows() == 1) return {a(0, 0).real()};
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectralCDF step_cdf(const std::vector<double>& eigenvalues, double d, int grid_size) {
  if (eigenvalues.empty()) throw BadParameter("step CDF needs at least one eigenvalue");
  SpectralCDF f;
  f.d = d;
  f.step = true;
  const double w = 1.0 / static_cast<double>(eigenvalues.size());
  for (double ev : eigenvalues) f.atoms.push_back({ev, w});
  f.atoms = merge_atoms(std::move(f.atoms));
  fill_grid(f, grid_size);
  return f;
}

SpectralCDF smooth_cdf(std::function<double(double)> fn, double d, int grid_size) {
  SpectralCDF f;
  f.d = d;
  f.step = false;
  f.exact = std::move(fn);
  fill_grid(f, grid_size);
  for (int k = 0; k < grid_size; ++k)
    f.atoms.push_back({0.5 * (f.grid[k] + f.grid[k + 1]), f.values[k + 1] - f.values[k]});
  return f;
}

SpectralCDF spectral_cdf(const TraceContext& ctx, int grid_size, SpectralOptions options) {
  const double d = ctx.degree_bound();
  switch (ctx.kind()) {
    case ContextKind::Periodic: {
      const int nodes = options.torus_nodes > 0 ? options.torus_nodes : grid_size;
      return periodic_cdf(*ctx.periodic_spec(), d, grid_size, nodes);
    }
    case ContextKind::Finite:
    case ContextKind::SelfSimilar: {
      auto eigen_cdf = [&](const TraceContext& c) {
        const Eigen::MatrixXd a = dense_adjacency(c.graph());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd ev = solver.eigenvalues();
        return step_cdf({ev.data(), ev.data() + ev.size()}, d, grid_size);
      };
      SpectralCDF f = eigen_cdf(ctx);
      if (auto previous = ctx.previous_level()) {
        const SpectralCDF p = eigen_cdf(*previous);
        double delta = 0.0;
        for (std::size_t k = 0; k < f.values.size(); ++k)
          delta = std::max(delta, std::abs(f.values[k] - p.values[k]));
        f.level_delta = delta;
      }
      return f;
    }
  }
  throw BadParameter("unknown context kind");
}

Complex radial_log_quadratic(Complex c, Complex lambda, Complex z) {
  if (z == Complex(0.0)) return 0.0;
  const Complex disc = std::sqrt(lambda * lambda - 4.0 * c);
  // larger root first, the other from the product to avoid cancellation
  Complex r1 = 0.5 * (lambda + disc), r2 = 0.5 * (lambda - disc);
  if (std::abs(r2) > std::abs(r1)) std::swap(r1, r2);
  if (r1 != Complex(0.0)) r2 = c / r1;
  Complex sum = 0.0;
  for (Complex rho : {r1, r2}) {
    const Complex x = rho * z;
    if (std::abs(x.imag()) <= 1e-14 * std::abs(x) && x.real() >= 1.0 - 1e-14)
      throw SingularIntegrand("pencil 1 + c z^2 - lambda z vanishes on the ray to z");
    sum += std::log(1.0 - x);
  }
  return sum;
}

Complex stieltjes_log(const SpectralCDF& f, Complex c, Complex z) {
  Complex sum = 0.0;
  for (const auto& a : f.atoms)
    if (a.weight != 0.0) sum += a.weight * radial_log_quadratic(c, a.lambda, z);
  return sum;
}

Complex cauchy_integral(const SpectralCDF& f, Complex g, int panels) {
  if (f.step) {
    for (const auto& a : f.atoms)
      if (a.weight > 0 && std::abs(g - a.lambda) < 1e-12 * std::max(1.0, f.d))
        throw SingularIntegrand("evaluation point sits on a spectral atom");
    Complex sum = 0.0;
    double mass = 0.0;
    for (std::size_t k = 0; k < f.atoms.size(); ++k) {
      mass += f.atoms[k].weight;
      const double a = f.atoms[k].lambda;
      const double b = k + 1 < f.atoms.size() ? f.atoms[k + 1].lambda : f.d;
      if (b > a) sum += mass * (std::log(g - a) - std::log(g - b));
    }
    return sum;
  }
  if (std::abs(g.imag()) < 1e-9 && g.real() >= -f.d - 1e-9 && g.real() <= f.d + 1e-9)
    throw SingularIntegrand("evaluation point lies on [-d, d] for a continuous distribution");
  // lambda = -d cos(phi) absorbs square-root behaviour at the band edges
  const double d = f.d;
  std::function<Complex(double)> integrand = [&](double phi) {
    const double lambda = -d * std::cos(phi);
    return f(lambda) * d * std::sin(phi) / (g - lambda);
  };
  return integrate<Complex>(integrand, 0.0, std::numbers::pi, panels, 16);
}

StieltjesResult stieltjes_log_det(const SpectralCDF& f, Complex z, int q) {
  StieltjesResult r;
  r.log_value = stieltjes_log(f, static_cast<double>(q), z);
  r.value = std::exp(r.log_value);
  if (z == Complex(0.0)) {
    r.by_parts = 1.0;
  } else {
    const Complex g = (1.0 + static_cast<double>(q) * z * z) / z;
    r.by_parts = (1.0 - f.d * z + static_cast<double>(q) * z * z) * std::exp(cauchy_integral(f, g));
  }
  r.identity_gap = std::abs(r.value - r.by_parts);
  return r;
}

std::optional<std::pair<double, double>> hole_extension_applicable(const SpectralCDF& f,
                                                                   double tol) {
  const int q = f.q();
  if (q < 1) return std::nullopt;
  const double edge = 2.0 * std::sqrt(static_cast<double>(q));
  std::optional<std::pair<double, double>> best;
  auto offer = [&](double a, double b) {
    a = std::max(a, -edge);
    b = std::min(b, edge);
    if (b > a && (!best || b - a > best->second - best->first)) best = std::make_pair(a, b);
  };
  if (f.step) {
    double left = -edge;
    for (const auto& a : f.atoms) {
      if (a.weight < tol || a.lambda <= -edge || a.lambda >= edge) continue;
      offer(left, a.lambda);
      left = a.lambda;
    }
    offer(left, edge);
    return best;
  }
  // continuous: longest run of grid cells inside the interval with small increments
  std::optional<std::size_t> run_start;
  for (std::size_t k = 0; k + 1 < f.grid.size(); ++k) {
    const bool inside = f.grid[k] > -edge && f.grid[k + 1] < edge;
    const bool flat = inside && f.values[k + 1] - f.values[k] < tol;
    if (flat && !run_start) run_start = k;
    if (!flat && run_start) {
      offer(f.grid[*run_start], f.grid[k]);
      run_start.reset();
    }
  }
  if (run_start) offer(f.grid[*run_start], f.grid.back());
  return best;
}

}  // namespace gz
