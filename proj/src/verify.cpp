#include "ouheat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ouheat/geodesic.hpp"
#include "ouheat/hamiltonian.hpp"
#include "ouheat/quadrature.hpp"

namespace ouheat {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double probe_value(Probe probe, double y, double center) {
  if (probe == Probe::Constant1) return 1.0;
  const double d = y - center;
  return std::exp(-0.5 * d * d);
}

// Quadratic-form pieces of log integrand for quadrature against a probe.
struct LogQuadratic {
  double A, B, C;
};

LogQuadratic probe_quadratic(Probe probe, double center) {
  if (probe == Probe::Constant1) return {0.0, 0.0, 0.0};
  return {-0.5, center, -0.5 * center * center};
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

VerificationReport make_report(
    std::string name, double measured, double tolerance,
    std::vector<std::pair<std::string, std::string>> context) {
  VerificationReport r;
  r.name = std::move(name);
  r.measured = measured;
  r.tolerance = tolerance;
  r.passed = measured <= tolerance;
  r.context = std::move(context);
  return r;
}

VerificationReport pde_residual(const OUOperator& op, double t, double x,
                                double x0, double h_t, double h_x,
                                KernelNormalization norm) {
  if (!(t - h_t > 0.0)) {
    throw std::invalid_argument("t - h_t must be positive");
  }
  const double lc = log_kernel(op, t, x, x0, norm);
  const auto P = [&](double tt, double xx) {
    return std::exp(log_kernel(op, tt, xx, x0, norm) - lc);
  };
  const double p_t = (P(t + h_t, x) - P(t - h_t, x)) / (2.0 * h_t);
  const double p_x = (P(t, x - 2 * h_x) - 8.0 * P(t, x - h_x) +
                      8.0 * P(t, x + h_x) - P(t, x + 2 * h_x)) /
                     (12.0 * h_x);
  const double p_xx = (-P(t, x - 2 * h_x) + 16.0 * P(t, x - h_x) - 30.0 +
                       16.0 * P(t, x + h_x) - P(t, x + 2 * h_x)) /
                      (12.0 * h_x * h_x);
  const double residual =
      p_t - op.theta * p_xx + (op.a * x + op.b) * p_x + op.rho * x * x;
  const double measured = std::abs(residual) / std::max(std::abs(p_t), 1.0 / t);
  return make_report("pde_residual", measured, 1e-6,
                     {{"op", to_json_string(op)},
                      {"t", fmt(t)},
                      {"x", fmt(x)},
                      {"x0", fmt(x0)},
                      {"h_t", fmt(h_t)},
                      {"h_x", fmt(h_x)}});
}

std::array<VerificationReport, 6> ode_residuals(const OUOperator& op, double t,
                                                double h,
                                                KernelNormalization norm) {
  if (!(t - h > 0.0)) {
    throw std::invalid_argument("t - h must be positive");
  }
  const KernelCoefficients lo = coefficients(op, t - h, norm);
  const KernelCoefficients mid = coefficients(op, t, norm);
  const KernelCoefficients hi = coefficients(op, t + h, norm);
  const double th = op.theta, a = op.a, b = op.b;

  const std::array<double, 6> fd = {
      (hi.alpha - lo.alpha) / (2.0 * h), (hi.beta - lo.beta) / (2.0 * h),
      (hi.gamma - lo.gamma) / (2.0 * h), (hi.mu - lo.mu) / (2.0 * h),
      (hi.nu - lo.nu) / (2.0 * h),       (hi.log_phi - lo.log_phi) / (2.0 * h)};
  const std::array<double, 6> rhs = {
      4.0 * th * mid.alpha * mid.alpha - 2.0 * a * mid.alpha - op.rho,
      4.0 * th * mid.alpha * mid.beta - a * mid.beta,
      th * mid.beta * mid.beta,
      4.0 * th * mid.alpha * mid.mu - a * mid.mu - 2.0 * b * mid.alpha,
      2.0 * th * mid.beta * mid.mu - b * mid.beta,
      th * mid.mu * mid.mu + 2.0 * th * mid.alpha - b * mid.mu};
  const std::array<const char*, 6> names = {"ode_alpha", "ode_beta",
                                            "ode_gamma", "ode_mu",
                                            "ode_nu",    "ode_log_phi"};

  std::array<VerificationReport, 6> out;
  for (std::size_t i = 0; i < 6; ++i) {
    const double scale = std::max({std::abs(fd[i]), std::abs(rhs[i]), 1.0});
    out[i] = make_report(names[i], std::abs(fd[i] - rhs[i]) / scale, 1e-5,
                         {{"op", to_json_string(op)},
                          {"t", fmt(t)},
                          {"h", fmt(h)}});
  }
  return out;
}

VerificationReport chapman_kolmogorov_error(const OUOperator& op, double t1,
                                            double t2, double x, double x0,
                                            int nodes) {
  const KernelCoefficients c1 =
      coefficients(op, t1, KernelNormalization::Delta);
  const KernelCoefficients c2 =
      coefficients(op, t2, KernelNormalization::Delta);
  // y is the second argument of the first kernel, the first of the second.
  const double A = c1.gamma + c2.alpha;
  const double B = c1.beta * x + c1.nu + c2.beta * x0 + c2.mu;
  const double C = c1.log_phi + c1.alpha * x * x + c1.mu * x + c2.log_phi +
                   c2.gamma * x0 * x0 + c2.nu * x0;
  const double log_int = log_gaussian_integral(A, B, C, nodes);
  const double log_ref =
      log_kernel(op, t1 + t2, x, x0, KernelNormalization::Delta);
  const double measured = std::abs(std::expm1(log_int - log_ref));
  return make_report("chapman_kolmogorov", measured, 1e-8,
                     {{"op", to_json_string(op)},
                      {"t1", fmt(t1)},
                      {"t2", fmt(t2)},
                      {"x", fmt(x)},
                      {"x0", fmt(x0)},
                      {"nodes", std::to_string(nodes)}});
}

VerificationReport delta_limit_error(const OUOperator& op, double t, double x0,
                                     Probe probe) {
  const KernelCoefficients c = coefficients(op, t, KernelNormalization::Delta);
  const LogQuadratic pq = probe_quadratic(probe, x0);
  const double A = c.alpha + pq.A;
  const double B = c.beta * x0 + c.mu + pq.B;
  const double C = c.log_phi + c.gamma * x0 * x0 + c.nu * x0 + pq.C;
  const double integral = std::exp(log_gaussian_integral(A, B, C, 200));
  const double measured = std::abs(integral - 1.0);  // phi(x0) = 1 either way
  return make_report(
      "delta_limit", measured, std::max(5.0 * t, 1e-6),
      {{"op", to_json_string(op)},
       {"t", fmt(t)},
       {"x0", fmt(x0)},
       {"probe", probe == Probe::Constant1 ? "constant-1" : "gaussian-bump"}});
}

MCEstimate feynman_kac_estimate(const OUOperator& op, double t, double x_start,
                                Probe probe, std::uint64_t paths, double dt,
                                std::uint64_t seed) {
  if (paths == 0) {
    throw std::invalid_argument("paths must be positive");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  const auto n_full = static_cast<std::uint64_t>(std::floor(t / dt + 1e-12));
  const double rest = t - static_cast<double>(n_full) * dt;
  const double sqrt_2theta = std::sqrt(2.0 * op.theta);

  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < paths; ++i) {
    std::mt19937_64 rng(splitmix64(seed + 0x9e3779b97f4a7c15ULL * (i + 1)));
    std::normal_distribution<double> normal(0.0, 1.0);
    double x = x_start;
    double log_weight = 0.0;
    const auto step = [&](double h) {
      log_weight -= op.rho * x * x * h;
      x += -(op.a * x + op.b) * h + sqrt_2theta * std::sqrt(h) * normal(rng);
    };
    for (std::uint64_t k = 0; k < n_full; ++k) step(dt);
    if (rest > 1e-15 * t) step(rest);
    const double v = std::exp(log_weight) * probe_value(probe, x, x_start);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(paths);
  const double mean = sum / n;
  double variance = 0.0;
  if (paths > 1) {
    variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  }
  MCEstimate est;
  est.mean = mean;
  est.standard_error = std::sqrt(variance / n);
  est.paths = paths;
  est.seed = seed;
  est.dt = dt;
  return est;
}

double kernel_expectation(const OUOperator& op, double t, double x_start,
                          Probe probe) {
  const KernelCoefficients c = coefficients(op, t, KernelNormalization::Delta);
  const LogQuadratic pq = probe_quadratic(probe, x_start);
  const double A = c.gamma + pq.A;
  const double B = c.beta * x_start + c.nu + pq.B;
  const double C = c.log_phi + c.alpha * x_start * x_start + c.mu * x_start +
                   pq.C;
  return std::exp(log_gaussian_integral(A, B, C, 200));
}

VerificationReport geodesic_shooting_error(const OUOperator& op, double x0,
                                           double x1, int grid) {
  if (grid < 1) {
    throw std::invalid_argument("grid must be positive");
  }
  const GeodesicResult result = geodesic(op, x0, x1);
  const auto* path = std::get_if<GeodesicPath>(&result);
  if (path == nullptr) {
    throw std::invalid_argument("geodesic is not unique");
  }

  const double target_tol = 1e-12 * (1.0 + std::abs(x1));
  const auto miss = [&](double xi0) {
    return flow_numeric(op, PhaseState{x0, xi0}, 1.0).x - x1;
  };
  double xi_a = 0.0, f_a = miss(xi_a);
  double xi_b = 1.0, f_b = miss(xi_b);
  double xi = xi_b;
  bool converged = std::abs(f_a) <= target_tol;
  if (converged) xi = xi_a;
  for (int it = 0; it < 100 && !converged; ++it) {
    if (f_b == f_a) break;
    xi = xi_b - f_b * (xi_b - xi_a) / (f_b - f_a);
    const double f = miss(xi);
    if (std::abs(f) <= target_tol) {
      converged = true;
      break;
    }
    xi_a = xi_b;
    f_a = f_b;
    xi_b = xi;
    f_b = f;
  }
  if (!converged) {
    throw std::domain_error("shooting secant failed to converge");
  }

  double worst = std::abs(x0 - geodesic_eval(*path, 0.0));
  PhaseState state{x0, xi};
  for (int j = 1; j <= grid; ++j) {
    const double s_prev = static_cast<double>(j - 1) / grid;
    const double s_next = static_cast<double>(j) / grid;
    state = flow_numeric(op, state, s_next - s_prev);
    worst = std::max(worst,
                     std::abs(state.x - geodesic_eval(*path, s_next)));
  }
  return make_report("geodesic_shooting", worst, 1e-7,
                     {{"op", to_json_string(op)},
                      {"x0", fmt(x0)},
                      {"x1", fmt(x1)},
                      {"grid", std::to_string(grid)},
                      {"xi0", fmt(xi)}});
}

namespace {

// Regime-aware admissible time: oscillatory operators sample inside the
// first regular window.
double sample_time(std::mt19937_64& rng, const OUOperator& op, double lo_frac,
                   double hi_frac) {
  std::uniform_real_distribution<double> u(lo_frac, hi_frac);
  const Regime r = classify(op);
  if (r.kind == RegimeKind::Oscillatory) {
    return u(rng) * std::numbers::pi / r.lambda0;
  }
  return u(rng) * 1.5;
}

// Largest T with gamma(t) < 0 for all t < T in the delta normalization:
// beyond it the kernel has no finite mass (the Feynman-Kac expectation of 1
// diverges). Infinite except where the drift loses to the potential.
double mass_horizon(const OUOperator& op) {
  const Regime r = classify(op);
  const double inf = std::numeric_limits<double>::infinity();
  switch (r.kind) {
    case RegimeKind::Hyperbolic:
      if (op.a < 0.0 && r.lambda0 < -op.a) {
        return std::atanh(r.lambda0 / -op.a) / r.lambda0;
      }
      return inf;
    case RegimeKind::Critical:
      return op.a < 0.0 ? -1.0 / op.a : inf;
    case RegimeKind::Oscillatory:
      return std::atan2(r.lambda0, -op.a) / r.lambda0;
  }
  return inf;
}

void append(std::vector<VerificationReport>& out,
            std::vector<VerificationReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

std::vector<VerificationReport> pde_suite(const OUOperator& op,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0x70646521ULL));
  std::uniform_real_distribution<double> ux(-1.5, 1.5);
  std::vector<VerificationReport> out;
  for (int i = 0; i < 6; ++i) {
    const double t = sample_time(rng, op, 0.15, 0.85);
    const double x = ux(rng), x0 = ux(rng);
    out.push_back(pde_residual(op, t, x, x0, 1e-5 * t,
                               1e-4 * (1.0 + std::abs(x))));
  }
  return out;
}

std::vector<VerificationReport> ode_suite(const OUOperator& op,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0x6f646521ULL));
  std::vector<VerificationReport> out;
  for (int i = 0; i < 3; ++i) {
    const double t = sample_time(rng, op, 0.15, 0.85);
    for (auto& r : ode_residuals(op, t, 1e-6 * t)) out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> chapman_suite(const OUOperator& op,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0x636b21ULL));
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::uniform_real_distribution<double> usplit(0.25, 0.75);
  std::vector<VerificationReport> out;
  for (int i = 0; i < 4; ++i) {
    const double total = sample_time(rng, op, 0.3, 0.85);
    const double split = usplit(rng);
    out.push_back(chapman_kolmogorov_error(op, split * total,
                                           (1.0 - split) * total, ux(rng),
                                           ux(rng), 200));
  }
  return out;
}

std::vector<VerificationReport> delta_suite(const OUOperator& op,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0x6465c7a1ULL));
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::vector<VerificationReport> out;
  const double scale = std::min(1.0, 0.5 * mass_horizon(op) / 1e-2);
  for (Probe probe : {Probe::GaussianBump, Probe::Constant1}) {
    const double x0 = ux(rng);
    std::array<double, 3> errors{};
    const std::array<double, 3> times = {1e-2 * scale, 1e-3 * scale,
                                         1e-4 * scale};
    for (std::size_t i = 0; i < 3; ++i) {
      VerificationReport r = delta_limit_error(op, times[i], x0, probe);
      errors[i] = r.measured;
      out.push_back(std::move(r));
    }
    // Decay must be at least linear per decade; probes whose leading decay
    // constant vanishes converge faster, which is not a failure.
    for (std::size_t i = 0; i + 1 < 3; ++i) {
      const double ratio = errors[i + 1] / std::max(errors[i], 1e-300);
      out.push_back(make_report(
          "delta_decay_ratio", ratio, 0.15,
          {{"op", to_json_string(op)},
           {"t", fmt(times[i])},
           {"x0", fmt(x0)},
           {"probe",
            probe == Probe::Constant1 ? "constant-1" : "gaussian-bump"}}));
    }
  }
  return out;
}

std::vector<VerificationReport> mc_suite(const OUOperator& op,
                                         const SuiteOptions& options) {
  std::mt19937_64 rng(splitmix64(options.seed ^ 0x6d6321ULL));
  std::uniform_real_distribution<double> ux(-0.5, 0.5);
  std::vector<VerificationReport> out;
  for (Probe probe : {Probe::Constant1, Probe::GaussianBump}) {
    const double x_start = ux(rng);
    const double t = std::min(0.5, 0.55 * mass_horizon(op));
    const MCEstimate est = feynman_kac_estimate(
        op, t, x_start, probe, options.paths, options.dt, options.seed);
    const double reference = kernel_expectation(op, t, x_start, probe);
    const double tolerance =
        3.0 * est.standard_error + 2.0 * options.dt * std::abs(reference);
    out.push_back(make_report(
        "feynman_kac", std::abs(est.mean - reference), tolerance,
        {{"op", to_json_string(op)},
         {"t", fmt(t)},
         {"x_start", fmt(x_start)},
         {"probe", probe == Probe::Constant1 ? "constant-1" : "gaussian-bump"},
         {"paths", std::to_string(est.paths)},
         {"dt", fmt(est.dt)},
         {"seed", std::to_string(est.seed)},
         {"mc_mean", fmt(est.mean)},
         {"mc_standard_error", fmt(est.standard_error)},
         {"quadrature", fmt(reference)}}));
  }
  return out;
}

std::vector<VerificationReport> shooting_suite(const OUOperator& op,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0x7368ULL));
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  std::vector<VerificationReport> out;
  for (int i = 0; i < 3; ++i) {
    const double x0 = ux(rng), x1 = ux(rng);
    if (!std::holds_alternative<GeodesicPath>(geodesic(op, x0, x1))) {
      continue;  // resonant operator: boundary problem is degenerate
    }
    out.push_back(geodesic_shooting_error(op, x0, x1, 100));
  }
  return out;
}

}  // namespace

std::vector<VerificationReport> run_suite(const OUOperator& op,
                                          const std::string& suite,
                                          const SuiteOptions& options) {
  std::vector<VerificationReport> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "pde") {
    append(out, pde_suite(op, options.seed));
    known = true;
  }
  if (all || suite == "ode") {
    append(out, ode_suite(op, options.seed));
    known = true;
  }
  if (all || suite == "chapman") {
    append(out, chapman_suite(op, options.seed));
    known = true;
  }
  if (all || suite == "delta") {
    append(out, delta_suite(op, options.seed));
    known = true;
  }
  if (all || suite == "mc") {
    append(out, mc_suite(op, options));
    known = true;
  }
  if (all || suite == "shooting") {
    append(out, shooting_suite(op, options.seed));
    known = true;
  }
  if (!known) {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  return out;
}

}  // namespace ouheat
