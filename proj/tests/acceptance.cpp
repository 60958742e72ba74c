// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ouheat/cli.hpp"
#include "ouheat/geodesic.hpp"
#include "ouheat/kernel.hpp"
#include "ouheat/operator.hpp"
#include "ouheat/verify.hpp"

using namespace ouheat;

namespace {

constexpr double kPi = std::numbers::pi;

const OUOperator kLPlus(1, 1, 0, 1);
const OUOperator kLMinus(1, 1, 0, -1);

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail << what;
    }
  }
};

OUOperator random_operator(std::mt19937_64& rng, int kind) {
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  std::uniform_real_distribution<double> upos(0.4, 2.5);
  std::uniform_real_distribution<double> ul(0.4, 4.0);
  const double theta = upos(rng);
  double a = u(rng);
  while (std::abs(a) < 0.2) a = u(rng);
  const double b = u(rng);
  if (kind == 0) {
    double l = ul(rng);
    while (std::abs(l * l - a * a) < 4e-3) l = ul(rng);
    return OUOperator(theta, a, b, (l * l - a * a) / (4.0 * theta));
  }
  if (kind == 1) {
    return OUOperator(theta, a, b, -a * a / (4.0 * theta));
  }
  double l = ul(rng);
  while (std::abs(l - kPi) < 0.05) l = ul(rng);
  return OUOperator(theta, a, b, -(l * l + a * a) / (4.0 * theta));
}

double regular_time(std::mt19937_64& rng, const OUOperator& op, double lo,
                    double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  const Regime r = classify(op);
  if (r.kind == RegimeKind::Oscillatory) {
    return u(rng) * kPi / r.lambda0;
  }
  return u(rng) * 1.5;
}

// --- criteria ---------------------------------------------------------

bool criterion_regime_fixtures(Checker& c) {
  const Regime plus = classify(kLPlus);
  c.require(plus.kind == RegimeKind::Hyperbolic, "L+ not hyperbolic");
  c.require(std::abs(plus.lambda0 - std::sqrt(5.0)) <= 1e-12,
            "L+ lambda0 != sqrt(5)");
  const Regime minus = classify(kLMinus);
  c.require(minus.kind == RegimeKind::Oscillatory, "L- not oscillatory");
  c.require(std::abs(minus.lambda0 - std::sqrt(3.0)) <= 1e-12,
            "L- lambda0 != sqrt(3)");
  for (double b : {-7.0, 0.0, 0.3, 2.5}) {
    c.require(classify(OUOperator(1, 2, b, -1)).kind == RegimeKind::Critical,
              "(1,2,b,-1) not critical");
  }
  return c.ok;
}

bool criterion_geodesic_ode(Checker& c) {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  double worst_resid = 0.0, worst_end = 0.0;
  for (int i = 0; i < 200; ++i) {
    const OUOperator op = random_operator(rng, i % 3);
    const double x0 = ux(rng), x1 = ux(rng);
    const GeodesicResult result = geodesic(op, x0, x1);
    const auto* path = std::get_if<GeodesicPath>(&result);
    c.require(path != nullptr, "expected a unique geodesic");
    if (path == nullptr) return false;
    const double d = discriminant(op), ab = op.a * op.b;
    const double h = 1e-4;
    for (double s : {0.2, 0.35, 0.5, 0.65, 0.8}) {
      const auto f = [&](double v) { return geodesic_eval(*path, v); };
      const double xdd = (-f(s - 2 * h) + 16 * f(s - h) - 30 * f(s) +
                          16 * f(s + h) - f(s + 2 * h)) /
                         (12 * h * h);
      const double rhs = d * f(s) + ab;
      worst_resid = std::max(
          worst_resid, std::abs(xdd - rhs) / std::max(1.0, std::abs(rhs)));
    }
    worst_end = std::max(worst_end, std::abs(geodesic_eval(*path, 0.0) - x0) /
                                        (1.0 + std::abs(x0)));
    worst_end = std::max(worst_end, std::abs(geodesic_eval(*path, 1.0) - x1) /
                                        (1.0 + std::abs(x1)));
  }
  c.require(worst_resid <= 1e-5, "ODE residual above 1e-5");
  c.require(worst_end <= 1e-12, "endpoint error above 1e-12");
  c.detail << "worst residual " << worst_resid << ", worst endpoint "
           << worst_end;
  return c.ok;
}

bool criterion_shooting(Checker& c) {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const OUOperator op = random_operator(rng, i % 3);
    const VerificationReport r =
        geodesic_shooting_error(op, ux(rng), ux(rng), 100);
    worst = std::max(worst, r.measured);
  }
  c.require(worst <= 1e-7, "shooting deviation above 1e-7");
  c.detail << "worst deviation " << worst;
  return c.ok;
}

bool criterion_singular_classification(Checker& c) {
  for (int k : {1, 2}) {
    for (double a : {1.0, -0.7}) {
      for (double b : {0.9, -1.3}) {
        const double theta = (k == 1) ? 1.0 : 1.7;
        const OUOperator op(theta, a, b,
                            -(k * kPi * k * kPi + a * a) / (4.0 * theta));
        const double shift = a * b / (k * kPi * k * kPi);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double forced = shift + sign * (0.8 - shift);

        const GeodesicResult hit = geodesic(op, 0.8, forced);
        c.require(std::holds_alternative<SingularFamily>(hit),
                  "matching endpoint did not give a family");
        const GeodesicResult miss = geodesic(op, 0.8, forced + 0.37);
        const auto* none = std::get_if<NoSolution>(&miss);
        c.require(none != nullptr, "mismatched endpoint was not rejected");
        if (none != nullptr) {
          c.require(none->k == k, "wrong k");
          c.require(std::abs(none->required_endpoint - forced) <=
                        1e-9 * (1.0 + std::abs(forced)),
                    "wrong forced endpoint");
        }
        if (const auto* family = std::get_if<SingularFamily>(&hit)) {
          for (double c2 : {-10.0, 0.0, 10.0}) {
            c.require(std::abs(family_eval(*family, c2, 0.0) - 0.8) <= 1e-12,
                      "family start depends on c2");
            c.require(std::abs(family_eval(*family, c2, 1.0) - forced) <=
                          1e-12 * (1.0 + std::abs(forced)),
                      "family endpoint depends on c2");
          }
        }
      }
    }
  }
  return c.ok;
}

bool criterion_ode_residuals(Checker& c) {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const OUOperator op = random_operator(rng, i % 3);
    const double t = regular_time(rng, op, 0.15, 0.85);
    for (const auto& r : ode_residuals(op, t, 1e-6 * t)) {
      worst = std::max(worst, r.measured);
    }
  }
  c.require(worst <= 1e-5, "coefficient ODE residual above 1e-5");
  c.detail << "worst residual " << worst;
  return c.ok;
}

bool criterion_pde_residual(Checker& c) {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> ux(-1.5, 1.5);
  double worst = 0.0;
  std::vector<double> ratios;
  for (int i = 0; i < 100; ++i) {
    const OUOperator op = random_operator(rng, i % 3);
    const double t = regular_time(rng, op, 0.15, 0.85);
    const double x = ux(rng), x0 = ux(rng);
    worst = std::max(
        worst,
        pde_residual(op, t, x, x0, 1e-5 * t, 1e-4 * (1 + std::abs(x)))
            .measured);
    const double big =
        pde_residual(op, t, x, x0, 2e-4 * t, 4e-3 * (1 + std::abs(x)))
            .measured;
    const double half =
        pde_residual(op, t, x, x0, 1e-4 * t, 2e-3 * (1 + std::abs(x)))
            .measured;
    ratios.push_back(big / std::max(half, 1e-300));
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[ratios.size() / 2];
  c.require(worst <= 1e-6, "PDE residual above 1e-6");
  c.require(median > 3.0 && median < 5.0, "halving ratio not ~4");
  c.detail << "worst residual " << worst << ", median halving ratio "
           << median;
  return c.ok;
}

bool criterion_chapman(Checker& c) {
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::uniform_real_distribution<double> usplit(0.25, 0.75);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const OUOperator op = random_operator(rng, i % 3);
    const double total = regular_time(rng, op, 0.3, 0.85);
    const double split = usplit(rng);
    const VerificationReport r = chapman_kolmogorov_error(
        op, split * total, (1.0 - split) * total, ux(rng), ux(rng), 200);
    worst = std::max(worst, r.measured);
  }
  c.require(worst <= 1e-8, "Chapman-Kolmogorov error above 1e-8");
  c.detail << "worst relative error " << worst;
  return c.ok;
}

bool criterion_delta_limit(Checker& c) {
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> ux(-1.5, 1.5);
  double worst_ratio_dev = 0.0;
  for (int i = 0; i < 20; ++i) {
    OUOperator op = random_operator(rng, i % 3);
    double x0 = ux(rng);
    // keep the O(t) decay constant a - theta - rho x0^2 away from zero
    while (std::abs(op.a - op.theta - op.rho * x0 * x0) < 0.5) {
      op = random_operator(rng, i % 3);
      x0 = ux(rng);
    }
    double prev = -1.0;
    for (double t : {1e-2, 1e-3, 1e-4}) {
      const double err =
          delta_limit_error(op, t, x0, Probe::GaussianBump).measured;
      if (prev > 0.0) {
        const double ratio = err / prev;
        worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 0.1));
        c.require(ratio > 0.05 && ratio < 0.15,
                  "decade ratio outside 0.1 +/- 0.05");
      }
      prev = err;
    }
  }
  c.detail << "worst |ratio - 0.1| = " << worst_ratio_dev;
  return c.ok;
}

bool criterion_feynman_kac(Checker& c) {
  double worst_sigma = 0.0;
  for (const OUOperator& op : {kLPlus, kLMinus}) {
    for (double x_start : {0.0, 0.5}) {
      const MCEstimate est = feynman_kac_estimate(
          op, 0.5, x_start, Probe::Constant1, 100000, 1e-3, 42);
      const double reference =
          kernel_expectation(op, 0.5, x_start, Probe::Constant1);
      const double tolerance =
          3.0 * est.standard_error + 2.0 * est.dt * std::abs(reference);
      const double gap = std::abs(est.mean - reference);
      worst_sigma = std::max(worst_sigma, gap / est.standard_error);
      c.require(gap <= tolerance, "MC estimate outside tolerance");
    }
  }
  c.detail << "worst |gap|/se = " << worst_sigma;
  return c.ok;
}

bool criterion_nd_closed_forms(Checker& c) {
  std::mt19937_64 rng(1007);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const ProductOperator plus(std::vector<OUOperator>(
        static_cast<std::size_t>(n), kLPlus));
    const ProductOperator minus(std::vector<OUOperator>(
        static_cast<std::size_t>(n), kLMinus));
    std::uniform_real_distribution<double> ut_plus(0.1, 2.0);
    std::uniform_real_distribution<double> ut_minus(0.1,
                                                    0.95 * kPi / std::sqrt(3.0));
    for (int i = 0; i < 20; ++i) {
      Eigen::VectorXd x(n), x0(n);
      for (int j = 0; j < n; ++j) {
        x(j) = ux(rng);
        x0(j) = ux(rng);
      }
      {
        const double t = ut_plus(rng);
        const double l = std::sqrt(5.0);
        const double direct =
            0.5 * n * std::log(l * std::exp(t) / (4.0 * kPi * std::sinh(l * t))) +
            (1.0 - l * std::cosh(l * t) / std::sinh(l * t)) / 4.0 *
                (x.squaredNorm() + x0.squaredNorm()) +
            l / (2.0 * std::sinh(l * t)) * x.dot(x0);
        const double got = log_kernel_nd(plus, t, x, x0);
        worst = std::max(worst, std::abs(got - direct) /
                                    std::max(1.0, std::abs(direct)));
      }
      {
        const double t = ut_minus(rng);
        const double l = std::sqrt(3.0);
        const double sn = std::sin(l * t);
        const double direct =
            0.5 * n * std::log(l * std::exp(t) / (4.0 * kPi * sn)) +
            (1.0 - l * std::cos(l * t) / sn) / 4.0 *
                (x.squaredNorm() + x0.squaredNorm()) +
            l / (2.0 * sn) * x.dot(x0);
        const double got = log_kernel_nd(minus, t, x, x0);
        worst = std::max(worst, std::abs(got - direct) /
                                    std::max(1.0, std::abs(direct)));
      }
    }
  }
  c.require(worst <= 1e-12, "closed-form mismatch above 1e-12");
  c.detail << "worst relative mismatch " << worst;
  return c.ok;
}

bool criterion_geodesics_vs_kernels(Checker& c) {
  const OUOperator left(1, 2, 0, -1), right(1, -2, 0, -1);
  const auto path_l = std::get<GeodesicPath>(geodesic(left, 1.0, 0.0));
  const auto path_r = std::get<GeodesicPath>(geodesic(right, 1.0, 0.0));
  double sup = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    sup = std::max(sup, std::abs(geodesic_eval(path_l, s) -
                                 geodesic_eval(path_r, s)));
  }
  const double gap = std::abs(log_kernel(left, 1.0, 1.0, 0.0) -
                              log_kernel(right, 1.0, 1.0, 0.0));
  c.require(sup <= 1e-15, "geodesics differ");
  c.require(gap > 0.1, "kernels do not separate");
  c.detail << "geodesic sup " << sup << ", kernel gap " << gap;
  return c.ok;
}

bool criterion_determinism(Checker& c) {
  const std::vector<std::string> args = {
      "verify", "--op",    R"({"theta":1,"a":1,"b":0,"rho":1})",
      "--suite", "all",    "--seed", "42", "--paths", "20000"};
  std::ostringstream out1, err1, out2, err2;
  const int code1 = cli::run(args, out1, err1);
  const int code2 = cli::run(args, out2, err2);
  c.require(code1 == 0, "verify exited nonzero");
  c.require(code1 == code2, "exit codes differ");
  c.require(out1.str() == out2.str(), "stdout differs between runs");
  c.require(!out1.str().empty(), "no output");
  return c.ok;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<bool(Checker&)> fn;
  };
  const std::vector<Entry> criteria = {
      {1, "regime fixtures", criterion_regime_fixtures},
      {2, "geodesic ODE property (200 operators)", criterion_geodesic_ode},
      {3, "shooting equivalence (50 cases)", criterion_shooting},
      {4, "singular classification at lambda0 = k pi",
       criterion_singular_classification},
      {5, "coefficient ODE residuals (200 operators)",
       criterion_ode_residuals},
      {6, "PDE residual and step halving (100 cases)",
       criterion_pde_residual},
      {7, "Chapman-Kolmogorov (30 cases)", criterion_chapman},
      {8, "delta limit linear decay (20 operators)", criterion_delta_limit},
      {9, "Feynman-Kac cross-validation", criterion_feynman_kac},
      {10, "n-dimensional product-kernel fixtures", criterion_nd_closed_forms},
      {11, "identical geodesics, distinct kernels",
       criterion_geodesics_vs_kernels},
      {12, "verify determinism", criterion_determinism},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    Checker checker;
    bool ok = false;
    std::string error;
    try {
      ok = entry.fn(checker);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const std::string detail =
        !error.empty() ? "exception: " + error : checker.detail.str();
    std::printf("%s %2d %s%s%s\n", ok ? "PASS" : "FAIL", entry.id, entry.name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
