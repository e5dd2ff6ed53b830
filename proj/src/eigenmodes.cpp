#include "tubedyn/eigenmodes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

namespace tubedyn::eigenmodes {
namespace {

constexpr double kSeriesLimit = 12.0;

double bessel_j_series(int n, double x) {
  const long double half = 0.5L * x;
  const long double q = -half * half;
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= half / k;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::abs(term) <= 1e-20L * std::abs(sum) || std::abs(term) < 1e-30L) break;
  }
  return static_cast<double>(sum);
}

double bessel_j_asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(previous) || next == 0.0) break;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * next;
    } else {
      q += sign * next;
    }
    previous = next;
    term = next;
    if (std::abs(next) < 1e-18) break;
  }
  const double chi = x - (0.5 * n + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_j_derivative(int n, double x) {
  if (n == 0) return -bessel_j(1, x);
  return bessel_j(n - 1, x) - n / x * bessel_j(n, x);
}

void check_grid_args(double r_max, std::size_t n) {
  if (!(r_max > 0.0)) throw std::invalid_argument("R_max must be > 0");
  if (n < RadialProfile::kMinPoints) {
    throw std::invalid_argument("radial grid needs at least 16 points");
  }
}

}  // namespace

RadialProfile RadialProfile::uniform(double r_max, std::size_t n) {
  check_grid_args(r_max, n);
  RadialProfile p;
  p.r.resize(n);
  p.values.assign(n, 0.0);
  const double dr = r_max / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) p.r[i] = dr * static_cast<double>(i);
  p.r.back() = r_max;
  return p;
}

double RadialProfile::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double bessel_j(int n, double x) {
  if (n < 0) throw std::invalid_argument("bessel_j: order must be >= 0");
  const double sign = (x < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  if (ax <= kSeriesLimit) return sign * bessel_j_series(n, ax);
  if (n <= 1) return sign * bessel_j_asymptotic(n, ax);
  // Higher orders lose accuracy in the asymptotic form; upward recurrence
  // from J0, J1 is stable while the order stays below the argument.
  if (n < ax) {
    double prev = bessel_j_asymptotic(0, ax);
    double cur = bessel_j_asymptotic(1, ax);
    for (int k = 1; k < n; ++k) {
      const double next = 2.0 * k / ax * cur - prev;
      prev = cur;
      cur = next;
    }
    return sign * cur;
  }
  return sign * bessel_j_series(n, ax);
}

double bessel_j0(double x) { return bessel_j(0, x); }
double bessel_j1(double x) { return bessel_j(1, x); }

double bessel_i0(double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (term < 1e-21L * sum) break;
  }
  return static_cast<double>(sum);
}

std::vector<double> bessel_j_zeros(int n, std::size_t count) {
  std::vector<double> zeros;
  zeros.reserve(count);
  const double mu = 4.0 * n * n;
  for (std::size_t k = 1; k <= count; ++k) {
    // McMahon's expansion as the starting guess, then Newton.
    const double beta = (static_cast<double>(k) + 0.5 * n - 0.25) * std::numbers::pi;
    double x = beta - (mu - 1.0) / (8.0 * beta) - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) /
                                                     (3.0 * std::pow(8.0 * beta, 3));
    for (int it = 0; it < 50; ++it) {
      const double dx = bessel_j(n, x) / bessel_j_derivative(n, x);
      x -= dx;
      if (std::abs(dx) < 1e-15 * x) break;
    }
    zeros.push_back(x);
  }
  return zeros;
}

ToroidalMode solve_toroidal_mode(double gamma, double eta, double r_max, std::size_t n) {
  if (!(eta > 0.0)) throw std::invalid_argument("toroidal mode needs eta > 0");
  check_grid_args(r_max, n);

  const double lambda = gamma / eta;
  ToroidalMode mode;
  mode.profile = RadialProfile::uniform(r_max, n);
  mode.slope.assign(n, 0.0);
  const std::vector<double>& r = mode.profile.r;

  // Regular series B = sum_k (lambda r^2 / 4)^k / (k!)^2 at the first grid
  // point keeps the 1/r term out of the first step.
  const double eps = r[1];
  double value = 0.0;
  double slope = 0.0;
  {
    const double q = 0.25 * lambda * eps * eps;
    double term = 1.0;
    value = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= q / (static_cast<double>(k) * k);
      value += term;
      slope += 2.0 * k * term / eps;
      if (std::abs(term) < 1e-18 * std::abs(value)) break;
    }
  }
  mode.profile.values[0] = 1.0;
  mode.slope[0] = 0.0;

  using State = std::array<double, 2>;
  auto rhs = [lambda](const State& y, State& dy, double rr) {
    dy[0] = y[1];
    dy[1] = lambda * y[0] - y[1] / rr;
  };
  State y{value, slope};
  std::vector<double> times(r.begin() + 1, r.end());
  std::size_t index = 1;
  auto observer = [&](const State& state, double) {
    mode.profile.values[index] = state[0];
    mode.slope[index] = state[1];
    ++index;
  };
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-3 * eps, observer);

  double (*closed)(double) = nullptr;
  double scale = std::sqrt(std::abs(lambda));
  if (gamma < 0.0) {
    mode.closed_form = "J0";
    closed = bessel_j0;
  } else if (gamma > 0.0) {
    mode.closed_form = "I0";
    closed = bessel_i0;
  } else {
    mode.closed_form = "constant";
    mode.constant_marginal_profile = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = closed ? closed(scale * r[i]) : 1.0;
    mode.closed_form_max_deviation =
        std::max(mode.closed_form_max_deviation, std::abs(mode.profile.values[i] - expected));
  }
  return mode;
}

double toroidal_operator_residual(const RadialProfile& profile, double gamma, double eta) {
  const double lambda = gamma / eta;
  const double dr = profile.spacing();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
    const double b = profile.values[i];
    const double second = (profile.values[i + 1] - 2.0 * b + profile.values[i - 1]) / (dr * dr);
    const double first = (profile.values[i + 1] - profile.values[i - 1]) / (2.0 * dr);
    worst = std::max(worst, std::abs(second + first / profile.r[i] - lambda * b));
  }
  return worst;
}

PoloidalNearAxis solve_poloidal_near_axis(double b0, double gamma, double eta, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("near-axis solution needs r >= 0");
  if (!(eta > 0.0)) throw std::invalid_argument("near-axis solution needs eta > 0");
  PoloidalNearAxis out;
  out.value = b0 * r;
  // d_r (B0 r) = B0 and (B0 r) / r = B0, including the limit r -> 0.
  const double derivative = b0;
  const double over_r = b0;
  out.near_axis_residual = derivative - over_r;
  out.full_residual = derivative - (gamma * r / eta) * out.value - over_r;
  out.approximation_parameter = gamma * r * r / eta;
  out.within_approximation = std::abs(out.approximation_parameter) <= kNearAxisValidity;
  return out;
}

}  // namespace tubedyn::eigenmodes
