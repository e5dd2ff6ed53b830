#include "tubedyn/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tubedyn::evolution {
namespace {

constexpr double kTinyDiffusivity = 1e-300;
constexpr std::size_t kMinSeriesLength = 100;

}  // namespace

std::string to_string(Boundary boundary) {
  return boundary == Boundary::DirichletZero ? "dirichlet" : "neumann";
}

std::string to_string(Component component) {
  return component == Component::Toroidal ? "toroidal" : "poloidal";
}

Boundary parse_boundary(const std::string& text) {
  if (text == "dirichlet") return Boundary::DirichletZero;
  if (text == "neumann") return Boundary::NeumannZero;
  throw std::invalid_argument("unknown boundary '" + text + "' (dirichlet|neumann)");
}

Component parse_component(const std::string& text) {
  if (text == "toroidal") return Component::Toroidal;
  if (text == "poloidal") return Component::Poloidal;
  throw std::invalid_argument("unknown component '" + text + "' (toroidal|poloidal)");
}

double EvolutionConfig::max_stable_dt() const {
  const double dr = spacing();
  return 0.25 * dr * dr / std::max(eta, kTinyDiffusivity);
}

std::vector<double> apply_operator(const EvolutionConfig& config, std::span<const double> values,
                                   std::span<const double> r) {
  const std::size_t n = values.size();
  const double dr = r[1] - r[0];
  const double inv_dr2 = 1.0 / (dr * dr);
  const bool poloidal = config.component == Component::Poloidal;
  std::vector<double> out(n, 0.0);

  // Origin: the even toroidal component sees 2 d_r^2 B through the mirror
  // ghost B_{-1} = B_1; the odd poloidal component is pinned to zero.
  if (!poloidal) out[0] = 4.0 * (values[1] - values[0]) * inv_dr2;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double second = (values[i + 1] - 2.0 * values[i] + values[i - 1]) * inv_dr2;
    const double first = (values[i + 1] - values[i - 1]) / (2.0 * dr);
    double lb = second + first / r[i];
    if (poloidal) lb -= values[i] / (r[i] * r[i]);
    out[i] = lb;
  }

  const std::size_t w = n - 1;
  if (config.boundary == Boundary::NeumannZero) {
    // Ghost B_{n} = B_{n-2}: zero slope, so only the second difference remains.
    double lb = 2.0 * (values[w - 1] - values[w]) * inv_dr2;
    if (poloidal) lb -= values[w] / (r[w] * r[w]);
    out[w] = lb;
  }
  for (double& v : out) v *= config.eta;
  return out;
}

double magnetic_energy(std::span<const double> values, std::span<const double> r, double dr) {
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += values[i] * values[i] * r[i];
  return sum * dr;
}

EvolutionResult evolve(const EvolutionConfig& config, const RadialProfile& init) {
  if (config.n < RadialProfile::kMinPoints) {
    throw std::invalid_argument("evolution grid needs at least 16 points");
  }
  if (!(config.eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
  if (!(config.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (config.dt > config.max_stable_dt()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "dt = " << config.dt << " violates the stability bound 0.25 dr^2 / eta = "
        << config.max_stable_dt();
    throw std::invalid_argument(msg.str());
  }
  if (init.size() != config.n || init.values.size() != config.n) {
    throw std::invalid_argument("initial profile is not on the configured grid");
  }
  const double dr = config.spacing();
  for (std::size_t i = 0; i < config.n; ++i) {
    if (std::abs(init.r[i] - dr * static_cast<double>(i)) > 1e-12 * config.r_max) {
      throw std::invalid_argument("initial profile is not on the configured grid");
    }
  }

  std::vector<double> b = init.values;
  if (config.component == Component::Poloidal) b.front() = 0.0;
  if (config.boundary == Boundary::DirichletZero) b.back() = 0.0;

  EvolutionResult result;
  result.times.reserve(config.steps + 1);
  result.energy.reserve(config.steps + 1);
  auto snapshot = [&](std::size_t step) {
    RadialProfile p;
    p.r = init.r;
    p.values = b;
    result.snapshot_steps.push_back(step);
    result.snapshots.push_back(std::move(p));
  };

  result.times.push_back(0.0);
  result.energy.push_back(magnetic_energy(b, init.r, dr));
  snapshot(0);

  for (std::size_t step = 1; step <= config.steps; ++step) {
    const std::vector<double> rate = apply_operator(config, b, init.r);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += config.dt * rate[i];
    result.times.push_back(config.dt * static_cast<double>(step));
    result.energy.push_back(magnetic_energy(b, init.r, dr));
    const bool last = step == config.steps;
    if (!last && config.snapshot_every > 0 && step % config.snapshot_every == 0) snapshot(step);
    if (last) snapshot(step);
  }
  return result;
}

double measure_growth_rate(std::span<const double> energy, double dt) {
  if (energy.size() < kMinSeriesLength) {
    throw std::invalid_argument("growth-rate measurement needs at least 100 samples");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("growth-rate measurement needs dt > 0");
  for (double e : energy) {
    if (!(e > 0.0)) throw std::invalid_argument("energy series must be strictly positive");
  }
  // Offsets relative to the first sample of the window keep a constant
  // series at exactly zero slope.
  const std::size_t begin = energy.size() / 2;
  const std::size_t count = energy.size() - begin;
  const double log_ref = std::log(energy[begin]);
  auto y = [&](std::size_t i) { return 0.5 * (std::log(energy[i]) - log_ref); };
  auto t = [&](std::size_t i) { return static_cast<double>(i - begin) * dt; };
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = begin; i < energy.size(); ++i) {
    mean_t += t(i);
    mean_y += y(i);
  }
  mean_t /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = begin; i < energy.size(); ++i) {
    sxx += (t(i) - mean_t) * (t(i) - mean_t);
    sxy += (t(i) - mean_t) * (y(i) - mean_y);
  }
  return sxy / sxx;
}

}  // namespace tubedyn::evolution
