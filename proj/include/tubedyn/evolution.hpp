#pragma once

// Explicit Euler integration of d_t B = eta L B on a uniform radial grid,
// where L is the thin-tube radial operator of the toroidal or the poloidal
// field component. The flow term of the induction equation is not coupled.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tubedyn/eigenmodes.hpp"

namespace tubedyn::evolution {

using eigenmodes::RadialProfile;

enum class Boundary { DirichletZero, NeumannZero };
enum class Component {
  Toroidal,  // d_r^2 + (1/r) d_r
  Poloidal,  // d_r^2 + (1/r) d_r - 1/r^2
};

std::string to_string(Boundary boundary);
std::string to_string(Component component);
Boundary parse_boundary(const std::string& text);
Component parse_component(const std::string& text);

struct EvolutionConfig {
  double eta = 1.0;
  double r_max = 1.0;
  std::size_t n = 101;
  double dt = 1e-5;
  std::size_t steps = 1000;
  Boundary boundary = Boundary::DirichletZero;
  Component component = Component::Toroidal;
  // Keep a profile every this many steps; 0 keeps only the initial and final ones.
  std::size_t snapshot_every = 0;

  double spacing() const { return r_max / static_cast<double>(n - 1); }
  // dt <= 0.25 dr^2 / max(eta, tiny)
  double max_stable_dt() const;
};

struct EvolutionResult {
  std::vector<double> times;   // steps + 1 entries
  std::vector<double> energy;  // sum_i B_i^2 r_i dr at every time
  std::vector<std::size_t> snapshot_steps;
  std::vector<RadialProfile> snapshots;

  const RadialProfile& final_profile() const { return snapshots.back(); }
};

// Throws std::invalid_argument when init does not live on the config grid
// or the stability bound is violated; nothing is stepped in that case.
EvolutionResult evolve(const EvolutionConfig& config, const RadialProfile& init);

// Applies eta * L to the profile values, including the origin and wall rows.
std::vector<double> apply_operator(const EvolutionConfig& config, std::span<const double> values,
                                   std::span<const double> r);

double magnetic_energy(std::span<const double> values, std::span<const double> r, double dr);

// Least-squares slope of (1/2) log E against time over the second half of the
// series. Needs at least 100 strictly positive entries.
double measure_growth_rate(std::span<const double> energy, double dt);

}  // namespace tubedyn::evolution
