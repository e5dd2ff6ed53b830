#include "tubedyn/cli/run.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "tubedyn/classifier.hpp"
#include "tubedyn/eigenmodes.hpp"
#include "tubedyn/evolution.hpp"
#include "tubedyn/frenet.hpp"
#include "tubedyn/geometry.hpp"
#include "tubedyn/induction.hpp"
#include "tubedyn/io.hpp"

namespace tubedyn::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

double num(const json& p, const char* key) { return p.at(key).get<double>(); }
std::size_t count(const json& p, const char* key) {
  return static_cast<std::size_t>(p.at(key).get<std::int64_t>());
}
std::string text(const json& p, const char* key) { return p.at(key).get<std::string>(); }

LinearProfile curvature_profile(const json& p) {
  if (text(p, "kappa_profile") == "slow_dynamo") {
    return geometry::SlowDynamoCurvatureProfile{num(p, "c0"), num(p, "profile_theta")}.kappa();
  }
  return LinearProfile::constant(num(p, "kappa0"));
}

void write_manifest(const RunConfig& config) {
  io::write_text(config.output_dir / "manifest.json", config.to_json().dump(2) + "\n");
}

// ---------------------------------------------------------------------------

void run_curvature(const RunConfig& config) {
  const json& p = config.parameters;
  geometry::TubeMetric metric = geometry::TubeMetric::thin();
  if (text(p, "family") == "thick") {
    if (text(p, "kappa_profile") == "slow_dynamo") {
      metric = geometry::TubeMetric::thick(
          geometry::SlowDynamoCurvatureProfile{num(p, "c0"), num(p, "profile_theta")});
    } else {
      metric = geometry::TubeMetric::thick(LinearProfile::constant(num(p, "kappa0")));
    }
  }

  std::vector<geometry::CoordPoint> points;
  for (const auto& q : p.at("points")) {
    points.push_back(geometry::CoordPoint::at(q[0].get<double>(), q[1].get<double>(),
                                              q[2].get<double>()));
  }
  if (num(p, "r_min") > num(p, "r_max")) {
    throw ConfigError("parameters.r_min", "parameters.r_min: must not exceed r_max");
  }
  if (num(p, "s_min") > num(p, "s_max")) {
    throw ConfigError("parameters.s_min", "parameters.s_min: must not exceed s_max");
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> r_dist(num(p, "r_min"), num(p, "r_max"));
  std::uniform_real_distribution<double> theta_dist(0.0, kTwoPi);
  std::uniform_real_distribution<double> s_dist(num(p, "s_min"), num(p, "s_max"));
  for (std::size_t i = 0; i < count(p, "random_points"); ++i) {
    const double r = r_dist(rng);
    const double theta = theta_dist(rng);
    const double s = s_dist(rng);
    points.push_back(geometry::CoordPoint::at(r, theta, s));
  }
  if (points.empty()) throw ConfigError("parameters.points", "parameters.points: no evaluation points");

  const double h = num(p, "h");
  using geometry::kR;
  using geometry::kS;
  using geometry::kTheta;
  io::CsvWriter riemann_csv(config.output_dir / "riemann.csv",
                            {"point", "r", "theta", "s", "R_1212", "R_1213", "R_1223", "R_1313",
                             "R_1323", "R_2323", "max_abs_R", "symmetry_residual"});
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto R = geometry::riemann(metric, points[i], h);
    riemann_csv.field(i).field(points[i].r).field(points[i].theta).field(points[i].s);
    riemann_csv.field(R(kR, kTheta, kR, kTheta))
        .field(R(kR, kTheta, kR, kS))
        .field(R(kR, kTheta, kTheta, kS))
        .field(R(kR, kS, kR, kS))
        .field(R(kR, kS, kTheta, kS))
        .field(R(kTheta, kS, kTheta, kS))
        .field(R.max_abs())
        .field(geometry::symmetry_residuals(R).max());
    riemann_csv.end_row();
  }

  if (metric.family == geometry::TubeFamily::Thick) {
    io::CsvWriter report(config.output_dir / "curvature_comparison.csv",
                         {"point", "component", "oracle", "printed_form_1", "printed_form_2",
                          "rel_dev_1", "rel_dev_2"});
    for (const auto& row : geometry::curvature_comparison_report(metric, points, h)) {
      report.field(row.point)
          .field(row.component)
          .field(row.oracle)
          .field(row.printed_form_1)
          .field(row.printed_form_2)
          .field(row.rel_dev_1)
          .field(row.rel_dev_2);
      report.end_row();
    }
    report.close();
  }
  riemann_csv.close();
}

// ---------------------------------------------------------------------------

void run_frenet(const RunConfig& config) {
  const json& p = config.parameters;
  frenet::CurveGeometry curve{curvature_profile(p), LinearProfile::constant(num(p, "tau0")),
                              num(p, "s_begin"), num(p, "s_end")};
  const std::size_t steps = count(p, "steps");
  const std::size_t every = count(p, "output_every");
  const frenet::FrenetFrame init;
  const auto frames = frenet::transport_frame(curve, init, steps);

  io::CsvWriter csv(config.output_dir / "frenet.csv",
                    {"s", "t_x", "t_y", "t_z", "n_x", "n_y", "n_z", "b_x", "b_y", "b_z", "x",
                     "y", "z"});
  double worst_defect = 0.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    worst_defect = std::max(worst_defect, f.orthonormality_defect());
    if (i % every != 0 && i + 1 != frames.size()) continue;
    csv.field(f.s);
    for (const Vec3* v : {&f.t, &f.n, &f.b, &f.position}) {
      csv.field((*v)[0]).field((*v)[1]).field((*v)[2]);
    }
    csv.end_row();
  }
  csv.close();

  const auto& last = frames.back();
  const double frame_error = std::max({norm(last.t - init.t), norm(last.n - init.n),
                                       norm(last.b - init.b)});
  io::KeyValueBlock summary;
  summary.add("steps", steps);
  summary.add("closure_frame_error", frame_error);
  summary.add("closure_position_error", norm(last.position - init.position));
  summary.add("max_orthonormality_defect", worst_defect);
  io::write_text(config.output_dir / "frenet_summary.txt", summary.str());
}

// ---------------------------------------------------------------------------

void run_constraints(const RunConfig& config) {
  const json& p = config.parameters;
  frenet::CurveGeometry curve{curvature_profile(p), LinearProfile::constant(num(p, "tau0")),
                              num(p, "s"), num(p, "s")};
  induction::FieldDecomposition field;
  field.B_r = num(p, "B_r");
  field.B_theta = num(p, "B_theta");
  field.B_s = num(p, "B_s");
  field.v_s = num(p, "v_s");
  field.v_theta = num(p, "v_theta");
  field.v_n = num(p, "v_n");
  field.v_b = num(p, "v_b");
  field.omega0 = num(p, "omega0");
  field.gamma = num(p, "gamma");
  field.dBtheta_ds = num(p, "dBtheta_ds");
  field.dvtheta_ds = num(p, "dvtheta_ds");
  field.r = num(p, "r");
  field.theta = num(p, "theta");
  field.s = num(p, "s");

  const auto residuals = induction::thin_tube_residuals(field, curve, field.theta);
  const auto report = induction::constraint_checks(field, curve);
  const auto stretch = induction::stretching_term(field, curve, field.theta);

  std::vector<std::pair<std::string, double>> rows = {
      {"thin_tube_r1", residuals.r1}, {"thin_tube_r2", residuals.r2},
      {"thin_tube_r3", residuals.r3},
  };
  for (const auto& e : report.entries) rows.emplace_back(e.name, e.value);
  rows.emplace_back("stretching_e_r", stretch.e_r);
  rows.emplace_back("stretching_n", stretch.n);

  io::CsvWriter csv(config.output_dir / "constraints.csv", {"constraint", "value"});
  io::KeyValueBlock block;
  for (const auto& [name, value] : rows) {
    csv.field(name).field(value);
    csv.end_row();
    block.add(name, value);
  }
  csv.close();
  io::write_text(config.output_dir / "constraints.txt", block.str());
}

// ---------------------------------------------------------------------------

void run_modes(const RunConfig& config) {
  const json& p = config.parameters;
  const double gamma = num(p, "gamma");
  const double eta = num(p, "eta");
  const auto mode = eigenmodes::solve_toroidal_mode(gamma, eta, num(p, "R_max"), count(p, "n"));

  io::CsvWriter csv(config.output_dir / "mode_profile.csv", {"r", "B"});
  for (std::size_t i = 0; i < mode.profile.size(); ++i) {
    csv.field(mode.profile.r[i]).field(mode.profile.values[i]);
    csv.end_row();
  }
  csv.close();

  const auto poloidal =
      eigenmodes::solve_poloidal_near_axis(num(p, "B0"), gamma, eta, num(p, "poloidal_r"));
  io::KeyValueBlock summary;
  summary.add("closed_form", mode.closed_form);
  summary.add("closed_form_max_deviation", mode.closed_form_max_deviation);
  summary.add("operator_residual", eigenmodes::toroidal_operator_residual(mode.profile, gamma, eta));
  summary.add("max_abs_B", mode.profile.max_abs());
  summary.add("constant_marginal_profile", mode.constant_marginal_profile);
  if (mode.constant_marginal_profile) {
    summary.add("note", std::string("gamma = 0 gives a constant toroidal profile; no radial oscillation"));
  }
  summary.add("poloidal_r", num(p, "poloidal_r"));
  summary.add("poloidal_B_theta", poloidal.value);
  summary.add("poloidal_near_axis_residual", poloidal.near_axis_residual);
  summary.add("poloidal_full_residual", poloidal.full_residual);
  summary.add("poloidal_approximation_parameter", poloidal.approximation_parameter);
  summary.add("poloidal_within_approximation", poloidal.within_approximation);
  io::write_text(config.output_dir / "mode_summary.txt", summary.str());
}

// ---------------------------------------------------------------------------

struct EvolveCase {
  evolution::EvolutionConfig config;
  std::string init;
  std::vector<std::size_t> modes;
  double amplitude = 1.0;
};

EvolveCase make_case(const json& c, double r_max, std::size_t n, std::size_t steps) {
  EvolveCase ec;
  ec.config.eta = num(c, "eta");
  ec.config.r_max = r_max;
  ec.config.n = n;
  ec.config.steps = steps;
  ec.config.boundary = evolution::parse_boundary(text(c, "boundary"));
  ec.config.component = evolution::parse_component(text(c, "component"));
  ec.init = text(c, "init");
  for (const auto& m : c.at("modes")) ec.modes.push_back(static_cast<std::size_t>(m.get<std::int64_t>()));
  ec.amplitude = num(c, "amplitude");
  return ec;
}

int bessel_order(evolution::Component component) {
  return component == evolution::Component::Toroidal ? 0 : 1;
}

eigenmodes::RadialProfile initial_profile(const EvolveCase& ec) {
  auto profile = eigenmodes::RadialProfile::uniform(ec.config.r_max, ec.config.n);
  const int order = bessel_order(ec.config.component);
  if (ec.init == "uniform") {
    for (std::size_t i = 0; i < profile.size(); ++i) {
      profile.values[i] = order == 0 ? ec.amplitude : ec.amplitude * profile.r[i];
    }
    return profile;
  }
  const std::size_t highest = *std::max_element(ec.modes.begin(), ec.modes.end());
  const auto zeros = eigenmodes::bessel_j_zeros(order, highest);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    double sum = 0.0;
    for (std::size_t m : ec.modes) {
      sum += eigenmodes::bessel_j(order, zeros[m - 1] * profile.r[i] / ec.config.r_max);
    }
    profile.values[i] = ec.amplitude * sum;
  }
  return profile;
}

struct EvolveOutcome {
  std::optional<double> measured_rate;
  std::optional<double> expected_rate;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double max_abs_change = 0.0;
};

EvolveOutcome run_case(const EvolveCase& ec, const fs::path& dir) {
  const auto init = initial_profile(ec);
  const auto result = evolution::evolve(ec.config, init);

  io::CsvWriter energy(dir / "energy.csv", {"step", "t", "energy"});
  for (std::size_t i = 0; i < result.energy.size(); ++i) {
    energy.field(i).field(result.times[i]).field(result.energy[i]);
    energy.end_row();
  }
  energy.close();
  const auto& final_profile = result.final_profile();
  io::CsvWriter profile(dir / "final_profile.csv", {"r", "B"});
  for (std::size_t i = 0; i < final_profile.size(); ++i) {
    profile.field(final_profile.r[i]).field(final_profile.values[i]);
    profile.end_row();
  }
  profile.close();

  EvolveOutcome out;
  out.initial_energy = result.energy.front();
  out.final_energy = result.energy.back();
  for (std::size_t i = 0; i < final_profile.size(); ++i) {
    out.max_abs_change = std::max(out.max_abs_change,
                                  std::abs(final_profile.values[i] - result.snapshots.front().values[i]));
  }
  const bool measurable =
      result.energy.size() >= 100 &&
      std::all_of(result.energy.begin(), result.energy.end(), [](double e) { return e > 0.0; });
  if (measurable) out.measured_rate = evolution::measure_growth_rate(result.energy, ec.config.dt);
  if (ec.init == "bessel" && ec.modes.size() == 1 &&
      ec.config.boundary == evolution::Boundary::DirichletZero) {
    const double z = eigenmodes::bessel_j_zeros(bessel_order(ec.config.component), ec.modes[0]).back();
    out.expected_rate = -ec.config.eta * z * z / (ec.config.r_max * ec.config.r_max);
  }
  return out;
}

void run_evolve(const RunConfig& config) {
  const json& p = config.parameters;
  EvolveCase ec = make_case(p, num(p, "R_max"), count(p, "n"), count(p, "steps"));
  ec.config.dt = num(p, "dt");
  ec.config.snapshot_every = count(p, "snapshot_every");
  const auto outcome = run_case(ec, config.output_dir);

  io::KeyValueBlock summary;
  summary.add("dt", ec.config.dt);
  summary.add("initial_energy", outcome.initial_energy);
  summary.add("final_energy", outcome.final_energy);
  summary.add("max_abs_change", outcome.max_abs_change);
  summary.add("measured_growth_rate", io::format_double(outcome.measured_rate));
  summary.add("expected_growth_rate", io::format_double(outcome.expected_rate));
  io::write_text(config.output_dir / "evolve_summary.txt", summary.str());
}

// ---------------------------------------------------------------------------

void write_regime(const RunConfig& config, const classifier::RegimeReport& report) {
  std::vector<std::string> header = {"gamma", "gamma_limit", "regime"};
  for (const auto& c : report.constraints) header.push_back(c.name);
  io::CsvWriter csv(config.output_dir / "classify.csv", header);
  csv.field(report.gamma).field(report.gamma_diffusionless_limit).field(classifier::to_string(report.regime));
  for (const auto& c : report.constraints) csv.field(c.value);
  csv.end_row();
  csv.close();

  io::KeyValueBlock block;
  block.add("gamma", report.gamma);
  block.add("gamma_limit", report.gamma_diffusionless_limit);
  block.add("regime", classifier::to_string(report.regime));
  for (const auto& c : report.constraints) block.add("residual." + c.name, c.value);
  for (std::size_t i = 0; i < report.flags.size(); ++i) {
    block.add("flag." + std::to_string(i), report.flags[i]);
  }
  if (report.poloidal_profile) {
    const auto& prof = *report.poloidal_profile;
    block.add("poloidal_profile_points", prof.size());
    block.add("poloidal_profile_r_max", prof.r.back());
    block.add("poloidal_profile_B_at_r_max", prof.values.back());
  }
  io::write_text(config.output_dir / "classify_report.txt", block.str());
}

void run_classify(const RunConfig& config) {
  const json& p = config.parameters;
  const std::string mode = text(p, "mode");
  if (mode == "filament") {
    classifier::FilamentConfig fc;
    fc.kappa0 = num(p, "kappa0");
    fc.tau0 = num(p, "tau0");
    fc.eta = num(p, "eta");
    fc.v_s = num(p, "v_s");
    fc.v_n = num(p, "v_n");
    fc.v_b = num(p, "v_b");
    fc.B_s = num(p, "B_s");
    fc.B_n = num(p, "B_n");
    fc.B_b = num(p, "B_b");
    fc.helical = p.at("helical").get<bool>();
    write_regime(config, classifier::filament_growth_rate(fc));
  } else if (mode == "thin_tube") {
    induction::FieldDecomposition field;
    field.B_s = num(p, "B_s");
    field.B_theta = num(p, "B_theta");
    field.v_s = num(p, "v_s");
    field.omega0 = num(p, "omega0");
    field.eta = num(p, "eta");
    field.r = num(p, "r");
    field.theta = num(p, "theta");
    field.s = num(p, "s");
    frenet::CurveGeometry curve{LinearProfile::constant(num(p, "kappa0")),
                                LinearProfile::constant(num(p, "tau0")), field.s, field.s};
    write_regime(config, classifier::classify_thin_tube(field, curve, field.eta));
  } else {
    const auto sol = classifier::thick_tube_constraints(num(p, "eta"), num(p, "theta"),
                                                        num(p, "r"), num(p, "c0"));
    io::CsvWriter csv(config.output_dir / "classify.csv",
                      {"v_s", "dkappa_ds", "c0", "lhs", "rhs", "residual", "rounded_residual", "degenerate"});
    csv.field(sol.v_s).field(sol.dkappa_ds).field(sol.kappa.offset).field(sol.lhs).field(sol.rhs)
        .field(sol.residual).field(sol.rounded_residual).field(std::string(sol.degenerate ? "true" : "false"));
    csv.end_row();
    csv.close();
    io::KeyValueBlock block;
    block.add("v_s", sol.v_s);
    block.add("dkappa_ds", sol.dkappa_ds);
    block.add("kappa_offset", sol.kappa.offset);
    block.add("residual", sol.residual);
    block.add("rounded_residual", sol.rounded_residual);
    block.add("degenerate", sol.degenerate);
    io::write_text(config.output_dir / "classify_report.txt", block.str());
  }
}

// ---------------------------------------------------------------------------

double grid_value(double lo, double hi, std::size_t i, std::size_t n) {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void run_growth_rate_sweep(const RunConfig& config) {
  const json& p = config.parameters;
  const std::size_t n_tau = count(p, "n_tau");
  const std::size_t n_eta = count(p, "n_eta");
  io::CsvWriter csv(config.output_dir / "sweep.csv",
                    {"index", "tau0", "eta", "gamma", "gamma_limit", "regime"});
  std::size_t index = 0;
  for (std::size_t i = 0; i < n_tau; ++i) {
    for (std::size_t j = 0; j < n_eta; ++j) {
      classifier::FilamentConfig fc;
      fc.tau0 = grid_value(num(p, "tau_min"), num(p, "tau_max"), i, n_tau);
      fc.kappa0 = fc.tau0;
      fc.eta = grid_value(num(p, "eta_min"), num(p, "eta_max"), j, n_eta);
      fc.helical = true;
      const auto report = classifier::filament_growth_rate(fc);
      csv.field(index++).field(fc.tau0).field(fc.eta).field(report.gamma)
          .field(report.gamma_diffusionless_limit).field(classifier::to_string(report.regime));
      csv.end_row();
    }
  }
  csv.close();
}

void run_evolve_sweep(const RunConfig& config) {
  const json& p = config.parameters;
  const json& cases = p.at("cases");
  const double r_max = num(p, "R_max");
  const std::size_t n = count(p, "n");
  const double dr = r_max / static_cast<double>(n - 1);

  std::vector<EvolveCase> jobs;
  for (const auto& c : cases) {
    EvolveCase ec = make_case(c, r_max, n, count(p, "steps"));
    ec.config.dt = num(p, "dt_factor") * dr * dr / (ec.config.eta > 0.0 ? ec.config.eta : 1.0);
    jobs.push_back(std::move(ec));
  }

  std::vector<EvolveOutcome> outcomes(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      std::ostringstream dir;
      dir << "case_" << std::setw(3) << std::setfill('0') << i;
      try {
        outcomes[i] = run_case(jobs[i], config.output_dir / dir.str());
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(count(p, "workers"), jobs.size());
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  io::CsvWriter csv(config.output_dir / "sweep.csv",
                    {"case", "eta", "boundary", "component", "init", "dt", "measured_rate",
                     "expected_rate", "final_energy"});
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& c = jobs[i].config;
    csv.field(i).field(c.eta).field(evolution::to_string(c.boundary))
        .field(evolution::to_string(c.component)).field(jobs[i].init).field(c.dt)
        .field(outcomes[i].measured_rate).field(outcomes[i].expected_rate)
        .field(outcomes[i].final_energy);
    csv.end_row();
  }
  csv.close();
}

void run_sweep(const RunConfig& config) {
  if (text(config.parameters, "kind") == "growth_rate") {
    run_growth_rate_sweep(config);
  } else {
    run_evolve_sweep(config);
  }
}

}  // namespace

void execute(const RunConfig& config) {
  const std::string& cmd = config.subcommand;
  if (cmd == "curvature") {
    run_curvature(config);
  } else if (cmd == "frenet") {
    run_frenet(config);
  } else if (cmd == "constraints") {
    run_constraints(config);
  } else if (cmd == "modes") {
    run_modes(config);
  } else if (cmd == "evolve") {
    run_evolve(config);
  } else if (cmd == "classify") {
    run_classify(config);
  } else if (cmd == "sweep") {
    run_sweep(config);
  } else {
    throw ConfigError("subcommand", "subcommand: unknown subcommand '" + cmd + "'");
  }
  write_manifest(config);
}

int run(const RunConfig& config, std::ostream& diagnostics) {
  try {
    execute(config);
    return kSuccess;
  } catch (const ConfigError& e) {
    diagnostics << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const io::IoError& e) {
    diagnostics << "i/o error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const DomainError& e) {
    diagnostics << "domain error: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const std::invalid_argument& e) {
    diagnostics << "domain error: " << e.what() << "\n";
    return kDomainFailure;
  }
}

}  // namespace tubedyn::cli
