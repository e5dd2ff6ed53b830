#include "tubedyn/classifier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace tubedyn::classifier {
namespace {

constexpr std::size_t kMarginalProfilePoints = 16;
constexpr double kCosineFloor = 1e-12;

std::string format(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::FastDynamo: return "FastDynamo";
    case Regime::SlowDynamo: return "SlowDynamo";
    case Regime::Marginal: return "Marginal";
    case Regime::Decaying: return "Decaying";
    case Regime::NonDynamo: return "NonDynamo";
  }
  return "Unknown";
}

Regime classify_regime(double gamma, double gamma_limit, bool structurally_forced) {
  if (structurally_forced) return Regime::NonDynamo;
  if (gamma < -kRegimeTolerance) return Regime::Decaying;
  if (gamma <= kRegimeTolerance) return Regime::Marginal;
  return gamma_limit > kRegimeTolerance ? Regime::FastDynamo : Regime::SlowDynamo;
}

double RegimeReport::residual(const std::string& name) const {
  for (const auto& c : constraints) {
    if (c.name == name) return c.value;
  }
  throw std::out_of_range("no residual named " + name);
}

RegimeReport classify_thin_tube(const induction::FieldDecomposition& field,
                                const frenet::CurveGeometry& curve, double eta) {
  if (!curve.untwisted()) throw std::invalid_argument("thin-tube classification needs tau = 0");
  if (!(eta >= 0.0)) throw std::invalid_argument("diffusivity must be >= 0");

  const double kappa = curve.kappa(field.s);
  RegimeReport report;
  report.gamma = 0.0;
  report.gamma_diffusionless_limit = 0.0;

  const double bs_vs_kappa = field.B_s * field.v_s * kappa;
  report.constraints.push_back({"Bs_vs_kappa", bs_vs_kappa});

  if (eta == 0.0) {
    // Residuals of the frame-component equations at the forced gamma = 0.
    induction::FieldDecomposition forced = field;
    forced.gamma = 0.0;
    const auto res = induction::thin_tube_residuals(forced, curve, field.theta);
    report.constraints.push_back({"thin_tube_r1", res.r1});
    report.constraints.push_back({"thin_tube_r2", res.r2});
    report.constraints.push_back({"thin_tube_r3", res.r3});
    report.regime = classify_regime(0.0, 0.0, field.B_s != 0.0);
    if (field.B_s == 0.0) {
      report.flags.push_back("B_s = 0: gamma B_s = 0 no longer forces gamma = 0");
    }
    if (bs_vs_kappa != 0.0) {
      report.flags.push_back("inconsistent configuration: B_s v_s kappa = " + format(bs_vs_kappa) +
                             " != 0");
    }
    return report;
  }

  // Diffusive thin tube: marginal solution gamma_1 = 0 with B_theta = B0 r near the axis.
  const double radius = field.r > 0.0 ? field.r : 1.0;
  const double b0 = field.r > 0.0 ? field.B_theta / field.r : 1.0;
  eigenmodes::RadialProfile profile =
      eigenmodes::RadialProfile::uniform(radius, kMarginalProfilePoints);
  bool valid = true;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto sol = eigenmodes::solve_poloidal_near_axis(b0, 0.0, eta, profile.r[i]);
    profile.values[i] = sol.value;
    valid = valid && sol.within_approximation;
  }
  report.poloidal_profile = std::move(profile);
  report.regime = classify_regime(0.0, 0.0);
  if (!valid) report.flags.push_back("near-axis approximation violated on the attached profile");
  return report;
}

RegimeReport filament_growth_rate(const FilamentConfig& config) {
  RegimeReport report;
  report.constraints.push_back({"flow_divergence", config.v_n * config.kappa0});
  if (config.v_n * config.kappa0 != 0.0) {
    report.flags.push_back("normal flow on a curved filament is compressible");
  }

  if (config.helical) {
    if (config.tau0 != config.kappa0) {
      throw std::invalid_argument("helical filament needs tau0 == kappa0");
    }
    const double tau0 = config.tau0;
    report.gamma = tau0 * (1.0 + config.eta * tau0);
    report.gamma_diffusionless_limit = tau0;
    report.regime = classify_regime(report.gamma, report.gamma_diffusionless_limit);
    if (config.kappa0 < 0.0) {
      report.flags.push_back(
          "claimed fast dynamo action for kappa0 < 0 without diffusion disagrees with the "
          "growth-rate formula, which gives gamma -> tau0 = " +
          format(tau0) + " < 0 as eta -> 0");
    }
    return report;
  }

  if (config.B_s != 0.0) {
    // gamma B_s = 0 with B_s present.
    report.gamma = 0.0;
    report.gamma_diffusionless_limit = 0.0;
    report.regime = classify_regime(0.0, 0.0);
    const double normal_balance = config.v_s * config.tau0 * (config.B_n + config.B_b);
    report.constraints.push_back({"vs_tau_Bn_plus_Bb", normal_balance});
    report.constraints.push_back({"Bn_plus_Bb", config.B_n + config.B_b});
    if (normal_balance != 0.0) {
      report.flags.push_back("v_s tau != 0 requires B_n = -B_b");
    }
    return report;
  }

  report.gamma = config.v_s * config.tau0;
  report.gamma_diffusionless_limit = report.gamma;
  report.regime = classify_regime(report.gamma, report.gamma_diffusionless_limit);
  if (config.v_s == 0.0) {
    report.flags.push_back("poloidal flow alone (v_s = 0) cannot drive dynamo action");
  }
  return report;
}

ThickTubeConstraintSolution thick_tube_constraints(double eta, double theta, double r,
                                                   double c0) {
  const double c = std::cos(theta);
  if (std::abs(c) < kCosineFloor) {
    throw DomainError("thick-tube constraint is singular for cos(theta) = 0");
  }
  if (!(eta >= 0.0)) throw std::invalid_argument("diffusivity must be >= 0");
  if (!(r > 0.0)) throw std::invalid_argument("thick-tube constraint needs r > 0");

  ThickTubeConstraintSolution sol;
  sol.v_s = eta * r;
  sol.dkappa_ds = 1.0 / c;
  sol.kappa = {c0, sol.dkappa_ds};
  sol.lhs = sol.v_s / (r * c);
  sol.rhs = eta * sol.dkappa_ds;
  sol.rounded_residual = sol.lhs - sol.rhs;

  // v_s = eta r and dkappa/ds = 1/c are exact as rationals, so the identity
  // holds exactly; doubles only round the final quotients.
  using Q = boost::multiprecision::cpp_rational;
  const Q qeta(eta), qr(r), qc(c);
  const Q exact_vs = qeta * qr;
  const Q exact_dk = Q(1) / qc;
  sol.residual = static_cast<double>(exact_vs / (qr * qc) - qeta * exact_dk);
  sol.degenerate = eta == 0.0;
  return sol;
}

}  // namespace tubedyn::classifier
