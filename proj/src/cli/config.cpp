#include "tubedyn/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace tubedyn::cli {
namespace {

using nlohmann::json;

enum class Kind { Number, Integer, String, Boolean, Points, IntegerList, Cases };

struct ParamSpec {
  ParamSpec(std::string n, Kind k, json f, std::string d)
      : name(std::move(n)), kind(k), fallback(std::move(f)), doc(std::move(d)) {}

  std::string name;
  Kind kind = Kind::Number;
  json fallback;  // null: required, unless `derived`
  std::string doc;
  std::optional<double> min;
  bool min_exclusive = false;
  std::optional<double> max;
  std::vector<std::string> choices;
  bool derived = false;  // may stay null; computed when the run starts
};

using Schema = std::vector<ParamSpec>;

ParamSpec number(std::string name, json fallback, std::string doc) {
  return ParamSpec(std::move(name), Kind::Number, std::move(fallback), std::move(doc));
}

ParamSpec positive(std::string name, json fallback, std::string doc) {
  ParamSpec p = number(std::move(name), std::move(fallback), std::move(doc));
  p.min = 0.0;
  p.min_exclusive = true;
  return p;
}

ParamSpec non_negative(std::string name, json fallback, std::string doc) {
  ParamSpec p = number(std::move(name), std::move(fallback), std::move(doc));
  p.min = 0.0;
  return p;
}

ParamSpec integer(std::string name, json fallback, double min, std::string doc) {
  ParamSpec p{std::move(name), Kind::Integer, std::move(fallback), std::move(doc)};
  p.min = min;
  return p;
}

ParamSpec choice(std::string name, std::string fallback, std::vector<std::string> choices,
                 std::string doc) {
  ParamSpec p{std::move(name), Kind::String, fallback, std::move(doc)};
  p.choices = std::move(choices);
  return p;
}

ParamSpec boolean(std::string name, bool fallback, std::string doc) {
  return ParamSpec(std::move(name), Kind::Boolean, fallback, std::move(doc));
}

Schema curve_keys() {
  return {
      choice("kappa_profile", "constant", {"constant", "slow_dynamo"},
             "curvature profile: constant kappa0, or s/cos(profile_theta) + c0"),
      number("kappa0", 1.0, "constant curvature"),
      number("profile_theta", 0.0, "fixed poloidal angle of the slow-dynamo profile"),
      number("c0", 0.0, "integration constant of the slow-dynamo profile"),
  };
}

Schema append(Schema a, const Schema& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Schema evolve_case_schema() {
  return {
      non_negative("eta", 1.0, "diffusivity"),
      choice("boundary", "dirichlet", {"dirichlet", "neumann"}, "wall condition at R_max"),
      choice("component", "toroidal", {"toroidal", "poloidal"}, "radial operator"),
      choice("init", "bessel", {"bessel", "uniform"},
             "bessel: sum of J_m(z_k r/R_max) over `modes`; uniform: B = amplitude (toroidal) "
             "or amplitude r (poloidal)"),
      ParamSpec("modes", Kind::IntegerList, json::array({1}),
                "Bessel zero indices of the initial profile"),
      number("amplitude", 1.0, "initial amplitude"),
  };
}

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> table = [] {
    std::map<std::string, Schema> t;

    t["curvature"] = append(
        {
            choice("family", "thick", {"thin", "thick"}, "tube metric family"),
            ParamSpec("points", Kind::Points, json::array({json::array({0.5, 0.0, 0.0})}),
                      "explicit evaluation points [[r, theta, s], ...]"),
            integer("random_points", 0, 0, "extra seeded random points"),
            positive("r_min", 0.1, "random point radius lower bound"),
            positive("r_max", 2.0, "random point radius upper bound"),
            number("s_min", 0.0, "random point arclength lower bound"),
            number("s_max", 10.0, "random point arclength upper bound"),
            positive("h", 1e-3, "finite-difference step of the metric Hessian"),
        },
        curve_keys());

    t["frenet"] = append(
        {
            number("tau0", 0.0, "constant torsion"),
            number("s_begin", 0.0, "start of the arclength span"),
            number("s_end", 2.0 * std::numbers::pi, "end of the arclength span"),
            integer("steps", 10000, 1, "RK4 steps"),
            integer("output_every", 1, 1, "write every n-th frame (the last is always written)"),
        },
        curve_keys());

    t["constraints"] = append(
        {
            number("B_r", 0.0, "radial field"),
            number("B_theta", 0.0, "poloidal field"),
            number("B_s", 0.0, "toroidal field"),
            number("v_s", 0.0, "toroidal flow"),
            number("v_theta", 0.0, "poloidal flow"),
            number("v_n", 0.0, "normal flow"),
            number("v_b", 0.0, "binormal flow"),
            number("omega0", 0.0, "rigid vorticity"),
            number("gamma", 0.0, "growth rate"),
            number("dBtheta_ds", 0.0, "d_s B_theta"),
            number("dvtheta_ds", 0.0, "d_s v_theta"),
            non_negative("r", 1.0, "radius of the station"),
            number("theta", 0.0, "poloidal angle of the station"),
            number("s", 0.0, "arclength of the station"),
            number("tau0", 0.0, "constant torsion"),
        },
        curve_keys());

    t["modes"] = {
        number("gamma", nullptr, "growth rate"),
        positive("eta", nullptr, "diffusivity"),
        positive("R_max", 5.0, "outer radius"),
        integer("n", 201, 16, "grid points"),
        number("B0", 1.0, "near-axis poloidal amplitude"),
        non_negative("poloidal_r", 0.1, "radius for the near-axis poloidal solution"),
    };

    Schema evolve = {
        positive("R_max", 1.0, "outer radius"),
        integer("n", 101, 16, "grid points"),
        integer("steps", 10000, 1, "Euler steps"),
        integer("snapshot_every", 0, 0, "profile snapshot cadence (0: initial and final only)"),
    };
    ParamSpec dt = positive("dt", nullptr, "time step (default 0.2 dr^2 / max(eta, 1e-300), or 0.2 dr^2 for eta = 0)");
    dt.derived = true;
    evolve.push_back(dt);
    t["evolve"] = append(evolve, evolve_case_schema());

    t["classify"] = {
        choice("mode", "filament", {"thin_tube", "filament", "thick_tube"}, "which analysis"),
        number("kappa0", 0.0, "curvature"),
        number("tau0", 0.0, "torsion"),
        non_negative("eta", 0.0, "diffusivity"),
        number("v_s", 0.0, "toroidal flow"),
        number("v_n", 0.0, "normal flow"),
        number("v_b", 0.0, "binormal flow"),
        number("B_s", 0.0, "toroidal field"),
        number("B_n", 0.0, "normal field"),
        number("B_b", 0.0, "binormal field"),
        number("B_theta", 0.0, "poloidal field (thin_tube)"),
        number("omega0", 0.0, "rigid vorticity (thin_tube)"),
        boolean("helical", false, "helical filament, tau0 == kappa0 (filament)"),
        number("theta", 0.0, "poloidal angle (thin_tube, thick_tube)"),
        positive("r", 1.0, "radius (thin_tube, thick_tube)"),
        number("s", 0.0, "arclength (thin_tube)"),
        number("c0", 0.0, "curvature integration constant (thick_tube)"),
    };

    ParamSpec cases{"cases", Kind::Cases, json::array({json::object()}),
                    "evolve sweep cases, each with the keys of `evolve` cases "
                    "(eta, boundary, component, init, modes, amplitude)"};
    t["sweep"] = {
        choice("kind", "growth_rate", {"growth_rate", "evolve"},
               "growth_rate: filament formula on a (tau0, eta) grid; evolve: list of cases"),
        number("tau_min", -3.0, "grid lower torsion"),
        number("tau_max", 3.0, "grid upper torsion"),
        integer("n_tau", 50, 2, "torsion samples"),
        non_negative("eta_min", 0.0, "grid lower diffusivity"),
        non_negative("eta_max", 2.0, "grid upper diffusivity"),
        integer("n_eta", 50, 2, "diffusivity samples"),
        cases,
        positive("R_max", 1.0, "outer radius (evolve)"),
        integer("n", 101, 16, "grid points (evolve)"),
        integer("steps", 10000, 1, "Euler steps (evolve)"),
        positive("dt_factor", 0.2, "dt = dt_factor dr^2 / eta (evolve)"),
        integer("workers", 1, 1, "parallel workers (evolve)"),
    };
    return t;
  }();
  return table;
}

std::string line_prefix(const std::string& raw, const std::string& key) {
  if (raw.empty()) return "";
  const auto pos = raw.find("\"" + key + "\"");
  if (pos == std::string::npos) return "";
  const auto line = 1 + std::count(raw.begin(), raw.begin() + static_cast<long>(pos), '\n');
  return "line " + std::to_string(line) + ": ";
}

[[noreturn]] void fail(const std::string& raw, const std::string& path, const std::string& key,
                       const std::string& reason) {
  throw ConfigError(path, line_prefix(raw, key) + path + ": " + reason);
}

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::Number: return "number";
    case Kind::Integer: return "integer";
    case Kind::String: return "string";
    case Kind::Boolean: return "boolean";
    case Kind::Points: return "list of [r, theta, s]";
    case Kind::IntegerList: return "list of integers";
    case Kind::Cases: return "list of objects";
  }
  return "?";
}

void check_range(const std::string& raw, const std::string& path, const ParamSpec& spec,
                 double v) {
  if (!std::isfinite(v)) fail(raw, path, spec.name, "must be finite");
  if (spec.min) {
    const bool bad = spec.min_exclusive ? !(v > *spec.min) : !(v >= *spec.min);
    if (bad) {
      std::ostringstream os;
      os << "out of range: " << v << " must be " << (spec.min_exclusive ? "> " : ">= ")
         << *spec.min;
      fail(raw, path, spec.name, os.str());
    }
  }
  if (spec.max && v > *spec.max) {
    std::ostringstream os;
    os << "out of range: " << v << " must be <= " << *spec.max;
    fail(raw, path, spec.name, os.str());
  }
}

json validate_object(const std::string& raw, const std::string& prefix, const Schema& schema,
                     const json& given);

json validate_value(const std::string& raw, const std::string& path, const ParamSpec& spec,
                    const json& v) {
  switch (spec.kind) {
    case Kind::Number:
      if (!v.is_number()) fail(raw, path, spec.name, "expected a number");
      check_range(raw, path, spec, v.get<double>());
      return v.get<double>();
    case Kind::Integer: {
      if (!v.is_number_integer()) fail(raw, path, spec.name, "expected an integer");
      const auto i = v.get<std::int64_t>();
      check_range(raw, path, spec, static_cast<double>(i));
      return i;
    }
    case Kind::String: {
      if (!v.is_string()) fail(raw, path, spec.name, "expected a string");
      const auto s = v.get<std::string>();
      if (!spec.choices.empty() &&
          std::find(spec.choices.begin(), spec.choices.end(), s) == spec.choices.end()) {
        std::string allowed;
        for (const auto& c : spec.choices) allowed += (allowed.empty() ? "" : "|") + c;
        fail(raw, path, spec.name, "'" + s + "' is not one of " + allowed);
      }
      return s;
    }
    case Kind::Boolean:
      if (!v.is_boolean()) fail(raw, path, spec.name, "expected true or false");
      return v;
    case Kind::Points: {
      if (!v.is_array()) fail(raw, path, spec.name, "expected " + kind_name(spec.kind));
      json out = json::array();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const json& p = v[i];
        const std::string item = path + "[" + std::to_string(i) + "]";
        if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
            !p[2].is_number()) {
          fail(raw, item, spec.name, "expected [r, theta, s]");
        }
        for (const auto& c : p) {
          if (!std::isfinite(c.get<double>())) fail(raw, item, spec.name, "must be finite");
        }
        if (p[0].get<double>() < 0.0) fail(raw, item, spec.name, "out of range: r must be >= 0");
        out.push_back(json::array({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()}));
      }
      return out;
    }
    case Kind::IntegerList: {
      if (!v.is_array() || v.empty()) fail(raw, path, spec.name, "expected a non-empty list of integers");
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer() || v[i].get<std::int64_t>() < 1) {
          fail(raw, path + "[" + std::to_string(i) + "]", spec.name, "expected an integer >= 1");
        }
      }
      return v;
    }
    case Kind::Cases: {
      if (!v.is_array() || v.empty()) fail(raw, path, spec.name, "expected a non-empty list of objects");
      json out = json::array();
      for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(validate_object(raw, path + "[" + std::to_string(i) + "]",
                                      evolve_case_schema(), v[i]));
      }
      return out;
    }
  }
  return v;
}

json validate_object(const std::string& raw, const std::string& prefix, const Schema& schema,
                     const json& given) {
  if (!given.is_object()) fail(raw, prefix, prefix, "expected an object");
  for (const auto& [key, value] : given.items()) {
    const bool known = std::any_of(schema.begin(), schema.end(),
                                   [&](const ParamSpec& s) { return s.name == key; });
    if (!known) fail(raw, prefix + "." + key, key, "unknown key");
  }
  json out = json::object();
  for (const auto& spec : schema) {
    const std::string path = prefix + "." + spec.name;
    if (given.contains(spec.name) && !(spec.derived && given[spec.name].is_null())) {
      out[spec.name] = validate_value(raw, path, spec, given[spec.name]);
    } else if (!spec.fallback.is_null()) {
      out[spec.name] = validate_value(raw, path, spec, spec.fallback);
    } else if (spec.derived) {
      out[spec.name] = nullptr;
    } else {
      fail(raw, path, spec.name, "missing required key");
    }
  }
  return out;
}

json parse_assignment_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return text;
  }
}

// Values that depend on other values, filled in once everything else is valid.
void materialize_derived(const std::string& subcommand, json& params) {
  if (subcommand == "evolve" && params["dt"].is_null()) {
    const double dr = params["R_max"].get<double>() /
                      static_cast<double>(params["n"].get<std::int64_t>() - 1);
    const double eta = params["eta"].get<double>();
    params["dt"] = eta > 0.0 ? 0.2 * dr * dr / eta : 0.2 * dr * dr;
  }
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"curvature", "frenet", "constraints", "modes",
                                                 "evolve",    "classify", "sweep"};
  return names;
}

json RunConfig::to_json() const {
  json out = json::object();
  out["subcommand"] = subcommand;
  out["seed"] = seed;
  out["output_dir"] = output_dir.string();
  out["parameters"] = parameters;
  return out;
}

RunConfig validate_config(const std::string& raw, const Overrides& overrides) {
  json doc = json::object();
  const bool blank = std::all_of(raw.begin(), raw.end(), [](unsigned char c) { return std::isspace(c); });
  if (!blank) {
    try {
      doc = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ConfigError("", std::string("config parse error: ") + e.what());
    }
  }
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (key != "subcommand" && key != "seed" && key != "output_dir" && key != "parameters") {
      fail(raw, key, key, "unknown key");
    }
  }

  RunConfig cfg;
  if (doc.contains("subcommand")) {
    if (!doc["subcommand"].is_string()) fail(raw, "subcommand", "subcommand", "expected a string");
    cfg.subcommand = doc["subcommand"].get<std::string>();
  }
  if (overrides.subcommand) cfg.subcommand = *overrides.subcommand;
  if (cfg.subcommand.empty()) throw ConfigError("subcommand", "subcommand: missing required key");
  if (!schemas().contains(cfg.subcommand)) {
    fail(raw, "subcommand", "subcommand", "unknown subcommand '" + cfg.subcommand + "'");
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail(raw, "seed", "seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (overrides.seed) cfg.seed = *overrides.seed;

  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) fail(raw, "output_dir", "output_dir", "expected a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;

  json params = doc.contains("parameters") ? doc["parameters"] : json::object();
  if (!params.is_object()) fail(raw, "parameters", "parameters", "expected an object");
  for (const auto& assignment : overrides.assignments) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError(assignment, "--set expects name=value, got '" + assignment + "'");
    }
    params[assignment.substr(0, eq)] = parse_assignment_value(assignment.substr(eq + 1));
  }

  cfg.parameters = validate_object(raw, "parameters", schemas().at(cfg.subcommand), params);
  materialize_derived(cfg.subcommand, cfg.parameters);
  return cfg;
}

std::string describe_parameters(const std::string& subcommand) {
  const auto it = schemas().find(subcommand);
  if (it == schemas().end()) return "";
  std::ostringstream os;
  for (const auto& spec : it->second) {
    os << "  " << spec.name << " (" << kind_name(spec.kind);
    if (spec.fallback.is_null()) {
      os << (spec.derived ? ", derived" : ", required");
    } else {
      os << ", default " << spec.fallback.dump();
    }
    os << "): " << spec.doc << "\n";
  }
  return os.str();
}

}  // namespace tubedyn::cli
