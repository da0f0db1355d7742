#include "config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

namespace hobox_cli {

namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::Spectrum, "spectrum"},       {Command::Oblique, "oblique"},
    {Command::Classify, "classify"},       {Command::Perturbation, "perturbation"},
    {Command::Components, "components"},   {Command::Coherence, "coherence"},
    {Command::Lanczos, "lanczos"},         {Command::Alpha, "alpha"},
    {Command::Variational, "variational"}, {Command::Sweep, "sweep"},
};

template <class T>
T get(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "unknown";
}

Command parse_command(const std::string& s) {
  for (const auto& [cmd, name] : kCommands)
    if (name == s) return cmd;
  throw ConfigError("unknown command '" + s + "'");
}

std::string strategy_name(hobox_mho_strategy s) {
  switch (s) {
    case HOBOX_MHO_POTENTIAL_WIDTH: return "potential-width";
    case HOBOX_MHO_NODAL: return "nodal";
    case HOBOX_MHO_BOUNDARY_ADJUSTED: return "boundary";
  }
  return "unknown";
}

hobox_mho_strategy parse_strategy(const std::string& s) {
  if (s == "potential-width") return HOBOX_MHO_POTENTIAL_WIDTH;
  if (s == "nodal") return HOBOX_MHO_NODAL;
  if (s == "boundary") return HOBOX_MHO_BOUNDARY_ADJUSTED;
  throw ConfigError("unknown strategy '" + s + "' (potential-width|nodal|boundary)");
}

std::string axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Omega: return "omega";
    case SweepAxis::L: return "L";
    case SweepAxis::Beta: return "beta";
  }
  return "unknown";
}

SweepAxis parse_axis(const std::string& s) {
  if (s == "omega") return SweepAxis::Omega;
  if (s == "L") return SweepAxis::L;
  if (s == "beta") return SweepAxis::Beta;
  throw ConfigError("unknown sweep axis '" + s + "' (omega|L|beta)");
}

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "command") cfg.command = parse_command(get<std::string>(v, key));
    else if (key == "m") cfg.params.m = get<double>(v, key);
    else if (key == "hbar") cfg.params.hbar = get<double>(v, key);
    else if (key == "omega") cfg.params.omega = get<double>(v, key);
    else if (key == "L") cfg.params.L = get<double>(v, key);
    else if (key == "box_dim") cfg.box_dim = get<int>(v, key);
    else if (key == "mho_dim") cfg.mho_dim = get<int>(v, key);
    else if (key == "strategy") cfg.strategy = parse_strategy(get<std::string>(v, key));
    else if (key == "trunc_tol") cfg.trunc_tol = get<double>(v, key);
    else if (key == "rel_tol") cfg.rel_tol = get<double>(v, key);
    else if (key == "quad_order") cfg.quadrature.order = get<int>(v, key);
    else if (key == "quad_panels") cfg.quadrature.panels = get<int>(v, key);
    else if (key == "allow_nonconforming") cfg.allow_nonconforming = get<bool>(v, key);
    else if (key == "out") cfg.out = get<std::string>(v, key);
    else if (key == "format") {
      const auto f = get<std::string>(v, key);
      if (f == "csv") cfg.format = Format::Csv;
      else if (f == "json") cfg.format = Format::Json;
      else throw ConfigError("unknown format '" + f + "' (csv|json)");
    } else if (key == "ref_dim") cfg.ref_dim = get<int>(v, key);
    else if (key == "levels") cfg.levels = get<int>(v, key);
    else if (key == "state") cfg.state = get<int>(v, key);
    else if (key == "indices") cfg.indices = get<std::vector<int>>(v, key);
    else if (key == "k") cfg.k = get<int>(v, key);
    else if (key == "expansion_dim") cfg.expansion_dim = get<int>(v, key);
    else if (key == "n_target") cfg.n_target = v.is_array() ? get<std::vector<int>>(v, key) : std::vector<int>{get<int>(v, key)};
    else if (key == "axis") cfg.axis = parse_axis(get<std::string>(v, key));
    else if (key == "values") cfg.values = get<std::vector<double>>(v, key);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = command_name(cfg.command);
  j["m"] = cfg.params.m;
  j["hbar"] = cfg.params.hbar;
  j["omega"] = cfg.params.omega;
  j["L"] = cfg.params.L;
  j["box_dim"] = cfg.box_dim;
  j["mho_dim"] = cfg.mho_dim;
  j["strategy"] = strategy_name(cfg.strategy);
  j["trunc_tol"] = cfg.trunc_tol;
  j["rel_tol"] = cfg.rel_tol;
  j["quad_order"] = cfg.quadrature.order;
  j["quad_panels"] = cfg.quadrature.panels;
  j["allow_nonconforming"] = cfg.allow_nonconforming;
  j["format"] = cfg.format == Format::Csv ? "csv" : "json";
  j["ref_dim"] = cfg.ref_dim;
  j["levels"] = cfg.levels;
  j["state"] = cfg.state;
  j["indices"] = cfg.indices;
  j["k"] = cfg.k;
  j["expansion_dim"] = cfg.expansion_dim;
  j["n_target"] = cfg.n_target;
  j["axis"] = axis_name(cfg.axis);
  j["values"] = cfg.values;
  return j;
}

ParseOutcome parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Harmonic oscillator in a box: spectra, oblique bases and mixing diagnostics", "hobox-cli"};
  app.set_version_flag("--version", std::string(hobox_version()));

  RunConfig flag;
  std::string command;
  std::string strategy;
  std::string format;
  std::string axis;
  std::string config_path;
  // Each entry copies one flag's value into the resolved config when given.
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters;
  auto bind = [&](CLI::Option* opt, std::function<void(RunConfig&)> set) { setters.emplace_back(opt, std::move(set)); };

  std::string names;
  for (const auto& [cmd, name] : kCommands) names += (names.empty() ? "" : "|") + name;
  auto* cmd_opt = app.add_option("command", command, names);
  bind(cmd_opt, [&](RunConfig& c) { c.command = parse_command(command); });

  bind(app.add_option("--m", flag.params.m, "mass"), [&](RunConfig& c) { c.params.m = flag.params.m; });
  bind(app.add_option("--hbar", flag.params.hbar, "reduced Planck constant"),
       [&](RunConfig& c) { c.params.hbar = flag.params.hbar; });
  bind(app.add_option("--omega", flag.params.omega, "oscillator frequency"),
       [&](RunConfig& c) { c.params.omega = flag.params.omega; });
  bind(app.add_option("--L", flag.params.L, "box half-width"), [&](RunConfig& c) { c.params.L = flag.params.L; });
  bind(app.add_option("--box-dim", flag.box_dim, "box functions in the oblique basis"),
       [&](RunConfig& c) { c.box_dim = flag.box_dim; });
  bind(app.add_option("--mho-dim", flag.mho_dim, "modified oscillator functions in the oblique basis"),
       [&](RunConfig& c) { c.mho_dim = flag.mho_dim; });
  bind(app.add_option("--strategy", strategy, "potential-width|nodal|boundary"),
       [&](RunConfig& c) { c.strategy = parse_strategy(strategy); });
  bind(app.add_option("--trunc-tol", flag.trunc_tol, "relative overlap eigenvalue cutoff"),
       [&](RunConfig& c) { c.trunc_tol = flag.trunc_tol; });
  bind(app.add_option("--rel-tol", flag.rel_tol, "relative tolerance for the alpha study"),
       [&](RunConfig& c) { c.rel_tol = flag.rel_tol; });
  bind(app.add_option("--quad-order", flag.quadrature.order, "Gauss-Legendre order per panel"),
       [&](RunConfig& c) { c.quadrature.order = flag.quadrature.order; });
  bind(app.add_option("--quad-panels", flag.quadrature.panels, "minimum number of panels"),
       [&](RunConfig& c) { c.quadrature.panels = flag.quadrature.panels; });
  bind(app.add_flag("--allow-nonconforming", flag.allow_nonconforming, "accept functions not vanishing at the walls"),
       [&](RunConfig& c) { c.allow_nonconforming = flag.allow_nonconforming; });
  bind(app.add_option("--out", flag.out, "output file (default stdout)"), [&](RunConfig& c) { c.out = flag.out; });
  bind(app.add_option("--format", format, "csv|json"), [&](RunConfig& c) {
    if (format == "csv") c.format = Format::Csv;
    else if (format == "json") c.format = Format::Json;
    else throw ConfigError("unknown format '" + format + "' (csv|json)");
  });
  app.add_option("--config", config_path, "JSON configuration file; flags override it");
  bind(app.add_option("--ref-dim", flag.ref_dim, "dimension of the box reference"),
       [&](RunConfig& c) { c.ref_dim = flag.ref_dim; });
  bind(app.add_option("--levels", flag.levels, "number of levels to report"),
       [&](RunConfig& c) { c.levels = flag.levels; });
  bind(app.add_option("--state", flag.state, "state index (0-based)"), [&](RunConfig& c) { c.state = flag.state; });
  bind(app.add_option("--indices", flag.indices, "state indices for coherence")->delimiter(','),
       [&](RunConfig& c) { c.indices = flag.indices; });
  bind(app.add_option("--k", flag.k, "Lanczos iterations"), [&](RunConfig& c) { c.k = flag.k; });
  bind(app.add_option("--expansion-dim", flag.expansion_dim, "box functions spanning the Lanczos space"),
       [&](RunConfig& c) { c.expansion_dim = flag.expansion_dim; });
  bind(app.add_option("--n-target", flag.n_target, "target levels for the alpha study")->delimiter(','),
       [&](RunConfig& c) { c.n_target = flag.n_target; });
  bind(app.add_option("--axis", axis, "sweep axis omega|L|beta"), [&](RunConfig& c) { c.axis = parse_axis(axis); });
  bind(app.add_option("--values", flag.values, "sweep values")->delimiter(','),
       [&](RunConfig& c) { c.values = flag.values; });

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    outcome.exit_now = true;
    outcome.exit_code = app.exit(e);
    return outcome;
  } catch (const CLI::CallForVersion& e) {
    outcome.exit_now = true;
    outcome.exit_code = app.exit(e);
    return outcome;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file " + config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file " + config_path + ": " + e.what());
    }
    apply_json(cfg, j);
  }
  for (auto& [opt, set] : setters)
    if (opt->count() > 0) set(cfg);
  if (command.empty() && config_path.empty()) throw ConfigError("missing command (" + names + ")");
  outcome.config = cfg;
  return outcome;
}

}  // namespace hobox_cli
