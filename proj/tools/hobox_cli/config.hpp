#pragma once

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hobox/hobox.h"

namespace hobox_cli {

enum class Command { Spectrum, Oblique, Classify, Perturbation, Components, Coherence, Lanczos, Alpha, Variational, Sweep };
enum class Format { Csv, Json };
enum class SweepAxis { Omega, L, Beta };

struct RunConfig {
  Command command = Command::Spectrum;
  hobox_params params{1.0, 1.0, 4.0, std::numbers::pi / 2.0};
  int box_dim = 7;
  int mho_dim = 7;
  hobox_mho_strategy strategy = HOBOX_MHO_NODAL;
  double trunc_tol = 1e-12;
  double rel_tol = 1e-3;
  hobox_quadrature quadrature{32, 4};
  bool allow_nonconforming = false;
  std::string out;
  Format format = Format::Csv;

  int ref_dim = 400;
  // 0 selects the per-command default.
  int levels = 0;
  int state = 0;
  std::vector<int> indices{24, 26, 28};
  int k = 200;
  int expansion_dim = 200;
  std::vector<int> n_target{10, 50, 100};
  SweepAxis axis = SweepAxis::Beta;
  std::vector<double> values;
};

/// Invalid command line or configuration file; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseOutcome {
  RunConfig config;
  bool exit_now = false;  // --help or --version was handled
  int exit_code = 0;
};

/// Defaults, then the --config JSON file, then explicit flags.
ParseOutcome parse_command_line(int argc, const char* const* argv);

void apply_json(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

std::string command_name(Command c);
Command parse_command(const std::string& s);
std::string strategy_name(hobox_mho_strategy s);
hobox_mho_strategy parse_strategy(const std::string& s);
std::string axis_name(SweepAxis a);
SweepAxis parse_axis(const std::string& s);

}  // namespace hobox_cli
