#include <iostream>

#include "config.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  hobox_cli::ParseOutcome parsed;
  try {
    parsed = hobox_cli::parse_command_line(argc, argv);
  } catch (const hobox_cli::ConfigError& e) {
    nlohmann::json j;
    j["error"] = {{"category", "invalid_config"}, {"message", e.what()}, {"exit_code", 2}};
    std::cerr << j.dump() << '\n';
    return 2;
  }
  if (parsed.exit_now) return parsed.exit_code;
  return hobox_cli::run(parsed.config, std::cout, std::cerr);
}
