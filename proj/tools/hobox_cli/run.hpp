#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"

namespace hobox_cli {

using Cell = std::variant<long long, double, std::string, bool>;

/// One emitted table plus scalar notes that go into the header block.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> notes;
};

/// Failure reported by the library, carrying its status.
class ApiError : public std::runtime_error {
 public:
  ApiError(hobox_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  hobox_status status() const { return status_; }

 private:
  hobox_status status_;
};

/// Computes the dataset for cfg.command. Throws ConfigError or ApiError.
Dataset compute(const RunConfig& cfg);

void write_dataset(std::ostream& os, const RunConfig& cfg, const Dataset& data);

/// Full run: compute, write to cfg.out (or out), report failures on err as a
/// one-line JSON object. Returns the process exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// 0 ok, 2 invalid configuration, 3 numerical failure, 4 not converged.
int exit_code_for(hobox_status status);

}  // namespace hobox_cli
