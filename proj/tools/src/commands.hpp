#pragma once

#include <functional>
#include <string>
#include <vector>

#include "csv.hpp"
#include "json.hpp"
#include "params.hpp"

namespace sefield::cli {

struct OptionSpec {
  std::string key;
  std::string fallback;  // empty: no default
  std::string help;
};

struct CommandResult {
  CsvTable table;
  nlohmann::json extra = nlohmann::json::object();
  int exit_code = 0;
};

struct Command {
  std::string name;
  std::string help;
  std::string columns;  // documented CSV header
  std::vector<OptionSpec> options;
  std::function<CommandResult(const Params&)> run;
};

const std::vector<Command>& commands();
const Command* find_command(const std::string& name);

}  // namespace sefield::cli
