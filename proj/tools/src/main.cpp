#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "sefield/errors.hpp"

#ifndef SEFIELD_VERSION
#define SEFIELD_VERSION "unknown"
#endif

namespace {

using sefield::cli::Command;
using sefield::cli::Params;
using json = nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code_for(const sefield::Error& e) {
  switch (e.kind()) {
    case sefield::ErrorKind::domain:
    case sefield::ErrorKind::size:
    case sefield::ErrorKind::config:
      return kExitConfig;
    case sefield::ErrorKind::numeric:
      return kExitNumeric;
    case sefield::ErrorKind::input:
    case sefield::ErrorKind::io:
      return kExitIo;
  }
  return 1;
}

// Bare key=value tokens become --key=value.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int k = 1; k < argc; ++k) {
    std::string a = argv[k];
    if (k > 1 && !a.empty() && a[0] != '-' && a.find('=') != std::string::npos) a = "--" + a;
    out.push_back(std::move(a));
  }
  return out;
}

// File settings go first so later command-line flags replace them.
void splice_config(std::vector<std::string>& args) {
  for (std::size_t k = 1; k < args.size(); ++k) {
    std::string path;
    std::size_t width = 0;
    if (args[k] == "--config" && k + 1 < args.size()) {
      path = args[k + 1];
      width = 2;
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      width = 1;
    } else {
      continue;
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(k), args.begin() + static_cast<std::ptrdiff_t>(k + width));
    std::vector<std::string> from_file;
    for (const auto& [key, value] : sefield::cli::read_config_file(path)) from_file.push_back("--" + key + "=" + value);
    args.insert(args.begin() + 1, from_file.begin(), from_file.end());
    return;
  }
}

int execute(const Command& cmd, const Params& params, const std::string& out) {
  auto result = cmd.run(params);
  if (out == "-") {
    std::cout << result.table.render();
    return result.exit_code;
  }
  result.table.write(out);
  json side;
  side["tool"] = "sefield";
  side["version"] = SEFIELD_VERSION;
  side["subcommand"] = cmd.name;
  side["config"] = params.values;
  if (params.has("seed")) side["seed"] = params.seed();
  side["columns"] = cmd.columns;
  side["rows"] = result.table.size();
  side["csv"] = out;
  side["result"] = result.extra;
  const std::string path = out + ".json";
  std::ofstream f(path);
  if (!(f << side.dump(2) << '\n')) throw sefield::IoError("cannot write " + path);
  return result.exit_code;
}

int replay(const std::string& sidecar, std::string out) {
  std::ifstream f(sidecar);
  if (!f) throw sefield::IoError("cannot read " + sidecar);
  json side;
  try {
    f >> side;
  } catch (const json::exception& e) {
    throw sefield::InputError("sidecar " + sidecar + ": " + e.what());
  }
  if (!side.contains("subcommand") || !side.contains("config"))
    throw sefield::InputError("sidecar " + sidecar + ": missing subcommand or config");
  const auto name = side["subcommand"].get<std::string>();
  const Command* cmd = sefield::cli::find_command(name);
  if (!cmd) throw sefield::ConfigError("subcommand: unknown '" + name + "'");
  Params p;
  p.values = side["config"].get<std::map<std::string, std::string>>();
  if (out.empty()) out = side.value("csv", name + ".csv");
  return execute(*cmd, p, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-of-effects Gaussian field experiments"};
  app.set_version_flag("--version", std::string(SEFIELD_VERSION));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::string> outs;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  for (const auto& cmd : sefield::cli::commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->footer("CSV columns: " + cmd.columns);
    auto& store = raw[cmd.name];
    for (const auto& o : cmd.options) {
      auto& slot = store[o.key];
      auto* opt = sub->add_option("--" + o.key, slot, o.help);
      if (!o.fallback.empty()) opt->default_str(o.fallback);
      opts[cmd.name][o.key] = opt;
    }
    sub->add_option("--out", outs[cmd.name], "CSV path ('-' for stdout; sidecar at PATH.json)");
    sub->add_option("--config")->description("flat key=value file; flags override it");
  }
  std::string sidecar, replay_out;
  auto* rp = app.add_subcommand("replay", "re-run an experiment from its JSON sidecar");
  rp->add_option("--sidecar", sidecar, "sidecar path")->required();
  rp->add_option("--out", replay_out, "CSV path (default: the recorded one)");

  try {
    auto args = normalize_args(argc, argv);
    splice_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const sefield::Error& e) {
    std::cerr << "sefield: " << e.what() << '\n';
    return exit_code_for(e);
  }

  try {
    if (rp->parsed()) return replay(sidecar, replay_out);
    for (const auto& cmd : sefield::cli::commands()) {
      if (!app.got_subcommand(cmd.name)) continue;
      Params p;
      for (const auto& o : cmd.options) {
        if (opts[cmd.name][o.key]->count() > 0)
          p.values[o.key] = raw[cmd.name][o.key];
        else if (!o.fallback.empty())
          p.values[o.key] = o.fallback;
      }
      const auto& out = outs[cmd.name].empty() ? cmd.name + ".csv" : outs[cmd.name];
      return execute(cmd, p, out);
    }
  } catch (const sefield::Error& e) {
    std::cerr << "sefield: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "sefield: " << e.what() << '\n';
    return 1;
  }
  return kExitConfig;
}
