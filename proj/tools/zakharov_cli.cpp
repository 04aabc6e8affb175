#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "zakharov/config.hpp"
#include "zakharov/experiments.hpp"

namespace zk = zakharov;

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral lab for the periodic Zakharov system"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> jobs;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "key = value config file or manifest.json");
  app.add_option("--jobs", jobs, "worker threads");
  app.add_option("--out", out_dir, "output directory (default: the config's output key)");
  app.add_option("--seed", seed, "random seed");

  // every config key doubles as an override flag; defaults shown in --help
  const zk::SimConfig defaults;
  std::map<std::string, std::string> overrides;
  std::map<std::string, std::string> default_text;
  {
    std::istringstream text(zk::format_config(defaults));
    std::string line;
    while (std::getline(text, line)) {
      const auto eq = line.find(" = ");
      default_text[line.substr(0, eq)] = line.substr(eq + 3);
    }
  }
  for (const auto& key : zk::config_keys()) {
    if (key == "seed" || key == "jobs" || key == "output") continue;
    app.add_option_function<std::string>(
           "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; }, "default: " + default_text[key])
        ->group("Config overrides");
  }

  std::string command;
  for (const auto& name : zk::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  zk::SimConfig cfg;
  try {
    if (!config_path.empty()) cfg = zk::load_config(config_path);
    for (const auto& [k, v] : overrides) zk::set_config_value(cfg, k, v);
    if (jobs) cfg.jobs = *jobs;
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.output = *out_dir;
    cfg.validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }

  const std::filesystem::path dir = cfg.output;
  try {
    const zk::StudyOutcome o = zk::run_command(command, cfg, dir);
    std::printf("%s\n", o.summary.c_str());
    return o.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream diag(dir / "diagnostics.txt");
    diag << command << ": " << e.what() << '\n';
    if (const auto* blow = dynamic_cast<const zk::BlowUpError*>(&e)) diag << "last_good_time: " << blow->last_good_time() << '\n';
    std::fprintf(stderr, "%s failed: %s\n", command.c_str(), e.what());
    return 3;
  }
}
