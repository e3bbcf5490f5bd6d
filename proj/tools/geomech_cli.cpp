#include "geomech/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

void print_manifest(const geomech::RunManifest& m, bool as_json) {
  if (as_json) {
    std::cout << m.to_json().dump(2) << '\n';
    return;
  }
  for (const auto& c : m.checks)
    std::printf("%-24s %-4s value=%.3e tol=%.1e\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.value, c.tolerance);
  if (m.numerical_failure) std::printf("numerical failure: %s\n", m.failure_message.c_str());
  std::printf("%s (config %s)\n", m.pass() ? "PASS" : "FAIL", m.config_hash.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric classical and quantum mechanics scenario runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  double hbar = 1.0;
  bool as_json = false;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario JSON file")->required();
    sub->add_option("--seed", seed, "Override the RNG seed");
    sub->add_option("--hbar", hbar, "Override the reduced Planck constant");
    sub->add_flag("--json", as_json, "Print the manifest as JSON");
  };

  auto* run = app.add_subcommand("run", "Run a scenario and write its artifacts");
  add_run_flags(run);
  run->add_option("--out", out_dir, "Output directory");

  auto* check = app.add_subcommand("check", "Evaluate a scenario's checks without writing data files");
  add_run_flags(check);

  auto* list = app.add_subcommand("list", "List builtin scenarios");
  list->add_flag("--json", as_json, "Print as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list->parsed()) {
    const auto builtins = geomech::list_builtins();
    if (as_json) {
      auto arr = nlohmann::json::array();
      for (const auto& b : builtins) arr.push_back({{"name", b.name}, {"kind", b.kind}, {"dims", b.dims}});
      std::cout << arr.dump(2) << '\n';
    } else {
      for (const auto& b : builtins) std::printf("%-22s %-16s %s\n", b.name.c_str(), b.kind.c_str(), b.description.c_str());
    }
    return 0;
  }

  try {
    auto config = geomech::load_scenario(config_path);
    geomech::RunOptions options;
    auto* active = run->parsed() ? run : check;
    if (active->count("--seed") > 0) options.seed = seed;
    if (active->count("--hbar") > 0) options.hbar = hbar;
    if (run->parsed()) {
      options.out_dir = out_dir;
    } else {
      options.out_dir.clear();
      options.checks_only = true;
    }
    const auto manifest = geomech::run_scenario(std::move(config), options);
    print_manifest(manifest, as_json);
    return manifest.exit_code();
  } catch (const geomech::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
