#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <thread>

#include "airybvp/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::mutex io_mutex;

int run_one(const std::filesystem::path& config, const std::filesystem::path& out_dir) {
  try {
    airy::run_scenario_file(config, out_dir);
    std::lock_guard lock(io_mutex);
    std::cout << config.string() << ": wrote " << out_dir.string() << '\n';
    return 0;
  } catch (const airy::ConfigError& e) {
    std::lock_guard lock(io_mutex);
    std::cerr << "config error: " << config.string();
    if (e.line() > 0) std::cerr << ':' << e.line();
    std::cerr << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const airy::Error& e) {
    std::lock_guard lock(io_mutex);
    std::cerr << "numerical failure [" << e.module() << "] " << config.string() << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::lock_guard lock(io_mutex);
    std::cerr << "numerical failure [runtime] " << config.string() << ": " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral decomposition solver for the Airy equation u_t + u_xxx = 0 on [0,1]"};
  app.require_subcommand(1);
  long seed = 0;
  app.add_option("--seed", seed, "Reserved; accepted for interface stability, has no effect");

  auto* run = app.add_subcommand("run", "Run one or more scenario config files");
  std::vector<std::string> configs;
  std::string out_dir = "out";
  int jobs = 1;
  run->add_option("config", configs, "Scenario INI file(s)")->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir, "Output directory (one subdirectory per config when several are given)");
  run->add_option("--jobs", jobs, "Scenarios to run concurrently")->check(CLI::PositiveNumber);

  app.add_subcommand("list", "List boundary families, datum kinds and config keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (app.got_subcommand("list")) {
    airy::list_scenarios(std::cout);
    return 0;
  }

  std::vector<std::filesystem::path> outs;
  for (const auto& c : configs)
    outs.push_back(configs.size() == 1 ? std::filesystem::path(out_dir)
                                       : std::filesystem::path(out_dir) / std::filesystem::path(c).stem());

  std::vector<int> codes(configs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) codes[i] = run_one(configs[i], outs[i]);
  };
  const int threads = std::min<int>(jobs, static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return *std::max_element(codes.begin(), codes.end());
}
