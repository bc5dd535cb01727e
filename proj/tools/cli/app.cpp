#include "app.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "lightsim/checks.hpp"
#include "lightsim/config.hpp"
#include "lightsim/errors.hpp"
#include "lightsim/report.hpp"
#include "lightsim/study.hpp"

#ifndef LIGHTSIM_VERSION
#define LIGHTSIM_VERSION "0.0.0"
#endif
#ifndef LIGHTSIM_DATA_DIR
#define LIGHTSIM_DATA_DIR "data"
#endif

namespace lightsim::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Failure carrying the machine-readable category printed in the error line.
class CliError : public Error {
 public:
  CliError(std::string kind, const std::string& message) : Error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw CliError("io", "cannot create output directory " + dir.string());
}

void write_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  if (!out || !(out << content)) throw CliError("io", "cannot write " + file.string());
}

std::string epw_path(const Location& loc) {
  const auto* epw = std::get_if<EpwWeather>(&loc.weather_source);
  return epw ? epw->path : std::string{};
}

void check_weather_files(const StudyConfig& config) {
  for (const auto& loc : config.locations) {
    const std::string path = epw_path(loc);
    if (!path.empty() && !fs::is_regular_file(path))
      throw CliError("weather", "weather file not found: " + path);
  }
}

StudyResult run_checked(const StudyConfig& config, const std::vector<std::string>& scenarios) {
  StudyResult study;
  try {
    study = run_study(config, scenarios);
  } catch (const ConfigError& e) {
    throw CliError("config", e.what());
  } catch (const Error& e) {
    throw CliError("weather", e.what());
  }
  if (!study.errors.empty()) throw CliError("simulation", study.errors.front());
  return study;
}

struct RunManifest {
  std::string command;
  std::string config_path;
  fs::path output_dir;
  std::vector<std::string> scenarios;
};

std::string sha_or_empty(const std::string& path) {
  return path.empty() ? std::string{} : sha256_file(path);
}

// Describes everything that determines the run, so no timestamps.
std::string manifest_json(const RunManifest& m, const StudyConfig& config,
                          const std::vector<std::string>& outputs) {
  json j;
  j["tool"] = "lightsim";
  j["version"] = LIGHTSIM_VERSION;
  j["command"] = m.command;
  j["config"] = m.config_path.empty() ? json(nullptr)
                                      : json{{"path", m.config_path}, {"sha256", sha256_file(m.config_path)}};
  json weather = json::array();
  for (const auto& loc : config.locations) {
    const std::string path = epw_path(loc);
    if (path.empty()) {
      weather.push_back({{"location", loc.name}, {"source", "clear-sky"}});
    } else {
      weather.push_back({{"location", loc.name}, {"path", path}, {"sha256", sha_or_empty(path)}});
    }
  }
  j["weather"] = weather;
  j["mode"] = std::string(to_string(config.simulation.mode));
  j["seed"] = config.simulation.seed;
  j["timestep_min"] = config.simulation.timestep.count();
  j["hold_time_min"] = config.simulation.hold_time.count();
  j["scenarios"] = m.scenarios;
  j["output_dir"] = m.output_dir.string();
  json files = json::array();
  for (const auto& name : outputs)
    files.push_back({{"file", name}, {"sha256", sha256_file((m.output_dir / name).string())}});
  j["outputs"] = files;
  return j.dump(2) + "\n";
}

std::vector<std::string> write_results(const fs::path& dir, const StudyResult& study) {
  std::ostringstream csv;
  write_results_csv(csv, study);
  write_file(dir / "results.csv", csv.str());
  std::ostringstream js;
  write_results_json(js, study);
  write_file(dir / "results.json", js.str());
  return {"results.csv", "results.json"};
}

struct SimulateOptions {
  std::string config;
  std::vector<std::string> weather;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> timestep;
  std::string scenarios;
  std::string out;
  unsigned threads = 0;
};

int simulate(const SimulateOptions& opt, std::ostream& out) {
  ConfigParseResult parsed;
  try {
    parsed = load_config(opt.config);
  } catch (const Error& e) {
    throw CliError("config", e.what());
  }
  if (!parsed.ok()) {
    std::string msg = opt.config + ": invalid config";
    for (const auto& v : parsed.violations) msg += "; " + v.path + ": " + v.message;
    throw CliError("config", msg);
  }
  StudyConfig config = std::move(*parsed.config);

  for (const auto& spec : opt.weather) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
      throw CliError("usage", "--weather expects <location>=<epw path>, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    auto it = std::find_if(config.locations.begin(), config.locations.end(),
                           [&](const Location& l) { return l.name == name; });
    if (it == config.locations.end()) throw CliError("config", "--weather names unknown location '" + name + "'");
    it->weather_source = EpwWeather{spec.substr(eq + 1)};
  }
  try {
    if (opt.mode) config.simulation.mode = parse_simulation_mode(*opt.mode);
    if (opt.seed) config.simulation.seed = *opt.seed;
    if (opt.timestep) {
      config.simulation.timestep = std::chrono::minutes(*opt.timestep);
      check_timestep(config.simulation.timestep);
    }
  } catch (const Error& e) {
    throw CliError("usage", e.what());
  }
  check_weather_files(config);

  const auto scenarios = split_list(opt.scenarios);
  const StudyResult study = run_checked(config, scenarios);

  const fs::path dir(opt.out);
  ensure_dir(dir);
  const auto outputs = write_results(dir, study);
  write_file(dir / "manifest.json", manifest_json({"simulate", opt.config, dir, scenarios}, config, outputs));
  out << "wrote " << study.rows.size() << " rows to " << (dir / "results.csv").string() << '\n';
  return kExitOk;
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("LIGHTSIM_DATA_DIR"); env && *env) return env;
  return LIGHTSIM_DATA_DIR;
}

int reproduce(const std::string& out_dir, const std::string& data_dir, std::ostream& out) {
  const fs::path data = data_dir.empty() ? default_data_dir() : fs::path(data_dir);
  StudyConfig config = default_study_config(data);
  check_weather_files(config);
  const StudyResult study = run_checked(config, {});

  const fs::path dir(out_dir);
  ensure_dir(dir);
  std::vector<std::string> outputs;
  try {
    outputs = write_figure_tables(dir, study);
  } catch (const Error& e) {
    throw CliError("io", e.what());
  }
  const auto results = write_results(dir, study);
  outputs.insert(outputs.end(), results.begin(), results.end());

  const auto checks = reproduction_checks(config, study);
  std::ostringstream csv;
  write_checks_csv(csv, checks);
  write_file(dir / "checks.csv", csv.str());
  outputs.push_back("checks.csv");
  write_file(dir / "manifest.json", manifest_json({"reproduce-paper", "", dir, {}}, config, outputs));

  for (const auto& c : checks) {
    out << (c.pass ? "pass " : "FAIL ") << c.id << "  " << c.description << ": " << c.computed
        << " (target " << c.target << ")\n";
  }
  const bool ok = all_pass(checks);
  out << (ok ? "all checks passed" : "some checks failed") << "; tables in " << dir.string() << '\n';
  return ok ? kExitOk : kExitChecksFailed;
}

int validate(const std::string& path, std::ostream& out) {
  ConfigParseResult parsed;
  try {
    parsed = load_config(path);
  } catch (const Error& e) {
    throw CliError("io", e.what());
  }
  if (parsed.ok()) {
    out << "OK\n";
    return kExitOk;
  }
  for (const auto& v : parsed.violations) out << v.path << ": " << v.message << '\n';
  return kExitInputError;
}

}  // namespace

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 unavailable");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return hex.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Annual lighting energy and economics of smart-home control scenarios", "lightsim"};
  app.set_version_flag("--version", LIGHTSIM_VERSION);
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the scenario sweep for a config file");
  simulate_cmd->add_option("--config", sim.config, "Study config (JSON)")->required();
  simulate_cmd->add_option("--weather", sim.weather, "Override a location's EPW file: <location>=<path>");
  simulate_cmd->add_option("--mode", sim.mode, "expected or stochastic");
  simulate_cmd->add_option("--seed", sim.seed, "Root seed for stochastic mode");
  simulate_cmd->add_option("--timestep", sim.timestep, "Timestep in minutes (must divide 30)");
  simulate_cmd->add_option("--scenarios", sim.scenarios, "Comma-separated scenario labels (default: all 15)");
  simulate_cmd->add_option("--threads", sim.threads, "Worker threads (0 = hardware concurrency)");
  simulate_cmd->add_option("--out", sim.out, "Output directory")->required();

  std::string repro_out;
  std::string repro_data;
  auto* reproduce_cmd = app.add_subcommand("reproduce-paper", "Run the two-city study and grade it");
  reproduce_cmd->add_option("--out", repro_out, "Output directory")->required();
  reproduce_cmd->add_option("--data-dir", repro_data, "Directory holding weather/ (default: LIGHTSIM_DATA_DIR)");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate-config", "Check a config file and list violations");
  validate_cmd->add_option("path", validate_path, "Config file")->required();

  // CLI11 parses a reversed argument vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << LIGHTSIM_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kExitInputError;
  }

  try {
    if (*simulate_cmd) return simulate(sim, out);
    if (*reproduce_cmd) return reproduce(repro_out, repro_data, out);
    if (*validate_cmd) return validate(validate_path, out);
  } catch (const CliError& e) {
    print_error(err, e.kind(), e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace lightsim::cli
