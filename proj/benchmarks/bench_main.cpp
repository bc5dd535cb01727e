#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "lightsim/config.hpp"
#include "lightsim/engine.hpp"
#include "lightsim/study.hpp"
#include "lightsim/weather.hpp"

using namespace lightsim;

namespace {

const std::filesystem::path kData = LIGHTSIM_BENCH_DATA_DIR;

std::string stuttgart_text() {
  std::ifstream in(kData / "weather" / "DEU_Stuttgart_synthetic.epw", std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_ParseEpw(benchmark::State& state) {
  const auto text = stuttgart_text();
  for (auto _ : state) benchmark::DoNotOptimize(parse_epw_text(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseEpw)->Unit(benchmark::kMillisecond);

void BM_SimulateYear(benchmark::State& state) {
  SimulationConfig cfg;
  cfg.timestep = std::chrono::minutes(state.range(0));
  const auto records = parse_epw_text(stuttgart_text()).records;
  LocationCase lc;
  lc.house = default_house(Location{"Stuttgart", 48.68, 9.22, 1.0});
  lc.daylight = daylight_from_epw(records, cfg.clock());
  ControlFeatures f{DaylightMode::HarvestDim, OccupancyMode::MotionDetection};
  const Scenario s{scenario_id(f, ProfileId::Profile2), f, ProfileId::Profile2, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_cell(lc, s, cfg));
}
BENCHMARK(BM_SimulateYear)->Arg(30)->Arg(10)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FullStudy(benchmark::State& state) {
  auto cfg = default_study_config(kData);
  cfg.simulation.mode = state.range(0) ? SimulationMode::Stochastic : SimulationMode::Expected;
  for (auto _ : state) benchmark::DoNotOptimize(run_study(cfg, {}, 1));
}
BENCHMARK(BM_FullStudy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
