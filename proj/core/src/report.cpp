#include "lightsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <ostream>

#include "lightsim/errors.hpp"

namespace lightsim {

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) throw DomainError("non-finite value in report");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_optional(const std::optional<double>& value, int decimals) {
  return value ? format_fixed(*value, decimals) : std::string{};
}

namespace {

struct Column {
  std::string name;
  std::function<std::optional<double>(const ScenarioRow&)> value;
  int decimals;
};

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      {"energy_kWh", [](const ScenarioRow& r) { return std::optional(r.metrics.annual_energy_kwh); }, 2},
      {"cost_eur", [](const ScenarioRow& r) { return std::optional(r.metrics.annual_cost_eur); }, 2},
      {"capex_eur", [](const ScenarioRow& r) { return std::optional(r.metrics.capex_eur); }, 2},
      {"inflow_eur", [](const ScenarioRow& r) { return std::optional(r.metrics.annual_inflow_eur); }, 2},
      {"payback_yr", [](const ScenarioRow& r) { return r.metrics.payback_years; }, 2},
      {"npv_eur", [](const ScenarioRow& r) { return std::optional(r.metrics.npv_eur); }, 2},
      {"irr_pct",
       [](const ScenarioRow& r) {
         return r.metrics.irr ? std::optional(*r.metrics.irr * 100.0) : std::nullopt;
       },
       4},
      {"adi_eur", [](const ScenarioRow& r) { return std::optional(r.metrics.adi_eur); }, 2},
      {"co2_kg", [](const ScenarioRow& r) { return std::optional(r.metrics.emissions.co2_kg); }, 2},
      {"no2_g", [](const ScenarioRow& r) { return std::optional(r.metrics.emissions.no2_g); }, 2},
      {"so2_g", [](const ScenarioRow& r) { return std::optional(r.metrics.emissions.so2_g); }, 2},
      {"co_g", [](const ScenarioRow& r) { return std::optional(r.metrics.emissions.co_g); }, 2},
      {"ch4_g", [](const ScenarioRow& r) { return std::optional(r.metrics.emissions.ch4_g); }, 2},
  };
  return cols;
}

// Labels may contain spaces and '+', never commas or quotes, so no quoting.
void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

void write_table(const std::filesystem::path& file, const std::vector<std::string>& header,
                 const StudyResult& study,
                 const std::function<std::vector<std::string>(const ScenarioRow&)>& cells) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  write_row(out, header);
  for (const auto& row : study.rows) {
    std::vector<std::string> line = {row.location, row.scenario.id};
    auto rest = cells(row);
    line.insert(line.end(), rest.begin(), rest.end());
    write_row(out, line);
  }
  if (!out) throw Error("failed writing " + file.string());
}

double baseline_energy(const StudyResult& study, const std::string& location) {
  for (const auto& r : study.rows) {
    if (r.location == location && r.scenario.id == "Baseline") return r.energy.annual_energy_kwh;
  }
  return 0.0;
}

}  // namespace

const std::vector<std::string>& results_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : columns()) n.push_back(c.name);
    return n;
  }();
  return names;
}

void write_results_csv(std::ostream& out, const StudyResult& study) {
  std::vector<std::string> header = {"location", "scenario"};
  for (const auto& c : columns()) header.push_back(c.name);
  write_row(out, header);
  for (const auto& row : study.rows) {
    std::vector<std::string> cells = {row.location, row.scenario.id};
    for (const auto& c : columns()) cells.push_back(format_optional(c.value(row), c.decimals));
    write_row(out, cells);
  }
}

void write_results_json(std::ostream& out, const StudyResult& study) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : study.rows) {
    nlohmann::ordered_json j;
    j["location"] = row.location;
    j["scenario"] = row.scenario.id;
    for (const auto& c : columns()) {
      const auto text = format_optional(c.value(row), c.decimals);
      if (text.empty()) {
        j[c.name] = nullptr;
      } else {
        j[c.name] = std::stod(text);
      }
    }
    rows.push_back(j);
  }
  nlohmann::ordered_json doc;
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

std::vector<std::string> write_figure_tables(const std::filesystem::path& dir, const StudyResult& study) {
  std::filesystem::create_directories(dir);
  const auto f2 = [](double v) { return format_fixed(v, 2); };
  std::vector<std::string> names;
  auto table = [&](const std::string& name, std::vector<std::string> header,
                   std::function<std::vector<std::string>(const ScenarioRow&)> cells) {
    header.insert(header.begin(), {"location", "scenario"});
    write_table(dir / (name + ".csv"), header, study, cells);
    names.push_back(name + ".csv");
  };

  table("fig2_energy", {"energy_kWh", "saving_pct"}, [&](const ScenarioRow& r) {
    const double base = baseline_energy(study, r.location);
    const double saving = base > 0.0 ? 100.0 * (1.0 - r.energy.annual_energy_kwh / base) : 0.0;
    return std::vector<std::string>{f2(r.energy.annual_energy_kwh), format_fixed(saving, 4)};
  });
  table("fig3_cost", {"cost_eur", "cost_quarterly_window_eur", "cost_annual_window_eur"},
        [&](const ScenarioRow& r) {
          return std::vector<std::string>{f2(r.metrics.annual_cost_eur), f2(r.cost_quarterly_window_eur),
                                          f2(r.cost_annual_window_eur)};
        });
  table("fig4_payback", {"capex_eur", "inflow_eur", "payback_yr", "payback_net_of_bulbs_yr"},
        [&](const ScenarioRow& r) {
          return std::vector<std::string>{f2(r.metrics.capex_eur), f2(r.metrics.annual_inflow_eur),
                                          format_optional(r.metrics.payback_years, 2),
                                          format_optional(r.payback_net_of_bulbs_years, 2)};
        });
  table("fig5_npv", {"npv_eur"},
        [&](const ScenarioRow& r) { return std::vector<std::string>{f2(r.metrics.npv_eur)}; });
  table("fig6_irr", {"irr_pct"}, [&](const ScenarioRow& r) {
    return std::vector<std::string>{
        format_optional(r.metrics.irr ? std::optional(*r.metrics.irr * 100.0) : std::nullopt, 4)};
  });
  table("fig7_emissions", {"co2_kg", "no2_g", "so2_g", "co_g", "ch4_g"}, [&](const ScenarioRow& r) {
    const auto& e = r.metrics.emissions;
    return std::vector<std::string>{f2(e.co2_kg), f2(e.no2_g), f2(e.so2_g), f2(e.co_g), f2(e.ch4_g)};
  });
  table("fig8_adi", {"adi_eur"},
        [&](const ScenarioRow& r) { return std::vector<std::string>{f2(r.metrics.adi_eur)}; });
  return names;
}

void write_checks_csv(std::ostream& out, const std::vector<CheckResult>& checks) {
  out << "id,check,computed,target,result\n";
  for (const auto& c : checks) {
    out << c.id << ',' << c.description << ',' << c.computed << ',' << c.target << ','
        << (c.pass ? "pass" : "fail") << '\n';
  }
}

}  // namespace lightsim
