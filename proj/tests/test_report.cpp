#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lightsim/errors.hpp"
#include "lightsim/report.hpp"
#include "test_support.hpp"

using namespace lightsim;

namespace {

const StudyResult& small_study() {
  static const StudyResult r =
      run_study(default_study_config(testing_support::data_dir()), {"Baseline", "Sched 1st", "MD 2nd+DH"}, 1);
  return r;
}

std::vector<std::vector<std::string>> csv_cells(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(FormatFixed, RoundsAndDropsNegativeZero) {
  EXPECT_EQ(format_fixed(1.005, 1), "1.0");
  EXPECT_EQ(format_fixed(674.52, 2), "674.52");
  EXPECT_EQ(format_fixed(-0.001, 2), "0.00");
  EXPECT_EQ(format_fixed(-0.0, 2), "0.00");
  EXPECT_EQ(format_fixed(-0.5, 2), "-0.50");
  EXPECT_EQ(format_optional(std::nullopt, 2), "");
  EXPECT_THROW(format_fixed(std::numeric_limits<double>::quiet_NaN(), 2), DomainError);
  EXPECT_THROW(format_fixed(std::numeric_limits<double>::infinity(), 2), DomainError);
}

TEST(Results, RowsForEachLocationInFilterOrder) {
  const auto& s = small_study();
  ASSERT_EQ(s.rows.size(), 6u);
  EXPECT_TRUE(s.errors.empty());
  EXPECT_EQ(s.rows[0].location, "Algiers");
  EXPECT_EQ(s.rows[0].scenario.id, "Baseline");
  EXPECT_EQ(s.rows[3].location, "Stuttgart");
  EXPECT_EQ(s.weather.size(), 2u);
}

TEST(Results, CsvAndJsonCarryTheSameValues) {
  const auto& s = small_study();
  std::ostringstream csv, js;
  write_results_csv(csv, s);
  write_results_json(js, s);
  const auto rows = csv_cells(csv.str());
  const auto doc = nlohmann::json::parse(js.str());
  ASSERT_EQ(rows.size(), s.rows.size() + 1);
  ASSERT_EQ(doc["rows"].size(), s.rows.size());
  const auto& cols = results_columns();
  ASSERT_EQ(rows[0].size(), cols.size() + 2);
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = rows[i + 1];
    const auto& j = doc["rows"][i];
    ASSERT_EQ(r.size(), cols.size() + 2) << i;
    EXPECT_EQ(r[0], j["location"].get<std::string>());
    EXPECT_EQ(r[1], j["scenario"].get<std::string>());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (r[c + 2].empty()) {
        EXPECT_TRUE(j[cols[c]].is_null()) << cols[c];
      } else {
        EXPECT_DOUBLE_EQ(std::stod(r[c + 2]), j[cols[c]].get<double>()) << cols[c];
      }
    }
  }
}

TEST(Results, BaselineHasNoIrrAndZeroPayback) {
  std::ostringstream csv;
  write_results_csv(csv, small_study());
  const auto rows = csv_cells(csv.str());
  const auto& cols = results_columns();
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin()) + 2;
  };
  EXPECT_EQ(rows[1][1], "Baseline");
  EXPECT_EQ(rows[1][col("irr_pct")], "");
  EXPECT_EQ(rows[1][col("payback_yr")], "0.00");
  EXPECT_EQ(rows[1][col("energy_kWh")], "674.52");
  EXPECT_EQ(rows[2][col("energy_kWh")], "449.68");
}

TEST(Results, FigureTablesOneRowPerCell) {
  const auto dir = testing_support::scratch_dir("figures");
  const auto names = write_figure_tables(dir, small_study());
  ASSERT_EQ(names.size(), 7u);
  for (const auto& n : names) {
    const auto rows = csv_cells(testing_support::slurp(dir / n));
    EXPECT_EQ(rows.size(), small_study().rows.size() + 1) << n;
  }
}

TEST(Checks, CsvLayout) {
  std::ostringstream out;
  write_checks_csv(out, {{"1", "a", "b", "c", true}, {"2", "d", "e", "f", false}});
  EXPECT_EQ(out.str(), "id,check,computed,target,result\n1,a,b,c,pass\n2,d,e,f,fail\n");
}
