#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef LIGHTSIM_TEST_DATA_DIR
#error "LIGHTSIM_TEST_DATA_DIR must point at the data directory"
#endif

namespace testing_support {

inline std::filesystem::path data_dir() { return LIGHTSIM_TEST_DATA_DIR; }
inline std::string algiers_epw() { return (data_dir() / "weather" / "DZA_Algiers_synthetic.epw").string(); }
inline std::string stuttgart_epw() { return (data_dir() / "weather" / "DEU_Stuttgart_synthetic.epw").string(); }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lightsim_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_support
