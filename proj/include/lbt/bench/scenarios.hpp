#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "lbt/cspace/scenario_io.hpp"

#ifndef LBT_DATA_DIR
#define LBT_DATA_DIR "data"
#endif

namespace lbt::bench {

/// Directory holding the shipped scenario files.
inline std::filesystem::path scenario_dir() { return std::filesystem::path(LBT_DATA_DIR) / "scenarios"; }

inline std::filesystem::path bundled_scenario_path(const std::string& name) {
  return scenario_dir() / (name + ".json");
}

inline cspace::Scenario bundled_scenario(const std::string& name) {
  return cspace::load_scenario(bundled_scenario_path(name).string());
}

/// Every shipped scenario, validated on load, ordered by file name.
inline std::vector<cspace::Scenario> bundled_scenarios() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(scenario_dir())) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<cspace::Scenario> out;
  for (const auto& f : files) out.push_back(cspace::load_scenario(f.string()));
  return out;
}

}  // namespace lbt::bench
