#pragma once

// The recurrence files shipped under data/recurrences.

#include <filesystem>

#include "geode/serialization.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return GEODE_TEST_DATA_DIR; }
inline std::filesystem::path system3_path() { return data_dir() / "recurrences" / "geode3_system.json"; }
inline std::filesystem::path diagonal3_path() { return data_dir() / "recurrences" / "geode3_diagonal.json"; }

inline geode::RecurrenceSystem system3() { return geode::io::load_system(system3_path()); }

inline geode::io::DiagonalRecurrence diagonal3() {
  return geode::io::diagonal_from_json(geode::io::read_file(diagonal3_path()));
}

}  // namespace fixtures
