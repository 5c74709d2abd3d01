#pragma once

#include <string>

#include "nevpick/io.hpp"

namespace nevpick::testing {

inline std::string data_path(const std::string& name) { return std::string(NEVPICK_DATA_DIR) + "/" + name; }

inline InterpolationProblem system_identification_problem() {
  return io::problem_from_json(io::read_json_file(data_path("system_identification.json")));
}

}  // namespace nevpick::testing
