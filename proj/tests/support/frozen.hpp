#pragma once

#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <string>

inline std::string frozen_path(const std::string& name) { return std::string(SSEQ_FROZEN_DIR) + "/" + name; }

inline nlohmann::json frozen(const std::string& name) {
  std::ifstream in(frozen_path(name));
  if (!in) throw std::runtime_error("missing oracle output " + name);
  return nlohmann::json::parse(in);
}
