#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lozenge/continuum.hpp"
#include "lozenge/lattice.hpp"

namespace lozenge {

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// {"multiholes": [{"kind": "E", "q": "1", "indices": [0], "anchor": [x, y]}]}
HoleSystem holes_from_json(const nlohmann::json& j);
nlohmann::json holes_to_json(const HoleSystem& hs);
HoleSystem load_holes(const std::filesystem::path& path);

// {"q": "1", "positives": [{"x":..,"y":..,"s":..,"alpha":..,"beta":..}],
//  "negatives": [{"z":..,"w":..,"t":..,"gamma":..,"delta":..}],
//  "probe": {"x":..,"y":..,"alpha":..,"beta":..}}
LimitConfig limit_config_from_json(const nlohmann::json& j);
nlohmann::json limit_config_to_json(const LimitConfig& cfg);
LimitConfig load_limit_config(const std::filesystem::path& path);

// 17 significant digits.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

}  // namespace lozenge
