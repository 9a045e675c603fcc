#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "evi/evolution.hpp"

namespace evi {

// Shortest 17-significant-digit decimal; round-trips every finite double.
std::string format_g17(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// LF line endings, values formatted with format_g17.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Stable key ordering (lexicographic) comes from the json object type.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

// Header "t,x0,x1,..." in 1D, "t,node_i_j" in 2D; one row per snapshot.
std::vector<std::string> trajectory_columns(const DiscreteOperators& ops);
CsvTable trajectory_table(const DiscreteOperators& ops, const Trajectory& traj);

}  // namespace evi
