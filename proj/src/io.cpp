#include "evi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace evi {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out << ',';
    out << table.header[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_g17(row[c]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (first) {
      while (std::getline(ss, cell, ',')) table.header.push_back(cell);
      first = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return nlohmann::json::parse(in);
}

std::vector<std::string> trajectory_columns(const DiscreteOperators& ops) {
  std::vector<std::string> cols{"t"};
  for (int d = 0; d < ops.n_free(); ++d) {
    if (ops.spec.dim == 1)
      cols.push_back("x" + std::to_string(ops.grid_index[d].i));
    else
      cols.push_back("node_" + std::to_string(ops.grid_index[d].i) + "_" +
                     std::to_string(ops.grid_index[d].j));
  }
  return cols;
}

CsvTable trajectory_table(const DiscreteOperators& ops, const Trajectory& traj) {
  CsvTable table;
  table.header = trajectory_columns(ops);
  for (int k = 0; k <= traj.grid.m; ++k) {
    std::vector<double> row;
    row.reserve(ops.n_free() + 1);
    row.push_back(traj.grid.t(k));
    for (double v : traj.snapshots[k]) row.push_back(v);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace evi
