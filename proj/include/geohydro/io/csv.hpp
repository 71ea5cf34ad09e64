#pragma once

// Plain-text field files. Numbers are written as printf's %.17g would write
// them, with '.' as decimal point regardless of locale; ',' separates fields
// and lines end in LF.
//
// Snapshot files: header "t,<x_0>,...,<x_{n-1}>", then one row per saved time.
// Profile files:  header "x,<name_1>,...", then one row per grid node.

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "geohydro/errors.hpp"
#include "geohydro/grid.hpp"

namespace geohydro {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::IoError, "refusing to write a non-finite value");
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::IoError, where + ": malformed number '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

struct SnapshotTable {
  std::vector<double> times;
  RealField nodes;
  std::vector<RealField> rows;
};

inline std::string snapshot_csv(const SnapshotTable& table) {
  std::ostringstream out;
  out << 't';
  for (Eigen::Index j = 0; j < table.nodes.size(); ++j) out << ',' << format_double(table.nodes[j]);
  out << '\n';
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    require_same_shape(table.rows[i], table.nodes);
    out << format_double(table.times.at(i));
    for (Eigen::Index j = 0; j < table.rows[i].size(); ++j) out << ',' << format_double(table.rows[i][j]);
    out << '\n';
  }
  return out.str();
}

inline void write_snapshot_csv(const std::string& path, const SnapshotTable& table) {
  write_text(path, snapshot_csv(table));
}

inline SnapshotTable read_snapshot_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw Error(ErrorKind::IoError, "'" + path + "' is empty");
  const auto header = split_fields(lines[0]);
  if (header.size() < 2 || header[0] != "t") {
    throw Error(ErrorKind::IoError, "'" + path + "' lacks the 't,<nodes>' header");
  }
  SnapshotTable table;
  table.nodes.resize(static_cast<Eigen::Index>(header.size() - 1));
  for (std::size_t j = 1; j < header.size(); ++j) {
    table.nodes[static_cast<Eigen::Index>(j - 1)] = parse_double(header[j], path + ":1");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    const std::string where = path + ":" + std::to_string(i + 1);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::IoError, where + ": expected " + std::to_string(header.size()) +
                                          " fields, found " + std::to_string(fields.size()));
    }
    table.times.push_back(parse_double(fields[0], where));
    RealField row(static_cast<Eigen::Index>(fields.size() - 1));
    for (std::size_t j = 1; j < fields.size(); ++j) {
      row[static_cast<Eigen::Index>(j - 1)] = parse_double(fields[j], where);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

struct ProfileTable {
  std::vector<std::string> names;  // column names after "x"
  RealField x;
  std::vector<RealField> columns;

  const RealField& column(const std::string& name) const {
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (names[c] == name) return columns[c];
    }
    throw Error(ErrorKind::IoError, "profile has no column '" + name + "'");
  }

  bool has(const std::string& name) const {
    for (const auto& n : names) {
      if (n == name) return true;
    }
    return false;
  }
};

inline std::string profile_csv(const ProfileTable& table) {
  std::ostringstream out;
  out << 'x';
  for (const auto& name : table.names) out << ',' << name;
  out << '\n';
  for (Eigen::Index j = 0; j < table.x.size(); ++j) {
    out << format_double(table.x[j]);
    for (const auto& col : table.columns) out << ',' << format_double(col[j]);
    out << '\n';
  }
  return out.str();
}

inline void write_profile_csv(const std::string& path, const ProfileTable& table) {
  write_text(path, profile_csv(table));
}

/// Reads a profile and checks that its x column is the uniform grid.
inline ProfileTable read_profile_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.size() < 2) throw Error(ErrorKind::IoError, "'" + path + "' has no data rows");
  const auto header = split_fields(lines[0]);
  if (header.size() < 2 || header[0] != "x") {
    throw Error(ErrorKind::IoError, "'" + path + "' lacks the 'x,<columns>' header");
  }
  ProfileTable table;
  for (std::size_t c = 1; c < header.size(); ++c) table.names.emplace_back(header[c]);
  const auto n = static_cast<Eigen::Index>(lines.size() - 1);
  table.x.resize(n);
  table.columns.assign(table.names.size(), RealField(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto fields = split_fields(lines[static_cast<std::size_t>(j) + 1]);
    const std::string where = path + ":" + std::to_string(j + 2);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::IoError, where + ": expected " + std::to_string(header.size()) +
                                          " fields, found " + std::to_string(fields.size()));
    }
    table.x[j] = parse_double(fields[0], where);
    for (std::size_t c = 1; c < fields.size(); ++c) table.columns[c - 1][j] = parse_double(fields[c], where);
  }
  const PeriodicGrid grid(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(table.x[j] - grid.node(static_cast<std::size_t>(j))) > 1e-12) {
      throw Error(ErrorKind::IoError, "'" + path + "': x column is not the uniform grid 2*pi*j/n");
    }
  }
  return table;
}

}  // namespace geohydro
