#ifndef FTC_TRAJECTORY_IO_HPP
#define FTC_TRAJECTORY_IO_HPP

#include <array>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ftc/error.hpp"
#include "ftc/simulation.hpp"

namespace ftc {

/// Decimal text with 9 significant digits.
inline std::string format_sig9(double v) {
  std::array<char, 40> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 9);
  return std::string(buf.data(), ptr);
}

/// Header `t,x1,...,xn,V1,V2,spread,sum`, one LF-terminated row per sample.
/// Returns the number of bytes written.
inline std::size_t write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const std::size_t n = traj.samples.empty() ? 0 : traj.samples.front().x.size();
  std::string text = "t";
  for (std::size_t i = 1; i <= n; ++i) text += ",x" + std::to_string(i);
  text += ",V1,V2,spread,sum\n";
  for (const auto& s : traj.samples) {
    text += format_sig9(s.t);
    for (double v : s.x) text += ',' + format_sig9(v);
    text += ',' + format_sig9(s.v1);
    text += ',' + format_sig9(s.v2);
    text += ',' + format_sig9(s.spread);
    text += ',' + format_sig9(s.sum);
    text += '\n';
  }
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "failed writing trajectory CSV");
  return text.size();
}

inline std::size_t write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return write_trajectory_csv(traj, out);
}

/// Reads back a CSV produced by write_trajectory_csv.
inline std::vector<Sample> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::IoError, "empty trajectory CSV");
  std::size_t columns = 1;
  for (char c : line) columns += c == ',';
  if (columns < 6) throw Error(ErrorKind::IoError, "trajectory CSV header too short");
  const std::size_t n = columns - 5;

  std::vector<Sample> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> values;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw Error(ErrorKind::IoError, "bad number '" + cell + "' in trajectory CSV");
      values.push_back(v);
    }
    if (values.size() != columns) throw Error(ErrorKind::IoError, "ragged trajectory CSV row");
    Sample s;
    s.t = values[0];
    s.x.assign(values.begin() + 1, values.begin() + 1 + static_cast<std::ptrdiff_t>(n));
    s.v1 = values[n + 1];
    s.v2 = values[n + 2];
    s.spread = values[n + 3];
    s.sum = values[n + 4];
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace ftc

#endif  // FTC_TRAJECTORY_IO_HPP
