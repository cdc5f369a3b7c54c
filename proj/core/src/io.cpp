#include "mwave/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwave/errors.hpp"

namespace mwave {

std::string format_sci(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", value);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw IoError("failed writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
}

void write_csv_matrix(const std::string& path, const Grid2D& grid) {
  std::string out;
  out.reserve(grid.size() * 17);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (i) out += ',';
      out += format_sci(grid(i, j));
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

void write_pgm(const std::string& path, const Grid2D& grid) {
  double peak = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) peak = std::max(peak, grid(i, j));

  std::string out = "P5\n" + std::to_string(grid.nx()) + " " + std::to_string(grid.ny()) +
                    "\n255\n";
  out.reserve(out.size() + grid.size());
  for (int j = grid.ny() - 1; j >= 0; --j)
    for (int i = 0; i < grid.nx(); ++i) {
      const double v = peak > 0.0 ? grid(i, j) / peak : 0.0;
      const int level = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
      out += static_cast<char>(level);
    }
  write_text_atomic(path, out);
}

void write_pairs_csv(const std::string& path, const std::vector<std::pair<double, double>>& rows,
                     const std::string& header, const std::string& trailing_comment) {
  std::string out = header.empty() ? "" : header + "\n";
  for (const auto& [a, b] : rows) out += format_sci(a) + "," + format_sci(b) + "\n";
  if (!trailing_comment.empty()) out += "# " + trailing_comment + "\n";
  write_text_atomic(path, out);
}

void write_series_csv(const std::string& path, double dt,
                      const std::vector<const std::vector<double>*>& series,
                      const std::vector<std::string>& names) {
  std::string out = "time_s";
  for (const std::string& n : names) out += "," + n;
  out += '\n';
  const size_t len = series.empty() ? 0 : series.front()->size();
  for (size_t k = 0; k < len; ++k) {
    out += format_sci((k + 1) * dt);
    for (const auto* s : series) out += "," + format_sci((*s)[k]);
    out += '\n';
  }
  write_text_atomic(path, out);
}

std::vector<std::pair<double, double>> read_pairs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a = 0.0, b = 0.0;
    if (ss >> a >> b)
      rows.emplace_back(a, b);
    else if (rows.empty())
      continue;  // header line
    else
      throw IoError("malformed row in '" + path + "': " + line);
  }
  return rows;
}

}  // namespace mwave
