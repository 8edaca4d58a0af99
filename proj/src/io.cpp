#include "stokeslab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stokeslab {

std::string format_double(double v) {
  // Shortest representation that parses back to the same bits.
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = std::strtod(buf, nullptr);
    if (back == v) return buf;
  }
  return buf;
}

void emit_series(const std::string& path, const std::vector<FieldSample>& rows,
                 int n) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_series: cannot open " + path);
  for (int k = 1; k <= n - 1; ++k) out << "x" << k << ",";
  out << "xn,t,component,value,error\n";
  for (const auto& r : rows) {
    for (int k = 0; k < n - 1; ++k) {
      double v = k < static_cast<int>(r.location.point.tangential.size())
                     ? r.location.point.tangential[k]
                     : 0.0;
      out << format_double(v) << ",";
    }
    out << format_double(r.location.point.normal) << ","
        << format_double(r.location.t) << "," << r.component << ","
        << format_double(r.value) << "," << format_double(r.error_estimate)
        << "\n";
  }
  if (!out) throw std::runtime_error("emit_series: write failed " + path);
}

std::vector<FieldSample> read_series(const std::string& path, int* n_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_series: cannot open " + path);
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("read_series: empty file " + path);
  int ncols = 1;
  for (char c : header)
    if (c == ',') ++ncols;
  int n = ncols - 4;  // n-1 tangential columns plus xn
  if (n_out) *n_out = n;
  std::vector<FieldSample> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    FieldSample s;
    s.location.point.tangential.resize(n - 1);
    for (int k = 0; k < n - 1; ++k) {
      std::getline(ss, cell, ',');
      s.location.point.tangential[k] = std::strtod(cell.c_str(), nullptr);
    }
    std::getline(ss, cell, ',');
    s.location.point.normal = std::strtod(cell.c_str(), nullptr);
    std::getline(ss, cell, ',');
    s.location.t = std::strtod(cell.c_str(), nullptr);
    std::getline(ss, s.component, ',');
    std::getline(ss, cell, ',');
    s.value = std::strtod(cell.c_str(), nullptr);
    std::getline(ss, cell, ',');
    s.error_estimate = std::strtod(cell.c_str(), nullptr);
    rows.push_back(std::move(s));
  }
  return rows;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_json: cannot open " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace stokeslab
