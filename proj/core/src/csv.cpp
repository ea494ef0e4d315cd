#include "ftstab/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ftstab::csv {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Writer::Writer(const std::string& path) : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open for writing: " + path);
}

void Writer::header(const std::string& line) { out_ << line << "\n"; }

void Writer::row(std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out_ << ",";
    out_ << num(v);
    first = false;
  }
  out_ << "\n";
}

void Writer::row_prefixed(long long prefix, std::initializer_list<double> values) {
  out_ << prefix;
  for (double v : values) out_ << "," << num(v);
  out_ << "\n";
}

void Writer::raw(const std::string& line) { out_ << line << "\n"; }

std::vector<std::vector<double>> read(const std::string& path,
                                      const std::vector<std::string>& expected_header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::ostringstream want;
    for (size_t i = 0; i < expected_header.size(); ++i) {
      if (i) want << ",";
      want << expected_header[i];
    }
    if (line != want.str()) {
      throw std::runtime_error("unexpected CSV header in " + path + ": " + line);
    }
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("bad CSV cell in " + path + ": " + cell);
      }
    }
    if (row.size() != expected_header.size()) {
      throw std::runtime_error("bad CSV row width in " + path);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ftstab::csv
