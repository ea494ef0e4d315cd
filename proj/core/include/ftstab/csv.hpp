#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace ftstab::csv {

/// Formats a double with 17 significant digits (%.17g) so that re-parsing is
/// exact and output files are byte-reproducible.
std::string num(double v);

class Writer {
 public:
  explicit Writer(const std::string& path);
  void header(const std::string& line);
  void row(std::initializer_list<double> values);
  void row_prefixed(long long prefix, std::initializer_list<double> values);
  void raw(const std::string& line);

 private:
  std::ofstream out_;
};

/// Reads a CSV with the exact expected header (order-sensitive); returns rows
/// of doubles. Lines starting with '#' are skipped.
std::vector<std::vector<double>> read(const std::string& path,
                                      const std::vector<std::string>& expected_header);

}  // namespace ftstab::csv
