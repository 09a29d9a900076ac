#pragma once

// CSV with a header line and doubles at 17 significant digits, so that a
// value read back is bit-identical to the one written.

#include <iosfwd>
#include <string>
#include <vector>

namespace fracinv::cli {

std::string format_double(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const Table& table);
void write_csv(const std::string& path, const Table& table);

/// Throws std::runtime_error on a missing file or a malformed row.
Table read_csv(const std::string& path);

}  // namespace fracinv::cli
