#pragma once

#include <filesystem>
#include <fstream>

#include "airybvp/config.hpp"
#include "airybvp/core.hpp"

namespace airy {

/// CSV file whose first line is a `#` comment naming the columns.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& columns);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(long v);
  CsvWriter& operator<<(int v) { return *this << static_cast<long>(v); }
  CsvWriter& operator<<(const std::string& v);
  void end_row();

 private:
  void separator();
  std::ofstream out_;
  bool fresh_ = true;
};

/// Columns x, t, re, im; one row per grid point per time.
void write_field_csv(const std::filesystem::path& path, const SpaceTimeField& field);

}  // namespace airy
