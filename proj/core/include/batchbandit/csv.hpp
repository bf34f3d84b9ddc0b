#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace batchbandit {

/// Shortest decimal form that round-trips the double (std::to_chars); locale
/// independent, so CSV output is byte-stable across runs.
std::string format_double(double value);

/// Row builder for the fixed CSV schemas. Fields are joined with commas and
/// rows end with a single '\n'.
class CsvBuilder {
 public:
  CsvBuilder& field(std::string_view text);
  CsvBuilder& field(double value);
  CsvBuilder& field(std::uint64_t value);
  void end_row();

  const std::string& str() const { return out_; }

 private:
  std::string out_;
  bool row_open_ = false;
};

/// Writes content to path via a temporary file plus rename, creating parent
/// directories as needed.
void write_file_atomic(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

}  // namespace batchbandit
