#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace normsim {

// Six significant digits ("%.6g"), the float dialect of every CSV we emit.
std::string format_real(double value);

// Fixed six decimals when that prints the exact same double back, otherwise
// the shortest representation that round-trips.
std::string format_attribute(double value);

// Comma-separated rows with LF endings. Fields are written verbatim.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> row);
  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes bytes exactly; throws std::runtime_error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace normsim
