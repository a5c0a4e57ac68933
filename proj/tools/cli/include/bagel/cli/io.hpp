#ifndef BAGEL_CLI_IO_HPP
#define BAGEL_CLI_IO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bagel::cli {

/// Unreadable, unwritable or unparsable files. Maps to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames, so readers never see a
/// half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Appends to a file, creating it when missing.
void append_file(const std::filesystem::path& path, std::string_view content);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

/// Minimal CSV: fields never contain commas, quotes or newlines.
std::string csv_line(const std::vector<std::string>& fields);
std::vector<std::string> csv_split(std::string_view line);

/// Rows of a CSV file with a header. Throws IoError on a ragged row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(std::string_view text);

/// Appends rows under `header`, writing the header only for a new or empty
/// file. An existing file with a different header is refused.
void append_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

}  // namespace bagel::cli

#endif  // BAGEL_CLI_IO_HPP
