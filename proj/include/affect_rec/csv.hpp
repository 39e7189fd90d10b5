#pragma once

// Minimal RFC 4180 reader used by the ingest and candidate loaders.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace affect::csv {

class Reader {
 public:
  /// Throws FileNotFound if `path` cannot be opened.
  explicit Reader(const std::string& path);

  /// Next non-blank record; false at end of file.
  bool next(std::vector<std::string>& fields);
  std::size_t line() const noexcept { return line_; }

 private:
  std::ifstream in_;
  std::size_t line_ = 0;
};

std::vector<std::string> split(std::string_view line);

/// Strict numeric parsing of a whole field; nullopt on any trailing garbage.
std::optional<std::int64_t> to_int(std::string_view field) noexcept;
std::optional<double> to_double(std::string_view field) noexcept;

std::int64_t require_int(std::string_view field, std::size_t line, std::string_view column);
double require_double(std::string_view field, std::size_t line, std::string_view column);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);
/// Quotes the field when it contains a comma, quote or newline.
std::string quote(std::string_view field);

}  // namespace affect::csv
