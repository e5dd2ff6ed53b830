#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubedyn::io {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits, classic locale; empty optional -> empty field.
std::string format_double(double value);
std::string format_double(const std::optional<double>& value);

// Comma-separated file with a fixed header. Rows are buffered and written by
// close(); the destructor does not write.
class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, std::vector<std::string> header);

  CsvWriter& field(const std::string& text);
  CsvWriter& field(double value);
  CsvWriter& field(const std::optional<double>& value);
  CsvWriter& field(std::size_t value);
  void end_row();

  void close();

 private:
  std::filesystem::path path_;
  std::size_t columns_;
  std::vector<std::string> current_;
  std::string buffer_;
};

// key = value lines.
class KeyValueBlock {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, bool value);
  void add(const std::string& key, std::size_t value);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace tubedyn::io
