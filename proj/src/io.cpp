#include "tubedyn/io.hpp"

#include <iomanip>
#include <locale>
#include <sstream>

namespace tubedyn::io {

std::string format_double(double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << value;
  return os.str();
}

std::string format_double(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string{};
}

CsvWriter::CsvWriter(std::filesystem::path path, std::vector<std::string> header)
    : path_(std::move(path)), columns_(header.size()) {
  for (const auto& h : header) field(h);
  end_row();
}

CsvWriter& CsvWriter::field(const std::string& text) {
  current_.push_back(text);
  return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(format_double(value)); }

CsvWriter& CsvWriter::field(const std::optional<double>& value) {
  return field(format_double(value));
}

CsvWriter& CsvWriter::field(std::size_t value) { return field(std::to_string(value)); }

void CsvWriter::end_row() {
  if (current_.size() != columns_) {
    throw std::logic_error("CSV row for " + path_.string() + " has " +
                           std::to_string(current_.size()) + " fields, header has " +
                           std::to_string(columns_));
  }
  for (std::size_t i = 0; i < current_.size(); ++i) {
    if (i > 0) buffer_ += ',';
    buffer_ += current_[i];
  }
  buffer_ += '\n';
  current_.clear();
}

void CsvWriter::close() { write_text(path_, buffer_); }

void KeyValueBlock::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void KeyValueBlock::add(const std::string& key, double value) { add(key, format_double(value)); }

void KeyValueBlock::add(const std::string& key, bool value) {
  add(key, std::string(value ? "true" : "false"));
}

void KeyValueBlock::add(const std::string& key, std::size_t value) {
  add(key, std::to_string(value));
}

std::string KeyValueBlock::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace tubedyn::io
