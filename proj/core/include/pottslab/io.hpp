#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pottslab {

/// Shortest decimal string with 17 significant digits; round-trips exactly.
std::string format_double(double x);

/// RFC-4180-style CSV: header row, comma separated, LF line endings, fields
/// quoted only when they contain a comma, quote, or newline. Doubles are
/// rendered with format_double so files are byte-reproducible.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_field(const std::string& s);
  void add_field(double x);
  void add_field(long x);
  void add_field(int x);
  void end_row();

  const std::string& str() const { return out_; }

 private:
  std::string out_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string json_escape(const std::string& s);

/// Hand-assembled JSON object with insertion-ordered keys and doubles rendered
/// by format_double, so summaries are byte-stable and round-trip exactly.
class JsonObj {
 public:
  JsonObj& field(const std::string& key, const std::string& value);
  JsonObj& field(const std::string& key, const char* value);
  JsonObj& field(const std::string& key, double value);
  JsonObj& field(const std::string& key, long value);
  JsonObj& field(const std::string& key, int value);
  JsonObj& field(const std::string& key, bool value);
  JsonObj& field_raw(const std::string& key, const std::string& raw_json);

  /// Serialized object; pretty = one key per line.
  std::string str(bool pretty = true) const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

/// FNV-1a 64-bit, used to fingerprint canonicalized run configurations.
std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t x);

}  // namespace pottslab
