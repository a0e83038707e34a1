#include "pottslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pottslab {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

void CsvWriter::add_field(const std::string& s) {
  if (in_row_) out_ += ',';
  const bool quote = s.find_first_of(",\"\n") != std::string::npos;
  if (quote) {
    out_ += '"';
    for (char c : s) {
      if (c == '"') out_ += '"';
      out_ += c;
    }
    out_ += '"';
  } else {
    out_ += s;
  }
  ++in_row_;
}

void CsvWriter::add_field(double x) { add_field(format_double(x)); }
void CsvWriter::add_field(long x) { add_field(std::to_string(x)); }
void CsvWriter::add_field(int x) { add_field(std::to_string(x)); }

void CsvWriter::end_row() {
  if (in_row_ != columns_)
    throw std::logic_error("CsvWriter: row has " + std::to_string(in_row_) + " fields, header has " +
                           std::to_string(columns_));
  out_ += '\n';
  in_row_ = 0;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

JsonObj& JsonObj::field(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, '"' + json_escape(value) + '"');
  return *this;
}
JsonObj& JsonObj::field(const std::string& key, const char* value) {
  return field(key, std::string(value));
}
JsonObj& JsonObj::field(const std::string& key, double value) {
  fields_.emplace_back(key, std::isfinite(value) ? format_double(value) : "null");
  return *this;
}
JsonObj& JsonObj::field(const std::string& key, long value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}
JsonObj& JsonObj::field(const std::string& key, int value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}
JsonObj& JsonObj::field(const std::string& key, bool value) {
  fields_.emplace_back(key, value ? "true" : "false");
  return *this;
}
JsonObj& JsonObj::field_raw(const std::string& key, const std::string& raw_json) {
  fields_.emplace_back(key, raw_json);
  return *this;
}

std::string JsonObj::str(bool pretty) const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ',';
    if (pretty) out += "\n  ";
    out += '"' + json_escape(fields_[i].first) + "\":";
    if (pretty) out += ' ';
    out += fields_[i].second;
  }
  if (pretty && !fields_.empty()) out += '\n';
  out += '}';
  if (pretty) out += '\n';
  return out;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace pottslab
