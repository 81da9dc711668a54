#include "beam/report.hpp"

#include <charconv>
#include <fstream>

#include "beam/errors.hpp"

namespace beam {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hash8(const std::string& bytes) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(8, '0');
  for (int i = 0; i < 8; ++i) out[i] = hex[(h >> (60 - 4 * i)) & 0xf];
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("write_text: cannot open " + path);
  os.write(content.data(), std::streamsize(content.size()));
  if (!os) throw ConfigError("write_text: write failed for " + path);
}

}  // namespace beam
