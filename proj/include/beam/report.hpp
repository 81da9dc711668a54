#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace beam {

// shortest decimal string that round-trips the double (std::to_chars)
std::string format_double(double v);

// RFC 4180: fields containing comma, quote, or newline are quoted, quotes doubled
std::string csv_escape(const std::string& field);

// rows of already-formatted cells -> CSV text with CRLF line endings
std::string to_csv(const std::vector<std::vector<std::string>>& rows);

std::uint64_t fnv1a64(const std::string& bytes);

// first 8 hex digits of fnv1a64, used to name run directories
std::string hash8(const std::string& bytes);

void write_text(const std::string& path, const std::string& content);

}  // namespace beam
