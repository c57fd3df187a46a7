#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace epic {

// Shortest round-trip decimal rendering (to_chars). Every file we write uses
// this so that save -> load -> save is byte identical.
std::string fmt_double(double v);
std::string fmt_int(std::int64_t v);

// Strict parsers; throw DataError naming the offending token.
double parse_double(std::string_view tok);
std::int64_t parse_int(std::string_view tok);

// Whitespace / comma tokenization helpers for the line-oriented formats.
std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string_view> split_csv(std::string_view line);

// FNV-1a 64-bit, used for the config hash echoed into benchmark outputs.
std::uint64_t fnv1a64(std::string_view text);
std::string to_hex(std::uint64_t v);

}  // namespace epic
