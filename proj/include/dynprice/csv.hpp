#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace dynprice {

inline constexpr std::string_view kVersion = "1.0.0";

/// Round-trippable decimal rendering (%.17g); "inf" for +infinity.
std::string format_double(double v);

/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// Comment lines that open every CSV: tool version, config hash, root seed.
void write_provenance(std::ostream& os, std::string_view config_hash, std::uint64_t seed);

}  // namespace dynprice
