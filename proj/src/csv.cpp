#include "dynprice/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace dynprice {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_provenance(std::ostream& os, std::string_view config_hash, std::uint64_t seed) {
  os << "# dynprice " << kVersion << '\n'
     << "# config_hash " << config_hash << '\n'
     << "# seed " << seed << '\n';
}

}  // namespace dynprice
