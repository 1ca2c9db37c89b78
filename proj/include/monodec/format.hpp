#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace monodec {

// Fixed-precision decimal rendering; every artifact meant for golden-file
// comparison goes through these so output is byte-stable across platforms.
std::string fixed(double value, int decimals);

// Half-up rounding to two decimals, the convention for reported percentages.
double round_half_up_2(double value);
std::string percent2(double value);

// FNV-1a 64-bit, hex encoded. Manifest fingerprints only.
std::string fnv1a64_hex(std::string_view bytes);

} // namespace monodec
