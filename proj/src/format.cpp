#include "monodec/format.hpp"

#include <cmath>
#include <cstdio>

namespace monodec {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

double round_half_up_2(double value) {
    return std::floor(value * 100.0 + 0.5) / 100.0;
}

std::string percent2(double value) {
    return fixed(round_half_up_2(value), 2);
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace monodec
