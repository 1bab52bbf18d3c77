#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tldrkit {

/// FNV-1a, 64-bit. Used for dedup keys, config digests and the
/// order-insensitive split checksums; all of those tolerate the
/// (astronomically unlikely) 64-bit collision.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string to_hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace tldrkit
