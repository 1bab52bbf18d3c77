#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace tldrkit {

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_alnum(char c) {
    return is_ascii_alpha(c) || (c >= '0' && c <= '9');
}

inline std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = ascii_lower(c);
    return out;
}

/// Byte length of the UTF-8 sequence starting at s[i]. Invalid lead bytes
/// and truncated sequences advance by one byte so scanning always terminates.
inline std::size_t utf8_seq_len(std::string_view s, std::size_t i) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (b >= 0xF0) len = 4;
    else if (b >= 0xE0) len = 3;
    else if (b >= 0xC0) len = 2;
    if (i + len > s.size()) return 1;
    for (std::size_t k = 1; k < len; ++k) {
        unsigned char c = static_cast<unsigned char>(s[i + k]);
        if ((c & 0xC0) != 0x80) return 1;
    }
    return len;
}

inline std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

/// Number of maximal non-whitespace runs.
inline std::size_t count_words(std::string_view text) {
    std::size_t n = 0;
    bool in_word = false;
    for (char c : text) {
        if (is_ascii_space(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++n;
        }
    }
    return n;
}

/// First `k` whitespace-delimited words of `text`, joined by single spaces.
inline std::string lead_words(std::string_view text, std::size_t k) {
    std::string out;
    std::size_t taken = 0;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n && taken < k) {
        while (i < n && is_ascii_space(text[i])) ++i;
        if (i >= n) break;
        std::size_t start = i;
        while (i < n && !is_ascii_space(text[i])) ++i;
        if (!out.empty()) out += ' ';
        out.append(text.substr(start, i - start));
        ++taken;
    }
    return out;
}

}  // namespace tldrkit
