#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tldrkit/ingest.hpp"
#include "tldrkit/text.hpp"

namespace tldrkit {

/// One TLDR marker occurrence. Offsets are UTF-8 byte positions into the
/// body; the wildcard slot may hold a multi-byte character, so end - start
/// is 4 or 5 in characters but may be longer in bytes.
struct TldrMatch {
    std::size_t start = 0;       // byte offset of match start
    std::size_t end = 0;         // one past match end, in bytes
    int wildcard_len = 0;        // characters between "tl" and "dr": 0 or 1
};

namespace detail {

inline bool match_ascii_pair(std::string_view s, std::size_t i, char a, char b) {
    return i + 1 < s.size() && ascii_lower(s[i]) == a && ascii_lower(s[i + 1]) == b;
}

/// Non-overlapping, case-insensitive matches of "tl", up to max_wildcard
/// arbitrary characters, then "dr". Leftmost-first; at equal start the
/// shortest match (fewest wildcard characters) wins.
inline std::vector<TldrMatch> find_markers_impl(std::string_view body, int max_wildcard) {
    std::vector<TldrMatch> out;
    std::size_t i = 0;
    while (i < body.size()) {
        if (!match_ascii_pair(body, i, 't', 'l')) {
            i += utf8_seq_len(body, i);
            continue;
        }
        std::size_t after_tl = i + 2;
        bool matched = false;
        std::size_t w = after_tl;  // cursor past the wildcard run
        for (int wc = 0; wc <= max_wildcard; ++wc) {
            if (wc > 0) {
                if (w >= body.size()) break;
                w += utf8_seq_len(body, w);  // consume one more wildcard character
            }
            if (match_ascii_pair(body, w, 'd', 'r')) {
                out.push_back({i, w + 2, wc});
                i = w + 2;
                matched = true;
                break;
            }
        }
        if (!matched) i += utf8_seq_len(body, i);
    }
    return out;
}

}  // namespace detail

/// Tightened marker pattern: "tl", at most one wildcard character, "dr".
inline std::vector<TldrMatch> find_tldr_markers(std::string_view body) {
    return detail::find_markers_impl(body, 1);
}

/// Baseline pattern with up to three wildcard characters. Kept for
/// comparison: it false-positives on text like "abruptly dropped".
inline std::vector<TldrMatch> find_tldr_markers_baseline(std::string_view body) {
    return detail::find_markers_impl(body, 3);
}

enum class MarkerPosition { Start, Middle, End };

inline const char* to_string(MarkerPosition p) {
    switch (p) {
        case MarkerPosition::Start: return "Start";
        case MarkerPosition::Middle: return "Middle";
        default: return "End";
    }
}

inline std::optional<MarkerPosition> marker_position_from_string(std::string_view s) {
    if (s == "Start") return MarkerPosition::Start;
    if (s == "Middle") return MarkerPosition::Middle;
    if (s == "End") return MarkerPosition::End;
    return std::nullopt;
}

/// A (content, summary) pair carved out of one post body.
struct ExtractedPair {
    std::string post_id;
    std::string subreddit;
    std::string content;
    std::string summary;
    std::size_t content_words = 0;
    std::size_t summary_words = 0;
    MarkerPosition marker_position = MarkerPosition::End;
    std::int64_t score = 0;
    std::string author;
};

enum class ExtractStatus { Ok, NoMarker, EmptySummary, EmptyContent };

struct ExtractResult {
    ExtractStatus status = ExtractStatus::NoMarker;
    ExtractedPair pair;  // valid only when status == Ok

    bool ok() const { return status == ExtractStatus::Ok; }
};

namespace detail {

/// Paragraph boundary: maximal whitespace run containing at least two
/// newlines. Returns [blank_start, blank_end) of the first boundary at or
/// after `from`, or {npos, npos} if the text runs out first.
inline std::pair<std::size_t, std::size_t> next_paragraph_break(std::string_view body,
                                                                std::size_t from) {
    const std::size_t n = body.size();
    std::size_t i = from;
    while (i < n) {
        if (!is_ascii_space(body[i])) {
            ++i;
            continue;
        }
        std::size_t run_start = i;
        int newlines = 0;
        while (i < n && is_ascii_space(body[i])) {
            if (body[i] == '\n') ++newlines;
            ++i;
        }
        if (newlines >= 2) return {run_start, i};
    }
    return {std::string_view::npos, std::string_view::npos};
}

/// Last paragraph break fully before `pos` (linear scan from the front;
/// bodies are single posts, not whole dumps).
inline std::pair<std::size_t, std::size_t> prev_paragraph_break(std::string_view body,
                                                                std::size_t pos) {
    std::pair<std::size_t, std::size_t> found{std::string_view::npos, std::string_view::npos};
    std::size_t from = 0;
    while (true) {
        auto br = next_paragraph_break(body, from);
        if (br.first == std::string_view::npos || br.first >= pos) break;
        found = br;
        from = br.second;
    }
    return found;
}

inline bool is_summary_delimiter_at(std::string_view s, std::size_t i, std::size_t* len) {
    char c = s[i];
    if (c == ':' || c == ';' || c == '-' || is_ascii_space(c)) {
        *len = 1;
        return true;
    }
    // U+2013 EN DASH
    if (i + 3 <= s.size() && s.compare(i, 3, "\xE2\x80\x93") == 0) {
        *len = 3;
        return true;
    }
    return false;
}

/// 0-based index of the whitespace token containing byte `pos`, or the
/// count of tokens that start before it if `pos` falls between tokens.
inline std::size_t token_index_at(std::string_view body, std::size_t pos) {
    std::size_t idx = 0;
    bool in_word = false;
    for (std::size_t i = 0; i < body.size() && i <= pos; ++i) {
        if (is_ascii_space(body[i])) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            if (i <= pos) ++idx;
        }
    }
    return idx == 0 ? 0 : idx - 1;
}

}  // namespace detail

struct ExtractOptions {
    bool prepend_title = false;  // when set, the post title joins the content
};

/// Split a body around its first TLDR marker.
///
/// The summary runs from the end of the marker, past any run of delimiter
/// characters (':', ';', '-', en dash, whitespace), to the end of the
/// paragraph holding the marker. The content is whatever text lies before
/// the marker plus whatever follows the summary's paragraph, joined with a
/// blank line. Start/Middle/End records where the marker sat: Start when it
/// begins within the first three tokens of the opening paragraph, End when
/// the summary's paragraph closes the document.
inline ExtractResult extract_pair_from_body(std::string_view body,
                                            const std::vector<TldrMatch>& markers) {
    ExtractResult res;
    if (markers.empty()) {
        res.status = ExtractStatus::NoMarker;
        return res;
    }
    const TldrMatch m = markers.front();

    auto prev_br = detail::prev_paragraph_break(body, m.start);
    auto next_br = detail::next_paragraph_break(body, m.start);
    const std::size_t para_end =
        next_br.first == std::string_view::npos ? body.size() : next_br.first;

    std::size_t s = m.end;
    while (s < para_end) {
        std::size_t len = 0;
        if (!detail::is_summary_delimiter_at(body, s, &len)) break;
        s += len;
    }
    std::string_view summary = trim(body.substr(s, para_end - s));
    if (summary.empty()) {
        res.status = ExtractStatus::EmptySummary;
        return res;
    }

    std::string_view before = trim(body.substr(0, m.start));
    std::string_view after;
    if (next_br.first != std::string_view::npos)
        after = trim(body.substr(next_br.second));
    if (before.empty() && after.empty()) {
        res.status = ExtractStatus::EmptyContent;
        return res;
    }

    std::string content;
    content.reserve(before.size() + after.size() + 2);
    content.append(before);
    if (!before.empty() && !after.empty()) content += "\n\n";
    content.append(after);

    MarkerPosition pos;
    const bool in_first_paragraph = prev_br.first == std::string_view::npos;
    if (in_first_paragraph && detail::token_index_at(body, m.start) < 3) {
        pos = MarkerPosition::Start;
    } else if (next_br.first == std::string_view::npos) {
        pos = MarkerPosition::End;
    } else {
        pos = MarkerPosition::Middle;
    }

    res.status = ExtractStatus::Ok;
    res.pair.content = std::move(content);
    res.pair.summary = std::string(summary);
    res.pair.content_words = count_words(res.pair.content);
    res.pair.summary_words = count_words(res.pair.summary);
    res.pair.marker_position = pos;
    return res;
}

inline ExtractResult extract_pair_from_body(std::string_view body) {
    return extract_pair_from_body(body, find_tldr_markers(body));
}

inline ExtractResult extract_pair(const RawPost& post, const ExtractOptions& options = {}) {
    ExtractResult res = extract_pair_from_body(post.body);
    if (!res.ok()) return res;
    res.pair.post_id = post.id;
    res.pair.subreddit = post.subreddit;
    res.pair.score = post.score;
    res.pair.author = post.author;
    if (options.prepend_title) {
        const std::string_view title = trim(post.title);
        if (!title.empty()) {
            std::string content;
            content.reserve(title.size() + res.pair.content.size() + 2);
            content.append(title);
            content += "\n\n";
            content.append(res.pair.content);
            res.pair.content = std::move(content);
            res.pair.content_words = count_words(res.pair.content);
        }
    }
    return res;
}

}  // namespace tldrkit

