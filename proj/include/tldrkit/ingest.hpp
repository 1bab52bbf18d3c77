#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tldrkit/text.hpp"

namespace tldrkit {

/// One Reddit self-post as read from a dump. Immutable after construction;
/// safe to hand across threads.
struct RawPost {
    std::string id;
    std::string author;
    std::string subreddit;  // lowercased, no "r/" prefix
    std::string title;
    std::string body;       // the self-post text
    std::int64_t score = 0; // upvotes minus downvotes; may be negative
    std::int64_t created_utc = 0;
    bool is_self = false;
};

/// Dump field names vary across archive eras; this maps the canonical
/// fields onto whatever the file uses. Defaults match the common archive
/// self-post schema.
struct FieldMap {
    std::string id = "id";
    std::string author = "author";
    std::string subreddit = "subreddit";
    std::string title = "title";
    std::string body = "selftext";
    std::string score = "score";
    std::string created_utc = "created_utc";
    std::string is_self = "is_self";
};

struct IngestConfig {
    FieldMap fields;
    // Lowercased subreddit names; empty means accept every subreddit.
    std::vector<std::string> subreddit_allowlist;
};

struct SkipReport {
    std::size_t lines_read = 0;
    std::size_t posts_emitted = 0;
    std::size_t lines_skipped = 0;
};

namespace detail {

inline std::string normalize_subreddit(std::string_view s) {
    if (s.size() >= 2 && (s[0] == 'r' || s[0] == 'R') && s[1] == '/') s.remove_prefix(2);
    return to_lower_ascii(s);
}

inline std::optional<std::string> json_string(const nlohmann::json& obj, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
}

/// Integers arrive as numbers in most dumps and as decimal strings in a
/// few old ones; accept both.
inline std::optional<std::int64_t> json_int(const nlohmann::json& obj, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (it->is_number_integer()) return it->get<std::int64_t>();
    if (it->is_number_float()) return static_cast<std::int64_t>(it->get<double>());
    if (it->is_string()) {
        try {
            std::size_t pos = 0;
            const std::string s = it->get<std::string>();
            const std::int64_t v = std::stoll(s, &pos);
            if (pos == s.size()) return v;
        } catch (...) {
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Build a RawPost from one parsed dump object. Returns nullopt (with a
/// reason in *error) when the record is unusable: no id, or a present-but-
/// wrong-typed score/created_utc. Absent optional fields get defaults;
/// a missing is_self is assumed true when the body is non-empty.
inline std::optional<RawPost> post_from_json(const nlohmann::json& obj, const FieldMap& fields,
                                             std::string* error = nullptr) {
    auto fail = [error](const char* why) -> std::optional<RawPost> {
        if (error) *error = why;
        return std::nullopt;
    };
    if (!obj.is_object()) return fail("not a JSON object");

    RawPost post;
    auto id = detail::json_string(obj, fields.id);
    if (!id || id->empty()) return fail("missing or empty id");
    post.id = std::move(*id);

    post.author = detail::json_string(obj, fields.author).value_or("");
    post.subreddit =
        detail::normalize_subreddit(detail::json_string(obj, fields.subreddit).value_or(""));
    post.title = detail::json_string(obj, fields.title).value_or("");
    post.body = detail::json_string(obj, fields.body).value_or("");

    if (obj.contains(fields.score)) {
        auto score = detail::json_int(obj, fields.score);
        if (!score) return fail("score is not an integer");
        post.score = *score;
    }
    if (obj.contains(fields.created_utc)) {
        auto created = detail::json_int(obj, fields.created_utc);
        if (!created) return fail("created_utc is not an integer");
        post.created_utc = *created;
    }

    auto self_it = obj.find(fields.is_self);
    if (self_it != obj.end() && self_it->is_boolean()) {
        post.is_self = self_it->get<bool>();
    } else {
        post.is_self = !post.body.empty();
    }
    return post;
}

inline std::optional<RawPost> post_from_line(std::string_view line, const FieldMap& fields,
                                             std::string* error = nullptr) {
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded()) {
        if (error) *error = "invalid JSON";
        return std::nullopt;
    }
    return post_from_json(obj, fields, error);
}

/// Streaming reader over a newline-delimited JSON dump. Holds one line at
/// a time; memory is bounded by the longest line regardless of file size.
/// Lines that fail validation are counted and skipped, never fatal.
class DumpReader {
public:
    explicit DumpReader(std::istream& in, FieldMap fields = {})
        : in_(in), fields_(std::move(fields)) {}

    bool next(RawPost& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++report_.lines_read;
            if (trim(line).empty()) continue;  // blank line, not an error
            auto post = post_from_line(line, fields_);
            if (!post) {
                ++report_.lines_skipped;
                continue;
            }
            out = std::move(*post);
            ++report_.posts_emitted;
            return true;
        }
        return false;
    }

    const SkipReport& report() const { return report_; }

private:
    std::istream& in_;
    FieldMap fields_;
    SkipReport report_;
};

/// Coarse ingest gate: self-posts scoring above 1 whose body contains both
/// "tl" and "dr" case-insensitively, restricted to the allowlist when one
/// is configured. Precise marker matching happens at extraction.
inline bool prefilter(const RawPost& post, const IngestConfig& config) {
    if (!post.is_self) return false;
    if (post.score <= 1) return false;
    const std::string body = to_lower_ascii(post.body);
    if (body.find("tl") == std::string::npos || body.find("dr") == std::string::npos)
        return false;
    if (!config.subreddit_allowlist.empty()) {
        bool listed = false;
        for (const auto& sub : config.subreddit_allowlist) {
            if (post.subreddit == sub) {
                listed = true;
                break;
            }
        }
        if (!listed) return false;
    }
    return true;
}

}  // namespace tldrkit
