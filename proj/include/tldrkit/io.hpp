#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tldrkit/extract.hpp"
#include "tldrkit/ingest.hpp"

namespace tldrkit {

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open input file: " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot open output file: " + path);
    return out;
}

/// Canonical-field JSON for a validated post (stage boundary format;
/// distinct from dump schemas, which FieldMap handles on the way in).
inline nlohmann::json to_json(const RawPost& post) {
    return nlohmann::json{
        {"id", post.id},
        {"author", post.author},
        {"subreddit", post.subreddit},
        {"title", post.title},
        {"body", post.body},
        {"score", post.score},
        {"created_utc", post.created_utc},
        {"is_self", post.is_self},
    };
}

inline FieldMap canonical_post_fields() {
    FieldMap fields;
    fields.body = "body";
    return fields;
}

inline nlohmann::json to_json(const ExtractedPair& pair) {
    return nlohmann::json{
        {"post_id", pair.post_id},
        {"subreddit", pair.subreddit},
        {"content", pair.content},
        {"summary", pair.summary},
        {"content_words", pair.content_words},
        {"summary_words", pair.summary_words},
        {"marker_position", to_string(pair.marker_position)},
        {"score", pair.score},
        {"author", pair.author},
    };
}

inline std::optional<ExtractedPair> pair_from_json(const nlohmann::json& obj,
                                                   std::string* error = nullptr) {
    auto fail = [error](const char* why) -> std::optional<ExtractedPair> {
        if (error) *error = why;
        return std::nullopt;
    };
    if (!obj.is_object()) return fail("not a JSON object");
    ExtractedPair pair;
    try {
        pair.post_id = obj.at("post_id").get<std::string>();
        pair.subreddit = obj.value("subreddit", std::string{});
        pair.content = obj.at("content").get<std::string>();
        pair.summary = obj.at("summary").get<std::string>();
        pair.content_words = obj.value("content_words", static_cast<std::size_t>(0));
        pair.summary_words = obj.value("summary_words", static_cast<std::size_t>(0));
        pair.score = obj.value("score", static_cast<std::int64_t>(0));
        pair.author = obj.value("author", std::string{});
        auto pos = marker_position_from_string(obj.value("marker_position", "End"));
        if (!pos) return fail("bad marker_position");
        pair.marker_position = *pos;
    } catch (const nlohmann::json::exception&) {
        return fail("missing or mistyped field");
    }
    return pair;
}

inline std::optional<ExtractedPair> pair_from_line(std::string_view line,
                                                   std::string* error = nullptr) {
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded()) {
        if (error) *error = "invalid JSON";
        return std::nullopt;
    }
    return pair_from_json(obj, error);
}

/// Streaming ExtractedPair reader over pair JSONL. Unparseable lines throw:
/// pair files are produced by this toolkit, so damage means the pipeline
/// is wired wrong, not that the data is dirty.
class PairReader {
public:
    explicit PairReader(std::istream& in) : in_(in) {}

    bool next(ExtractedPair& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (trim(line).empty()) continue;
            std::string error;
            auto pair = pair_from_line(line, &error);
            if (!pair)
                throw FileError("pair file line " + std::to_string(line_no_) + ": " + error);
            out = std::move(*pair);
            return true;
        }
        return false;
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

inline void write_jsonl_line(std::ostream& out, const nlohmann::json& obj) {
    out << obj.dump() << '\n';
}

}  // namespace tldrkit
