#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "tldrkit/ingest.hpp"

namespace tldrkit {

struct EndpointUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonJsonResponse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArchiveOptions {
    int page_size = 100;
    std::chrono::milliseconds min_request_delay{1000};
    int max_retries = 3;  // attempts per page before giving up
    std::chrono::milliseconds retry_backoff{250};
    FieldMap fields;  // archive responses use dump-style field names
};

struct TimeWindow {
    std::int64_t after = 0;   // exclusive
    std::int64_t before = 0;  // exclusive
};

namespace detail {

struct ParsedUrl {
    std::string host_port;  // scheme://host[:port]
    std::string path;       // leading '/', no query
};

inline ParsedUrl parse_endpoint_url(const std::string& url) {
    ParsedUrl parsed;
    auto scheme_end = url.find("://");
    std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto path_start = url.find('/', host_start);
    if (path_start == std::string::npos) {
        parsed.host_port = url;
        parsed.path = "/";
    } else {
        parsed.host_port = url.substr(0, path_start);
        parsed.path = url.substr(path_start);
    }
    return parsed;
}

}  // namespace detail

/// Paginated archive-endpoint client. Issues repeated GETs with
/// subreddit/after/before/size query parameters, walking forward on
/// created_utc; the response body must be a JSON object carrying a "data"
/// array of post objects.
class ArchiveClient {
public:
    explicit ArchiveClient(const std::string& endpoint_url, ArchiveOptions options = {})
        : options_(std::move(options)) {
        if (options_.page_size < 1)
            throw std::invalid_argument("archive page_size must be >= 1");
        auto parsed = detail::parse_endpoint_url(endpoint_url);
        path_ = parsed.path;
        client_ = std::make_unique<httplib::Client>(parsed.host_port);
        client_->set_connection_timeout(10, 0);
        client_->set_read_timeout(30, 0);
    }

    std::size_t requests_made() const { return requests_made_; }

    /// Stream every post in (window.after, window.before) to `sink`.
    /// Transient failures retry with backoff, resuming from the last
    /// created_utc seen; a page that stays unfetchable through the retry
    /// budget raises EndpointUnreachable.
    void fetch(const std::string& subreddit, TimeWindow window,
               const std::function<void(const RawPost&)>& sink) {
        if (window.after >= window.before) return;

        std::int64_t cursor = window.after;
        std::unordered_set<std::string> last_batch_ids;
        while (true) {
            const nlohmann::json page = fetch_page(subreddit, cursor, window.before);
            const auto& data = page.at("data");

            std::size_t fresh = 0;
            std::int64_t max_utc = cursor;
            std::unordered_set<std::string> batch_ids;
            for (const auto& obj : data) {
                auto post = post_from_json(obj, options_.fields);
                if (!post) continue;  // malformed archive record; skip
                if (post->created_utc <= window.after || post->created_utc >= window.before)
                    continue;
                batch_ids.insert(post->id);
                if (last_batch_ids.count(post->id)) continue;  // page-boundary repeat
                ++fresh;
                if (post->created_utc > max_utc) max_utc = post->created_utc;
                sink(*post);
            }

            if (data.size() < static_cast<std::size_t>(options_.page_size)) break;
            if (fresh == 0) break;  // cursor cannot advance; server is repeating itself
            cursor = max_utc;
            last_batch_ids = std::move(batch_ids);
        }
    }

private:
    nlohmann::json fetch_page(const std::string& subreddit, std::int64_t after,
                              std::int64_t before) {
        std::string url = path_;
        url += (url.find('?') == std::string::npos) ? '?' : '&';
        url += "subreddit=" + subreddit;
        url += "&after=" + std::to_string(after);
        url += "&before=" + std::to_string(before);
        url += "&size=" + std::to_string(options_.page_size);

        for (int attempt = 1; attempt <= options_.max_retries; ++attempt) {
            throttle();
            ++requests_made_;
            httplib::Result res = client_->Get(url);
            if (res && res->status == 200) {
                nlohmann::json body =
                    nlohmann::json::parse(res->body, nullptr, /*allow_exceptions=*/false);
                if (body.is_discarded() || !body.is_object() || !body.contains("data") ||
                    !body.at("data").is_array())
                    throw NonJsonResponse("archive endpoint returned a non-JSON page");
                return body;
            }
            if (attempt < options_.max_retries)
                std::this_thread::sleep_for(options_.retry_backoff * attempt);
        }
        throw EndpointUnreachable("archive endpoint unreachable after " +
                                  std::to_string(options_.max_retries) + " attempts");
    }

    void throttle() {
        const auto now = std::chrono::steady_clock::now();
        if (requests_made_ > 0) {
            const auto elapsed = now - last_request_;
            if (elapsed < options_.min_request_delay)
                std::this_thread::sleep_for(options_.min_request_delay - elapsed);
        }
        last_request_ = std::chrono::steady_clock::now();
    }

    ArchiveOptions options_;
    std::string path_;
    std::unique_ptr<httplib::Client> client_;
    std::size_t requests_made_ = 0;
    std::chrono::steady_clock::time_point last_request_{};
};

}  // namespace tldrkit
