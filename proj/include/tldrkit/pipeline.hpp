#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tldrkit/eval.hpp"
#include "tldrkit/extract.hpp"
#include "tldrkit/filter.hpp"
#include "tldrkit/hash.hpp"
#include "tldrkit/ingest.hpp"
#include "tldrkit/io.hpp"
#include "tldrkit/parallel.hpp"
#include "tldrkit/rouge.hpp"
#include "tldrkit/split.hpp"
#include "tldrkit/stats.hpp"
#include "tldrkit/version.hpp"

namespace tldrkit {

struct ConfigInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineConfig {
    IngestConfig ingest;
    ExtractOptions extract;
    FilterConfig filter;
    SplitSpec split;
    std::map<std::string, std::vector<std::string>> domains;  // name -> subreddits
    unsigned threads = 0;  // 0 = one worker per processor

    unsigned resolved_threads() const { return threads ? threads : default_thread_count(); }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::string& where,
                                std::initializer_list<std::string_view> known) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || k == key;
        if (!ok)
            throw ConfigInvalid("unknown config key: " + (where.empty() ? key : where + "." + key));
    }
}

inline void parse_field_map(const nlohmann::json& obj, FieldMap& fields) {
    if (!obj.is_object()) throw ConfigInvalid("ingest.fields must be an object");
    reject_unknown_keys(obj, "ingest.fields", {"id", "author", "subreddit", "title", "body",
                                               "score", "created_utc", "is_self"});
    auto get = [&obj](const char* key, std::string& dst) {
        if (obj.contains(key)) {
            if (!obj.at(key).is_string())
                throw ConfigInvalid(std::string("ingest.fields.") + key + " must be a string");
            dst = obj.at(key).get<std::string>();
        }
    };
    get("id", fields.id);
    get("author", fields.author);
    get("subreddit", fields.subreddit);
    get("title", fields.title);
    get("body", fields.body);
    get("score", fields.score);
    get("created_utc", fields.created_utc);
    get("is_self", fields.is_self);
}

inline std::vector<std::string> parse_subreddit_list(const nlohmann::json& arr,
                                                     const std::string& where) {
    if (!arr.is_array()) throw ConfigInvalid(where + " must be an array of subreddit names");
    std::vector<std::string> out;
    for (const auto& item : arr) {
        if (!item.is_string()) throw ConfigInvalid(where + " entries must be strings");
        out.push_back(normalize_subreddit(item.get<std::string>()));
    }
    return out;
}

}  // namespace detail

/// Parse a pipeline config object. Unknown keys are rejected at every level
/// so a typo'd setting fails loudly instead of silently using a default.
inline PipelineConfig parse_pipeline_config(const nlohmann::json& root) {
    if (!root.is_object()) throw ConfigInvalid("config root must be a JSON object");
    detail::reject_unknown_keys(root, "",
                                {"ingest", "extract", "filter", "split", "domains", "threads"});

    PipelineConfig config;
    if (root.contains("ingest")) {
        const auto& ingest = root.at("ingest");
        if (!ingest.is_object()) throw ConfigInvalid("ingest must be an object");
        detail::reject_unknown_keys(ingest, "ingest", {"fields", "subreddit_allowlist"});
        if (ingest.contains("fields")) detail::parse_field_map(ingest.at("fields"), config.ingest.fields);
        if (ingest.contains("subreddit_allowlist"))
            config.ingest.subreddit_allowlist = detail::parse_subreddit_list(
                ingest.at("subreddit_allowlist"), "ingest.subreddit_allowlist");
    }
    if (root.contains("extract")) {
        const auto& extract = root.at("extract");
        if (!extract.is_object()) throw ConfigInvalid("extract must be an object");
        detail::reject_unknown_keys(extract, "extract", {"prepend_title"});
        if (extract.contains("prepend_title"))
            config.extract.prepend_title = extract.at("prepend_title").get<bool>();
    }
    if (root.contains("filter")) {
        const auto& filter = root.at("filter");
        if (!filter.is_object()) throw ConfigInvalid("filter must be an object");
        detail::reject_unknown_keys(filter, "filter",
                                    {"min_summary_words", "stopword_ratio_threshold",
                                     "bot_name_suffixes", "bot_name_list"});
        try {
            if (filter.contains("min_summary_words"))
                config.filter.min_summary_words = filter.at("min_summary_words").get<std::size_t>();
            if (filter.contains("stopword_ratio_threshold"))
                config.filter.stopword_ratio_threshold =
                    filter.at("stopword_ratio_threshold").get<double>();
            if (filter.contains("bot_name_suffixes"))
                config.filter.bot_name_suffixes =
                    filter.at("bot_name_suffixes").get<std::vector<std::string>>();
            if (filter.contains("bot_name_list"))
                config.filter.bot_name_list =
                    filter.at("bot_name_list").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigInvalid(std::string("filter config: ") + e.what());
        }
        if (config.filter.min_summary_words < 1)
            throw ConfigInvalid("filter.min_summary_words must be >= 1");
        if (config.filter.stopword_ratio_threshold < 0.0 ||
            config.filter.stopword_ratio_threshold > 1.0)
            throw ConfigInvalid("filter.stopword_ratio_threshold must be in [0,1]");
    }
    if (root.contains("split")) {
        const auto& split = root.at("split");
        if (!split.is_object()) throw ConfigInvalid("split must be an object");
        detail::reject_unknown_keys(split, "split", {"ratios", "seed"});
        try {
            if (split.contains("ratios")) {
                auto ratios = split.at("ratios").get<std::vector<double>>();
                if (ratios.size() != 3)
                    throw ConfigInvalid("split.ratios must hold exactly 3 fractions");
                for (std::size_t i = 0; i < 3; ++i) config.split.ratios[i] = ratios[i];
            }
            if (split.contains("seed"))
                config.split.seed = split.at("seed").get<std::uint64_t>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigInvalid(std::string("split config: ") + e.what());
        }
        config.split.validate();
    }
    if (root.contains("domains")) {
        const auto& domains = root.at("domains");
        if (!domains.is_object()) throw ConfigInvalid("domains must map name -> subreddit list");
        for (const auto& [name, list] : domains.items())
            config.domains[name] = detail::parse_subreddit_list(list, "domains." + name);
    }
    if (root.contains("threads")) {
        try {
            config.threads = root.at("threads").get<unsigned>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigInvalid(std::string("threads: ") + e.what());
        }
        if (config.threads < 1) throw ConfigInvalid("threads must be >= 1");
    }
    return config;
}

inline PipelineConfig load_pipeline_config(const std::string& path) {
    auto in = open_input(path);
    nlohmann::json root = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded()) throw ConfigInvalid("config file is not valid JSON: " + path);
    return parse_pipeline_config(root);
}

/// Resolve a --domain name against the config's allowlists.
inline void apply_domain(PipelineConfig& config, const std::string& domain) {
    auto it = config.domains.find(domain);
    if (it == config.domains.end())
        throw ConfigInvalid("unknown domain: " + domain);
    config.ingest.subreddit_allowlist = it->second;
}

inline nlohmann::json config_to_json(const PipelineConfig& config) {
    nlohmann::json fields{
        {"id", config.ingest.fields.id},
        {"author", config.ingest.fields.author},
        {"subreddit", config.ingest.fields.subreddit},
        {"title", config.ingest.fields.title},
        {"body", config.ingest.fields.body},
        {"score", config.ingest.fields.score},
        {"created_utc", config.ingest.fields.created_utc},
        {"is_self", config.ingest.fields.is_self},
    };
    return nlohmann::json{
        {"ingest",
         {{"fields", fields}, {"subreddit_allowlist", config.ingest.subreddit_allowlist}}},
        {"extract", {{"prepend_title", config.extract.prepend_title}}},
        {"filter",
         {{"min_summary_words", config.filter.min_summary_words},
          {"stopword_ratio_threshold", config.filter.stopword_ratio_threshold},
          {"bot_name_suffixes", config.filter.bot_name_suffixes},
          {"bot_name_list", config.filter.bot_name_list}}},
        {"split", {{"ratios", config.split.ratios}, {"seed", config.split.seed}}},
        {"domains", config.domains},
        {"threads", config.threads},
    };
}

/// Digest of the effective configuration, recorded in run manifests.
inline std::string config_digest(const PipelineConfig& config) {
    return to_hex64(fnv1a64(config_to_json(config).dump()));
}

inline std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------
// Stage runners. Each reads and writes JSONL files and returns its counts;
// the pipeline chains them and reconciles the counts in the run manifest.
// ---------------------------------------------------------------------------

struct IngestStageReport {
    SkipReport skip;
    std::size_t prefilter_rejected = 0;
    std::size_t posts_out = 0;
};

inline nlohmann::json to_json(const SkipReport& report) {
    return nlohmann::json{
        {"lines_read", report.lines_read},
        {"posts_emitted", report.posts_emitted},
        {"lines_skipped", report.lines_skipped},
    };
}

inline IngestStageReport run_ingest(std::istream& in, std::ostream& out,
                                    const IngestConfig& config) {
    IngestStageReport report;
    DumpReader reader(in, config.fields);
    RawPost post;
    while (reader.next(post)) {
        if (!prefilter(post, config)) {
            ++report.prefilter_rejected;
            continue;
        }
        write_jsonl_line(out, to_json(post));
        ++report.posts_out;
    }
    report.skip = reader.report();
    return report;
}

inline IngestStageReport run_ingest(const std::string& input_path,
                                    const std::string& output_path,
                                    const IngestConfig& config) {
    auto in = open_input(input_path);
    auto out = open_output(output_path);
    return run_ingest(in, out, config);
}

struct ExtractStageReport {
    std::size_t posts_in = 0;
    std::size_t pairs_out = 0;
    std::size_t no_marker = 0;
    std::size_t empty_summary = 0;
    std::size_t empty_content = 0;
};

inline ExtractStageReport run_extract(std::istream& in, std::ostream& out,
                                      const ExtractOptions& options, unsigned threads = 1) {
    ExtractStageReport report;
    const FieldMap fields = canonical_post_fields();
    constexpr std::size_t kBatch = 1024;

    std::vector<std::string> lines;
    lines.reserve(kBatch);
    std::vector<ExtractResult> results;

    auto flush = [&]() {
        parallel_transform(
            lines, results,
            [&fields, &options](const std::string& line) -> ExtractResult {
                auto post = post_from_line(line, fields);
                if (!post) {
                    ExtractResult bad;
                    bad.status = ExtractStatus::NoMarker;
                    return bad;  // unreachable for toolkit-produced stage files
                }
                return extract_pair(*post, options);
            },
            threads);
        for (const auto& res : results) {
            switch (res.status) {
                case ExtractStatus::Ok:
                    write_jsonl_line(out, to_json(res.pair));
                    ++report.pairs_out;
                    break;
                case ExtractStatus::NoMarker: ++report.no_marker; break;
                case ExtractStatus::EmptySummary: ++report.empty_summary; break;
                case ExtractStatus::EmptyContent: ++report.empty_content; break;
            }
        }
        lines.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++report.posts_in;
        lines.push_back(line);
        if (lines.size() >= kBatch) flush();
    }
    flush();
    return report;
}

inline ExtractStageReport run_extract(const std::string& input_path,
                                      const std::string& output_path,
                                      const ExtractOptions& options, unsigned threads = 1) {
    auto in = open_input(input_path);
    auto out = open_output(output_path);
    return run_extract(in, out, options, threads);
}

/// Filter stage: rules 1-5 evaluate per pair (parallel across a batch),
/// rule 6 (dedup) commits serially in input order so the kept
/// representative of each duplicate class is always the first occurrence.
inline FilterReport run_filter(std::istream& in, std::ostream& out, const FilterConfig& config,
                               unsigned threads = 1, unsigned rule_mask = kAllRules) {
    PairFilter filter(config, rule_mask);
    constexpr std::size_t kBatch = 1024;

    std::vector<ExtractedPair> pairs;
    pairs.reserve(kBatch);
    std::vector<std::optional<RejectionReason>> verdicts;

    auto flush = [&]() {
        parallel_transform(
            pairs, verdicts,
            [&filter](const ExtractedPair& pair) { return filter.check_stateless(pair); },
            threads);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (!filter.commit(pairs[i], verdicts[i]))
                write_jsonl_line(out, to_json(pairs[i]));
        }
        pairs.clear();
    };

    PairReader reader(in);
    ExtractedPair pair;
    while (reader.next(pair)) {
        pairs.push_back(std::move(pair));
        if (pairs.size() >= kBatch) flush();
    }
    flush();
    return filter.report();
}

inline FilterReport run_filter(const std::string& input_path, const std::string& output_path,
                               const FilterConfig& config, unsigned threads = 1,
                               unsigned rule_mask = kAllRules) {
    auto in = open_input(input_path);
    auto out = open_output(output_path);
    return run_filter(in, out, config, threads, rule_mask);
}

inline nlohmann::json to_json(const FilterReport& report) {
    return nlohmann::json{
        {"pairs_in", report.pairs_in},
        {"pairs_out", report.pairs_out},
        {"rejected_by_reason", report.rejected_by_reason},
    };
}

inline CorpusStats run_stats(std::istream& in) {
    StatsAccumulator acc;
    PairReader reader(in);
    ExtractedPair pair;
    while (reader.next(pair)) acc.add(pair);
    return acc.finalize();
}

inline CorpusStats run_stats(const std::string& input_path) {
    auto in = open_input(input_path);
    return run_stats(in);
}

inline nlohmann::json to_json(const CorpusStats& stats) {
    nlohmann::json shares = nlohmann::json::array();
    for (const auto& share : stats.subreddit_shares) {
        shares.push_back({{"subreddit", share.subreddit},
                          {"count", share.count},
                          {"fraction", share.fraction}});
    }
    auto round2 = [](double v) { return std::llround(v * 100.0) / 100.0; };
    return nlohmann::json{
        {"pair_count", stats.pair_count},
        {"avg_content_words", round2(stats.avg_content_words)},
        {"avg_summary_words", round2(stats.avg_summary_words)},
        {"median_summary_words", stats.median_summary_words},
        {"subreddit_shares", shares},
    };
}

struct SplitStageResult {
    SplitSizes sizes;
    std::array<std::string, 3> paths;      // .train/.val/.test
    std::array<std::string, 3> checksums;  // order-insensitive, hex
    std::string manifest_path;
};

/// Two-pass streaming split: the first pass records the byte offset of
/// every record line, the second copies lines out in permuted rank order.
/// Memory stays at ~16 bytes per record regardless of record size.
inline SplitStageResult run_split(const std::string& input_path,
                                  const std::string& output_prefix, const SplitSpec& spec) {
    spec.validate();

    struct Line {
        std::uint64_t offset;
        std::uint32_t length;
    };
    std::vector<Line> index;
    {
        auto in = open_input(input_path);
        std::string line;
        std::uint64_t offset = 0;
        while (std::getline(in, line)) {
            std::uint64_t consumed = static_cast<std::uint64_t>(line.size()) + (in.eof() ? 0 : 1);
            std::size_t len = line.size();
            while (len > 0 && (line[len - 1] == '\r')) --len;
            if (!trim(line).empty())
                index.push_back({offset, static_cast<std::uint32_t>(len)});
            offset += consumed;
        }
    }

    const SplitAssignment assignment = assign_splits(index.size(), spec);

    SplitStageResult result;
    result.sizes = assignment.sizes;
    result.paths = {output_prefix + ".train", output_prefix + ".val", output_prefix + ".test"};
    result.manifest_path = output_prefix + ".manifest.json";

    auto in = open_input(input_path);
    const std::array<const std::vector<std::size_t>*, 3> splits = {
        &assignment.train, &assignment.val, &assignment.test};
    std::string buf;
    for (std::size_t s = 0; s < 3; ++s) {
        auto out = open_output(result.paths[s]);
        std::uint64_t checksum = 0;
        for (std::size_t rank : *splits[s]) {
            const Line& entry = index[rank];
            buf.resize(entry.length);
            in.clear();
            in.seekg(static_cast<std::streamoff>(entry.offset));
            in.read(buf.data(), entry.length);
            if (in.gcount() != static_cast<std::streamsize>(entry.length))
                throw FileError("input changed while splitting: " + input_path);
            checksum += fnv1a64(buf);  // summed hashes: order-insensitive
            out << buf << '\n';
        }
        result.checksums[s] = to_hex64(checksum);
    }

    nlohmann::json manifest{
        {"seed", spec.seed},
        {"ratios", spec.ratios},
        {"sizes",
         {{"train", result.sizes.train}, {"val", result.sizes.val}, {"test", result.sizes.test}}},
        {"checksums",
         {{"train", result.checksums[0]},
          {"val", result.checksums[1]},
          {"test", result.checksums[2]}}},
    };
    auto mf = open_output(result.manifest_path);
    mf << manifest.dump(2) << '\n';
    return result;
}

struct BaselineStageReport {
    std::size_t predictions = 0;
};

/// Lead-k predictions for every pair; optionally also writes the matching
/// references file ({"post_id", "text": summary}) so eval can run without
/// any trained model.
inline BaselineStageReport run_baseline(std::istream& in, std::ostream& out, std::size_t k,
                                        std::ostream* references_out = nullptr) {
    BaselineStageReport report;
    PairReader reader(in);
    ExtractedPair pair;
    while (reader.next(pair)) {
        write_jsonl_line(out, nlohmann::json{{"post_id", pair.post_id},
                                             {"text", lead_k_prediction(pair.content, k)}});
        if (references_out)
            write_jsonl_line(*references_out,
                             nlohmann::json{{"post_id", pair.post_id}, {"text", pair.summary}});
        ++report.predictions;
    }
    return report;
}

inline BaselineStageReport run_baseline(const std::string& input_path,
                                        const std::string& output_path, std::size_t k,
                                        const std::string& references_path = {}) {
    auto in = open_input(input_path);
    auto out = open_output(output_path);
    if (references_path.empty()) return run_baseline(in, out, k, nullptr);
    auto refs = open_output(references_path);
    return run_baseline(in, out, k, &refs);
}

// ---------------------------------------------------------------------------
// Full pipeline: ingest -> extract -> filter -> stats -> split.
// ---------------------------------------------------------------------------

struct PipelineResult {
    std::filesystem::path out_dir;
    IngestStageReport ingest;
    ExtractStageReport extract;
    FilterReport filter;
    CorpusStats stats;
    SplitStageResult split;
    std::string manifest_path;
};

inline PipelineResult run_pipeline(const std::string& dump_path, const std::string& out_dir,
                                   const PipelineConfig& config) {
    namespace fs = std::filesystem;
    PipelineResult result;
    result.out_dir = fs::path(out_dir);
    fs::create_directories(result.out_dir);

    const std::string posts = (result.out_dir / "posts.jsonl").string();
    const std::string pairs = (result.out_dir / "pairs.jsonl").string();
    const std::string kept = (result.out_dir / "pairs.kept.jsonl").string();
    const std::string prefix = (result.out_dir / "corpus").string();

    const unsigned threads = config.resolved_threads();
    result.ingest = run_ingest(dump_path, posts, config.ingest);
    result.extract = run_extract(posts, pairs, config.extract, threads);
    result.filter = run_filter(pairs, kept, config.filter, threads);
    {
        auto out = open_output((result.out_dir / "filter_report.json").string());
        out << to_json(result.filter).dump(2) << '\n';
    }
    result.stats = run_stats(kept);
    {
        auto out = open_output((result.out_dir / "stats.json").string());
        out << to_json(result.stats).dump(2) << '\n';
        auto table = open_output((result.out_dir / "stats.txt").string());
        table << render_stats_table(result.stats, "corpus");
    }
    result.split = run_split(kept, prefix, config.split);

    nlohmann::json manifest{
        {"tool_version", TLDRKIT_VERSION},
        {"timestamp", iso8601_utc_now()},
        {"config_digest", config_digest(config)},
        {"stages",
         {{"ingest",
           {{"lines_read", result.ingest.skip.lines_read},
            {"posts_emitted", result.ingest.skip.posts_emitted},
            {"lines_skipped", result.ingest.skip.lines_skipped},
            {"prefilter_rejected", result.ingest.prefilter_rejected},
            {"posts_out", result.ingest.posts_out}}},
          {"extract",
           {{"posts_in", result.extract.posts_in},
            {"pairs_out", result.extract.pairs_out},
            {"no_marker", result.extract.no_marker},
            {"empty_summary", result.extract.empty_summary},
            {"empty_content", result.extract.empty_content}}},
          {"filter", to_json(result.filter)},
          {"stats", {{"pair_count", result.stats.pair_count}}},
          {"split",
           {{"train", result.split.sizes.train},
            {"val", result.split.sizes.val},
            {"test", result.split.sizes.test}}}}},
    };
    result.manifest_path = (result.out_dir / "manifest.json").string();
    auto mf = open_output(result.manifest_path);
    mf << manifest.dump(2) << '\n';
    return result;
}

}  // namespace tldrkit
