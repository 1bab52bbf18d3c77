// Command-line front end: each subcommand wraps one pipeline stage, and
// `pipeline` chains them end to end. Configuration precedence is
// CLI flag > config file > built-in default.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tldrkit/archive.hpp"
#include "tldrkit/eval.hpp"
#include "tldrkit/pipeline.hpp"
#include "tldrkit/version.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string domain;
    unsigned threads = 0;
    bool threads_set = false;
};

tldrkit::PipelineConfig resolve_config(const CommonFlags& flags) {
    tldrkit::PipelineConfig config;
    if (!flags.config_path.empty()) config = tldrkit::load_pipeline_config(flags.config_path);
    if (!flags.domain.empty()) tldrkit::apply_domain(config, flags.domain);
    if (flags.threads_set) config.threads = flags.threads;
    return config;
}

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON configuration file");
    cmd->add_option("--domain", flags.domain,
                    "named subreddit allowlist from the config's domains table");
    cmd->add_option("--threads", flags.threads, "worker threads (default: one per processor)")
        ->check(CLI::PositiveNumber)
        ->each([&flags](const std::string&) { flags.threads_set = true; });
}

void print_skip_report(const tldrkit::IngestStageReport& report) {
    std::cerr << "ingest: read " << report.skip.lines_read << " lines, emitted "
              << report.posts_out << " posts (" << report.skip.lines_skipped
              << " unparseable, " << report.prefilter_rejected << " rejected by prefilter)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reddit self-post summarization corpus toolkit"};
    app.set_version_flag("--version", TLDRKIT_VERSION);
    app.require_subcommand(1);

    std::string active_stage = "tldrkit";

    // ingest
    CommonFlags ingest_flags;
    std::string ingest_input, ingest_output, ingest_report_path;
    std::string endpoint, endpoint_subreddit;
    std::int64_t after = 0, before = 0;
    std::size_t page_size = 100;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "parse a raw dump (or fetch one) into canonical posts");
    add_common(ingest_cmd, ingest_flags);
    auto* ingest_in_opt =
        ingest_cmd->add_option("--input", ingest_input, "raw JSONL dump file");
    ingest_cmd->add_option("--output", ingest_output, "canonical posts JSONL")->required();
    ingest_cmd->add_option("--report", ingest_report_path, "write the skip report JSON here");
    auto* endpoint_opt = ingest_cmd->add_option(
        "--endpoint", endpoint, "archive API base URL to fetch from instead of --input");
    ingest_cmd->add_option("--subreddit", endpoint_subreddit, "subreddit to fetch")
        ->needs(endpoint_opt);
    ingest_cmd->add_option("--after", after, "fetch window start (unix time, exclusive)")
        ->needs(endpoint_opt);
    ingest_cmd->add_option("--before", before, "fetch window end (unix time, exclusive)")
        ->needs(endpoint_opt);
    ingest_cmd->add_option("--page-size", page_size, "posts per archive request")
        ->check(CLI::PositiveNumber)
        ->needs(endpoint_opt);
    ingest_in_opt->excludes(endpoint_opt);

    // extract
    CommonFlags extract_flags;
    std::string extract_input, extract_output;
    bool prepend_title = false;
    auto* extract_cmd =
        app.add_subcommand("extract", "carve content/summary pairs out of canonical posts");
    add_common(extract_cmd, extract_flags);
    extract_cmd->add_option("--input", extract_input, "canonical posts JSONL")->required();
    extract_cmd->add_option("--output", extract_output, "pairs JSONL")->required();
    auto* prepend_opt = extract_cmd->add_flag("--prepend-title", prepend_title,
                                              "prefix each content with the post title");

    // filter
    CommonFlags filter_flags;
    std::string filter_input, filter_output, filter_report_path;
    auto* filter_cmd = app.add_subcommand("filter", "drop low-quality and duplicate pairs");
    add_common(filter_cmd, filter_flags);
    filter_cmd->add_option("--input", filter_input, "pairs JSONL")->required();
    filter_cmd->add_option("--output", filter_output, "kept pairs JSONL")->required();
    filter_cmd->add_option("--report", filter_report_path, "write the rejection report JSON here");

    // stats
    CommonFlags stats_flags;
    std::string stats_input, stats_format = "table", stats_name = "corpus";
    auto* stats_cmd = app.add_subcommand("stats", "report corpus-level statistics");
    add_common(stats_cmd, stats_flags);
    stats_cmd->add_option("--input", stats_input, "pairs JSONL")->required();
    stats_cmd->add_option("--format", stats_format, "table, csv, or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    stats_cmd->add_option("--name", stats_name, "corpus label used in the report");

    // split
    CommonFlags split_flags;
    std::string split_input, split_prefix;
    std::uint64_t split_seed = 0;
    bool split_seed_set = false;
    auto* split_cmd =
        app.add_subcommand("split", "shuffle pairs into train/val/test files");
    add_common(split_cmd, split_flags);
    split_cmd->add_option("--input", split_input, "pairs JSONL")->required();
    split_cmd->add_option("--output", split_prefix, "output prefix (.train/.val/.test)")
        ->required();
    split_cmd->add_option("--seed", split_seed, "shuffle seed")
        ->each([&split_seed_set](const std::string&) { split_seed_set = true; });

    // baseline
    CommonFlags baseline_flags;
    std::string baseline_input, baseline_output, baseline_refs;
    std::size_t lead_k = 35;
    auto* baseline_cmd =
        app.add_subcommand("baseline", "emit lead-k predictions for a pair file");
    add_common(baseline_cmd, baseline_flags);
    baseline_cmd->add_option("--input", baseline_input, "pairs JSONL")->required();
    baseline_cmd->add_option("--output", baseline_output, "predictions JSONL")->required();
    baseline_cmd->add_option("--lead", lead_k, "words to copy from the content")
        ->check(CLI::PositiveNumber);
    baseline_cmd->add_option("--references-out", baseline_refs,
                             "also write the pair summaries as a references file");

    // eval
    CommonFlags eval_flags;
    std::string eval_predictions, eval_references, eval_format = "table";
    auto* eval_cmd =
        app.add_subcommand("eval", "score predictions against references with unigram "
                                   "and bigram overlap");
    add_common(eval_cmd, eval_flags);
    eval_cmd->add_option("--predictions", eval_predictions, "predictions JSONL")->required();
    eval_cmd->add_option("--references", eval_references, "references JSONL")->required();
    eval_cmd->add_option("--format", eval_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    // pipeline
    CommonFlags pipeline_flags;
    std::string pipeline_input, pipeline_out_dir;
    std::uint64_t pipeline_seed = 0;
    bool pipeline_seed_set = false;
    auto* pipeline_cmd = app.add_subcommand(
        "pipeline", "run ingest, extract, filter, stats, and split in one pass");
    add_common(pipeline_cmd, pipeline_flags);
    pipeline_cmd->add_option("--input", pipeline_input, "raw JSONL dump file")->required();
    pipeline_cmd->add_option("--output", pipeline_out_dir, "output directory")->required();
    pipeline_cmd->add_option("--seed", pipeline_seed, "shuffle seed override")
        ->each([&pipeline_seed_set](const std::string&) { pipeline_seed_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest_cmd->parsed()) {
            active_stage = "ingest";
            auto config = resolve_config(ingest_flags);
            tldrkit::IngestStageReport report;
            if (!endpoint.empty()) {
                if (endpoint_subreddit.empty())
                    throw tldrkit::ConfigInvalid("--endpoint requires --subreddit");
                tldrkit::ArchiveOptions options;
                options.page_size = page_size;
                options.fields = config.ingest.fields;
                tldrkit::ArchiveClient client(endpoint, options);
                auto out = tldrkit::open_output(ingest_output);
                client.fetch(endpoint_subreddit, {after, before},
                             [&](const tldrkit::RawPost& post) {
                                 ++report.skip.lines_read;
                                 ++report.skip.posts_emitted;
                                 if (!tldrkit::prefilter(post, config.ingest)) {
                                     ++report.prefilter_rejected;
                                     return;
                                 }
                                 tldrkit::write_jsonl_line(out, tldrkit::to_json(post));
                                 ++report.posts_out;
                             });
            } else {
                if (ingest_input.empty())
                    throw tldrkit::ConfigInvalid("either --input or --endpoint is required");
                report = tldrkit::run_ingest(ingest_input, ingest_output, config.ingest);
            }
            if (!ingest_report_path.empty()) {
                auto out = tldrkit::open_output(ingest_report_path);
                out << tldrkit::to_json(report.skip).dump(2) << '\n';
            }
            print_skip_report(report);
        } else if (extract_cmd->parsed()) {
            active_stage = "extract";
            auto config = resolve_config(extract_flags);
            if (prepend_opt->count() > 0) config.extract.prepend_title = prepend_title;
            auto report = tldrkit::run_extract(extract_input, extract_output, config.extract,
                                               config.resolved_threads());
            std::cerr << "extract: " << report.posts_in << " posts in, " << report.pairs_out
                      << " pairs out (" << report.no_marker << " without a marker, "
                      << report.empty_summary << " empty summaries, " << report.empty_content
                      << " empty contents)\n";
        } else if (filter_cmd->parsed()) {
            active_stage = "filter";
            auto config = resolve_config(filter_flags);
            auto report = tldrkit::run_filter(filter_input, filter_output, config.filter,
                                              config.resolved_threads());
            if (!filter_report_path.empty()) {
                auto out = tldrkit::open_output(filter_report_path);
                out << tldrkit::to_json(report).dump(2) << '\n';
            }
            std::cerr << "filter: kept " << report.pairs_out << " of " << report.pairs_in
                      << " pairs\n";
        } else if (stats_cmd->parsed()) {
            active_stage = "stats";
            resolve_config(stats_flags);  // stats takes nothing from it, but a bad file must fail
            auto stats = tldrkit::run_stats(stats_input);
            if (stats_format == "json")
                std::cout << tldrkit::to_json(stats).dump(2) << '\n';
            else if (stats_format == "csv")
                std::cout << tldrkit::render_stats_csv(stats, stats_name);
            else
                std::cout << tldrkit::render_stats_table(stats, stats_name);
        } else if (split_cmd->parsed()) {
            active_stage = "split";
            auto config = resolve_config(split_flags);
            if (split_seed_set) config.split.seed = split_seed;
            auto result = tldrkit::run_split(split_input, split_prefix, config.split);
            std::cerr << "split: " << result.sizes.train << " train, " << result.sizes.val
                      << " val, " << result.sizes.test << " test -> " << split_prefix
                      << ".{train,val,test}\n";
        } else if (baseline_cmd->parsed()) {
            active_stage = "baseline";
            resolve_config(baseline_flags);
            auto report =
                tldrkit::run_baseline(baseline_input, baseline_output, lead_k, baseline_refs);
            std::cerr << "baseline: wrote " << report.predictions << " lead-" << lead_k
                      << " predictions\n";
        } else if (eval_cmd->parsed()) {
            active_stage = "eval";
            resolve_config(eval_flags);
            auto result = tldrkit::evaluate_files(eval_predictions, eval_references);
            if (eval_format == "json")
                std::cout << tldrkit::eval_report_json(result).dump(2) << '\n';
            else
                std::cout << tldrkit::eval_table_line(result.corpus) << '\n';
        } else if (pipeline_cmd->parsed()) {
            active_stage = "pipeline";
            auto config = resolve_config(pipeline_flags);
            if (pipeline_seed_set) config.split.seed = pipeline_seed;
            auto result = tldrkit::run_pipeline(pipeline_input, pipeline_out_dir, config);
            print_skip_report(result.ingest);
            std::cerr << "extract: " << result.extract.pairs_out << " pairs\n"
                      << "filter: kept " << result.filter.pairs_out << " of "
                      << result.filter.pairs_in << "\n"
                      << "split: " << result.split.sizes.train << "/" << result.split.sizes.val
                      << "/" << result.split.sizes.test << "\n"
                      << "manifest: " << result.manifest_path << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "tldrkit " << active_stage << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
