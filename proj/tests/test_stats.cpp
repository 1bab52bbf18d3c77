#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "tldrkit/stats.hpp"

using namespace tldrkit;

namespace {

ExtractedPair pair_with_counts(std::size_t content_words, std::size_t summary_words,
                               std::string subreddit = "unit") {
    ExtractedPair p;
    p.post_id = "t3_s";
    p.subreddit = std::move(subreddit);
    p.author = "someone";
    p.content_words = content_words;
    p.summary_words = summary_words;
    return p;
}

}  // namespace

TEST_CASE("three-pair fixture means and median", "[stats]") {
    StatsAccumulator acc;
    acc.add(pair_with_counts(10, 4));
    acc.add(pair_with_counts(20, 10));
    acc.add(pair_with_counts(30, 4));

    auto stats = acc.finalize();
    CHECK(stats.pair_count == 3);
    CHECK_THAT(stats.avg_summary_words, Catch::Matchers::WithinAbs(6.0, 1e-12));
    CHECK_THAT(stats.avg_content_words, Catch::Matchers::WithinAbs(20.0, 1e-12));
    CHECK_THAT(stats.median_summary_words, Catch::Matchers::WithinAbs(4.0, 1e-12));
}

TEST_CASE("median of an even count averages the middle two", "[stats]") {
    StatsAccumulator acc;
    for (std::size_t w : {2, 4, 6, 8}) acc.add(pair_with_counts(100, w));
    auto stats = acc.finalize();
    CHECK_THAT(stats.median_summary_words, Catch::Matchers::WithinAbs(5.0, 1e-12));
}

TEST_CASE("empty input yields zeroed stats", "[stats]") {
    StatsAccumulator acc;
    auto stats = acc.finalize();
    CHECK(stats.pair_count == 0);
    CHECK(stats.avg_content_words == 0.0);
    CHECK(stats.avg_summary_words == 0.0);
    CHECK(stats.median_summary_words == 0.0);
    CHECK(stats.subreddit_shares.empty());
}

TEST_CASE("subreddit shares sorted descending and summing to one", "[stats]") {
    StatsAccumulator acc;
    for (int i = 0; i < 6; ++i) acc.add(pair_with_counts(50, 10, "askdocs"));
    for (int i = 0; i < 3; ++i) acc.add(pair_with_counts(50, 10, "legaladvice"));
    acc.add(pair_with_counts(50, 10, "college"));

    auto stats = acc.finalize();
    REQUIRE(stats.subreddit_shares.size() == 3);
    CHECK(stats.subreddit_shares[0].subreddit == "askdocs");
    CHECK(stats.subreddit_shares[0].count == 6);
    CHECK_THAT(stats.subreddit_shares[0].fraction, Catch::Matchers::WithinAbs(0.6, 1e-12));
    CHECK(stats.subreddit_shares[1].subreddit == "legaladvice");
    CHECK(stats.subreddit_shares[2].subreddit == "college");

    std::size_t total = 0;
    double fraction_sum = 0.0;
    for (const auto& share : stats.subreddit_shares) {
        total += share.count;
        fraction_sum += share.fraction;
    }
    CHECK(total == stats.pair_count);
    CHECK_THAT(fraction_sum, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("shard merge equals whole-corpus computation", "[stats]") {
    std::vector<ExtractedPair> corpus;
    for (std::size_t i = 1; i <= 25; ++i)
        corpus.push_back(pair_with_counts(10 * i, i % 7 + 3, i % 2 ? "a" : "b"));

    StatsAccumulator whole, left, right;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        whole.add(corpus[i]);
        (i < 12 ? left : right).add(corpus[i]);
    }
    left.merge(right);

    auto a = whole.finalize();
    auto b = left.finalize();
    CHECK(a.pair_count == b.pair_count);
    CHECK_THAT(a.avg_content_words, Catch::Matchers::WithinAbs(b.avg_content_words, 1e-12));
    CHECK_THAT(a.avg_summary_words, Catch::Matchers::WithinAbs(b.avg_summary_words, 1e-12));
    CHECK_THAT(a.median_summary_words, Catch::Matchers::WithinAbs(b.median_summary_words, 1e-12));
    REQUIRE(a.subreddit_shares.size() == b.subreddit_shares.size());
    for (std::size_t i = 0; i < a.subreddit_shares.size(); ++i) {
        CHECK(a.subreddit_shares[i].subreddit == b.subreddit_shares[i].subreddit);
        CHECK(a.subreddit_shares[i].count == b.subreddit_shares[i].count);
    }
}

TEST_CASE("order independence", "[stats]") {
    StatsAccumulator forward, backward;
    std::vector<ExtractedPair> corpus;
    for (std::size_t i = 1; i <= 9; ++i) corpus.push_back(pair_with_counts(i * 3, i));
    for (const auto& p : corpus) forward.add(p);
    for (auto it = corpus.rbegin(); it != corpus.rend(); ++it) backward.add(*it);

    auto a = forward.finalize();
    auto b = backward.finalize();
    CHECK(a.avg_summary_words == b.avg_summary_words);
    CHECK(a.median_summary_words == b.median_summary_words);
}

TEST_CASE("report renderers include the headline numbers", "[stats]") {
    StatsAccumulator acc;
    acc.add(pair_with_counts(10, 4, "askdocs"));
    acc.add(pair_with_counts(20, 10, "askdocs"));
    acc.add(pair_with_counts(30, 4, "askdocs"));
    auto stats = acc.finalize();

    auto table = render_stats_table(stats, "medical");
    CHECK(table.find("medical") != std::string::npos);
    CHECK(table.find("6.00") != std::string::npos);
    CHECK(table.find("20.00") != std::string::npos);
    CHECK(table.find("askdocs") != std::string::npos);

    auto csv = render_stats_csv(stats, "medical");
    CHECK(csv.find("medical") != std::string::npos);
    CHECK(csv.find("3") != std::string::npos);
}
