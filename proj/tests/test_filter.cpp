#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "tldrkit/filter.hpp"

using namespace tldrkit;

namespace {

ExtractedPair make_pair_record(std::string content, std::string summary,
                               std::string author = "someone", std::string id = "t3_a") {
    ExtractedPair p;
    p.post_id = std::move(id);
    p.subreddit = "unit";
    p.author = std::move(author);
    p.content = std::move(content);
    p.summary = std::move(summary);
    p.content_words = count_words(p.content);
    p.summary_words = count_words(p.summary);
    p.score = 10;
    return p;
}

const std::string kLongContent =
    "this post goes on for quite a while explaining every detail of the situation "
    "with plenty of ordinary english words so that no rule other than the one under "
    "test can possibly fire because it is long and unremarkable";

}  // namespace

TEST_CASE("rejection rules fire with the right reason", "[filter]") {
    PairFilter filter;

    SECTION("short summary") {
        auto verdict = filter.check_stateless(
            make_pair_record(kLongContent, "only five words right here"));
        REQUIRE(verdict.has_value());
        CHECK(*verdict == RejectionReason::TooFewSummaryWords);
    }
    SECTION("summary not shorter than content") {
        auto verdict = filter.check_stateless(make_pair_record(
            "exactly six words in this content", "exactly six words in this summary"));
        REQUIRE(verdict.has_value());
        CHECK(*verdict == RejectionReason::SummaryNotShorterThanContent);
    }
    SECTION("deleted author") {
        auto verdict = filter.check_stateless(
            make_pair_record(kLongContent, "a perfectly fine summary of yes", "[deleted]"));
        REQUIRE(verdict.has_value());
        CHECK(*verdict == RejectionReason::UndefinedAuthor);
    }
    SECTION("empty author") {
        auto verdict = filter.check_stateless(
            make_pair_record(kLongContent, "a perfectly fine summary of yes", ""));
        REQUIRE(verdict.has_value());
        CHECK(*verdict == RejectionReason::UndefinedAuthor);
    }
    SECTION("bot author") {
        auto verdict = filter.check_stateless(
            make_pair_record(kLongContent, "a perfectly fine summary of yes", "remindmebot"));
        REQUIRE(verdict.has_value());
        CHECK(*verdict == RejectionReason::BotAuthor);
    }
    SECTION("non-English summary") {
        auto verdict = filter.check_stateless(make_pair_record(
            kLongContent, "el gato se sentó en la alfombra porque estaba allí"));
        REQUIRE(verdict.has_value());
        CHECK(*verdict == RejectionReason::NotEnglish);
    }
    SECTION("clean pair passes") {
        auto verdict = filter.check_stateless(
            make_pair_record(kLongContent, "the cat sat on the mat today"));
        CHECK_FALSE(verdict.has_value());
    }
}

TEST_CASE("first failing rule wins", "[filter]") {
    PairFilter filter;
    // violates UndefinedAuthor (rule 1) and TooFewSummaryWords (rule 3)
    auto verdict = filter.check_stateless(make_pair_record(kLongContent, "too short", ""));
    REQUIRE(verdict.has_value());
    CHECK(*verdict == RejectionReason::UndefinedAuthor);
}

TEST_CASE("language heuristic", "[filter]") {
    FilterConfig config;
    SECTION("plain English passes") {
        CHECK(is_english("the cat sat on the mat because it was there",
                         config.stopword_ratio_threshold));
    }
    SECTION("Spanish fails") {
        CHECK_FALSE(is_english("el gato se sentó en la alfombra porque estaba allí",
                               config.stopword_ratio_threshold));
    }
    SECTION("short texts are presumed English") {
        CHECK(is_english("", config.stopword_ratio_threshold));
        CHECK(is_english("wat", config.stopword_ratio_threshold));
        CHECK(is_english("cinco palabras cortas aqui ya", config.stopword_ratio_threshold));
    }
}

TEST_CASE("function word list is exactly one hundred distinct entries", "[filter]") {
    const auto& words = english_function_words();
    CHECK(words.size() == 100);
    std::set<std::string_view> unique(words.begin(), words.end());
    CHECK(unique.size() == 100);
    for (auto w : words) {
        CHECK_FALSE(w.empty());
        for (char c : w) CHECK((c >= 'a' && c <= 'z'));
    }
}

TEST_CASE("bot author detection", "[filter]") {
    FilterConfig config;
    CHECK(is_bot_author("remindmebot", config));
    CHECK(is_bot_author("AutoModerator", config));
    CHECK_FALSE(is_bot_author("throwaway_2020", config));
    CHECK_FALSE(is_bot_author("botanist", config));  // suffix only, not substring
    CHECK(is_bot_author("TotallyNotABot", config));  // suffix check is case-insensitive
}

TEST_CASE("dedup key strips everything but letters", "[filter]") {
    auto p = make_pair_record("Hello, World!", "OK then.");
    CHECK(dedup_key(p) == "helloworldokthen");

    auto a = make_pair_record("price rose 40% today!!", "sold at 9am.");
    auto b = make_pair_record("price rose 9000% today", "sold at 5 am");
    CHECK(dedup_key(a) == dedup_key(b));

    auto empty = make_pair_record("", "");
    CHECK(dedup_key(empty).empty());
}

TEST_CASE("duplicates are rejected, first occurrence kept", "[filter]") {
    PairFilter filter;
    auto first = make_pair_record(kLongContent, "the cat sat on a mat", "alice", "t3_1");
    auto second = make_pair_record(kLongContent + "!!!", "the cat sat on a mat???", "bob", "t3_2");

    CHECK_FALSE(filter.check(first).has_value());
    auto verdict = filter.check(second);
    REQUIRE(verdict.has_value());
    CHECK(*verdict == RejectionReason::Duplicate);

    auto report = filter.report();
    CHECK(report.pairs_in == 2);
    CHECK(report.pairs_out == 1);
    CHECK(report.rejected_by_reason.at("Duplicate") == 1);
}

TEST_CASE("report balances and filtering is idempotent", "[filter]") {
    std::vector<ExtractedPair> corpus;
    corpus.push_back(make_pair_record(kLongContent, "the cat sat on the mat", "alice", "t3_1"));
    corpus.push_back(make_pair_record(kLongContent, "too short", "alice", "t3_2"));
    corpus.push_back(make_pair_record(kLongContent, "a good enough summary here", "", "t3_3"));
    corpus.push_back(
        make_pair_record(kLongContent, "the cat sat on the mat!", "carol", "t3_4"));  // dup
    corpus.push_back(
        make_pair_record(kLongContent, "another perfectly good summary right here", "dave",
                         "t3_5"));

    PairFilter filter;
    std::vector<ExtractedPair> kept;
    for (const auto& p : corpus)
        if (!filter.check(p).has_value()) kept.push_back(p);

    auto report = filter.report();
    CHECK(report.pairs_in == 5);
    CHECK(report.pairs_out == 2);
    CHECK(report.balanced());
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].post_id == "t3_1");
    CHECK(kept[1].post_id == "t3_5");

    PairFilter second;
    std::size_t rejected = 0;
    for (const auto& p : kept)
        if (second.check(p).has_value()) ++rejected;
    CHECK(rejected == 0);
    CHECK(second.report().pairs_out == kept.size());
}

TEST_CASE("removing a rule never decreases survivors", "[filter]") {
    std::vector<ExtractedPair> corpus;
    corpus.push_back(make_pair_record(kLongContent, "the cat sat on the mat", "alice"));
    corpus.push_back(make_pair_record(kLongContent, "too short", "bob"));
    corpus.push_back(make_pair_record(kLongContent, "a fine summary of decent length", ""));
    corpus.push_back(make_pair_record(kLongContent, "a fine summary of decent length!", "carol"));
    corpus.push_back(make_pair_record(
        kLongContent, "el gato se sentó en la alfombra porque estaba allí", "erin"));
    corpus.push_back(make_pair_record("short content", "short content but even longer summary",
                                      "frank"));

    auto survivors = [&corpus](unsigned mask) {
        PairFilter filter({}, mask);
        std::size_t kept = 0;
        for (const auto& p : corpus)
            if (!filter.check(p).has_value()) ++kept;
        return kept;
    };

    const std::size_t all = survivors(kAllRules);
    for (unsigned bit = 0; bit < 6; ++bit) {
        unsigned mask = kAllRules & ~(1u << bit);
        INFO("dropping rule bit " << bit);
        CHECK(survivors(mask) >= all);
    }
}
