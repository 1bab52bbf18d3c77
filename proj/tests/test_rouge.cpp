#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cctype>
#include <random>
#include <string>
#include <vector>

#include "tldrkit/rouge.hpp"

using namespace tldrkit;

namespace {

// Independent oracle: its own tokenizer and a quadratic clipped-count overlap
// over explicit n-gram vectors, no shared code with the implementation.
std::vector<std::string> oracle_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<std::vector<std::string>> oracle_ngrams(const std::string& text, int n) {
    auto toks = oracle_tokens(text);
    std::vector<std::vector<std::string>> grams;
    if (static_cast<int>(toks.size()) < n) return grams;
    for (std::size_t i = 0; i + n <= toks.size(); ++i)
        grams.emplace_back(toks.begin() + static_cast<std::ptrdiff_t>(i),
                           toks.begin() + static_cast<std::ptrdiff_t>(i + n));
    return grams;
}

RecallPrecision oracle_rouge(const std::string& candidate, const std::string& reference, int n) {
    auto cand = oracle_ngrams(candidate, n);
    auto ref = oracle_ngrams(reference, n);

    std::vector<bool> used(ref.size(), false);
    std::size_t overlap = 0;
    for (const auto& g : cand) {
        for (std::size_t j = 0; j < ref.size(); ++j) {
            if (!used[j] && ref[j] == g) {
                used[j] = true;
                ++overlap;
                break;
            }
        }
    }
    RecallPrecision rp;
    rp.recall = ref.empty() ? 0.0 : static_cast<double>(overlap) / static_cast<double>(ref.size());
    rp.precision =
        cand.empty() ? 0.0 : static_cast<double>(overlap) / static_cast<double>(cand.size());
    return rp;
}

std::string random_sentence(std::mt19937& rng, int max_len) {
    static const std::vector<std::string> vocab = {
        "the", "cat", "sat", "on", "mat",  "dog", "ran",  "fast", "home", "blue",
        "sky", "ran", "big", "and", "then", "it",  "was", "over", "again", "done"};
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::string out;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        if (!out.empty()) out.push_back(' ');
        out += vocab[pick(rng)];
    }
    return out;
}

}  // namespace

TEST_CASE("metric tokenization lowercases and splits on non-alphanumerics", "[rouge]") {
    CHECK(tokenize_for_metrics("The cat") == std::vector<std::string>{"the", "cat"});
    CHECK(tokenize_for_metrics("don't stop-me now!") ==
          std::vector<std::string>{"don", "t", "stop", "me", "now"});
    CHECK(tokenize_for_metrics("") == std::vector<std::string>{});
    CHECK(tokenize_for_metrics("...") == std::vector<std::string>{});
    CHECK(tokenize_for_metrics("a1b2") == std::vector<std::string>{"a1b2"});
}

TEST_CASE("ngram_counts builds clipped-count multisets", "[rouge]") {
    auto uni = ngram_counts("The cat", 1);
    CHECK(uni.size() == 2);
    CHECK(uni.at("the") == 1);
    CHECK(uni.at("cat") == 1);

    auto rep = ngram_counts("the cat sat on the mat", 1);
    CHECK(rep.at("the") == 2);
    CHECK(rep.at("cat") == 1);
    CHECK(rep.at("sat") == 1);
    CHECK(rep.at("on") == 1);
    CHECK(rep.at("mat") == 1);
    CHECK(rep.size() == 5);

    auto bi = ngram_counts("a b", 2);
    CHECK(bi.size() == 1);
    CHECK(bi.begin()->second == 1);
    CHECK(ngram_counts("a", 2).empty());
}

TEST_CASE("hand-derived overlap scores", "[rouge]") {
    SECTION("identity") {
        auto rp1 = rouge_n("the cat sat", "the cat sat", 1);
        auto rp2 = rouge_n("the cat sat", "the cat sat", 2);
        CHECK(rp1.recall == 1.0);
        CHECK(rp1.precision == 1.0);
        CHECK(rp2.recall == 1.0);
        CHECK(rp2.precision == 1.0);
    }
    SECTION("unigram overlap 3 of 6") {
        auto rp = rouge_n("the cat sat", "the cat sat on the mat", 1);
        CHECK_THAT(rp.recall, Catch::Matchers::WithinAbs(0.5, 1e-12));
        CHECK_THAT(rp.precision, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("bigram overlap 2 of 5") {
        auto rp = rouge_n("the cat sat", "the cat sat on the mat", 2);
        CHECK_THAT(rp.recall, Catch::Matchers::WithinAbs(0.4, 1e-12));
        CHECK_THAT(rp.precision, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("empty candidate scores zero") {
        auto rp = rouge_n("", "anything here", 1);
        CHECK(rp.recall == 0.0);
        CHECK(rp.precision == 0.0);
    }
    SECTION("clipping caps repeated candidate tokens") {
        auto rp = rouge_n("the the the the", "the mat", 1);
        CHECK_THAT(rp.recall, Catch::Matchers::WithinAbs(0.5, 1e-12));
        CHECK_THAT(rp.precision, Catch::Matchers::WithinAbs(0.25, 1e-12));
    }
}

TEST_CASE("implementation matches quadratic oracle on random pairs", "[rouge]") {
    std::mt19937 rng(777);
    for (int iter = 0; iter < 200; ++iter) {
        std::string cand = random_sentence(rng, 30);
        std::string ref = random_sentence(rng, 30);
        for (int n : {1, 2}) {
            auto got = rouge_n(cand, ref, n);
            auto want = oracle_rouge(cand, ref, n);
            INFO("n=" << n << " cand=\"" << cand << "\" ref=\"" << ref << "\"");
            CHECK_THAT(got.recall, Catch::Matchers::WithinAbs(want.recall, 1e-12));
            CHECK_THAT(got.precision, Catch::Matchers::WithinAbs(want.precision, 1e-12));
        }
    }
}

TEST_CASE("recall of one text equals precision of the swap", "[rouge]") {
    std::mt19937 rng(4242);
    for (int iter = 0; iter < 100; ++iter) {
        std::string a = random_sentence(rng, 20);
        std::string b = random_sentence(rng, 20);
        for (int n : {1, 2}) {
            auto ab = rouge_n(a, b, n);
            auto ba = rouge_n(b, a, n);
            CHECK_THAT(ab.recall, Catch::Matchers::WithinAbs(ba.precision, 1e-12));
            CHECK_THAT(ab.precision, Catch::Matchers::WithinAbs(ba.recall, 1e-12));
        }
    }
}

TEST_CASE("appending the reference drives recall to one", "[rouge]") {
    std::mt19937 rng(55);
    for (int iter = 0; iter < 50; ++iter) {
        std::string cand = random_sentence(rng, 15);
        std::string ref = random_sentence(rng, 15);
        if (tokenize_for_metrics(ref).empty()) continue;
        std::string padded = cand.empty() ? ref : cand + " " + ref;
        auto rp = rouge_n(padded, ref, 1);
        CHECK_THAT(rp.recall, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("corpus aggregation is an unweighted mean", "[rouge]") {
    RougeAggregate agg;
    RougeScore a;
    a.r1_recall = 1.0;
    RougeScore b;
    b.r1_recall = 0.0;
    agg.add(a);
    agg.add(b);
    auto mean = agg.mean();
    CHECK_THAT(mean.r1_recall, Catch::Matchers::WithinAbs(0.5, 1e-12));

    SECTION("merge of shards equals the whole") {
        RougeAggregate left, right, whole;
        std::mt19937 rng(9);
        for (int i = 0; i < 20; ++i) {
            std::string cand = random_sentence(rng, 10);
            std::string ref = random_sentence(rng, 10);
            RougeScore s = score_pair(cand, ref);
            (i % 2 ? left : right).add(s);
            whole.add(s);
        }
        left.merge(right);
        CHECK_THAT(left.mean().r1_recall,
                   Catch::Matchers::WithinAbs(whole.mean().r1_recall, 1e-12));
        CHECK_THAT(left.mean().r2_precision,
                   Catch::Matchers::WithinAbs(whole.mean().r2_precision, 1e-12));
    }
}

TEST_CASE("lead-k takes the first k whitespace words", "[rouge]") {
    std::string content;
    for (int i = 0; i < 100; ++i) content += "w" + std::to_string(i) + " ";
    auto pred = lead_k_prediction(content, 35);
    CHECK(tokenize_for_metrics(pred).size() == 35);
    CHECK(pred.substr(0, 5) == "w0 w1");

    CHECK(lead_k_prediction("only four words here", 35) == "only four words here");
    CHECK(lead_k_prediction("", 35) == "");

    SECTION("self-consistency: prediction vs its own truncation") {
        auto rp = rouge_n(pred, pred, 1);
        CHECK(rp.recall == 1.0);
        CHECK(rp.precision == 1.0);
    }
}
