#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tldrkit/extract.hpp"
#include "tldrkit/hash.hpp"
#include "tldrkit/text.hpp"

namespace tldrkit {

enum class RejectionReason {
    UndefinedAuthor,
    BotAuthor,
    TooFewSummaryWords,
    SummaryNotShorterThanContent,
    NotEnglish,
    Duplicate,
};

constexpr int kRejectionReasonCount = 6;

inline const char* to_string(RejectionReason r) {
    switch (r) {
        case RejectionReason::UndefinedAuthor: return "UndefinedAuthor";
        case RejectionReason::BotAuthor: return "BotAuthor";
        case RejectionReason::TooFewSummaryWords: return "TooFewSummaryWords";
        case RejectionReason::SummaryNotShorterThanContent:
            return "SummaryNotShorterThanContent";
        case RejectionReason::NotEnglish: return "NotEnglish";
        default: return "Duplicate";
    }
}

struct FilterConfig {
    std::size_t min_summary_words = 6;
    double stopword_ratio_threshold = 0.15;
    std::vector<std::string> bot_name_suffixes = {"bot"};
    std::vector<std::string> bot_name_list = {"AutoModerator"};
};

struct FilterReport {
    std::size_t pairs_in = 0;
    std::size_t pairs_out = 0;
    std::map<std::string, std::size_t> rejected_by_reason;

    bool balanced() const {
        std::size_t rejected = 0;
        for (const auto& [_, n] : rejected_by_reason) rejected += n;
        return pairs_in == pairs_out + rejected;
    }
};

/// The 100 most common English function words, lowercase. Fixed; the
/// language heuristic depends on the exact set.
inline const std::array<std::string_view, 100>& english_function_words() {
    static const std::array<std::string_view, 100> words = {
        "the",    "a",      "an",    "and",   "or",    "but",   "if",     "of",
        "at",     "by",     "for",   "with",  "to",    "from",  "in",     "on",
        "is",     "are",    "was",   "were",  "be",    "been",  "being",  "am",
        "do",     "does",   "did",   "have",  "has",   "had",   "will",   "would",
        "can",    "could",  "should", "i",    "me",    "my",    "we",     "our",
        "us",     "you",    "your",  "he",    "him",   "his",   "she",    "her",
        "it",     "its",    "they",  "them",  "their", "this",  "that",   "these",
        "those",  "there",  "here",  "what",  "which", "who",   "when",   "where",
        "why",    "how",    "not",   "no",    "nor",   "so",    "than",   "then",
        "too",    "very",   "just",  "now",   "as",    "because", "while", "until",
        "during", "before", "after", "above", "below", "up",    "down",   "out",
        "off",    "over",   "under", "again", "all",   "both",  "each",   "some",
        "any",    "more",   "most",  "other",
    };
    return words;
}

namespace detail {

inline const std::unordered_set<std::string_view>& function_word_set() {
    static const std::unordered_set<std::string_view> set(english_function_words().begin(),
                                                          english_function_words().end());
    return set;
}

/// Word tokens for language detection: runs of ASCII letters or non-ASCII
/// bytes, lowercased. Digits and punctuation split.
inline std::vector<std::string> language_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (is_ascii_alpha(c) || static_cast<unsigned char>(c) >= 0x80) {
            cur += ascii_lower(c);
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

}  // namespace detail

/// Stopword-ratio language heuristic: English iff at least `threshold` of
/// the word tokens are common English function words. Texts under 6 tokens
/// pass (too little evidence; the word-count rules police those).
inline bool is_english(std::string_view text, double threshold) {
    const auto tokens = detail::language_tokens(text);
    if (tokens.size() < 6) return true;
    std::size_t hits = 0;
    for (const auto& t : tokens)
        if (detail::function_word_set().count(t)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(tokens.size()) >= threshold;
}

inline bool is_bot_author(std::string_view author, const FilterConfig& config) {
    const std::string lower = to_lower_ascii(author);
    for (const auto& suffix : config.bot_name_suffixes) {
        const std::string s = to_lower_ascii(suffix);
        if (lower.size() >= s.size() && lower.compare(lower.size() - s.size(), s.size(), s) == 0)
            return true;
    }
    for (const auto& name : config.bot_name_list)
        if (author == name) return true;
    return false;
}

/// Canonical duplicate key: content then summary, each lowercased with
/// every character outside A-Z/a-z removed.
inline std::string dedup_key(const ExtractedPair& pair) {
    std::string key;
    key.reserve(pair.content.size() + pair.summary.size());
    auto append_normalized = [&key](std::string_view s) {
        for (char c : s)
            if (is_ascii_alpha(c)) key += ascii_lower(c);
    };
    append_normalized(pair.content);
    append_normalized(pair.summary);
    return key;
}

/// 64-bit FNV-1a of the dedup key. The seen-set stores hashes, not keys:
/// at the multi-million-pair scale a collision (which would drop one
/// non-duplicate pair) has probability well under 1e-6.
inline std::uint64_t dedup_hash(const ExtractedPair& pair) {
    return fnv1a64(dedup_key(pair));
}

/// Bitmask over the six rules, in chain order. Used to run partial chains
/// (e.g. for the monotonicity property); production runs use kAllRules.
enum : unsigned {
    kRuleUndefinedAuthor = 1u << 0,
    kRuleBotAuthor = 1u << 1,
    kRuleTooFewSummaryWords = 1u << 2,
    kRuleSummaryNotShorter = 1u << 3,
    kRuleNotEnglish = 1u << 4,
    kRuleDuplicate = 1u << 5,
    kAllRules = (1u << 6) - 1,
};

/// Applies the rejection rules in fixed order; the first failing rule is
/// the recorded reason. Rules 1-5 are pure per-pair; rule 6 consults the
/// seen-set and must therefore be committed in input order.
class PairFilter {
public:
    explicit PairFilter(FilterConfig config = {}, unsigned rule_mask = kAllRules)
        : config_(std::move(config)), rules_(rule_mask) {}

    /// Rules 1-5 only. Pure; safe to evaluate in parallel across pairs.
    std::optional<RejectionReason> check_stateless(const ExtractedPair& pair) const {
        if ((rules_ & kRuleUndefinedAuthor) &&
            (pair.author.empty() || pair.author == "[deleted]"))
            return RejectionReason::UndefinedAuthor;
        if ((rules_ & kRuleBotAuthor) && is_bot_author(pair.author, config_))
            return RejectionReason::BotAuthor;
        if ((rules_ & kRuleTooFewSummaryWords) && pair.summary_words < config_.min_summary_words)
            return RejectionReason::TooFewSummaryWords;
        if ((rules_ & kRuleSummaryNotShorter) && pair.summary_words >= pair.content_words)
            return RejectionReason::SummaryNotShorterThanContent;
        if ((rules_ & kRuleNotEnglish) &&
            (!is_english(pair.content, config_.stopword_ratio_threshold) ||
             !is_english(pair.summary, config_.stopword_ratio_threshold)))
            return RejectionReason::NotEnglish;
        return std::nullopt;
    }

    /// Full chain including dedup; updates the report and the seen-set.
    std::optional<RejectionReason> check(const ExtractedPair& pair) {
        return commit(pair, check_stateless(pair));
    }

    /// Second phase for pre-evaluated pairs: applies a stateless verdict,
    /// then dedup, preserving keep-first-in-input-order semantics.
    std::optional<RejectionReason> commit(const ExtractedPair& pair,
                                          std::optional<RejectionReason> stateless_verdict) {
        ++report_.pairs_in;
        std::optional<RejectionReason> verdict = stateless_verdict;
        if (!verdict && (rules_ & kRuleDuplicate)) {
            if (!seen_.insert(dedup_hash(pair)).second) verdict = RejectionReason::Duplicate;
        }
        if (verdict) {
            ++report_.rejected_by_reason[to_string(*verdict)];
        } else {
            ++report_.pairs_out;
        }
        return verdict;
    }

    const FilterReport& report() const { return report_; }
    const FilterConfig& config() const { return config_; }

private:
    FilterConfig config_;
    unsigned rules_;
    FilterReport report_;
    std::unordered_set<std::uint64_t> seen_;
};

}  // namespace tldrkit
