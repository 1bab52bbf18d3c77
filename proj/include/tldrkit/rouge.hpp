#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tldrkit/text.hpp"

namespace tldrkit {

/// Metric tokenization: lowercase, split on runs of non-alphanumeric
/// characters. No stemming, no stopword removal, so scores are
/// reproducible from the definition alone.
inline std::vector<std::string> tokenize_for_metrics(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (is_ascii_alnum(c)) {
            cur += ascii_lower(c);
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

/// Multiset counts of consecutive n-token windows; bigram keys join the
/// two tokens with a single space.
inline std::unordered_map<std::string, int> ngram_counts(std::string_view text, int n) {
    std::unordered_map<std::string, int> counts;
    const std::vector<std::string> tokens = tokenize_for_metrics(text);
    if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int k = 1; k < n; ++k) {
            key += ' ';
            key += tokens[i + static_cast<std::size_t>(k)];
        }
        ++counts[key];
    }
    return counts;
}

struct RougeScore {
    double r1_recall = 0.0;
    double r1_precision = 0.0;
    double r2_recall = 0.0;
    double r2_precision = 0.0;
};

struct RecallPrecision {
    double recall = 0.0;
    double precision = 0.0;
};

/// ROUGE-N with clipped counts: overlap is the sum over n-grams of
/// min(candidate count, reference count). A zero denominator yields 0
/// for that component.
inline RecallPrecision rouge_n(std::string_view candidate, std::string_view reference, int n) {
    const auto cand = ngram_counts(candidate, n);
    const auto ref = ngram_counts(reference, n);

    long long overlap = 0;
    long long cand_total = 0;
    long long ref_total = 0;
    for (const auto& [gram, count] : cand) {
        cand_total += count;
        auto it = ref.find(gram);
        if (it != ref.end()) overlap += std::min(count, it->second);
    }
    for (const auto& [gram, count] : ref) ref_total += count;

    RecallPrecision rp;
    if (ref_total > 0) rp.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
    if (cand_total > 0)
        rp.precision = static_cast<double>(overlap) / static_cast<double>(cand_total);
    return rp;
}

inline RougeScore score_pair(std::string_view candidate, std::string_view reference) {
    RougeScore s;
    const auto r1 = rouge_n(candidate, reference, 1);
    const auto r2 = rouge_n(candidate, reference, 2);
    s.r1_recall = r1.recall;
    s.r1_precision = r1.precision;
    s.r2_recall = r2.recall;
    s.r2_precision = r2.precision;
    return s;
}

/// Macro-average accumulator: unweighted mean of per-pair scores.
struct RougeAggregate {
    RougeScore sum;
    std::size_t count = 0;

    void add(const RougeScore& s) {
        sum.r1_recall += s.r1_recall;
        sum.r1_precision += s.r1_precision;
        sum.r2_recall += s.r2_recall;
        sum.r2_precision += s.r2_precision;
        ++count;
    }

    void merge(const RougeAggregate& other) {
        sum.r1_recall += other.sum.r1_recall;
        sum.r1_precision += other.sum.r1_precision;
        sum.r2_recall += other.sum.r2_recall;
        sum.r2_precision += other.sum.r2_precision;
        count += other.count;
    }

    RougeScore mean() const {
        RougeScore m;
        if (count == 0) return m;
        const double n = static_cast<double>(count);
        m.r1_recall = sum.r1_recall / n;
        m.r1_precision = sum.r1_precision / n;
        m.r2_recall = sum.r2_recall / n;
        m.r2_precision = sum.r2_precision / n;
        return m;
    }
};

/// Lead-K extractive baseline: the first k whitespace words of content.
inline std::string lead_k_prediction(std::string_view content, std::size_t k) {
    return lead_words(content, k);
}

}  // namespace tldrkit
