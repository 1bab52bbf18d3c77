#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tldrkit/extract.hpp"

namespace tldrkit {

struct SubredditShare {
    std::string subreddit;
    std::size_t count = 0;
    double fraction = 0.0;
};

struct CorpusStats {
    std::size_t pair_count = 0;
    double avg_content_words = 0.0;
    double avg_summary_words = 0.0;
    double median_summary_words = 0.0;
    std::vector<SubredditShare> subreddit_shares;  // sorted descending by count
};

/// Streaming corpus statistics. Holds only sums, per-subreddit counts and
/// an integer histogram of summary lengths, so shards merge associatively
/// and the median stays exact without retaining per-pair values.
class StatsAccumulator {
public:
    void add(const ExtractedPair& pair) {
        ++count_;
        content_word_sum_ += pair.content_words;
        summary_word_sum_ += pair.summary_words;
        ++summary_len_histogram_[pair.summary_words];
        ++subreddit_counts_[pair.subreddit];
    }

    void merge(const StatsAccumulator& other) {
        count_ += other.count_;
        content_word_sum_ += other.content_word_sum_;
        summary_word_sum_ += other.summary_word_sum_;
        for (const auto& [len, n] : other.summary_len_histogram_)
            summary_len_histogram_[len] += n;
        for (const auto& [sub, n] : other.subreddit_counts_) subreddit_counts_[sub] += n;
    }

    std::size_t count() const { return count_; }

    CorpusStats finalize() const {
        CorpusStats s;
        s.pair_count = count_;
        if (count_ == 0) return s;
        s.avg_content_words =
            static_cast<double>(content_word_sum_) / static_cast<double>(count_);
        s.avg_summary_words =
            static_cast<double>(summary_word_sum_) / static_cast<double>(count_);
        s.median_summary_words = median_from_histogram();

        s.subreddit_shares.reserve(subreddit_counts_.size());
        for (const auto& [sub, n] : subreddit_counts_) {
            SubredditShare share;
            share.subreddit = sub;
            share.count = n;
            share.fraction = static_cast<double>(n) / static_cast<double>(count_);
            s.subreddit_shares.push_back(std::move(share));
        }
        std::sort(s.subreddit_shares.begin(), s.subreddit_shares.end(),
                  [](const SubredditShare& a, const SubredditShare& b) {
                      if (a.count != b.count) return a.count > b.count;
                      return a.subreddit < b.subreddit;
                  });
        return s;
    }

private:
    /// Middle value for odd n, mean of the two middle values for even n.
    double median_from_histogram() const {
        const std::size_t lo_rank = (count_ - 1) / 2;  // 0-based
        const std::size_t hi_rank = count_ / 2;
        double lo = 0.0;
        double hi = 0.0;
        std::size_t seen = 0;
        bool lo_set = false;
        for (const auto& [len, n] : summary_len_histogram_) {
            seen += n;
            if (!lo_set && seen > lo_rank) {
                lo = static_cast<double>(len);
                lo_set = true;
            }
            if (seen > hi_rank) {
                hi = static_cast<double>(len);
                break;
            }
        }
        return (lo + hi) / 2.0;
    }

    std::size_t count_ = 0;
    std::size_t content_word_sum_ = 0;
    std::size_t summary_word_sum_ = 0;
    std::map<std::size_t, std::size_t> summary_len_histogram_;
    std::map<std::string, std::size_t> subreddit_counts_;
};

/// Plain-text report: a volumes line (pair count plus top subreddit
/// shares) and a word-statistics table.
inline std::string render_stats_table(const CorpusStats& s, const std::string& label,
                                      std::size_t max_subreddits = 6) {
    char buf[256];
    std::string out;

    out += "Dataset        Pairs    Key Subreddits\n";
    std::string subs;
    for (std::size_t i = 0; i < s.subreddit_shares.size() && i < max_subreddits; ++i) {
        const auto& sh = s.subreddit_shares[i];
        if (!subs.empty()) subs += ", ";
        std::snprintf(buf, sizeof(buf), "%s (%.0f%%)", sh.subreddit.c_str(),
                      sh.fraction * 100.0);
        subs += buf;
    }
    std::snprintf(buf, sizeof(buf), "%-10s %9zu    %s\n", label.c_str(), s.pair_count,
                  subs.c_str());
    out += buf;

    out += "\nDataset    AvgContentWords  AvgSummaryWords  MedianSummaryWords\n";
    std::snprintf(buf, sizeof(buf), "%-10s %15.2f  %15.2f  %18g\n", label.c_str(),
                  s.avg_content_words, s.avg_summary_words, s.median_summary_words);
    out += buf;
    return out;
}

inline std::string render_stats_csv(const CorpusStats& s, const std::string& label) {
    char buf[256];
    std::string out = "dataset,pair_count,avg_content_words,avg_summary_words,"
                      "median_summary_words\n";
    std::snprintf(buf, sizeof(buf), "%s,%zu,%.2f,%.2f,%g\n", label.c_str(), s.pair_count,
                  s.avg_content_words, s.avg_summary_words, s.median_summary_words);
    out += buf;
    out += "subreddit,count,fraction\n";
    for (const auto& sh : s.subreddit_shares) {
        std::snprintf(buf, sizeof(buf), "%s,%zu,%.6f\n", sh.subreddit.c_str(), sh.count,
                      sh.fraction);
        out += buf;
    }
    return out;
}

}  // namespace tldrkit
