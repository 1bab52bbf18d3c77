#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "tldrkit/io.hpp"
#include "tldrkit/rouge.hpp"
#include "tldrkit/text.hpp"

namespace tldrkit {

struct MissingReference : std::runtime_error {
    explicit MissingReference(const std::string& id)
        : std::runtime_error("prediction id has no reference: " + id) {}
};

struct DuplicateId : std::runtime_error {
    explicit DuplicateId(const std::string& id)
        : std::runtime_error("duplicate post_id: " + id) {}
};

struct PairScore {
    std::string post_id;
    RougeScore score;
};

struct EvalResult {
    RougeScore corpus;  // macro-average over pairs, as fractions
    std::vector<PairScore> pairs;
};

namespace detail {

struct KeyedText {
    std::string post_id;
    std::string text;
};

inline KeyedText keyed_text_from_line(std::string_view line, std::size_t line_no,
                                      const char* what) {
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object())
        throw FileError(std::string(what) + " line " + std::to_string(line_no) +
                        ": invalid JSON");
    KeyedText kt;
    auto id = obj.find("post_id");
    auto text = obj.find("text");
    if (id == obj.end() || !id->is_string() || text == obj.end() || !text->is_string())
        throw FileError(std::string(what) + " line " + std::to_string(line_no) +
                        ": expected {\"post_id\": ..., \"text\": ...}");
    kt.post_id = id->get<std::string>();
    kt.text = text->get<std::string>();
    return kt;
}

}  // namespace detail

/// Score a predictions stream against a references stream, both JSONL
/// lines of {"post_id", "text"}. Every prediction id must have a
/// reference; duplicate ids in either stream are an error.
inline EvalResult evaluate_streams(std::istream& predictions, std::istream& references) {
    std::unordered_map<std::string, std::string> refs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(references, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto kt = detail::keyed_text_from_line(line, line_no, "references");
        if (!refs.emplace(kt.post_id, std::move(kt.text)).second) throw DuplicateId(kt.post_id);
    }

    EvalResult result;
    RougeAggregate agg;
    std::unordered_set<std::string> seen_predictions;
    line_no = 0;
    while (std::getline(predictions, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto kt = detail::keyed_text_from_line(line, line_no, "predictions");
        if (!seen_predictions.insert(kt.post_id).second) throw DuplicateId(kt.post_id);
        auto ref = refs.find(kt.post_id);
        if (ref == refs.end()) throw MissingReference(kt.post_id);

        PairScore ps;
        ps.post_id = kt.post_id;
        ps.score = score_pair(kt.text, ref->second);
        agg.add(ps.score);
        result.pairs.push_back(std::move(ps));
    }
    result.corpus = agg.mean();
    return result;
}

inline EvalResult evaluate_files(const std::string& predictions_path,
                                 const std::string& references_path) {
    auto pred = open_input(predictions_path);
    auto ref = open_input(references_path);
    return evaluate_streams(pred, ref);
}

/// Scores are reported x100 at two decimals, the usual presentation.
inline double to_report_scale(double fraction) {
    return std::llround(fraction * 10000.0) / 100.0;
}

inline nlohmann::json score_to_report_json(const RougeScore& s) {
    return nlohmann::json{
        {"r1_recall", to_report_scale(s.r1_recall)},
        {"r2_recall", to_report_scale(s.r2_recall)},
        {"r1_precision", to_report_scale(s.r1_precision)},
        {"r2_precision", to_report_scale(s.r2_precision)},
    };
}

inline nlohmann::json eval_report_json(const EvalResult& result) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& ps : result.pairs) {
        nlohmann::json entry = score_to_report_json(ps.score);
        entry["post_id"] = ps.post_id;
        pairs.push_back(std::move(entry));
    }
    return nlohmann::json{{"corpus", score_to_report_json(result.corpus)}, {"pairs", pairs}};
}

/// One-line corpus table in R1 R2 P1 P2 column order.
inline std::string eval_table_line(const RougeScore& corpus) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "R1 %.2f  R2 %.2f  P1 %.2f  P2 %.2f",
                  to_report_scale(corpus.r1_recall), to_report_scale(corpus.r2_recall),
                  to_report_scale(corpus.r1_precision), to_report_scale(corpus.r2_precision));
    return buf;
}

}  // namespace tldrkit
