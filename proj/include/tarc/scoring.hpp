#pragma once

// Imported moderation-model scores -> toxicity, toxicity attraction (TA),
// threshold sweeps and toxic/attracting overlap reports.

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tarc/corpus.hpp"

namespace tarc {

using CategoryScores = std::map<std::string, double>;

struct ScoreTable {
    std::string scorer_name;
    std::map<std::string, CategoryScores> entries;  // post_id -> categories
    std::set<std::string> excluded_categories;
    std::vector<std::string> warnings;

    std::set<std::string> categories() const;
    bool contains(const std::string& post_id) const { return entries.count(post_id) > 0; }
};

/// Reads a score file. Two layouts are accepted:
///  - CSV (any extension but .jsonl/.json): optional `# scorer: NAME` and
///    `# exclude: a, b` header lines, then a header row `post_id,category,score`
///    or `post_id,score` (category defaults to "score").
///  - JSONL: one {"post_id", "category"?, "score"} object per line.
/// A sidecar `<path>.meta.json` with {"scorer": ..., "exclude": [...]} is
/// merged when present. Scores outside [0,1] and duplicate (post_id, category)
/// pairs raise ParseError with the line number.
ScoreTable load_scores(const std::filesystem::path& path);

/// Writes the CSV layout read by load_scores.
void write_scores(const std::filesystem::path& path, const ScoreTable& table);

/// Maximum over the non-excluded categories. Throws ConfigError when nothing
/// is left after exclusion.
double aggregate_toxicity(const CategoryScores& scores, const std::set<std::string>& excluded);

/// Aggregated toxicity for one post of a table; DataError if absent.
double post_toxicity(const ScoreTable& table, const std::string& post_id);

/// Strict: a score equal to the threshold is not toxic.
inline bool label_toxic(double score, double threshold) { return score > threshold; }

inline constexpr double kToxicThreshold = 0.5;

struct SweepPoint {
    double threshold = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

struct ThresholdSweep {
    std::vector<SweepPoint> points;
    double best_threshold = 0;
    double best_f1 = 0;
};

/// 0.05, 0.10, ..., 0.95.
std::vector<double> default_sweep_grid();

/// Precision/recall/F1 of `score > threshold` against boolean labels at each
/// grid point (grid strictly increasing). Precision with no predicted
/// positives is 0. best_threshold maximizes F1; ties go to the lower threshold.
ThresholdSweep sweep_threshold(std::span<const double> scores, const std::vector<bool>& labels,
                               std::span<const double> grid);

struct TaRecord {
    std::string submission_id;
    double ta_mean = 0;
    double ta_ratio = 0;
    std::size_t n_comments = 0;
    std::size_t n_toxic = 0;
    double max_comment_toxicity = 0;
    std::vector<double> comment_toxicities;  // sorted ascending
};

struct TaOptions {
    std::set<std::string> excluded;
    double toxic_threshold = kToxicThreshold;
};

/// TA of one conversation. Throws DataError listing every comment id missing
/// from the table rather than averaging over fewer comments.
TaRecord compute_ta(const Conversation& conv, const ScoreTable& table, const TaOptions& options);

/// Builds a record straight from comment toxicities (test and synthetic use).
TaRecord make_ta_record(std::string submission_id, std::vector<double> toxicities,
                        double toxic_threshold = kToxicThreshold);

/// Fraction of comments strictly above `threshold`.
double ta_ratio_at(const TaRecord& record, double threshold);

inline bool label_attracting(const TaRecord& record, double comment_threshold) {
    return record.max_comment_toxicity > comment_threshold;
}

struct OverlapLabels {
    bool toxic = false;
    bool attracting = false;
};

struct OverlapReport {
    std::size_t n = 0;
    double toxic_only = 0;       // percent
    double attracting_only = 0;  // percent
    double both = 0;             // percent
    double neither = 0;          // percent
    double toxic_total() const { return toxic_only + both; }
    double attracting_total() const { return attracting_only + both; }
};

OverlapReport overlap_report(std::span<const OverlapLabels> records);

/// Which quantity the attracting threshold is compared against.
///  comment_max: some comment's toxicity exceeds it (the at-least-one-toxic-comment rule)
///  ta_mean:     the conversation's mean comment toxicity exceeds it
enum class AttractingMode { comment_max, ta_mean };

struct OverlapInput {
    double submission_toxicity = 0;
    const TaRecord* ta = nullptr;
};

struct OverlapRow {
    double threshold = 0;
    OverlapReport report;
};

/// Re-labels attracting at each threshold; the toxic label stays at
/// `toxic_threshold` on the submission's own toxicity.
std::vector<OverlapRow> overlap_by_threshold(std::span<const OverlapInput> records,
                                             std::span<const double> thresholds,
                                             double toxic_threshold = kToxicThreshold,
                                             AttractingMode mode = AttractingMode::comment_max);

}  // namespace tarc
