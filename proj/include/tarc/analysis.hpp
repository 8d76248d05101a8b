#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tarc/features.hpp"
#include "tarc/io.hpp"
#include "tarc/scoring.hpp"
#include "tarc/stats.hpp"

namespace tarc {

/// One submission with everything the analyses need.
struct PostRecord {
    std::string post_id;
    std::string subreddit;
    bool is_political = false;
    double c_score = 0;
    double toxicity = 0;  // the submission's own toxicity
    TaRecord ta;
    FeatureVector features;
    std::optional<std::string> topic_label;
};

inline const std::set<std::string> kDefaultPoliticalSubreddits = {"conservative", "liberal", "politics"};

/// Numeric value of a named field: c_score, toxicity, ta_mean, ta_ratio,
/// max_comment_toxicity, or any feature column. Flags read as 0/1.
double record_field(const PostRecord& r, std::string_view field);
bool is_record_field(std::string_view field);

/// CSV with one row per record. Required columns: post_id, c_score,
/// toxicity, ta_mean and the ten feature columns. Optional: subreddit,
/// is_political (else derived from `political`), ta_ratio, n_comments,
/// n_toxic, max_comment_toxicity, topic_label.
std::vector<PostRecord> read_records(const std::filesystem::path& path,
                                     const std::set<std::string>& political = kDefaultPoliticalSubreddits);
Table records_table(std::span<const PostRecord> records);

struct SplitRule {
    enum class Kind { median, threshold } kind = Kind::median;
    double threshold = 0.5;  // used by Kind::threshold
};

struct CorrelationCell {
    double r = 0;           // NaN when the feature is constant in the group
    double p_value = 0;
    double prevalence = 0;  // percent of posts with a value > 0
};

struct CorrelationRow {
    std::string feature;
    std::string method;  // "spearman" or "point-biserial"
    CorrelationCell controversial;
    CorrelationCell noncontroversial;
};

struct CorrelationTable {
    double split_value = 0;  // c_score above this is controversial
    std::size_t n_controversial = 0;
    std::size_t n_noncontroversial = 0;
    std::vector<CorrelationRow> rows;
    Table to_table() const;
};

/// Correlation of each feature with ta_mean, separately for controversial
/// and non-controversial posts. Records whose c_score equals the split value
/// are non-controversial. Throws DataError naming a group with fewer than
/// three records.
CorrelationTable correlation_table(std::span<const PostRecord> records, const SplitRule& split = {});

enum class Quadrant { low_c_low_ta, low_c_high_ta, high_c_low_ta, high_c_high_ta };
std::string_view quadrant_name(Quadrant q);

struct QuadrantPartition {
    double median_c = 0;
    double median_ta = 0;
    std::array<std::vector<std::size_t>, 4> members;  // record indices, indexed by Quadrant
};

/// Median splits on c_score and ta_mean; values equal to a median go low.
QuadrantPartition quadrant_partition(std::span<const PostRecord> records);

/// Mood's median test of `field` between political (group a) and other
/// (group b) posts.
MedianTestResult group_median_test(std::span<const PostRecord> records, std::string_view field);

struct BaselineResult {
    RegressionResult regression;  // ta_mean ~ 1 + toxicity
    double spearman_pred_truth = 0;
};

BaselineResult baseline_regression(std::span<const PostRecord> records);

struct FullRegressionOptions {
    bool polarity_flags = false;  // positive/negative flags instead of the compound score
    double vif_limit = 3.0;
};

struct FullRegressionResult {
    RegressionResult regression;  // vif filled for every non-intercept term
    std::vector<std::string> high_vif;  // regressors above the limit
};

/// ta_mean on intercept, c_score, question_ratio, gratitude_ratio,
/// proper_noun_ratio, lexical_item_count, hedge_ratio and polarity.
FullRegressionResult full_regression(std::span<const PostRecord> records, const FullRegressionOptions& options = {});

/// The regressor names full_regression uses, intercept first.
std::vector<std::string> full_regression_terms(const FullRegressionOptions& options = {});
Eigen::MatrixXd full_regression_design(std::span<const PostRecord> records, const FullRegressionOptions& options = {});

struct DecilePick {
    std::size_t index = 0;  // into the input
    int decile = 0;         // 0..9
};

struct DecileSample {
    std::vector<DecilePick> picks;  // ordered by decile, then by input order of the sorted scores
    std::vector<std::string> warnings;
};

/// Orders items by score (ties by id), assigns decile floor(rank * 10 / n)
/// and draws `per_decile` items from each decile without replacement.
/// A decile with fewer items is taken whole and reported in warnings.
DecileSample decile_sample(std::span<const std::string> ids, std::span<const double> scores, std::size_t per_decile,
                           std::uint64_t seed);
DecileSample decile_sample(std::span<const PostRecord> records, std::string_view field, std::size_t per_decile,
                           std::uint64_t seed);

struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<std::string> scorers;
};

struct AnalysisReport {
    std::map<std::string, Table> tables;
    Provenance provenance;
    std::vector<std::string> warnings;

    const Table& table(const std::string& name) const;  // DataError naming a missing table
    bool has(const std::string& name) const { return tables.count(name) > 0; }
};

struct AnalysisOptions {
    SplitRule split;
    std::vector<double> overlap_thresholds{0.2, 0.3, 0.4, 0.5};
    double toxic_threshold = kToxicThreshold;
    double attracting_threshold = kToxicThreshold;
    AttractingMode attracting_mode = AttractingMode::comment_max;
    FullRegressionOptions regression;
    std::size_t histogram_bins = 20;
    std::size_t scatter_bins = 10;
};

/// Names of the reports build_report can produce.
std::span<const std::string_view> report_names();

/// Runs the analyses named in `which` (all when empty). An analysis the data
/// cannot support is skipped with a warning unless it was asked for by name,
/// in which case its error propagates.
AnalysisReport build_report(std::span<const PostRecord> records, const AnalysisOptions& options,
                            const std::vector<std::string>& which = {});

/// Bin counts over [0,1]; the last bin is closed.
Table histogram_table(std::span<const double> values, std::size_t bins);

enum class Figure { overlap, ta_hist, tox_vs_ta, c_hist, quadrants, sweep };
std::string_view figure_name(Figure f);

/// Writes the table behind a figure to `dir/<figure>.csv` and returns the
/// path. Throws DataError naming the table when the report lacks it.
std::filesystem::path emit_figure_data(const AnalysisReport& report, Figure figure, const std::filesystem::path& dir);

}  // namespace tarc
