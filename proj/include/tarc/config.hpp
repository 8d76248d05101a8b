#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tarc/analysis.hpp"
#include "tarc/corpus.hpp"
#include "tarc/scoring.hpp"

namespace tarc {

/// Everything a pipeline run depends on. Relative paths in the file are
/// resolved against the directory holding it.
struct RunConfig {
    std::filesystem::path config_dir;

    std::vector<std::filesystem::path> dumps;
    std::optional<std::filesystem::path> toxicity_scores;
    std::optional<std::filesystem::path> c_scores;
    std::optional<std::filesystem::path> annotations;
    std::optional<std::filesystem::path> topic_labels;
    std::optional<std::filesystem::path> records;  // precomputed analysis rows; bypasses the earlier stages
    std::filesystem::path data_dir;                // tagger, valence lexicon, phrase lexicons
    std::optional<std::filesystem::path> hedge_lexicon;
    std::optional<std::filesystem::path> gratitude_lexicon;
    std::filesystem::path output_dir = "out";

    std::uint64_t seed = 0;
    double toxic_threshold = kToxicThreshold;
    double attracting_threshold = kToxicThreshold;
    AttractingMode attracting_mode = AttractingMode::comment_max;
    double polarity_band = 0.05;
    std::optional<double> controversial_threshold;  // unset: median split
    std::vector<double> overlap_thresholds{0.2, 0.3, 0.4, 0.5};
    std::vector<double> sweep_grid;  // empty: default grid
    std::set<std::string> exclude_categories;  // added to the score files' own exclusions
    bool regression_polarity_flags = false;

    std::set<std::string> subreddits;  // allow-list, lowercase; empty = all
    std::set<std::string> political_subreddits = kDefaultPoliticalSubreddits;
    std::optional<std::int64_t> start_utc, end_utc;
    std::size_t min_comments = 5;
    std::size_t max_comments = 10;
    std::size_t template_min_occurrences = kTemplateMinOccurrences;
    std::array<double, 3> split_fractions = kDefaultSplit;
    OnError on_error = OnError::abort;
    int threads = 0;

    /// Canonical JSON of every setting that affects outputs. Paths appear as
    /// written (relative to the config), so moving a checkout keeps the hash.
    nlohmann::json canonical() const;
    std::string hash() const;             // SHA-256 hex of canonical()
    std::filesystem::path run_dir() const;  // output_dir / "run-<first 12 hex digits>"

    std::filesystem::path resolve(const std::filesystem::path& p) const;
    std::filesystem::path hedge_path() const;
    std::filesystem::path gratitude_path() const;
    AnalysisOptions analysis_options() const;

private:
    friend RunConfig config_from_json(const nlohmann::json&, const std::filesystem::path&);
    nlohmann::json raw_paths_;  // paths as written, for canonical()
};

/// Parses and validates. Unknown keys, out-of-range thresholds, fractions
/// not summing to 1 and declared input paths that do not exist raise
/// ConfigError.
RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Re-checks the invariants after command-line overrides.
void validate_config(const RunConfig& cfg);

}  // namespace tarc
