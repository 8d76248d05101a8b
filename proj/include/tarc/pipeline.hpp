#pragma once

// The command stages. Each reads the run directory of its config (see
// RunConfig::run_dir) plus declared inputs, and writes its outputs there
// with a manifest-<stage>.json listing the config hash and the checksums of
// everything it read and wrote.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tarc/config.hpp"
#include "tarc/corpus.hpp"

namespace tarc {

struct StageOutput {
    std::filesystem::path run_dir;
    std::vector<std::filesystem::path> files;  // written by the stage, in write order
    std::vector<std::string> warnings;
};

/// conversations.jsonl, corpus_stats.csv, ingest_summary.csv, splits.csv
/// (and parse_issues.csv when records were skipped).
StageOutput cmd_ingest(const RunConfig& config);

/// features.csv: one row per conversation's submission text.
StageOutput cmd_features(const RunConfig& config);

/// ta.csv: the submission's own toxicity and its conversation's TA.
StageOutput cmd_ta(const RunConfig& config);

/// records.csv, report/<name>.csv for each analysis, figures/<name>.csv,
/// warnings.txt and provenance.json. `which` limits the analyses; an
/// analysis named there that cannot run is an error.
StageOutput cmd_analyze(const RunConfig& config, const std::vector<std::string>& which = {});

/// sweep.csv and sweep_summary.csv from an annotation CSV with columns
/// post_id, label and optionally label_b (a second rater). `annotations`
/// overrides the config entry.
StageOutput cmd_sweep(const RunConfig& config, const std::optional<std::filesystem::path>& annotations = {});

/// The line-delimited conversation store.
void write_conversations(const std::filesystem::path& path, std::span<const Conversation> conversations);
std::vector<Conversation> read_conversations(const std::filesystem::path& path);

/// Precedence for the output directory: explicit flag, then TARC_OUTPUT_DIR,
/// then the config file.
void apply_output_override(RunConfig& config, const std::optional<std::filesystem::path>& flag);

}  // namespace tarc
