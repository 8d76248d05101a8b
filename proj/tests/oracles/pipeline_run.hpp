#pragma once

// Runs the full command chain on the bundled mini corpus into a chosen
// output root and snapshots every file written.

#include <filesystem>
#include <map>
#include <string>

#include "tarc/config.hpp"
#include "tarc/io.hpp"
#include "tarc/pipeline.hpp"

namespace check {

namespace fs = std::filesystem;

inline tarc::RunConfig mini_config(const fs::path& out_root) {
    auto cfg = tarc::load_config(fs::path(TARC_MINI_DIR) / "config.json");
    cfg.output_dir = out_root;
    return cfg;
}

inline fs::path fresh_dir(const std::string& name) {
    auto p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

/// relative path -> file contents
using Snapshot = std::map<std::string, std::string>;

inline Snapshot snapshot(const fs::path& dir) {
    Snapshot s;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) s[e.path().lexically_relative(dir).generic_string()] = tarc::read_file(e.path());
    return s;
}

inline fs::path run_all_stages(const tarc::RunConfig& cfg) {
    tarc::cmd_ingest(cfg);
    tarc::cmd_features(cfg);
    tarc::cmd_ta(cfg);
    tarc::cmd_analyze(cfg);
    return tarc::cmd_sweep(cfg).run_dir;
}

}  // namespace check
