#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tarc/config.hpp"
#include "tarc/error.hpp"
#include "tarc/pipeline.hpp"

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> toxic_threshold;
    std::optional<double> attracting_threshold;
    std::optional<double> controversial_threshold;
    std::optional<int> threads;
};

tarc::RunConfig make_config(const Overrides& o) {
    auto cfg = tarc::load_config(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.toxic_threshold) {
        cfg.toxic_threshold = *o.toxic_threshold;
        if (!o.attracting_threshold) cfg.attracting_threshold = *o.toxic_threshold;
    }
    if (o.attracting_threshold) cfg.attracting_threshold = *o.attracting_threshold;
    if (o.controversial_threshold) cfg.controversial_threshold = *o.controversial_threshold;
    if (o.threads) cfg.threads = *o.threads;
    tarc::apply_output_override(cfg, o.out ? std::optional<std::filesystem::path>(*o.out) : std::nullopt);
    tarc::validate_config(cfg);
    return cfg;
}

void report(const tarc::StageOutput& out) {
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << out.run_dir.string() << "\n";
    for (const auto& f : out.files) std::cout << "  " << f.lexically_relative(out.run_dir).generic_string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toxicity attraction and controversy analysis of discussion threads"};
    app.require_subcommand(1);

    Overrides o;
    app.add_option("-c,--config", o.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--seed", o.seed, "Override the random seed");
    app.add_option("--out", o.out, "Output root (overrides TARC_OUTPUT_DIR and the config)");
    app.add_option("--toxic-threshold", o.toxic_threshold, "Toxicity label threshold")->check(CLI::Range(0.0, 1.0));
    app.add_option("--attracting-threshold", o.attracting_threshold, "Attracting label threshold")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--controversial-threshold", o.controversial_threshold,
                   "Fixed controversiality split instead of the median")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--threads", o.threads, "Worker threads (0 = OpenMP default)");

    auto* ingest = app.add_subcommand("ingest", "Parse dumps into the conversation store");
    auto* features = app.add_subcommand("features", "Extract submission features");
    auto* ta = app.add_subcommand("ta", "Compute toxicity attraction per conversation");
    auto* analyze = app.add_subcommand("analyze", "Run the analyses and write report tables");
    std::vector<std::string> reports;
    analyze->add_option("--report", reports, "Only these reports (repeatable)");
    auto* sweep = app.add_subcommand("sweep", "Threshold sweep against human annotations");
    std::optional<std::string> annotations;
    sweep->add_option("--annotations", annotations, "Annotation CSV (post_id,label[,label_b])")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const auto cfg = make_config(o);
        if (*ingest) report(tarc::cmd_ingest(cfg));
        else if (*features) report(tarc::cmd_features(cfg));
        else if (*ta) report(tarc::cmd_ta(cfg));
        else if (*analyze) report(tarc::cmd_analyze(cfg, reports));
        else if (*sweep)
            report(tarc::cmd_sweep(cfg, annotations ? std::optional<std::filesystem::path>(*annotations)
                                                    : std::nullopt));
        return 0;
    } catch (const tarc::PrerequisiteError& e) {
        std::cerr << "error: " << e.what() << "\n(missing prerequisite: tarc " << e.command() << ")\n";
        return 3;
    } catch (const tarc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
