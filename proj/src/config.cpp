#include "tarc/config.hpp"

#include <cmath>
#include <fstream>

#include "tarc/error.hpp"
#include "tarc/io.hpp"

namespace tarc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kPathKeys = {"dumps",       "toxicity_scores", "c_scores",      "annotations",
                                         "topic_labels", "records",         "data_dir",      "hedge_lexicon",
                                         "gratitude_lexicon", "output_dir"};

const std::set<std::string> kKnownKeys = {
    "dumps", "toxicity_scores", "c_scores", "annotations", "topic_labels", "records", "data_dir",
    "hedge_lexicon", "gratitude_lexicon", "output_dir", "seed", "toxic_threshold", "attracting_threshold",
    "attracting_mode", "polarity_band", "controversial_threshold", "overlap_thresholds", "sweep_grid",
    "exclude_categories", "regression_polarity", "subreddits", "political_subreddits", "start_utc", "end_utc",
    "min_comments", "max_comments", "template_min_occurrences", "split_fractions", "on_error", "threads"};

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

template <class T>
T get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

std::set<std::string> lower_set(const json& j, const char* key) {
    std::set<std::string> out;
    for (auto& s : get<std::vector<std::string>>(j, key)) out.insert(lower(s));
    return out;
}

void check_unit(double x, const std::string& what) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError(what + " must lie in [0,1], got " + format_number(x));
}

void check_exists(const fs::path& p, const std::string& what) {
    if (!fs::exists(p)) throw ConfigError(what + " not found: " + p.string());
}

const char* attracting_mode_name(AttractingMode m) { return m == AttractingMode::ta_mean ? "ta_mean" : "comment_max"; }

}  // namespace

fs::path RunConfig::resolve(const fs::path& p) const { return p.is_absolute() ? p : config_dir / p; }

fs::path RunConfig::hedge_path() const {
    return hedge_lexicon ? *hedge_lexicon : data_dir / "lexicons" / "hedges.txt";
}

fs::path RunConfig::gratitude_path() const {
    return gratitude_lexicon ? *gratitude_lexicon : data_dir / "lexicons" / "gratitude.txt";
}

AnalysisOptions RunConfig::analysis_options() const {
    AnalysisOptions o;
    if (controversial_threshold) {
        o.split.kind = SplitRule::Kind::threshold;
        o.split.threshold = *controversial_threshold;
    }
    o.overlap_thresholds = overlap_thresholds;
    o.toxic_threshold = toxic_threshold;
    o.attracting_threshold = attracting_threshold;
    o.attracting_mode = attracting_mode;
    o.regression.polarity_flags = regression_polarity_flags;
    return o;
}

json RunConfig::canonical() const {
    json j;
    j["paths"] = raw_paths_.is_null() ? json::object() : raw_paths_;
    j["paths"].erase("output_dir");
    j["seed"] = seed;
    j["toxic_threshold"] = toxic_threshold;
    j["attracting_threshold"] = attracting_threshold;
    j["attracting_mode"] = attracting_mode_name(attracting_mode);
    j["polarity_band"] = polarity_band;
    j["controversial_threshold"] = controversial_threshold ? json(*controversial_threshold) : json(nullptr);
    j["overlap_thresholds"] = overlap_thresholds;
    j["sweep_grid"] = sweep_grid;
    j["exclude_categories"] = exclude_categories;
    j["regression_polarity"] = regression_polarity_flags ? "flags" : "compound";
    j["subreddits"] = subreddits;
    j["political_subreddits"] = political_subreddits;
    j["start_utc"] = start_utc ? json(*start_utc) : json(nullptr);
    j["end_utc"] = end_utc ? json(*end_utc) : json(nullptr);
    j["min_comments"] = min_comments;
    j["max_comments"] = max_comments;
    j["template_min_occurrences"] = template_min_occurrences;
    j["split_fractions"] = split_fractions;
    j["on_error"] = on_error == OnError::skip ? "skip" : "abort";
    return j;
}

std::string RunConfig::hash() const { return sha256_hex(canonical().dump()); }

fs::path RunConfig::run_dir() const { return output_dir / ("run-" + hash().substr(0, 12)); }

void validate_config(const RunConfig& c) {
    check_unit(c.toxic_threshold, "toxic_threshold");
    check_unit(c.attracting_threshold, "attracting_threshold");
    check_unit(c.polarity_band, "polarity_band");
    if (c.controversial_threshold) check_unit(*c.controversial_threshold, "controversial_threshold");
    for (double t : c.overlap_thresholds) check_unit(t, "overlap threshold");
    for (std::size_t i = 0; i < c.sweep_grid.size(); ++i) {
        check_unit(c.sweep_grid[i], "sweep grid value");
        if (i > 0 && !(c.sweep_grid[i] > c.sweep_grid[i - 1]))
            throw ConfigError("sweep_grid must be strictly increasing");
    }
    double sum = 0;
    for (double f : c.split_fractions) {
        if (!(f >= 0.0)) throw ConfigError("split fractions must be non-negative");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split fractions must sum to 1, got " + format_number(sum));
    if (c.min_comments == 0) throw ConfigError("min_comments must be at least 1");
    if (c.max_comments < c.min_comments) throw ConfigError("max_comments must be >= min_comments");
    if (c.start_utc && c.end_utc && *c.start_utc > *c.end_utc) throw ConfigError("start_utc is after end_utc");

    for (const auto& d : c.dumps) check_exists(d, "dump");
    if (c.toxicity_scores) check_exists(*c.toxicity_scores, "toxicity score file");
    if (c.c_scores) check_exists(*c.c_scores, "controversiality score file");
    if (c.annotations) check_exists(*c.annotations, "annotation file");
    if (c.topic_labels) check_exists(*c.topic_labels, "topic label file");
    if (c.records) check_exists(*c.records, "records file");
    check_exists(c.data_dir, "data directory");
    check_exists(c.hedge_path(), "hedge lexicon");
    check_exists(c.gratitude_path(), "gratitude lexicon");
}

RunConfig config_from_json(const json& j, const fs::path& base_dir) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!kKnownKeys.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");

    RunConfig c;
    c.config_dir = base_dir;
    c.raw_paths_ = json::object();
    for (const auto& k : kPathKeys)
        if (j.contains(k)) c.raw_paths_[k] = j.at(k);

    auto path_opt = [&](const char* key) -> std::optional<fs::path> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return c.resolve(get<std::string>(j, key));
    };

    if (j.contains("dumps"))
        for (auto& d : get<std::vector<std::string>>(j, "dumps")) c.dumps.push_back(c.resolve(d));
    c.toxicity_scores = path_opt("toxicity_scores");
    c.c_scores = path_opt("c_scores");
    c.annotations = path_opt("annotations");
    c.topic_labels = path_opt("topic_labels");
    c.records = path_opt("records");
    c.hedge_lexicon = path_opt("hedge_lexicon");
    c.gratitude_lexicon = path_opt("gratitude_lexicon");
    c.data_dir = path_opt("data_dir").value_or(fs::path(TARC_DATA_DIR));
    if (auto o = path_opt("output_dir")) c.output_dir = *o;
    else c.output_dir = c.resolve("out");

    if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
    if (j.contains("toxic_threshold")) c.toxic_threshold = get<double>(j, "toxic_threshold");
    // The attracting threshold follows the toxic one unless set on its own.
    c.attracting_threshold = j.contains("attracting_threshold") ? get<double>(j, "attracting_threshold")
                                                                : c.toxic_threshold;
    if (j.contains("attracting_mode")) {
        auto m = get<std::string>(j, "attracting_mode");
        if (m == "comment_max") c.attracting_mode = AttractingMode::comment_max;
        else if (m == "ta_mean") c.attracting_mode = AttractingMode::ta_mean;
        else throw ConfigError("attracting_mode must be comment_max or ta_mean, got '" + m + "'");
    }
    if (j.contains("polarity_band")) c.polarity_band = get<double>(j, "polarity_band");
    if (j.contains("controversial_threshold") && !j.at("controversial_threshold").is_null())
        c.controversial_threshold = get<double>(j, "controversial_threshold");
    if (j.contains("overlap_thresholds")) c.overlap_thresholds = get<std::vector<double>>(j, "overlap_thresholds");
    if (j.contains("sweep_grid")) c.sweep_grid = get<std::vector<double>>(j, "sweep_grid");
    if (j.contains("exclude_categories")) c.exclude_categories = get<std::set<std::string>>(j, "exclude_categories");
    if (j.contains("regression_polarity")) {
        auto m = get<std::string>(j, "regression_polarity");
        if (m == "flags") c.regression_polarity_flags = true;
        else if (m != "compound") throw ConfigError("regression_polarity must be compound or flags, got '" + m + "'");
    }
    if (j.contains("subreddits")) c.subreddits = lower_set(j, "subreddits");
    if (j.contains("political_subreddits")) c.political_subreddits = lower_set(j, "political_subreddits");
    if (j.contains("start_utc") && !j.at("start_utc").is_null()) c.start_utc = get<std::int64_t>(j, "start_utc");
    if (j.contains("end_utc") && !j.at("end_utc").is_null()) c.end_utc = get<std::int64_t>(j, "end_utc");
    if (j.contains("min_comments")) c.min_comments = get<std::size_t>(j, "min_comments");
    if (j.contains("max_comments")) c.max_comments = get<std::size_t>(j, "max_comments");
    if (j.contains("template_min_occurrences"))
        c.template_min_occurrences = get<std::size_t>(j, "template_min_occurrences");
    if (j.contains("split_fractions")) {
        auto f = get<std::vector<double>>(j, "split_fractions");
        if (f.size() != 3) throw ConfigError("split_fractions needs three values (train, validation, test)");
        c.split_fractions = {f[0], f[1], f[2]};
    }
    if (j.contains("on_error")) {
        auto m = get<std::string>(j, "on_error");
        if (m == "skip") c.on_error = OnError::skip;
        else if (m != "abort") throw ConfigError("on_error must be abort or skip, got '" + m + "'");
    }
    if (j.contains("threads")) c.threads = get<int>(j, "threads");

    validate_config(c);
    return c;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(j, fs::absolute(path).parent_path());
}

}  // namespace tarc
