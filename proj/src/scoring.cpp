#include "tarc/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "tarc/io.hpp"
#include "tarc/strings.hpp"

namespace tarc {

std::set<std::string> ScoreTable::categories() const {
    std::set<std::string> out;
    for (const auto& [id, cats] : entries)
        for (const auto& [name, score] : cats) out.insert(name);
    return out;
}

namespace {

void add_score(ScoreTable& table, const std::string& source, std::size_t line, const std::string& post_id,
               const std::string& category, double score) {
    if (post_id.empty()) throw ParseError(source, line, "empty post_id");
    if (category.empty()) throw ParseError(source, line, "empty category name");
    if (!(score >= 0.0 && score <= 1.0))
        throw ParseError(source, line, "score " + format_number(score) + " for '" + post_id + "' outside [0,1]");
    if (!table.entries[post_id].emplace(category, score).second)
        throw ParseError(source, line, "duplicate score for ('" + post_id + "', '" + category + "')");
}

std::set<std::string> parse_category_list(std::string_view s) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(',', start);
        if (end == std::string_view::npos) end = s.size();
        auto name = trim(s.substr(start, end - start));
        if (!name.empty()) out.insert(std::string(name));
        start = end + 1;
    }
    return out;
}

void load_csv_scores(const std::filesystem::path& path, ScoreTable& table) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open score file " + path.string());
    const std::string source = path.string();
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> id_col, cat_col, score_col;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            t.remove_prefix(1);
            t = trim(t);
            if (istarts_with(t, "scorer:")) table.scorer_name = std::string(trim(t.substr(7)));
            else if (istarts_with(t, "exclude:")) table.excluded_categories.merge(parse_category_list(t.substr(8)));
            continue;
        }
        auto fields = split_csv_line(t);
        if (!score_col) {
            width = fields.size();
            for (std::size_t i = 0; i < fields.size(); ++i) {
                const auto name = trim(fields[i]);
                if (name == "post_id") id_col = i;
                else if (name == "category") cat_col = i;
                else if (name == "score") score_col = i;
            }
            if (!id_col || !score_col) throw ParseError(source, line_no, "header must name post_id and score columns");
            continue;
        }
        if (fields.size() != width) throw ParseError(source, line_no, "wrong number of fields");
        double score;
        try {
            score = parse_number(fields[*score_col]);
        } catch (const DataError& e) {
            throw ParseError(source, line_no, e.what());
        }
        const std::string category = cat_col ? std::string(trim(fields[*cat_col])) : std::string("score");
        add_score(table, source, line_no, std::string(trim(fields[*id_col])), category, score);
    }
    if (!score_col) throw ParseError(source, line_no, "missing header row");
}

void load_jsonl_scores(const std::filesystem::path& path, ScoreTable& table) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open score file " + path.string());
    const std::string source = path.string();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(source, line_no, std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("post_id") || !j.contains("score"))
            throw ParseError(source, line_no, "record needs post_id and score");
        if (!j["post_id"].is_string() || !j["score"].is_number())
            throw ParseError(source, line_no, "post_id must be a string and score a number");
        std::string category = "score";
        if (auto it = j.find("category"); it != j.end() && it->is_string()) category = it->get<std::string>();
        add_score(table, source, line_no, j["post_id"].get<std::string>(), category, j["score"].get<double>());
    }
}

}  // namespace

ScoreTable load_scores(const std::filesystem::path& path) {
    ScoreTable table;
    const auto ext = path.extension().string();
    if (ext == ".jsonl" || ext == ".json") load_jsonl_scores(path, table);
    else load_csv_scores(path, table);

    auto meta_path = path;
    meta_path += ".meta.json";
    if (std::filesystem::exists(meta_path)) {
        auto meta = nlohmann::json::parse(read_file(meta_path));
        if (auto it = meta.find("scorer"); it != meta.end() && it->is_string()) table.scorer_name = it->get<std::string>();
        if (auto it = meta.find("exclude"); it != meta.end() && it->is_array())
            for (const auto& c : *it) table.excluded_categories.insert(c.get<std::string>());
    }
    if (table.scorer_name.empty()) table.scorer_name = path.stem().string();

    const auto present = table.categories();
    for (const auto& c : table.excluded_categories)
        if (!present.count(c))
            table.warnings.push_back("excluded category '" + c + "' does not occur in " + path.string());
    return table;
}

void write_scores(const std::filesystem::path& path, const ScoreTable& table) {
    std::string out = "# scorer: " + table.scorer_name + "\n";
    if (!table.excluded_categories.empty()) {
        out += "# exclude: ";
        bool first = true;
        for (const auto& c : table.excluded_categories) {
            if (!first) out += ", ";
            out += c;
            first = false;
        }
        out += "\n";
    }
    out += "post_id,category,score\n";
    for (const auto& [id, cats] : table.entries)
        for (const auto& [cat, score] : cats)
            out += csv_escape(id) + "," + csv_escape(cat) + "," + format_number(score) + "\n";
    write_file(path, out);
}

double aggregate_toxicity(const CategoryScores& scores, const std::set<std::string>& excluded) {
    bool any = false;
    double best = 0.0;
    for (const auto& [name, score] : scores) {
        if (excluded.count(name)) continue;
        if (!any || score > best) best = score;
        any = true;
    }
    if (!any) throw ConfigError("every category is excluded; the scorer configuration is unusable");
    return best;
}

double post_toxicity(const ScoreTable& table, const std::string& post_id) {
    auto it = table.entries.find(post_id);
    if (it == table.entries.end())
        throw DataError("no " + table.scorer_name + " score for post '" + post_id + "'");
    return aggregate_toxicity(it->second, table.excluded_categories);
}

std::vector<double> default_sweep_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 19; ++i) grid.push_back(i / 20.0);
    return grid;
}

ThresholdSweep sweep_threshold(std::span<const double> scores, const std::vector<bool>& labels,
                               std::span<const double> grid) {
    if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
    if (scores.empty()) throw DataError("empty annotation set");
    if (std::none_of(labels.begin(), labels.end(), [](bool b) { return b; }))
        throw DataError("no positive labels: recall is undefined");
    if (grid.empty()) throw ConfigError("empty threshold grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError("threshold grid must be strictly increasing");

    ThresholdSweep sweep;
    for (double t : grid) {
        SweepPoint p;
        p.threshold = t;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            const bool predicted = scores[i] > t;
            if (predicted && labels[i]) ++p.tp;
            else if (predicted) ++p.fp;
            else if (labels[i]) ++p.fn;
            else ++p.tn;
        }
        p.precision = (p.tp + p.fp) ? static_cast<double>(p.tp) / static_cast<double>(p.tp + p.fp) : 0.0;
        p.recall = static_cast<double>(p.tp) / static_cast<double>(p.tp + p.fn);
        p.f1 = (p.precision + p.recall) > 0 ? 2 * p.precision * p.recall / (p.precision + p.recall) : 0.0;
        if (sweep.points.empty() || p.f1 > sweep.best_f1) {
            sweep.best_f1 = p.f1;
            sweep.best_threshold = t;
        }
        sweep.points.push_back(p);
    }
    return sweep;
}

TaRecord make_ta_record(std::string submission_id, std::vector<double> toxicities, double toxic_threshold) {
    if (toxicities.empty()) throw DataError("conversation '" + submission_id + "' has no comments");
    TaRecord r;
    r.submission_id = std::move(submission_id);
    // Sorting makes the sum, and so ta_mean, exactly permutation-invariant.
    std::sort(toxicities.begin(), toxicities.end());
    r.n_comments = toxicities.size();
    const double sum = std::accumulate(toxicities.begin(), toxicities.end(), 0.0);
    r.ta_mean = sum / static_cast<double>(r.n_comments);
    r.max_comment_toxicity = toxicities.back();
    r.n_toxic = static_cast<std::size_t>(
        std::count_if(toxicities.begin(), toxicities.end(), [&](double t) { return label_toxic(t, toxic_threshold); }));
    r.ta_ratio = static_cast<double>(r.n_toxic) / static_cast<double>(r.n_comments);
    // A mean never exceeds its maximum, but rounding can push it one ulp over.
    r.ta_mean = std::min(r.ta_mean, r.max_comment_toxicity);
    r.comment_toxicities = std::move(toxicities);
    return r;
}

TaRecord compute_ta(const Conversation& conv, const ScoreTable& table, const TaOptions& options) {
    std::vector<double> toxicities;
    toxicities.reserve(conv.comment_ids.size());
    std::vector<std::string> missing;
    for (const auto& id : conv.comment_ids) {
        auto it = table.entries.find(id);
        if (it == table.entries.end()) {
            missing.push_back(id);
            continue;
        }
        toxicities.push_back(aggregate_toxicity(it->second, options.excluded));
    }
    if (!missing.empty()) {
        std::string msg = "conversation '" + conv.submission_id + "' lacks scores for comments:";
        for (const auto& id : missing) msg += " " + id;
        throw DataError(msg);
    }
    return make_ta_record(conv.submission_id, std::move(toxicities), options.toxic_threshold);
}

double ta_ratio_at(const TaRecord& record, double threshold) {
    if (record.n_comments == 0) return 0.0;
    const auto& t = record.comment_toxicities;
    const auto above = t.end() - std::upper_bound(t.begin(), t.end(), threshold);
    return static_cast<double>(above) / static_cast<double>(record.n_comments);
}

OverlapReport overlap_report(std::span<const OverlapLabels> records) {
    if (records.empty()) throw DataError("overlap report over an empty record set");
    std::size_t t_only = 0, a_only = 0, both = 0, neither = 0;
    for (const auto& r : records) {
        if (r.toxic && r.attracting) ++both;
        else if (r.toxic) ++t_only;
        else if (r.attracting) ++a_only;
        else ++neither;
    }
    const double n = static_cast<double>(records.size());
    OverlapReport out;
    out.n = records.size();
    out.toxic_only = 100.0 * static_cast<double>(t_only) / n;
    out.attracting_only = 100.0 * static_cast<double>(a_only) / n;
    out.both = 100.0 * static_cast<double>(both) / n;
    out.neither = 100.0 * static_cast<double>(neither) / n;
    return out;
}

std::vector<OverlapRow> overlap_by_threshold(std::span<const OverlapInput> records, std::span<const double> thresholds,
                                             double toxic_threshold, AttractingMode mode) {
    std::vector<OverlapRow> rows;
    if (records.empty()) return rows;
    std::vector<OverlapLabels> labels(records.size());
    for (double t : thresholds) {
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("overlap threshold " + format_number(t) + " outside [0,1]");
        for (std::size_t i = 0; i < records.size(); ++i) {
            const TaRecord& ta = *records[i].ta;
            labels[i].toxic = label_toxic(records[i].submission_toxicity, toxic_threshold);
            labels[i].attracting =
                mode == AttractingMode::comment_max ? label_attracting(ta, t) : ta.ta_mean > t;
        }
        rows.push_back({t, overlap_report(labels)});
    }
    return rows;
}

}  // namespace tarc
