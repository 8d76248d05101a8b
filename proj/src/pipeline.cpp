#include "tarc/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>

#include <json.hpp>

#include "tarc/analysis.hpp"
#include "tarc/error.hpp"
#include "tarc/features.hpp"
#include "tarc/io.hpp"
#include "tarc/kernels.hpp"
#include "tarc/rng.hpp"
#include "tarc/scoring.hpp"
#include "tarc/stats.hpp"

namespace tarc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kConversations = "conversations.jsonl";
constexpr const char* kFeatures = "features.csv";
constexpr const char* kTa = "ta.csv";

std::string fmt(double x) { return format_number(x); }
std::string fmt(std::size_t n) { return format_count(n); }

/// Collects what a stage read and wrote, then writes its manifest.
class Stage {
public:
    Stage(const RunConfig& cfg, std::string name) : cfg_(cfg), name_(std::move(name)), hash_(cfg.hash()) {
        out_.run_dir = cfg.run_dir();
        fs::create_directories(out_.run_dir);
        write_file(out_.run_dir / "config.json", cfg.canonical().dump(2) + "\n");
    }

    const fs::path& dir() const { return out_.run_dir; }
    fs::path at(const fs::path& name) const { return out_.run_dir / name; }

    /// Records a declared input. Files inside the run dir are listed by
    /// relative name, others relative to the config directory, so the
    /// manifest does not depend on where the checkout lives.
    void input(const fs::path& p) {
        std::string shown;
        auto rel = p.lexically_relative(out_.run_dir);
        if (!rel.empty() && *rel.begin() != "..") shown = rel.generic_string();
        else {
            rel = p.lexically_relative(cfg_.config_dir);
            shown = rel.empty() ? p.generic_string() : rel.generic_string();
        }
        inputs_[shown] = sha256_file(p);
    }

    /// Requires a file produced by an earlier command.
    fs::path require(const char* file, const char* command) {
        auto p = at(file);
        if (!fs::exists(p))
            throw PrerequisiteError(command, std::string(file) + " not found in " + out_.run_dir.string() +
                                                 "; run `tarc " + command + "` with this config first");
        input(p);
        return p;
    }

    void csv(const fs::path& name, const Table& t) {
        auto p = at(name);
        fs::create_directories(p.parent_path());
        write_file(p, "# config_hash: " + hash_ + "\n" + to_csv(t));
        out_.files.push_back(p);
    }

    void text(const fs::path& name, std::string_view contents) {
        auto p = at(name);
        fs::create_directories(p.parent_path());
        write_file(p, contents);
        out_.files.push_back(p);
    }

    void added(const fs::path& p) { out_.files.push_back(p); }
    void warn(std::string w) { out_.warnings.push_back(std::move(w)); }

    StageOutput finish() {
        const auto path = at("manifest-" + name_ + ".json");
        json inputs = json::object();
        for (const auto& [k, v] : inputs_) inputs[k] = v;
        if (fs::exists(path)) {
            try {
                auto old = json::parse(read_file(path));
                if (old.value("inputs", json::object()) != inputs)
                    warn("inputs changed since the last `" + name_ + "` run in " + out_.run_dir.string() +
                         "; its outputs were replaced (previous checksums are gone)");
            } catch (const json::exception&) {
            }
        }
        json outputs = json::object();
        for (const auto& f : out_.files) outputs[f.lexically_relative(out_.run_dir).generic_string()] = sha256_file(f);
        json m{{"stage", name_}, {"config_hash", hash_}, {"seed", cfg_.seed}, {"inputs", inputs}, {"outputs", outputs}};
        write_file(path, m.dump(2) + "\n");
        return out_;
    }

private:
    const RunConfig& cfg_;
    std::string name_;
    std::string hash_;
    StageOutput out_;
    std::map<std::string, std::string> inputs_;
};

const fs::path& need(const std::optional<fs::path>& p, const char* key, const char* command) {
    if (!p) throw ConfigError(std::string("`") + command + "` needs `" + key + "` in the config");
    return *p;
}

ScoreTable load_toxicity(const RunConfig& cfg, Stage& st, const char* command) {
    const auto& path = need(cfg.toxicity_scores, "toxicity_scores", command);
    st.input(path);
    auto table = load_scores(path);
    table.excluded_categories.insert(cfg.exclude_categories.begin(), cfg.exclude_categories.end());
    for (auto& w : table.warnings) st.warn(w);
    return table;
}

std::vector<std::string> feature_cells(const FeatureVector& f) {
    return {fmt(f.question_ratio), fmt(f.lexical_item_count), fmt(f.token_count), fmt(f.mtld),
            fmt(f.hedge_ratio), fmt(f.gratitude_ratio), fmt(f.proper_noun_ratio), fmt(f.polarity_compound),
            f.positive_polarity ? "1" : "0", f.negative_polarity ? "1" : "0"};
}

FeatureVector feature_from_row(const Table& t, const std::vector<std::string>& row) {
    auto num = [&](std::string_view c) { return parse_number(row.at(t.column(c))); };
    FeatureVector f;
    f.question_ratio = num("question_ratio");
    f.lexical_item_count = static_cast<std::size_t>(num("lexical_item_count"));
    f.token_count = static_cast<std::size_t>(num("token_count"));
    f.mtld = num("mtld");
    f.hedge_ratio = num("hedge_ratio");
    f.gratitude_ratio = num("gratitude_ratio");
    f.proper_noun_ratio = num("proper_noun_ratio");
    f.polarity_compound = num("polarity_compound");
    f.positive_polarity = num("positive_polarity") != 0;
    f.negative_polarity = num("negative_polarity") != 0;
    return f;
}

std::shared_ptr<const FeatureResources> load_resources(const RunConfig& cfg) {
    auto base = FeatureResources::load(cfg.data_dir / "tagger", cfg.data_dir / "vader", cfg.hedge_path(),
                                       cfg.gratitude_path());
    if (base->polarity_band == cfg.polarity_band) return base;
    auto copy = std::make_shared<FeatureResources>(*base);
    copy->polarity_band = cfg.polarity_band;
    return copy;
}

std::string missing_list(const std::vector<std::string>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size() && i < 10; ++i) s += (i ? ", " : "") + ids[i];
    if (ids.size() > 10) s += ", ... (" + std::to_string(ids.size()) + " in total)";
    return s;
}

int parse_label(const std::string& s, const fs::path& path, std::size_t row) {
    if (s == "1" || s == "true") return 1;
    if (s == "0" || s == "false") return 0;
    throw ParseError(path.string(), row, "label must be 0 or 1, got '" + s + "'");
}

}  // namespace

void write_conversations(const fs::path& path, std::span<const Conversation> conversations) {
    std::string out;
    for (const auto& c : conversations) {
        json j{{"submission_id", c.submission_id},
               {"subreddit", c.subreddit},
               {"text", c.text},
               {"comment_ids", c.comment_ids},
               {"comment_texts", c.comment_texts}};
        out += j.dump(-1, ' ', false, json::error_handler_t::replace);
        out += '\n';
    }
    write_file(path, out);
}

std::vector<Conversation> read_conversations(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<Conversation> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        try {
            auto j = json::parse(line);
            Conversation c;
            c.submission_id = j.at("submission_id").get<std::string>();
            c.subreddit = j.at("subreddit").get<std::string>();
            c.text = j.at("text").get<std::string>();
            c.comment_ids = j.at("comment_ids").get<std::vector<std::string>>();
            c.comment_texts = j.at("comment_texts").get<std::vector<std::string>>();
            if (c.comment_ids.size() != c.comment_texts.size())
                throw ParseError(path.string(), n, "comment_ids and comment_texts differ in length");
            out.push_back(std::move(c));
        } catch (const json::exception& e) {
            throw ParseError(path.string(), n, e.what());
        }
    }
    return out;
}

void apply_output_override(RunConfig& config, const std::optional<fs::path>& flag) {
    if (flag) config.output_dir = fs::absolute(*flag);
    else if (const char* env = std::getenv("TARC_OUTPUT_DIR"); env && *env) config.output_dir = fs::absolute(env);
}

StageOutput cmd_ingest(const RunConfig& cfg) {
    if (cfg.dumps.empty()) throw ConfigError("`ingest` needs at least one entry in `dumps`");
    Stage st(cfg, "ingest");

    std::vector<RawPost> posts;
    Table issues{{"dump", "line", "message"}, {}};
    for (const auto& d : cfg.dumps) {
        st.input(d);
        auto parsed = parse_dump(d, KindHint::infer, cfg.on_error);
        for (auto& i : parsed.issues) issues.add_row({d.filename().string(), fmt(i.line), i.message});
        std::move(parsed.posts.begin(), parsed.posts.end(), std::back_inserter(posts));
    }

    IngestOptions opt;
    opt.filter.start_utc = cfg.start_utc;
    opt.filter.end_utc = cfg.end_utc;
    opt.filter.subreddits = cfg.subreddits;
    opt.assembly.min_comments = cfg.min_comments;
    opt.assembly.max_comments = cfg.max_comments;
    opt.assembly.seed = cfg.seed;
    opt.template_min_occurrences = cfg.template_min_occurrences;
    const auto result = ingest_posts(posts, opt);
    const auto& convs = result.assembly.conversations;

    write_conversations(st.at(kConversations), convs);
    st.added(st.at(kConversations));

    Table stats{{"subreddit", "submissions", "comments", "removed"}, {}};
    for (const auto& [sub, c] : result.stats.per_subreddit)
        stats.add_row({sub, fmt(c.submissions), fmt(c.comments), fmt(c.removed)});
    stats.add_row({"(total)", fmt(result.stats.n_submissions), fmt(result.stats.n_comments),
                   fmt(result.stats.n_removed)});
    st.csv("corpus_stats.csv", stats);

    std::vector<std::string> ids;
    for (const auto& c : convs) ids.push_back(c.submission_id);
    auto split = split_dataset(ids, cfg.split_fractions, derive_seed(cfg.seed, "split"));
    std::vector<std::pair<std::string, std::string>> assignment;
    for (auto& id : split.train) assignment.emplace_back(id, "train");
    for (auto& id : split.validation) assignment.emplace_back(id, "validation");
    for (auto& id : split.test) assignment.emplace_back(id, "test");
    std::sort(assignment.begin(), assignment.end());
    Table splits{{"submission_id", "split"}, {}};
    for (auto& [id, s] : assignment) splits.add_row({id, s});
    st.csv("splits.csv", splits);

    std::size_t n_templates = 0;
    for (const auto& [sub, t] : result.templates) n_templates += t.size();
    const auto& a = result.assembly;
    Table summary{{"metric", "value"}, {}};
    summary.add_row({"records_parsed", fmt(posts.size())});
    summary.add_row({"records_skipped", fmt(issues.rows.size())});
    summary.add_row({"moderator_templates", fmt(n_templates)});
    summary.add_row({"orphan_comments", fmt(a.orphan_comments)});
    summary.add_row({"nested_replies", fmt(a.nested_replies)});
    summary.add_row({"too_few_comments", fmt(a.too_few_comments)});
    summary.add_row({"sampled_down", fmt(a.sampled_down)});
    summary.add_row({"duplicate_ids", fmt(a.duplicate_ids)});
    summary.add_row({"conversations", fmt(convs.size())});
    summary.add_row({"train", fmt(split.train.size())});
    summary.add_row({"validation", fmt(split.validation.size())});
    summary.add_row({"test", fmt(split.test.size())});
    st.csv("ingest_summary.csv", summary);

    if (!issues.rows.empty()) {
        st.csv("parse_issues.csv", issues);
        st.warn(std::to_string(issues.rows.size()) + " malformed records skipped; see parse_issues.csv");
    }
    if (convs.empty()) st.warn("no conversation passed the filters");
    return st.finish();
}

StageOutput cmd_features(const RunConfig& cfg) {
    Stage st(cfg, "features");
    const auto convs = read_conversations(st.require(kConversations, "ingest"));
    for (const auto& p : {cfg.hedge_path(), cfg.gratitude_path()}) st.input(p);

    FeatureExtractor fx(load_resources(cfg));
    std::vector<std::string> texts;
    texts.reserve(convs.size());
    for (const auto& c : convs) texts.push_back(c.text);
    const auto features = extract_features_parallel(fx, texts, cfg.threads);

    Table t{{"post_id"}, {}};
    for (auto c : kFeatureColumns) t.columns.emplace_back(c);
    for (std::size_t i = 0; i < convs.size(); ++i) {
        auto row = feature_cells(features[i]);
        row.insert(row.begin(), convs[i].submission_id);
        t.add_row(std::move(row));
    }
    st.csv(kFeatures, t);
    return st.finish();
}

StageOutput cmd_ta(const RunConfig& cfg) {
    Stage st(cfg, "ta");
    const auto convs = read_conversations(st.require(kConversations, "ingest"));
    const auto table = load_toxicity(cfg, st, "ta");

    std::vector<std::string> missing;
    for (const auto& c : convs)
        if (!table.contains(c.submission_id)) missing.push_back(c.submission_id);
    if (!missing.empty())
        throw DataError("toxicity scores missing for " + std::to_string(missing.size()) +
                        " submissions: " + missing_list(missing));

    TaOptions opt{table.excluded_categories, cfg.toxic_threshold};
    const auto ta = compute_ta_parallel(convs, table, opt, cfg.threads);

    Table t{{"post_id", "toxicity", "ta_mean", "ta_ratio", "n_comments", "n_toxic", "max_comment_toxicity"}, {}};
    for (std::size_t i = 0; i < convs.size(); ++i) {
        const auto& r = ta[i];
        t.add_row({convs[i].submission_id, fmt(post_toxicity(table, convs[i].submission_id)), fmt(r.ta_mean),
                   fmt(r.ta_ratio), fmt(r.n_comments), fmt(r.n_toxic), fmt(r.max_comment_toxicity)});
    }
    st.csv(kTa, t);
    return st.finish();
}

namespace {

std::vector<PostRecord> join_records(const RunConfig& cfg, Stage& st, std::vector<std::string>& scorers) {
    const auto convs = read_conversations(st.require(kConversations, "ingest"));
    const auto feat = read_csv(st.require(kFeatures, "features"));
    const auto ta = read_csv(st.require(kTa, "ta"));

    const auto& c_path = need(cfg.c_scores, "c_scores", "analyze");
    st.input(c_path);
    auto c_table = load_scores(c_path);
    for (auto& w : c_table.warnings) st.warn(w);
    scorers.push_back("controversiality:" + c_table.scorer_name);
    if (cfg.toxicity_scores) {
        st.input(*cfg.toxicity_scores);
        scorers.push_back("toxicity:" + load_scores(*cfg.toxicity_scores).scorer_name);
    }

    std::map<std::string, std::string> topics;
    if (cfg.topic_labels) {
        st.input(*cfg.topic_labels);
        const auto t = read_csv(*cfg.topic_labels);
        for (const auto& row : t.rows) topics[row.at(t.column("post_id"))] = row.at(t.column("topic_label"));
    }

    std::map<std::string, const std::vector<std::string>*> feat_rows, ta_rows;
    for (const auto& r : feat.rows) feat_rows[r.at(feat.column("post_id"))] = &r;
    for (const auto& r : ta.rows) ta_rows[r.at(ta.column("post_id"))] = &r;

    std::vector<PostRecord> records;
    std::vector<std::string> missing_c, stale;
    for (const auto& c : convs) {
        auto f = feat_rows.find(c.submission_id);
        auto t = ta_rows.find(c.submission_id);
        if (f == feat_rows.end() || t == ta_rows.end()) {
            stale.push_back(c.submission_id);
            continue;
        }
        if (!c_table.contains(c.submission_id)) {
            missing_c.push_back(c.submission_id);
            continue;
        }
        const auto& tr = *t->second;
        auto num = [&](const char* col) { return parse_number(tr.at(ta.column(col))); };
        PostRecord r;
        r.post_id = c.submission_id;
        r.subreddit = c.subreddit;
        std::string lower_sub = c.subreddit;
        for (auto& ch : lower_sub) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        r.is_political = cfg.political_subreddits.count(lower_sub) > 0;
        r.c_score = post_toxicity(c_table, c.submission_id);
        r.toxicity = num("toxicity");
        r.ta.submission_id = c.submission_id;
        r.ta.ta_mean = num("ta_mean");
        r.ta.ta_ratio = num("ta_ratio");
        r.ta.n_comments = static_cast<std::size_t>(num("n_comments"));
        r.ta.n_toxic = static_cast<std::size_t>(num("n_toxic"));
        r.ta.max_comment_toxicity = num("max_comment_toxicity");
        r.features = feature_from_row(feat, *f->second);
        if (auto it = topics.find(c.submission_id); it != topics.end()) r.topic_label = it->second;
        records.push_back(std::move(r));
    }
    if (!stale.empty())
        throw PrerequisiteError(feat_rows.size() < ta_rows.size() ? "features" : "ta",
                                "features.csv or ta.csv lacks " + std::to_string(stale.size()) +
                                    " conversations (" + missing_list(stale) +
                                    "); rerun `tarc features` and `tarc ta` after `tarc ingest`");
    if (!missing_c.empty())
        throw DataError("controversiality scores missing for " + std::to_string(missing_c.size()) +
                        " submissions: " + missing_list(missing_c));
    return records;
}

}  // namespace

StageOutput cmd_analyze(const RunConfig& cfg, const std::vector<std::string>& which) {
    for (const auto& w : which)
        if (std::find(report_names().begin(), report_names().end(), w) == report_names().end())
            throw ConfigError("unknown report '" + w + "'");

    Stage st(cfg, "analyze");
    std::vector<std::string> scorers;
    std::vector<PostRecord> records;
    if (cfg.records) {
        st.input(*cfg.records);
        records = read_records(*cfg.records, cfg.political_subreddits);
        scorers.push_back("records:" + cfg.records->filename().string());
    } else {
        records = join_records(cfg, st, scorers);
    }
    if (records.empty()) throw DataError("no records to analyze");

    st.csv("records.csv", records_table(records));

    auto report = build_report(records, cfg.analysis_options(), which);
    report.provenance = {cfg.hash(), cfg.seed, scorers};
    for (const auto& [name, table] : report.tables) st.csv(fs::path("report") / (name + ".csv"), table);

    for (auto fig : {Figure::overlap, Figure::ta_hist, Figure::tox_vs_ta, Figure::c_hist, Figure::quadrants}) {
        const std::string name(figure_name(fig));
        if (report.has(name)) {
            fs::create_directories(st.at("figures"));
            st.added(emit_figure_data(report, fig, st.at("figures")));
        }
    }

    std::string warnings;
    for (const auto& w : report.warnings) {
        warnings += w + "\n";
        st.warn(w);
    }
    st.text("warnings.txt", warnings);
    json prov{{"config_hash", report.provenance.config_hash},
              {"seed", report.provenance.seed},
              {"scorers", report.provenance.scorers}};
    st.text("provenance.json", prov.dump(2) + "\n");
    return st.finish();
}

StageOutput cmd_sweep(const RunConfig& cfg, const std::optional<fs::path>& annotations) {
    Stage st(cfg, "sweep");
    const auto table = load_toxicity(cfg, st, "sweep");
    const auto& ann_path = annotations ? *annotations : need(cfg.annotations, "annotations", "sweep");
    st.input(ann_path);
    const auto ann = read_csv(ann_path);
    const auto id_col = ann.column("post_id");
    const auto label_col = ann.column("label");
    const auto second_col = ann.find_column("label_b");

    std::vector<double> scores;
    std::vector<bool> labels;
    std::vector<int> labels_i, second;
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < ann.rows.size(); ++i) {
        const auto& row = ann.rows[i];
        const auto& id = row.at(id_col);
        if (!table.contains(id)) {
            missing.push_back(id);
            continue;
        }
        const int l = parse_label(row.at(label_col), ann_path, i + 2);
        scores.push_back(post_toxicity(table, id));
        labels.push_back(l == 1);
        labels_i.push_back(l);
        if (second_col) second.push_back(parse_label(row.at(*second_col), ann_path, i + 2));
    }
    if (!missing.empty())
        throw DataError("toxicity scores missing for " + std::to_string(missing.size()) +
                        " annotated posts: " + missing_list(missing));

    const auto grid = cfg.sweep_grid.empty() ? default_sweep_grid() : cfg.sweep_grid;
    const auto sweep = sweep_threshold(scores, labels, grid);

    Table t{{"threshold", "precision", "recall", "f1", "tp", "fp", "fn", "tn"}, {}};
    for (const auto& p : sweep.points)
        t.add_row({fmt(p.threshold), fmt(p.precision), fmt(p.recall), fmt(p.f1), fmt(p.tp), fmt(p.fp), fmt(p.fn),
                   fmt(p.tn)});
    st.csv("sweep.csv", t);

    std::vector<int> predicted;
    for (double s : scores) predicted.push_back(label_toxic(s, sweep.best_threshold) ? 1 : 0);
    Table summary{{"metric", "value"}, {}};
    summary.add_row({"n", fmt(scores.size())});
    summary.add_row({"best_threshold", fmt(sweep.best_threshold)});
    summary.add_row({"best_f1", fmt(sweep.best_f1)});
    summary.add_row({"roc_auc", fmt(roc_auc(scores, labels_i))});
    summary.add_row({"kappa_model_vs_label", fmt(cohens_kappa(predicted, labels_i))});
    if (second_col) summary.add_row({"kappa_label_vs_label_b", fmt(cohens_kappa(labels_i, second))});
    st.csv("sweep_summary.csv", summary);
    return st.finish();
}

}  // namespace tarc
