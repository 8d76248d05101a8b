#include "tarc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tarc/error.hpp"
#include "tarc/rng.hpp"
#include "tarc/strings.hpp"

namespace tarc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) { return format_number(x); }
std::string fmt(std::size_t n) { return format_count(n); }

bool parse_bool(std::string_view s, const std::string& source, std::size_t row) {
    const auto t = to_lower(trim(s));
    if (t == "1" || t == "true") return true;
    if (t == "0" || t == "false" || t.empty()) return false;
    throw ParseError(source, row, "not a boolean: '" + std::string(s) + "'");
}

std::vector<double> field_values(std::span<const PostRecord> records, std::span<const std::size_t> idx,
                                 std::string_view field) {
    std::vector<double> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(record_field(records[i], field));
    return out;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

struct FeatureSpec {
    std::string_view name;
    bool binary;
};

// Table order: question, elaboration, hedges, gratitude, name calling, then
// the two polarity flags; the remaining elaboration variants follow.
constexpr FeatureSpec kCorrelationFeatures[] = {
    {"question_ratio", false},    {"lexical_item_count", false}, {"hedge_ratio", false},
    {"gratitude_ratio", false},   {"proper_noun_ratio", false},  {"positive_polarity", true},
    {"negative_polarity", true},  {"token_count", false},        {"mtld", false}};

constexpr std::string_view kReportNames[] = {"summary",      "correlation",          "quadrants",
                                             "median_tests", "baseline_regression",  "full_regression",
                                             "overlap",      "overlap_by_threshold", "ta_hist",
                                             "c_hist",       "tox_vs_ta"};

Table regression_table(const RegressionResult& r) {
    Table t{{"term", "coefficient", "std_error", "t_value", "p_value", "vif"}, {}};
    for (std::size_t j = 0; j < r.names.size(); ++j) {
        const double v = (!r.vif.empty() && j > 0) ? r.vif[j - 1] : kNaN;
        t.add_row({r.names[j], fmt(r.coefficients[j]), fmt(r.std_errors[j]), fmt(r.t_values[j]), fmt(r.p_values[j]),
                   fmt(v)});
    }
    return t;
}

std::size_t bin_of(double v, std::size_t bins) {
    if (!(v >= 0.0)) return 0;
    const auto b = static_cast<std::size_t>(std::floor(v * static_cast<double>(bins)));
    return std::min(b, bins - 1);
}

}  // namespace

bool is_record_field(std::string_view field) {
    static constexpr std::string_view own[] = {"c_score", "toxicity", "ta_mean", "ta_ratio", "max_comment_toxicity",
                                               "n_comments"};
    for (auto f : own)
        if (f == field) return true;
    for (auto f : kFeatureColumns)
        if (f == field) return true;
    return false;
}

double record_field(const PostRecord& r, std::string_view field) {
    const auto& f = r.features;
    if (field == "c_score") return r.c_score;
    if (field == "toxicity") return r.toxicity;
    if (field == "ta_mean") return r.ta.ta_mean;
    if (field == "ta_ratio") return r.ta.ta_ratio;
    if (field == "max_comment_toxicity") return r.ta.max_comment_toxicity;
    if (field == "n_comments") return static_cast<double>(r.ta.n_comments);
    if (field == "question_ratio") return f.question_ratio;
    if (field == "lexical_item_count") return static_cast<double>(f.lexical_item_count);
    if (field == "token_count") return static_cast<double>(f.token_count);
    if (field == "mtld") return f.mtld;
    if (field == "hedge_ratio") return f.hedge_ratio;
    if (field == "gratitude_ratio") return f.gratitude_ratio;
    if (field == "proper_noun_ratio") return f.proper_noun_ratio;
    if (field == "polarity_compound") return f.polarity_compound;
    if (field == "positive_polarity") return f.positive_polarity ? 1.0 : 0.0;
    if (field == "negative_polarity") return f.negative_polarity ? 1.0 : 0.0;
    throw ConfigError("unknown record field '" + std::string(field) + "'");
}

std::vector<PostRecord> read_records(const std::filesystem::path& path, const std::set<std::string>& political) {
    const Table t = read_csv(path);
    const std::string source = path.string();
    const std::size_t id = t.column("post_id");
    const std::size_t c = t.column("c_score");
    const std::size_t tox = t.column("toxicity");
    const std::size_t ta = t.column("ta_mean");
    std::vector<std::size_t> feat;
    for (auto name : kFeatureColumns) feat.push_back(t.column(name));
    const auto sub = t.find_column("subreddit");
    const auto pol = t.find_column("is_political");
    const auto ratio = t.find_column("ta_ratio");
    const auto ncom = t.find_column("n_comments");
    const auto ntox = t.find_column("n_toxic");
    const auto maxc = t.find_column("max_comment_toxicity");
    const auto topic = t.find_column("topic_label");

    std::vector<PostRecord> out;
    out.reserve(t.rows.size());
    std::set<std::string> seen;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        const std::size_t line = i + 2;
        auto num = [&](std::size_t col) {
            try {
                return parse_number(row[col]);
            } catch (const DataError& e) {
                throw ParseError(source, line, t.columns[col] + ": " + e.what());
            }
        };
        auto unit = [&](std::size_t col) {
            const double v = num(col);
            if (!(v >= 0.0 && v <= 1.0)) throw ParseError(source, line, t.columns[col] + " outside [0,1]");
            return v;
        };
        // Optional columns may carry "nan" for unknown values.
        auto opt_unit = [&](std::size_t col) {
            const double v = num(col);
            return std::isnan(v) ? v : unit(col);
        };
        PostRecord r;
        r.post_id = row[id];
        if (!seen.insert(r.post_id).second) throw ParseError(source, line, "duplicate post_id '" + r.post_id + "'");
        if (sub) r.subreddit = row[*sub];
        r.is_political = pol ? parse_bool(row[*pol], source, line) : political.count(to_lower(r.subreddit)) > 0;
        r.c_score = unit(c);
        r.toxicity = unit(tox);
        r.ta.submission_id = r.post_id;
        r.ta.ta_mean = unit(ta);
        r.ta.ta_ratio = ratio ? opt_unit(*ratio) : kNaN;
        r.ta.n_comments = ncom ? static_cast<std::size_t>(num(*ncom)) : 0;
        r.ta.n_toxic = ntox ? static_cast<std::size_t>(num(*ntox)) : 0;
        r.ta.max_comment_toxicity = maxc ? opt_unit(*maxc) : kNaN;
        auto& f = r.features;
        f.question_ratio = num(feat[0]);
        f.lexical_item_count = static_cast<std::size_t>(num(feat[1]));
        f.token_count = static_cast<std::size_t>(num(feat[2]));
        f.mtld = num(feat[3]);
        f.hedge_ratio = num(feat[4]);
        f.gratitude_ratio = num(feat[5]);
        f.proper_noun_ratio = num(feat[6]);
        f.polarity_compound = num(feat[7]);
        f.positive_polarity = parse_bool(row[feat[8]], source, line);
        f.negative_polarity = parse_bool(row[feat[9]], source, line);
        if (topic && !row[*topic].empty()) r.topic_label = row[*topic];
        out.push_back(std::move(r));
    }
    return out;
}

Table records_table(std::span<const PostRecord> records) {
    Table t;
    t.columns = {"post_id", "subreddit", "is_political", "c_score", "toxicity", "ta_mean", "ta_ratio",
                 "n_comments", "n_toxic", "max_comment_toxicity"};
    for (auto c : kFeatureColumns) t.columns.emplace_back(c);
    t.columns.emplace_back("topic_label");
    for (const auto& r : records) {
        const auto& f = r.features;
        t.add_row({r.post_id, r.subreddit, r.is_political ? "1" : "0", fmt(r.c_score), fmt(r.toxicity),
                   fmt(r.ta.ta_mean), fmt(r.ta.ta_ratio), fmt(r.ta.n_comments), fmt(r.ta.n_toxic),
                   fmt(r.ta.max_comment_toxicity), fmt(f.question_ratio), fmt(f.lexical_item_count),
                   fmt(f.token_count), fmt(f.mtld), fmt(f.hedge_ratio), fmt(f.gratitude_ratio),
                   fmt(f.proper_noun_ratio), fmt(f.polarity_compound), f.positive_polarity ? "1" : "0",
                   f.negative_polarity ? "1" : "0", r.topic_label.value_or("")});
    }
    return t;
}

Table CorrelationTable::to_table() const {
    Table t{{"feature", "method", "controversial_r", "controversial_p", "controversial_prevalence",
             "noncontroversial_r", "noncontroversial_p", "noncontroversial_prevalence"},
            {}};
    for (const auto& r : rows)
        t.add_row({r.feature, r.method, fmt(r.controversial.r), fmt(r.controversial.p_value),
                   fmt(r.controversial.prevalence), fmt(r.noncontroversial.r), fmt(r.noncontroversial.p_value),
                   fmt(r.noncontroversial.prevalence)});
    return t;
}

CorrelationTable correlation_table(std::span<const PostRecord> records, const SplitRule& split) {
    if (records.empty()) throw DataError("correlation table over no records");
    CorrelationTable out;
    if (split.kind == SplitRule::Kind::median) {
        std::vector<double> c;
        for (const auto& r : records) c.push_back(r.c_score);
        out.split_value = median(c);
    } else {
        out.split_value = split.threshold;
    }
    std::vector<std::size_t> hi, lo;
    for (std::size_t i = 0; i < records.size(); ++i) (records[i].c_score > out.split_value ? hi : lo).push_back(i);
    out.n_controversial = hi.size();
    out.n_noncontroversial = lo.size();
    if (hi.size() < 3)
        throw DataError("controversial group has " + std::to_string(hi.size()) + " records; need at least 3");
    if (lo.size() < 3)
        throw DataError("non-controversial group has " + std::to_string(lo.size()) + " records; need at least 3");

    auto cell = [&](const std::vector<std::size_t>& group, const FeatureSpec& spec) {
        CorrelationCell c;
        const auto x = field_values(records, group, spec.name);
        const auto y = field_values(records, group, "ta_mean");
        const auto present = std::count_if(x.begin(), x.end(), [](double v) { return v > 0; });
        c.prevalence = 100.0 * static_cast<double>(present) / static_cast<double>(x.size());
        if (is_constant(x) || is_constant(y)) {
            c.r = c.p_value = kNaN;
            return c;
        }
        const TestResult t = spec.binary ? point_biserial(x, y) : spearman(x, y);
        c.r = t.statistic;
        c.p_value = t.p_value;
        return c;
    };
    for (const auto& spec : kCorrelationFeatures) {
        CorrelationRow row;
        row.feature = std::string(spec.name);
        row.method = spec.binary ? "point-biserial" : "spearman";
        row.controversial = cell(hi, spec);
        row.noncontroversial = cell(lo, spec);
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string_view quadrant_name(Quadrant q) {
    switch (q) {
        case Quadrant::low_c_low_ta: return "low_c_low_ta";
        case Quadrant::low_c_high_ta: return "low_c_high_ta";
        case Quadrant::high_c_low_ta: return "high_c_low_ta";
        case Quadrant::high_c_high_ta: return "high_c_high_ta";
    }
    return "";
}

QuadrantPartition quadrant_partition(std::span<const PostRecord> records) {
    if (records.empty()) throw DataError("quadrant partition over no records");
    QuadrantPartition q;
    const auto idx = all_indices(records.size());
    q.median_c = median(field_values(records, idx, "c_score"));
    q.median_ta = median(field_values(records, idx, "ta_mean"));
    for (std::size_t i = 0; i < records.size(); ++i) {
        const bool hc = records[i].c_score > q.median_c;
        const bool ht = records[i].ta.ta_mean > q.median_ta;
        q.members[static_cast<std::size_t>(hc) * 2 + static_cast<std::size_t>(ht)].push_back(i);
    }
    return q;
}

MedianTestResult group_median_test(std::span<const PostRecord> records, std::string_view field) {
    std::vector<double> a, b;
    for (const auto& r : records) (r.is_political ? a : b).push_back(record_field(r, field));
    if (a.empty()) throw DataError("median test: no political posts");
    if (b.empty()) throw DataError("median test: no non-political posts");
    return moods_median(a, b);
}

BaselineResult baseline_regression(std::span<const PostRecord> records) {
    if (records.size() < 3) throw DataError("baseline regression needs at least 3 records");
    const auto n = static_cast<Eigen::Index>(records.size());
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = records[static_cast<std::size_t>(i)];
        X(i, 0) = 1.0;
        X(i, 1) = r.toxicity;
        y(i) = r.ta.ta_mean;
    }
    if ((X.col(1).array() == X(0, 1)).all()) throw MathError("baseline regression: toxicity is constant");
    BaselineResult out;
    out.regression = ols(X, y, {"intercept", "toxicity"});
    const std::vector<double> truth(y.data(), y.data() + y.size());
    try {
        out.spearman_pred_truth = spearman(out.regression.fitted, truth).statistic;
    } catch (const MathError&) {
        out.spearman_pred_truth = kNaN;
    }
    return out;
}

std::vector<std::string> full_regression_terms(const FullRegressionOptions& options) {
    std::vector<std::string> names = {"intercept",          "c_score",     "question_ratio", "gratitude_ratio",
                                      "proper_noun_ratio",  "lexical_item_count", "hedge_ratio"};
    if (options.polarity_flags) {
        names.emplace_back("positive_polarity");
        names.emplace_back("negative_polarity");
    } else {
        names.emplace_back("polarity_compound");
    }
    return names;
}

Eigen::MatrixXd full_regression_design(std::span<const PostRecord> records, const FullRegressionOptions& options) {
    const auto names = full_regression_terms(options);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(records.size()), static_cast<Eigen::Index>(names.size()));
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        X(row, 0) = 1.0;
        for (std::size_t j = 1; j < names.size(); ++j)
            X(row, static_cast<Eigen::Index>(j)) = record_field(records[i], names[j]);
    }
    return X;
}

FullRegressionResult full_regression(std::span<const PostRecord> records, const FullRegressionOptions& options) {
    const auto names = full_regression_terms(options);
    const Eigen::MatrixXd X = full_regression_design(records, options);
    Eigen::VectorXd y(X.rows());
    for (std::size_t i = 0; i < records.size(); ++i) y(static_cast<Eigen::Index>(i)) = records[i].ta.ta_mean;

    FullRegressionResult out;
    const auto v = vif(X);
    out.regression = ols(X, y, names);
    out.regression.vif = v;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] > options.vif_limit) out.high_vif.push_back(names[j + 1]);
    return out;
}

DecileSample decile_sample(std::span<const std::string> ids, std::span<const double> scores, std::size_t per_decile,
                           std::uint64_t seed) {
    if (ids.size() != scores.size()) throw DataError("decile sample: ids and scores differ in length");
    if (ids.empty()) throw DataError("decile sample over no records");
    const std::size_t n = ids.size();
    std::vector<std::size_t> order = all_indices(n);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] < scores[b];
        return ids[a] < ids[b];
    });
    std::array<std::vector<std::size_t>, 10> deciles;  // positions in `order`
    for (std::size_t rank = 0; rank < n; ++rank) deciles[rank * 10 / n].push_back(rank);

    DecileSample out;
    for (int d = 0; d < 10; ++d) {
        auto members = deciles[static_cast<std::size_t>(d)];
        if (members.size() < per_decile)
            out.warnings.push_back("decile " + std::to_string(d) + " has " + std::to_string(members.size()) +
                                   " records, fewer than " + std::to_string(per_decile) + "; taking all");
        Rng rng(derive_seed(seed, "decile-" + std::to_string(d)));
        const std::size_t k = std::min(per_decile, members.size());
        rng.partial_shuffle(members, k);
        members.resize(k);
        std::sort(members.begin(), members.end());
        for (auto rank : members) out.picks.push_back({order[rank], d});
    }
    return out;
}

DecileSample decile_sample(std::span<const PostRecord> records, std::string_view field, std::size_t per_decile,
                           std::uint64_t seed) {
    std::vector<std::string> ids;
    std::vector<double> scores;
    for (const auto& r : records) {
        ids.push_back(r.post_id);
        scores.push_back(record_field(r, field));
    }
    return decile_sample(ids, scores, per_decile, seed);
}

const Table& AnalysisReport::table(const std::string& name) const {
    auto it = tables.find(name);
    if (it == tables.end()) throw DataError("report has no '" + name + "' table");
    return it->second;
}

std::span<const std::string_view> report_names() { return kReportNames; }

Table histogram_table(std::span<const double> values, std::size_t bins) {
    if (bins == 0) throw ConfigError("histogram needs at least one bin");
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) ++counts[bin_of(v, bins)];
    Table t{{"bin_left", "bin_right", "count"}, {}};
    const auto b = static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i)
        t.add_row({fmt(static_cast<double>(i) / b), fmt(static_cast<double>(i + 1) / b), fmt(counts[i])});
    return t;
}

AnalysisReport build_report(std::span<const PostRecord> records, const AnalysisOptions& options,
                            const std::vector<std::string>& which) {
    for (const auto& w : which)
        if (std::find(std::begin(kReportNames), std::end(kReportNames), w) == std::end(kReportNames))
            throw ConfigError("unknown report '" + w + "'");
    if (records.empty()) throw DataError("analysis over no records");

    AnalysisReport report;
    auto wanted = [&](std::string_view name) {
        return which.empty() || std::find(which.begin(), which.end(), name) != which.end();
    };
    auto explicitly = [&](std::string_view name) {
        return std::find(which.begin(), which.end(), name) != which.end();
    };
    // Runs one analysis; failures become warnings unless the report was named.
    auto run = [&](std::string_view name, auto&& body) {
        if (!wanted(name)) return;
        try {
            report.tables.emplace(std::string(name), body());
        } catch (const Error& e) {
            if (explicitly(name)) throw;
            report.warnings.push_back(std::string(name) + " skipped: " + e.what());
        }
    };
    const auto idx = all_indices(records.size());
    const auto ta = field_values(records, idx, "ta_mean");
    const auto c = field_values(records, idx, "c_score");
    const auto tox = field_values(records, idx, "toxicity");

    std::optional<BaselineResult> baseline;
    auto get_baseline = [&]() -> const BaselineResult& {
        if (!baseline) baseline = baseline_regression(records);
        return *baseline;
    };

    run("summary", [&] {
        Table t{{"metric", "value"}, {}};
        const auto n_pol = std::count_if(records.begin(), records.end(), [](const auto& r) { return r.is_political; });
        t.add_row({"n_records", fmt(records.size())});
        t.add_row({"n_political", fmt(static_cast<std::size_t>(n_pol))});
        const double split = options.split.kind == SplitRule::Kind::median ? median(c) : options.split.threshold;
        const auto n_hi = std::count_if(c.begin(), c.end(), [&](double v) { return v > split; });
        t.add_row({"controversial_split", fmt(split)});
        t.add_row({"n_controversial", fmt(static_cast<std::size_t>(n_hi))});
        auto corr = [&](const std::string& key, std::span<const double> x, std::span<const double> y) {
            double r = kNaN, p = kNaN;
            try {
                const auto s = spearman(x, y);
                r = s.statistic;
                p = s.p_value;
            } catch (const Error& e) {
                report.warnings.push_back(key + ": " + e.what());
            }
            t.add_row({key, fmt(r)});
            t.add_row({key + "_p", fmt(p)});
        };
        corr("spearman_ta_c", ta, c);
        const auto ratio = field_values(records, idx, "ta_ratio");
        if (std::none_of(ratio.begin(), ratio.end(), [](double v) { return std::isnan(v); }))
            corr("spearman_ta_mean_ta_ratio", ta, ratio);
        try {
            const auto& b = get_baseline();
            t.add_row({"baseline_rmse", fmt(b.regression.rmse)});
            t.add_row({"baseline_spearman", fmt(b.spearman_pred_truth)});
            t.add_row({"baseline_slope", fmt(b.regression.coefficients[1])});
            t.add_row({"baseline_slope_se", fmt(b.regression.std_errors[1])});
        } catch (const Error& e) {
            report.warnings.push_back(std::string("baseline: ") + e.what());
        }
        return t;
    });

    run("correlation", [&] {
        return correlation_table(records, options.split).to_table();
    });

    run("quadrants", [&] {
        const auto q = quadrant_partition(records);
        Table t{{"quadrant", "n", "percent", "median_c", "median_ta"}, {}};
        for (std::size_t k = 0; k < 4; ++k)
            t.add_row({std::string(quadrant_name(static_cast<Quadrant>(k))), fmt(q.members[k].size()),
                       fmt(100.0 * static_cast<double>(q.members[k].size()) / static_cast<double>(records.size())),
                       fmt(q.median_c), fmt(q.median_ta)});
        return t;
    });

    run("median_tests", [&] {
        Table t{{"value", "political_n", "other_n", "political_median", "other_median", "grand_median", "statistic",
                 "p_value", "method"},
                {}};
        for (std::string_view field : {"c_score", "ta_mean"}) {
            const auto m = group_median_test(records, field);
            const auto n_pol = std::count_if(records.begin(), records.end(), [](const auto& r) { return r.is_political; });
            t.add_row({std::string(field), fmt(static_cast<std::size_t>(n_pol)),
                       fmt(records.size() - static_cast<std::size_t>(n_pol)), fmt(m.median_a), fmt(m.median_b),
                       fmt(m.grand_median), fmt(m.test.statistic), fmt(m.test.p_value), m.test.method});
        }
        return t;
    });

    run("baseline_regression", [&] {
        const auto& b = get_baseline();
        Table t = regression_table(b.regression);
        return t;
    });

    run("full_regression", [&] {
        const auto fr = full_regression(records, options.regression);
        if (!fr.high_vif.empty()) {
            std::string names;
            for (const auto& h : fr.high_vif) names += (names.empty() ? "" : ", ") + h;
            report.warnings.push_back("full_regression: VIF above " + fmt(options.regression.vif_limit) + " for " + names);
        }
        return regression_table(fr.regression);
    });

    auto overlap_inputs = [&] {
        std::vector<OverlapInput> in;
        for (const auto& r : records) {
            if (options.attracting_mode == AttractingMode::comment_max && std::isnan(r.ta.max_comment_toxicity))
                throw DataError("overlap needs max_comment_toxicity for post '" + r.post_id + "'");
            in.push_back({r.toxicity, &r.ta});
        }
        return in;
    };

    run("overlap", [&] {
        const auto in = overlap_inputs();
        const double thr[] = {options.attracting_threshold};
        const auto rows = overlap_by_threshold(in, thr, options.toxic_threshold, options.attracting_mode);
        const auto& o = rows.front().report;
        Table t{{"quadrant", "percent"}, {}};
        t.add_row({"toxic_only", fmt(o.toxic_only)});
        t.add_row({"attracting_only", fmt(o.attracting_only)});
        t.add_row({"both", fmt(o.both)});
        t.add_row({"neither", fmt(o.neither)});
        return t;
    });

    run("overlap_by_threshold", [&] {
        const auto in = overlap_inputs();
        const auto rows =
            overlap_by_threshold(in, options.overlap_thresholds, options.toxic_threshold, options.attracting_mode);
        Table t{{"threshold", "ta_only", "both", "t_only", "neither"}, {}};
        for (const auto& row : rows)
            t.add_row({fmt(row.threshold), fmt(row.report.attracting_only), fmt(row.report.both),
                       fmt(row.report.toxic_only), fmt(row.report.neither)});
        return t;
    });

    run("ta_hist", [&] { return histogram_table(ta, options.histogram_bins); });
    run("c_hist", [&] { return histogram_table(c, options.histogram_bins); });

    run("tox_vs_ta", [&] {
        const std::size_t bins = options.scatter_bins;
        if (bins == 0) throw ConfigError("scatter needs at least one bin");
        std::vector<std::size_t> counts(bins * bins, 0);
        for (std::size_t i = 0; i < records.size(); ++i) ++counts[bin_of(tox[i], bins) * bins + bin_of(ta[i], bins)];
        double slope = kNaN, intercept = kNaN;
        try {
            const auto& b = get_baseline();
            intercept = b.regression.coefficients[0];
            slope = b.regression.coefficients[1];
        } catch (const Error& e) {
            report.warnings.push_back(std::string("tox_vs_ta: no baseline line: ") + e.what());
        }
        Table t{{"tox_bin_left", "tox_bin_right", "ta_bin_left", "ta_bin_right", "count", "baseline_slope",
                 "baseline_intercept"},
                {}};
        const auto b = static_cast<double>(bins);
        for (std::size_t i = 0; i < bins; ++i)
            for (std::size_t j = 0; j < bins; ++j)
                t.add_row({fmt(static_cast<double>(i) / b), fmt(static_cast<double>(i + 1) / b),
                           fmt(static_cast<double>(j) / b), fmt(static_cast<double>(j + 1) / b),
                           fmt(counts[i * bins + j]), fmt(slope), fmt(intercept)});
        return t;
    });

    return report;
}

std::string_view figure_name(Figure f) {
    switch (f) {
        case Figure::overlap: return "overlap";
        case Figure::ta_hist: return "ta_hist";
        case Figure::tox_vs_ta: return "tox_vs_ta";
        case Figure::c_hist: return "c_hist";
        case Figure::quadrants: return "quadrants";
        case Figure::sweep: return "sweep";
    }
    return "";
}

std::filesystem::path emit_figure_data(const AnalysisReport& report, Figure figure, const std::filesystem::path& dir) {
    const std::string name(figure_name(figure));
    const Table& t = report.table(name);
    const auto path = dir / (name + ".csv");
    write_csv(path, t);
    return path;
}

}  // namespace tarc
