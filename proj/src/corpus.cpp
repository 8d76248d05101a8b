#include "tarc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>

#include <json.hpp>

#include "tarc/strings.hpp"

namespace tarc {

namespace {

using nlohmann::json;

[[noreturn]] void bad_record(const std::string& message) { throw ParseError("<record>", 0, message); }

std::optional<std::string> optional_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) bad_record(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

std::int64_t parse_timestamp(const json& v) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) return static_cast<std::int64_t>(std::floor(v.get<double>()));
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        std::int64_t out = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec == std::errc() && ptr == s.data() + s.size()) return out;
        double d = 0;
        auto [p2, ec2] = std::from_chars(s.data(), s.data() + s.size(), d);
        if (ec2 == std::errc() && p2 == s.data() + s.size()) return static_cast<std::int64_t>(std::floor(d));
    }
    bad_record("field 'created_utc' is not a timestamp");
}

}  // namespace

RawPost parse_record(std::string_view line, KindHint hint) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        bad_record(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) bad_record("record is not a JSON object");

    RawPost post;
    auto id = optional_string(j, "id");
    if (!id || id->empty()) bad_record("missing required field 'id'");
    post.id = std::move(*id);

    auto subreddit = optional_string(j, "subreddit");
    if (!subreddit || subreddit->empty()) bad_record("missing required field 'subreddit'");
    post.subreddit = std::move(*subreddit);

    post.title = optional_string(j, "title");
    post.parent_id = optional_string(j, "parent_id");
    auto body = optional_string(j, "body");
    if (!body) body = optional_string(j, "selftext");

    auto kind = optional_string(j, "kind");
    if (kind) {
        if (*kind == "submission" || *kind == "t3") post.kind = PostKind::submission;
        else if (*kind == "comment" || *kind == "t1") post.kind = PostKind::comment;
        else bad_record("unknown kind '" + *kind + "'");
    } else if (hint == KindHint::submission) {
        post.kind = PostKind::submission;
    } else if (hint == KindHint::comment) {
        post.kind = PostKind::comment;
    } else if (post.title) {
        post.kind = PostKind::submission;
    } else if (post.parent_id) {
        post.kind = PostKind::comment;
    } else {
        bad_record("cannot infer kind: neither 'title' nor 'parent_id' present");
    }

    if (post.kind == PostKind::comment) {
        if (!post.parent_id || post.parent_id->empty()) bad_record("comment without 'parent_id'");
        if (!body) bad_record("missing required field 'body'");
        post.title.reset();
    } else {
        if (post.parent_id) bad_record("submission must not carry 'parent_id'");
        if (!post.title && !body) bad_record("submission without 'title' or 'selftext'");
    }
    post.body = body.value_or(std::string());

    auto ts = j.find("created_utc");
    if (ts == j.end() || ts->is_null()) bad_record("missing required field 'created_utc'");
    post.created_utc = parse_timestamp(*ts);
    return post;
}

DumpReader::DumpReader(const std::filesystem::path& path, KindHint hint, OnError policy)
    : path_(path), in_(path), hint_(hint), policy_(policy) {
    if (!in_) throw Error("cannot open dump file " + path.string());
}

void DumpReader::report(std::size_t line, const std::string& message) {
    if (policy_ == OnError::abort) throw ParseError(path_.string(), line, message);
    issues_.push_back({line, message});
}

std::optional<RawPost> DumpReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (trim(line).empty()) continue;
        std::optional<RawPost> post;
        std::string error;
        try {
            post = parse_record(line, hint_);
        } catch (const ParseError& e) {
            // parse_record reports "<record>:0: msg"; keep only the message.
            error = e.what();
            const std::string prefix = "<record>:0: ";
            if (error.rfind(prefix, 0) == 0) error.erase(0, prefix.size());
        }
        if (!post) {
            report(line_no_, error);
            continue;
        }
        if (!seen_ids_.insert(post->id).second) {
            report(line_no_, "duplicate id '" + post->id + "'");
            continue;
        }
        return post;
    }
    return std::nullopt;
}

DumpParseResult parse_dump(const std::filesystem::path& path, KindHint hint, OnError policy) {
    DumpReader reader(path, hint, policy);
    DumpParseResult out;
    while (auto post = reader.next()) out.posts.push_back(std::move(*post));
    out.issues = reader.issues();
    return out;
}

// ---------------------------------------------------------------------------

TemplateMap build_moderator_templates(std::span<const RawPost> posts, std::size_t min_occurrences) {
    std::map<std::string, std::unordered_map<std::string, std::size_t>> counts;
    for (const auto& post : posts) {
        const std::string_view body = trim(post.body);
        if (body.empty()) continue;
        if (!icontains(body, "removed") && !icontains(body, "deleted")) continue;
        ++counts[post.subreddit][std::string(body)];
    }
    TemplateMap out;
    for (auto& [subreddit, bodies] : counts) {
        for (auto& [body, n] : bodies)
            if (n > min_occurrences) out[subreddit].insert(body);
    }
    return out;
}

namespace {
bool is_removal_marker(std::string_view s) {
    s = trim(s);
    return s == "[removed]" || s == "[deleted]";
}
}  // namespace

bool detect_removed(const RawPost& post, const std::set<std::string>& moderator_templates) {
    if (is_removal_marker(post.body)) return true;
    if (post.title && is_removal_marker(*post.title)) return true;
    if (moderator_templates.empty()) return false;
    return moderator_templates.count(std::string(trim(post.body))) > 0;
}

bool detect_removed(const RawPost& post, const TemplateMap& templates) {
    static const std::set<std::string> none;
    auto it = templates.find(post.subreddit);
    return detect_removed(post, it == templates.end() ? none : it->second);
}

// ---------------------------------------------------------------------------

namespace {

// Length of an HTML character entity starting at s[i] ('&'), or 0.
std::size_t entity_length(std::string_view s, std::size_t i) {
    std::size_t j = i + 1;
    if (j < s.size() && s[j] == '#') {
        ++j;
        bool hex = false;
        if (j < s.size() && (s[j] == 'x' || s[j] == 'X')) {
            hex = true;
            ++j;
        }
        const std::size_t start = j;
        while (j < s.size() && (is_ascii_digit(s[j]) ||
                                (hex && std::isxdigit(static_cast<unsigned char>(s[j])))))
            ++j;
        if (j == start) return 0;
    } else {
        const std::size_t start = j;
        while (j < s.size() && is_ascii_alnum(s[j]) && j - start < 32) ++j;
        if (j == start || !is_ascii_alpha(s[start])) return 0;
    }
    if (j < s.size() && s[j] == ';') return j + 1 - i;
    return 0;
}

std::string strip_entities_once(std::string_view s, bool& changed) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] == '&') {
            if (std::size_t n = entity_length(s, i)) {
                i += n;
                changed = true;
                continue;
            }
        }
        out.push_back(s[i++]);
    }
    return out;
}

bool url_starts_at(std::string_view s, std::size_t i) {
    const std::string_view rest = s.substr(i);
    return istarts_with(rest, "http://") || istarts_with(rest, "https://") || istarts_with(rest, "www.");
}

}  // namespace

std::string preprocess_text(std::string_view raw) {
    // Entities first, to a fixpoint: deleting "&gt;" from "&am&gt;p;" exposes
    // a new entity. URL deletion runs to whitespace and cannot create one.
    std::string text(raw);
    for (bool changed = true; changed;) {
        changed = false;
        text = strip_entities_once(text, changed);
    }

    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (std::size_t i = 0; i < text.size();) {
        const char c = text[i];
        if (is_space(c)) {
            pending_space = !out.empty();
            ++i;
            continue;
        }
        if ((c == 'h' || c == 'H' || c == 'w' || c == 'W') && url_starts_at(text, i)) {
            while (i < text.size() && !is_space(text[i])) ++i;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------

bool passes_filter(const RawPost& post, const CorpusFilter& filter) {
    if (filter.start_utc && post.created_utc < *filter.start_utc) return false;
    if (filter.end_utc && post.created_utc > *filter.end_utc) return false;
    if (!filter.subreddits.empty() && !filter.subreddits.count(to_lower(post.subreddit))) return false;
    return true;
}

std::string_view submission_key(std::string_view id) {
    if (id.size() > 3 && id.substr(0, 3) == "t3_") return id.substr(3);
    return id;
}

AssemblyResult assemble_conversations(std::span<const RawPost> posts, const AssemblyOptions& options) {
    if (options.min_comments > options.max_comments)
        throw ConfigError("min_comments exceeds max_comments");

    AssemblyResult result;
    std::map<std::string, const RawPost*, std::less<>> submissions;
    for (const auto& post : posts) {
        if (post.kind != PostKind::submission) continue;
        if (!submissions.emplace(std::string(submission_key(post.id)), &post).second)
            ++result.duplicate_ids;
    }

    std::map<std::string, std::vector<const RawPost*>, std::less<>> children;
    std::unordered_set<std::string> comment_ids;
    for (const auto& post : posts) {
        if (post.kind != PostKind::comment) continue;
        if (!comment_ids.insert(post.id).second) {
            ++result.duplicate_ids;
            continue;
        }
        const std::string& parent = *post.parent_id;
        if (parent.rfind("t1_", 0) == 0) {
            ++result.nested_replies;
            continue;
        }
        auto sub = submissions.find(submission_key(parent));
        if (sub == submissions.end()) {
            ++result.orphan_comments;
            continue;
        }
        children[sub->first].push_back(&post);
    }

    for (const auto& [key, submission] : submissions) {
        auto it = children.find(key);
        std::vector<const RawPost*> comments;
        if (it != children.end()) comments = it->second;
        if (comments.size() < options.min_comments) {
            ++result.too_few_comments;
            continue;
        }
        // Canonical order before sampling so the draw does not depend on
        // input order.
        std::sort(comments.begin(), comments.end(),
                  [](const RawPost* a, const RawPost* b) { return a->id < b->id; });
        if (comments.size() > options.max_comments) {
            ++result.sampled_down;
            Rng rng(derive_seed(options.seed, submission->id));
            rng.partial_shuffle(comments, options.max_comments);
            comments.resize(options.max_comments);
        }
        std::sort(comments.begin(), comments.end(), [](const RawPost* a, const RawPost* b) {
            return a->created_utc != b->created_utc ? a->created_utc < b->created_utc : a->id < b->id;
        });

        Conversation conv;
        conv.submission_id = submission->id;
        conv.subreddit = submission->subreddit;
        std::string merged = submission->title.value_or(std::string());
        if (!submission->body.empty()) {
            if (!merged.empty()) merged.push_back(' ');
            merged += submission->body;
        }
        conv.text = preprocess_text(merged);
        for (const RawPost* c : comments) {
            conv.comment_ids.push_back(c->id);
            conv.comment_texts.push_back(preprocess_text(c->body));
        }
        result.conversations.push_back(std::move(conv));
    }
    std::sort(result.conversations.begin(), result.conversations.end(),
              [](const Conversation& a, const Conversation& b) { return a.submission_id < b.submission_id; });
    return result;
}

IngestResult ingest_posts(std::span<const RawPost> posts, const IngestOptions& options) {
    IngestResult out;
    std::vector<RawPost> kept;
    kept.reserve(posts.size());
    for (const auto& p : posts)
        if (passes_filter(p, options.filter)) kept.push_back(p);

    out.templates = build_moderator_templates(kept, options.template_min_occurrences);

    std::vector<RawPost> surviving;
    surviving.reserve(kept.size());
    for (auto& p : kept) {
        if (detect_removed(p, out.templates)) {
            ++out.stats.n_removed;
            ++out.stats.per_subreddit[p.subreddit].removed;
        } else {
            surviving.push_back(std::move(p));
        }
    }

    out.assembly = assemble_conversations(surviving, options.assembly);
    for (const auto& conv : out.assembly.conversations) {
        auto& counts = out.stats.per_subreddit[conv.subreddit];
        ++counts.submissions;
        counts.comments += conv.comment_ids.size();
        ++out.stats.n_submissions;
        out.stats.n_comments += conv.comment_ids.size();
    }
    return out;
}

// ---------------------------------------------------------------------------

std::array<std::size_t, 3> split_sizes(std::size_t n, const std::array<double, 3>& fractions) {
    double total = 0;
    for (double f : fractions) {
        if (!(f >= 0.0)) throw ConfigError("split fractions must be non-negative");
        total += f;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("split fractions must sum to 1");

    std::array<std::size_t, 3> sizes{};
    std::array<double, 3> remainders{};
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double quota = static_cast<double>(n) * fractions[i];
        // Tolerance absorbs 0.7 * 10 landing at 6.999...
        const double whole = std::floor(quota + 1e-9);
        sizes[i] = static_cast<std::size_t>(whole);
        remainders[i] = std::max(0.0, quota - whole);
        assigned += sizes[i];
    }
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b] + 1e-12; });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % 3]];
    return sizes;
}

}  // namespace tarc
