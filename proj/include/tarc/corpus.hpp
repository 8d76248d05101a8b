#pragma once

// Dump ingestion: line-delimited JSON records -> filtered conversations.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tarc/error.hpp"
#include "tarc/rng.hpp"

namespace tarc {

enum class PostKind { submission, comment };

struct RawPost {
    std::string id;
    PostKind kind = PostKind::submission;
    std::string subreddit;
    std::optional<std::string> title;      // submissions only
    std::string body;
    std::optional<std::string> parent_id;  // comments only
    std::int64_t created_utc = 0;
};

/// A submission and its sampled direct comments, texts already normalized.
struct Conversation {
    std::string submission_id;
    std::string subreddit;
    std::string text;
    std::vector<std::string> comment_ids;
    std::vector<std::string> comment_texts;
};

struct SubredditCounts {
    std::size_t submissions = 0;
    std::size_t comments = 0;
    std::size_t removed = 0;
};

struct CorpusStats {
    std::size_t n_submissions = 0;
    std::size_t n_comments = 0;
    std::size_t n_removed = 0;
    std::map<std::string, SubredditCounts> per_subreddit;
};

// ---------------------------------------------------------------------------
// Parsing

/// How to decide a record's kind when the `kind` field is absent.
/// `infer`: title present => submission, parent_id present => comment.
enum class KindHint { infer, submission, comment };

enum class OnError { skip, abort };

struct ParseIssue {
    std::size_t line = 0;
    std::string message;
};

/// Parses one JSON record. Accepts `selftext` as an alias of `body` and
/// `created_utc` as integer, float or numeric string. Throws ParseError with
/// line 0 on malformed input.
RawPost parse_record(std::string_view line, KindHint hint = KindHint::infer);

/// Streams RawPosts from a dump in file order.
class DumpReader {
public:
    DumpReader(const std::filesystem::path& path, KindHint hint, OnError policy);

    /// Next well-formed record, or nullopt at end of file. Under
    /// OnError::abort a bad line throws ParseError carrying its line number.
    std::optional<RawPost> next();

    const std::vector<ParseIssue>& issues() const noexcept { return issues_; }
    std::size_t line_number() const noexcept { return line_no_; }

private:
    void report(std::size_t line, const std::string& message);

    std::filesystem::path path_;
    std::ifstream in_;
    KindHint hint_;
    OnError policy_;
    std::size_t line_no_ = 0;
    std::unordered_set<std::string> seen_ids_;
    std::vector<ParseIssue> issues_;
};

struct DumpParseResult {
    std::vector<RawPost> posts;
    std::vector<ParseIssue> issues;
};

DumpParseResult parse_dump(const std::filesystem::path& path,
                           KindHint hint = KindHint::infer,
                           OnError policy = OnError::abort);

// ---------------------------------------------------------------------------
// Removal detection

using TemplateMap = std::map<std::string, std::set<std::string>>;

inline constexpr std::size_t kTemplateMinOccurrences = 20;

/// Per subreddit: trimmed body strings containing "removed" or "deleted"
/// (case-insensitive) that occur strictly more than `min_occurrences` times.
TemplateMap build_moderator_templates(std::span<const RawPost> posts,
                                      std::size_t min_occurrences = kTemplateMinOccurrences);

bool detect_removed(const RawPost& post, const std::set<std::string>& moderator_templates);
bool detect_removed(const RawPost& post, const TemplateMap& templates);

// ---------------------------------------------------------------------------
// Text normalization

/// Deletes URLs (http://, https://, www. up to the next whitespace) and HTML
/// character entities (&gt; &#39; &#x2F; ...), collapses whitespace runs to
/// one space and trims. Idempotent.
std::string preprocess_text(std::string_view raw);

// ---------------------------------------------------------------------------
// Conversation assembly

struct CorpusFilter {
    std::optional<std::int64_t> start_utc;  // inclusive
    std::optional<std::int64_t> end_utc;    // inclusive
    std::set<std::string> subreddits;       // lowercase; empty = all
};

bool passes_filter(const RawPost& post, const CorpusFilter& filter);

struct AssemblyOptions {
    std::size_t min_comments = 5;
    std::size_t max_comments = 10;
    std::uint64_t seed = 0;
};

struct AssemblyResult {
    std::vector<Conversation> conversations;  // sorted by submission_id
    std::size_t orphan_comments = 0;          // parent submission not in input
    std::size_t nested_replies = 0;           // replies to comments
    std::size_t too_few_comments = 0;         // submissions dropped by min_comments
    std::size_t sampled_down = 0;             // submissions that had > max_comments
    std::size_t duplicate_ids = 0;
};

/// Groups direct comments under their submissions. Submissions with at least
/// `min_comments` direct comments become conversations; above `max_comments`
/// a uniform sample is drawn by a partial Fisher-Yates shuffle seeded from
/// (seed, submission id). Comment order in the output is (created_utc, id).
AssemblyResult assemble_conversations(std::span<const RawPost> posts,
                                      const AssemblyOptions& options);

/// Strips a "t3_" fullname prefix.
std::string_view submission_key(std::string_view id);

struct IngestOptions {
    CorpusFilter filter;
    AssemblyOptions assembly;
    std::size_t template_min_occurrences = kTemplateMinOccurrences;
};

struct IngestResult {
    AssemblyResult assembly;
    CorpusStats stats;
    TemplateMap templates;
};

/// Filter -> template pass -> drop removed posts -> assemble -> stats.
IngestResult ingest_posts(std::span<const RawPost> posts, const IngestOptions& options);

// ---------------------------------------------------------------------------
// Dataset splitting

template <class T>
struct DatasetSplit {
    std::vector<T> train;
    std::vector<T> validation;
    std::vector<T> test;
};

/// Largest-remainder apportionment of n items; remainder ties go to the
/// earlier part (10 items at 70/15/15 -> 7/2/1).
std::array<std::size_t, 3> split_sizes(std::size_t n, const std::array<double, 3>& fractions);

inline constexpr std::array<double, 3> kDefaultSplit{0.70, 0.15, 0.15};

template <class T>
DatasetSplit<T> split_dataset(std::vector<T> items,
                              const std::array<double, 3>& fractions,
                              std::uint64_t seed) {
    const auto sizes = split_sizes(items.size(), fractions);
    Rng rng(seed);
    rng.shuffle(items);
    DatasetSplit<T> out;
    auto it = std::make_move_iterator(items.begin());
    out.train.assign(it, it + sizes[0]);
    it += sizes[0];
    out.validation.assign(it, it + sizes[1]);
    it += sizes[1];
    out.test.assign(it, it + sizes[2]);
    return out;
}

}  // namespace tarc
