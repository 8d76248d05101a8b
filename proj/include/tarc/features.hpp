#pragma once

// The seven linguistic features: questions, elaboration (lexical items,
// token count, MTLD), hedging, gratitude, proper nouns (name calling) and
// polarity.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tarc/lexicon.hpp"
#include "tarc/tagger.hpp"
#include "tarc/text.hpp"
#include "tarc/vader.hpp"

namespace tarc {

struct TaggedToken {
    std::string surface;
    std::string_view tag;  // Penn Treebank tag, static storage
    std::size_t sentence_index = 0;
    std::size_t position_in_sentence = 0;  // among word tokens
};

struct FeatureVector {
    double question_ratio = 0;
    std::size_t lexical_item_count = 0;
    std::size_t token_count = 0;
    double mtld = 0;
    double hedge_ratio = 0;
    double gratitude_ratio = 0;
    double proper_noun_ratio = 0;
    double polarity_compound = 0;
    bool positive_polarity = false;
    bool negative_polarity = false;

    bool operator==(const FeatureVector&) const = default;
};

/// Column order used by feature tables.
inline constexpr std::string_view kFeatureColumns[] = {
    "question_ratio", "lexical_item_count", "token_count", "mtld", "hedge_ratio",
    "gratitude_ratio", "proper_noun_ratio", "polarity_compound", "positive_polarity", "negative_polarity"};

double question_ratio(std::span<const RawSentence> sentences);
double question_ratio(std::string_view text);

inline constexpr double kMtldThreshold = 0.72;

/// Mean of the forward and reverse factor lengths. A factor closes when the
/// running type-token ratio drops to the threshold; the leftover run counts
/// as a partial factor. With no factor at all the token count is returned.
/// Tokens are compared case-insensitively.
double mtld(std::span<const std::string_view> tokens, double threshold = kMtldThreshold);

struct Elaboration {
    std::size_t lexical_item_count = 0;
    std::size_t token_count = 0;
    double mtld = 0;
};

/// Lexical items are the distinct lowercased surfaces tagged as nouns,
/// verbs, adjectives or adverbs.
Elaboration elaboration(std::span<const TaggedToken> tokens);

/// NNP and NNPS tokens over all tokens.
double proper_noun_ratio(std::span<const TaggedToken> tokens);

/// Case-insensitive lexicon ratio over tagged tokens.
double lexicon_ratio(std::span<const TaggedToken> tokens, const Lexicon& lexicon);

struct FeatureResources {
    Tagger tagger;
    PolarityAnalyzer polarity;
    Lexicon hedges;
    Lexicon gratitude;
    double polarity_band = kPolarityBand;

    /// Tagger, valence lexicon and the two phrase lexicons from a data
    /// directory laid out like the bundled one.
    static std::shared_ptr<const FeatureResources> load(const std::filesystem::path& data_dir);
    static std::shared_ptr<const FeatureResources> load(const std::filesystem::path& tagger_dir,
                                                        const std::filesystem::path& valence_dir,
                                                        const std::filesystem::path& hedge_file,
                                                        const std::filesystem::path& gratitude_file);
};

/// Immutable after construction; one instance may serve any number of threads.
class FeatureExtractor {
public:
    explicit FeatureExtractor(std::shared_ptr<const FeatureResources> resources);

    std::vector<TaggedToken> tokenize(std::string_view text) const;
    FeatureVector extract(std::string_view text) const;
    PolarityResult polarity(std::string_view text) const { return res_->polarity.score(text); }
    const FeatureResources& resources() const { return *res_; }

private:
    std::shared_ptr<const FeatureResources> res_;
};

}  // namespace tarc
