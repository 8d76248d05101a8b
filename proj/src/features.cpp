#include "tarc/features.hpp"

#include <unordered_set>

#include "tarc/strings.hpp"

namespace tarc {

namespace {

bool is_lexical_tag(std::string_view tag) {
    return tag.starts_with("NN") || tag.starts_with("VB") || tag.starts_with("JJ") || tag.starts_with("RB");
}

bool is_proper_noun_tag(std::string_view tag) { return tag == "NNP" || tag == "NNPS"; }

template <class It>
double mtld_pass(It begin, It end, double threshold, std::unordered_set<std::string_view>& types) {
    const auto n = static_cast<double>(end - begin);
    double factors = 0;
    std::size_t count = 0;
    types.clear();
    double ttr = 1.0;
    for (auto it = begin; it != end; ++it) {
        ++count;
        types.insert(*it);
        ttr = static_cast<double>(types.size()) / static_cast<double>(count);
        if (ttr <= threshold) {
            factors += 1.0;
            count = 0;
            types.clear();
            ttr = 1.0;
        }
    }
    if (count > 0) factors += (1.0 - ttr) / (1.0 - threshold);
    return factors > 0 ? n / factors : n;
}

// Expects lowercased tokens.
double mtld_lower(std::span<const std::string_view> tokens, double threshold) {
    if (tokens.empty()) return 0.0;
    std::unordered_set<std::string_view> types;
    const double forward = mtld_pass(tokens.begin(), tokens.end(), threshold, types);
    const double reverse = mtld_pass(tokens.rbegin(), tokens.rend(), threshold, types);
    return (forward + reverse) / 2.0;
}

std::vector<std::string> lowered(std::span<const TaggedToken> tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(to_lower(t.surface));
    return out;
}

std::vector<std::string_view> views(const std::vector<std::string>& v) {
    return {v.begin(), v.end()};
}

}  // namespace

double question_ratio(std::span<const RawSentence> sentences) {
    if (sentences.empty()) return 0.0;
    std::size_t q = 0;
    for (const auto& s : sentences) q += s.is_question;
    return static_cast<double>(q) / static_cast<double>(sentences.size());
}

double question_ratio(std::string_view text) { return question_ratio(segment(text)); }

double mtld(std::span<const std::string_view> tokens, double threshold) {
    std::vector<std::string> lower;
    lower.reserve(tokens.size());
    for (auto t : tokens) lower.push_back(to_lower(t));
    return mtld_lower(views(lower), threshold);
}

Elaboration elaboration(std::span<const TaggedToken> tokens) {
    const auto lower = lowered(tokens);
    const auto lv = views(lower);
    std::unordered_set<std::string_view> items;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        if (is_lexical_tag(tokens[i].tag)) items.insert(lv[i]);
    return {items.size(), tokens.size(), mtld_lower(lv, kMtldThreshold)};
}

double proper_noun_ratio(std::span<const TaggedToken> tokens) {
    if (tokens.empty()) return 0.0;
    std::size_t n = 0;
    for (const auto& t : tokens) n += is_proper_noun_tag(t.tag);
    return static_cast<double>(n) / static_cast<double>(tokens.size());
}

double lexicon_ratio(std::span<const TaggedToken> tokens, const Lexicon& lexicon) {
    const auto lower = lowered(tokens);
    return lexicon_ratio(views(lower), lexicon);
}

std::shared_ptr<const FeatureResources> FeatureResources::load(const std::filesystem::path& data_dir) {
    return load(data_dir / "tagger", data_dir / "vader", data_dir / "lexicons" / "hedges.txt",
                data_dir / "lexicons" / "gratitude.txt");
}

std::shared_ptr<const FeatureResources> FeatureResources::load(const std::filesystem::path& tagger_dir,
                                                               const std::filesystem::path& valence_dir,
                                                               const std::filesystem::path& hedge_file,
                                                               const std::filesystem::path& gratitude_file) {
    auto r = std::make_shared<FeatureResources>(FeatureResources{
        Tagger::load(tagger_dir), PolarityAnalyzer::load(valence_dir), Lexicon::load(hedge_file, "hedges"),
        Lexicon::load(gratitude_file, "gratitude"), kPolarityBand});
    return r;
}

FeatureExtractor::FeatureExtractor(std::shared_ptr<const FeatureResources> resources) : res_(std::move(resources)) {}

std::vector<TaggedToken> FeatureExtractor::tokenize(std::string_view text) const {
    std::vector<TaggedToken> out;
    std::vector<TagId> tags;
    const auto sentences = segment(text);
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        const auto& tokens = sentences[s].tokens;
        res_->tagger.tag(tokens, tags);
        std::size_t pos = 0;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (!tokens[i].is_word) continue;
            out.push_back({std::string(tokens[i].text), tag_name(tags[i]), s, pos++});
        }
    }
    return out;
}

FeatureVector FeatureExtractor::extract(std::string_view text) const {
    FeatureVector f;
    const auto sentences = segment(text);
    f.question_ratio = question_ratio(sentences);

    std::vector<TagId> tags;
    std::vector<std::string> lower;
    std::vector<TagId> word_tags;
    for (const auto& s : sentences) {
        res_->tagger.tag(s.tokens, tags);
        for (std::size_t i = 0; i < s.tokens.size(); ++i) {
            if (!s.tokens[i].is_word) continue;
            lower.push_back(to_lower(s.tokens[i].text));
            word_tags.push_back(tags[i]);
        }
    }
    const auto lv = views(lower);
    f.token_count = lv.size();

    std::unordered_set<std::string_view> items;
    std::size_t proper = 0;
    for (std::size_t i = 0; i < lv.size(); ++i) {
        const auto tag = tag_name(word_tags[i]);
        if (is_lexical_tag(tag)) items.insert(lv[i]);
        proper += is_proper_noun_tag(tag);
    }
    f.lexical_item_count = items.size();
    f.mtld = mtld_lower(lv, kMtldThreshold);
    if (f.token_count > 0) {
        const auto n = static_cast<double>(f.token_count);
        f.proper_noun_ratio = static_cast<double>(proper) / n;
        f.hedge_ratio = static_cast<double>(res_->hedges.count_matches(lv)) / n;
        f.gratitude_ratio = static_cast<double>(res_->gratitude.count_matches(lv)) / n;
    }

    const auto p = res_->polarity.score(text);
    f.polarity_compound = p.compound;
    const auto flags = polarity_flags(p, res_->polarity_band);
    f.positive_polarity = flags.positive;
    f.negative_polarity = flags.negative;
    return f;
}

}  // namespace tarc
