#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "oracles/feature_checks.hpp"
#include "tarc/error.hpp"
#include "tarc/features.hpp"

using namespace tarc;
using Catch::Approx;

namespace {

const FeatureExtractor& extractor() {
    static const FeatureExtractor fx(FeatureResources::load(TARC_DATA_DIR));
    return fx;
}

std::vector<std::string> words_of(std::string_view text) {
    std::vector<std::string> out;
    for (auto w : word_tokens(text)) out.emplace_back(w);
    return out;
}

std::vector<std::pair<std::string, std::string>> read_tsv(const std::string& name) {
    std::ifstream in(std::string(TARC_TEST_FIXTURES) + "/" + name);
    REQUIRE(in.good());
    std::vector<std::pair<std::string, std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return rows;
}

}  // namespace

TEST_CASE("tokenizer splits words, numbers and clitics") {
    CHECK(words_of("Hello, world!") == std::vector<std::string>{"Hello", "world"});
    CHECK(words_of("It costs 4.50 or 1,000 dollars") ==
          std::vector<std::string>{"It", "costs", "4.50", "or", "1,000", "dollars"});
    CHECK(words_of("isn't can't we'll") == std::vector<std::string>{"is", "n't", "ca", "n't", "we", "'ll"});
    CHECK(words_of("well-known and/or rock'n") == std::vector<std::string>{"well-known", "and/or", "rock'n"});
    auto s = segment("Really?! Yes. no");
    REQUIRE(s.size() == 3);
    CHECK(s[0].is_question);
    CHECK_FALSE(s[1].is_question);
    CHECK(segment("...").empty());
}

TEST_CASE("documented feature examples hold exactly") {
    auto ck = check::feature_examples(extractor());
    for (const auto& f : ck.failures) UNSCOPED_INFO(f);
    CHECK(ck.ok());
}

TEST_CASE("feature invariants hold on random texts", "[property]") {
    auto ck = check::feature_properties(extractor(), 31337, 200);
    for (std::size_t i = 0; i < ck.failures.size() && i < 5; ++i) UNSCOPED_INFO(ck.failures[i]);
    CHECK(ck.instances == 200);
    CHECK(ck.ok());
}

TEST_CASE("tagger agrees with the reference rule-based tagger") {
    const auto rows = read_tsv("tagger_reference.tsv");
    const auto& tagger = extractor().resources().tagger;
    std::size_t total = 0, agree = 0, sentences_exact = 0;
    std::vector<std::string> diffs;
    for (const auto& [text, expected] : rows) {
        auto sents = segment(text);
        REQUIRE(sents.size() == 1);
        std::vector<TagId> tags;
        tagger.tag(sents[0].tokens, tags);
        std::istringstream ss(expected);
        std::vector<std::string> want{std::istream_iterator<std::string>(ss), {}};
        REQUIRE(want.size() == tags.size());
        bool exact = true;
        for (std::size_t i = 0; i < tags.size(); ++i) {
            ++total;
            if (tag_name(tags[i]) == want[i]) ++agree;
            else {
                exact = false;
                diffs.push_back(std::string(sents[0].tokens[i].text) + ": " + std::string(tag_name(tags[i])) +
                                " vs " + want[i]);
            }
        }
        sentences_exact += exact;
    }
    const double rate = static_cast<double>(agree) / static_cast<double>(total);
    for (const auto& d : diffs) UNSCOPED_INFO(d);
    INFO("token agreement " << rate << " over " << total << " tokens; exact sentences " << sentences_exact << "/"
                            << rows.size());
    CHECK(rate >= 0.99);
}

TEST_CASE("polarity scores match the reference implementation") {
    for (const auto& [text, rest] : read_tsv("vader_reference.tsv")) {
        std::istringstream ss(rest);
        double compound, pos, neg, neu;
        ss >> compound >> pos >> neg >> neu;
        const auto r = extractor().polarity(text);
        INFO(text);
        // The reference rounds compound to 4 places and the masses to 3.
        CHECK(r.compound == Approx(compound).margin(5.1e-5));
        CHECK(r.positive_mass == Approx(pos).margin(5.1e-4));
        CHECK(r.negative_mass == Approx(neg).margin(5.1e-4));
        CHECK(r.neutral_mass == Approx(neu).margin(5.1e-4));
    }
}

TEST_CASE("lexicon matching takes the longest phrase and does not overlap") {
    const Lexicon lex("t", {"thank", "thank you", "thank you so much", "so"});
    std::vector<std::string_view> toks{"thank", "you", "so", "much", "so", "thank"};
    CHECK(lex.count_matches(toks) == 3);  // "thank you so much", "so", "thank"
    CHECK(lexicon_ratio(std::span<const std::string_view>{}, lex) == 0.0);
    CHECK_THROWS_AS(Lexicon("d", {"a", "A"}), ConfigError);
    CHECK_THROWS_AS(Lexicon("e", {"..."}), ConfigError);
}

TEST_CASE("bundled lexicons load") {
    const auto& res = extractor().resources();
    CHECK(res.gratitude.entries().size() == 19);
    CHECK(res.hedges.entries().size() > 50);
    CHECK(res.tagger.lexicon_size() > 50000);
}

TEST_CASE("mtld handles short and degenerate inputs") {
    CHECK(mtld(std::span<const std::string_view>{}) == 0.0);
    std::vector<std::string_view> one{"a"};
    CHECK(mtld(one) == 1.0);
    std::vector<std::string_view> same{"a", "a", "a", "a"};
    // Every second token closes a factor (TTR 1/2), so 2 factors of length 2.
    CHECK(mtld(same) == 2.0);
}
