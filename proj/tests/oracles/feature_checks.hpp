#pragma once

// Documented feature examples and the randomized invariant run, shared by
// the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "crosscheck.hpp"
#include "generators.hpp"
#include "tarc/features.hpp"
#include "tarc/kernels.hpp"

namespace check {

inline std::vector<std::string_view> lower_views(const std::vector<tarc::TaggedToken>& toks,
                                                 std::vector<std::string>& storage) {
    storage.clear();
    for (const auto& t : toks) {
        std::string s = t.surface;
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        storage.push_back(std::move(s));
    }
    return {storage.begin(), storage.end()};
}

inline Check feature_examples(const tarc::FeatureExtractor& fx) {
    Check ck{"feature examples"};
    auto expect = [&](bool cond, const std::string& what) {
        ++ck.instances;
        if (!cond) ck.failures.push_back(what);
    };
    auto exact = [&](double got, double want, const std::string& what) {
        ++ck.instances;
        if (got != want) ck.failures.push_back(what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
    };
    const auto& res = fx.resources();

    {
        auto s = tarc::segment("Hi. Go!");
        std::size_t words = 0;
        for (auto& x : s) words += x.word_count;
        expect(s.size() == 2 && words == 2, "\"Hi. Go!\" gives 2 sentences and 2 words");
        expect(tarc::segment("").empty(), "empty text gives no sentences");
        auto toks = fx.tokenize("I met Alice in Paris");
        std::vector<std::string> nnp;
        for (auto& t : toks)
            if (t.tag == "NNP") nnp.push_back(t.surface);
        expect(nnp == std::vector<std::string>{"Alice", "Paris"}, "Alice and Paris tagged NNP");
    }
    exact(tarc::question_ratio("Why? Because."), 0.5, "question ratio of \"Why? Because.\"");
    exact(tarc::question_ratio("No questions here."), 0.0, "question ratio without questions");
    exact(tarc::question_ratio("A? B? C?"), 1.0, "question ratio of all questions");
    {
        auto e = tarc::elaboration(fx.tokenize("The quick dog runs and the slow dog sleeps"));
        exact(static_cast<double>(e.lexical_item_count), 5, "lexical items of the quick/slow dog sentence");
        std::vector<std::string> words;
        for (int i = 0; i < 100; ++i) words.push_back("w" + std::to_string(i));
        std::vector<std::string_view> v(words.begin(), words.end());
        exact(tarc::mtld(v), 100.0, "mtld of 100 unique tokens");
        std::vector<std::string_view> ab = {"a", "b", "a", "b", "a", "b", "a", "b", "a"};
        exact(tarc::mtld(ab), 3.0, "mtld of a b a b a b a b a");
    }
    {
        std::vector<std::string> store;
        auto t1 = fx.tokenize("thanks for the help");
        exact(tarc::lexicon_ratio(lower_views(t1, store), res.gratitude), 0.25, "gratitude ratio of \"thanks for the help\"");
        const tarc::Lexicon perhaps("hedges", {"perhaps"});
        auto t2 = fx.tokenize("perhaps it works");
        exact(tarc::lexicon_ratio(lower_views(t2, store), perhaps), 1.0 / 3.0, "hedge ratio of \"perhaps it works\"");
        auto t3 = fx.tokenize("thank you so much");
        exact(tarc::lexicon_ratio(lower_views(t3, store), res.gratitude), 0.25, "\"thank you\" counted once");
    }
    exact(tarc::proper_noun_ratio(fx.tokenize("I met Alice in Paris")), 0.4, "proper noun ratio, Alice/Paris");
    exact(tarc::proper_noun_ratio(fx.tokenize("nothing named here")), 0.0, "proper noun ratio, nothing named");
    exact(tarc::proper_noun_ratio(fx.tokenize("Paris Paris Paris")), 1.0, "proper noun ratio, Paris x3");
    {
        exact(fx.polarity("").compound, 0.0, "compound of empty text");
        expect(fx.polarity("good").compound > 0, "compound of \"good\" is positive");
        expect(fx.polarity("not good").compound < fx.polarity("good").compound, "negation lowers compound");
        auto flags = [](double c) { return tarc::polarity_flags(tarc::PolarityResult{c, 0, 0, 1}); };
        expect(!flags(0.0).positive && !flags(0.0).negative, "compound 0 is neutral");
        expect(flags(0.9).positive && !flags(0.9).negative, "compound 0.9 is positive");
        expect(!flags(-0.06).positive && flags(-0.06).negative, "compound -0.06 is negative");
    }
    {
        auto f = fx.extract("");
        expect(f.question_ratio == 0 && f.lexical_item_count == 0 && f.token_count == 0 && f.mtld == 0 &&
                   f.hedge_ratio == 0 && f.gratitude_ratio == 0 && f.proper_noun_ratio == 0 &&
                   f.polarity_compound == 0 && !f.positive_polarity && !f.negative_polarity,
               "empty text gives all-zero features");
        auto g = fx.extract("Thanks! Why is Paris nice?");
        exact(g.question_ratio, 0.5, "question ratio of \"Thanks! Why is Paris nice?\"");
        expect(g.gratitude_ratio > 0 && g.proper_noun_ratio > 0, "gratitude and proper nouns found");
    }
    {
        gen::Source g(99);
        std::vector<std::string> texts;
        for (int i = 0; i < 64; ++i) texts.push_back(gen::random_text(g, static_cast<std::size_t>(g.integer(0, 60))));
        const auto a = tarc::extract_features_serial(fx, texts);
        const auto b = tarc::extract_features_parallel(fx, texts, 4);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = tarc::records_table(std::vector<tarc::PostRecord>{{.features = a[i]}}).rows ==
                   tarc::records_table(std::vector<tarc::PostRecord>{{.features = b[i]}}).rows;
        expect(same, "parallel extraction equals serial extraction");
    }
    return ck;
}

/// Range, monotonicity, permutation and purity invariants over `cases`
/// random texts.
inline Check feature_properties(const tarc::FeatureExtractor& fx, std::uint64_t seed, std::size_t cases) {
    Check ck{"feature properties"};
    gen::Source g(seed);
    const auto& res = fx.resources();
    auto fail = [&](const std::string& what, const std::string& text) { ck.failures.push_back(what + " for: " + text); };

    for (std::size_t k = 0; k < cases; ++k) {
        const auto text = gen::random_text(g, static_cast<std::size_t>(g.integer(0, 40)));
        const auto f = fx.extract(text);
        ++ck.instances;

        for (double r : {f.question_ratio, f.hedge_ratio, f.gratitude_ratio, f.proper_noun_ratio})
            if (!(r >= 0 && r <= 1)) fail("ratio outside [0,1]", text);
        if (!(f.polarity_compound >= -1 && f.polarity_compound <= 1)) fail("compound outside [-1,1]", text);
        if (f.positive_polarity && f.negative_polarity) fail("both polarity flags set", text);
        if (f.lexical_item_count > f.token_count) fail("more lexical items than tokens", text);

        // Same input, same output.
        const auto again = fx.extract(text);
        if (tarc::records_table(std::vector<tarc::PostRecord>{{.features = f}}).rows !=
            tarc::records_table(std::vector<tarc::PostRecord>{{.features = again}}).rows)
            fail("extract is not repeatable", text);

        // MTLD depends only on the token stream: rejoining the tokens with
        // different spacing gives the same value.
        {
            const auto toks = tarc::word_tokens(text);
            std::string rejoined;
            for (auto t : toks) rejoined += "  " + std::string(t) + "\n";
            const auto toks2 = tarc::word_tokens(rejoined);
            if (tarc::mtld(toks) != tarc::mtld(toks2)) fail("mtld changed under re-tokenization", text);
        }

        // Appending a lexicon phrase at the end never lowers the count.
        for (const auto* lex : {&res.hedges, &res.gratitude}) {
            const auto& phrase = lex->entries()[static_cast<std::size_t>(g.integer(0, static_cast<int>(lex->entries().size()) - 1))];
            std::vector<std::string> s1, s2;
            const auto before = lex->count_matches(lower_views(fx.tokenize(text), s1));
            const auto after = lex->count_matches(lower_views(fx.tokenize(text + " " + phrase), s2));
            if (after < before) fail("appending \"" + phrase + "\" lowered " + lex->name() + " matches", text);
        }

        // Sentence order does not matter to the question ratio.
        {
            std::vector<std::string> sentences;
            for (int i = 0, n = g.integer(1, 6); i < n; ++i)
                sentences.push_back(gen::random_text(g, static_cast<std::size_t>(g.integer(1, 8))) +
                                    (g.coin() ? "?" : "."));
            std::string a, b;
            for (auto& s : sentences) a += s + " ";
            std::shuffle(sentences.begin(), sentences.end(), g.engine());
            for (auto& s : sentences) b += s + " ";
            if (tarc::question_ratio(a) != tarc::question_ratio(b)) fail("question ratio depends on order", a);
        }

        // Appending a positive word never lowers the positive mass. Texts
        // here avoid negators, which would flip the appended word.
        {
            const auto plain = gen::random_text(g, static_cast<std::size_t>(g.integer(0, 30)), false);
            const double before = fx.polarity(plain).positive_mass;
            const double after = fx.polarity(plain + " good").positive_mass;
            if (after + 1e-12 < before) fail("appending \"good\" lowered positive mass", plain);
        }
    }
    return ck;
}

}  // namespace check
