#pragma once

// Lexicon-and-rules sentiment scorer following the VADER rule family:
// lexicon valences, booster/dampener words, negation within three tokens,
// "but" contrast, capitalization and punctuation emphasis, and the
// x / sqrt(x^2 + 15) normalization.

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tarc/tagger.hpp"  // StringHash

namespace tarc {

struct PolarityResult {
    double compound = 0;
    double positive_mass = 0;
    double negative_mass = 0;
    double neutral_mass = 1;  // text with no tokens is entirely neutral
};

class PolarityAnalyzer {
public:
    /// Reads vader_lexicon.txt and emoji_utf8_lexicon.txt from `dir`.
    static PolarityAnalyzer load(const std::filesystem::path& dir);

    PolarityResult score(std::string_view text) const;

    /// Valence of a lowercase token, or nullptr.
    const double* valence(std::string_view lower) const;

private:
    using Map = std::unordered_map<std::string, double, StringHash, std::equal_to<>>;
    Map lexicon_;
    std::unordered_map<char32_t, std::string> emoji_;
};

inline constexpr double kPolarityBand = 0.05;

struct PolarityFlags {
    bool positive = false;
    bool negative = false;
};

/// positive iff compound >= band, negative iff compound <= -band.
inline PolarityFlags polarity_flags(const PolarityResult& r, double band = kPolarityBand) {
    return {r.compound >= band, r.compound <= -band};
}

}  // namespace tarc
