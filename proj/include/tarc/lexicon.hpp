#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tarc/tagger.hpp"  // StringHash

namespace tarc {

/// A list of lowercase phrases matched against token streams by
/// non-overlapping longest match.
class Lexicon {
public:
    Lexicon() = default;
    /// Phrases are lowercased and tokenized like running text. Duplicates and
    /// phrases with no word token raise ConfigError.
    Lexicon(std::string name, const std::vector<std::string>& phrases);

    /// One phrase per line, '#' starts a comment line.
    static Lexicon load(const std::filesystem::path& path, std::string name = {});

    const std::string& name() const { return name_; }
    const std::vector<std::string>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Number of phrase occurrences in `lower_tokens` (already lowercased).
    /// Scanning left to right, the longest phrase starting at a position is
    /// taken and the scan resumes after it.
    std::size_t count_matches(std::span<const std::string_view> lower_tokens) const;

private:
    struct Node {
        std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> next;
        bool terminal = false;
    };
    std::string name_;
    std::vector<std::string> entries_;
    std::vector<Node> nodes_{1};
};

/// Occurrences over token count; 0 for no tokens.
double lexicon_ratio(std::span<const std::string_view> lower_tokens, const Lexicon& lexicon);

}  // namespace tarc
