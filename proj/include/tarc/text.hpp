#pragma once

// Sentence splitting and word tokenization. Tokens are views into the input
// text, so the text must outlive the result.

#include <cstddef>
#include <string_view>
#include <vector>

namespace tarc {

struct RawToken {
    std::string_view text;
    bool is_word = false;  // false for punctuation
};

struct RawSentence {
    std::vector<RawToken> tokens;  // words and punctuation, in order
    std::size_t word_count = 0;
    bool is_question = false;      // the terminal punctuation run contains '?'
};

/// Splits on runs of '.', '!' and '?' (a '.' or ',' between digits stays
/// inside a number). Words are runs of letters, digits, '_' and non-ASCII
/// bytes; an apostrophe, hyphen or slash between two word characters joins.
/// Treebank clitics are split off: n't, 's, 're, 've, 'll, 'd, 'm.
/// Sentences without any word token are dropped.
std::vector<RawSentence> segment(std::string_view text);

/// Word tokens only, sentence boundaries discarded.
std::vector<std::string_view> word_tokens(std::string_view text);

}  // namespace tarc
