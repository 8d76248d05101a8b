#include "tarc/text.hpp"

#include "tarc/strings.hpp"

namespace tarc {

namespace {

bool is_word_byte(char c) {
    return is_ascii_alnum(c) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool iends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && istarts_with(s.substr(s.size() - suffix.size()), suffix);
}

// Treebank-style clitic split; returns the length of the host word.
std::size_t clitic_split(std::string_view w) {
    if (w.size() > 3 && iends_with(w, "n't")) return w.size() - 3;
    for (std::string_view c : {"'re", "'ve", "'ll"})
        if (w.size() > 3 && iends_with(w, c)) return w.size() - 3;
    for (std::string_view c : {"'s", "'d", "'m"})
        if (w.size() > 2 && iends_with(w, c)) return w.size() - 2;
    return w.size();
}

}  // namespace

std::vector<RawSentence> segment(std::string_view text) {
    std::vector<RawSentence> sentences;
    RawSentence current;
    auto close = [&] {
        if (current.word_count > 0) sentences.push_back(std::move(current));
        current = RawSentence{};
    };
    auto push_word = [&](std::string_view w) {
        current.tokens.push_back({w, true});
        ++current.word_count;
    };

    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const char c = text[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (is_word_byte(c)) {
            const std::size_t b = i;
            ++i;
            while (i < n) {
                const char d = text[i];
                if (is_word_byte(d)) {
                    ++i;
                } else if (i + 1 < n && is_word_byte(text[i + 1]) &&
                           (d == '\'' || d == '-' || d == '/' ||
                            ((d == '.' || d == ',') && is_ascii_digit(text[i - 1]) &&
                             is_ascii_digit(text[i + 1])))) {
                    i += 2;
                } else {
                    break;
                }
            }
            const std::string_view w = text.substr(b, i - b);
            const std::size_t host = clitic_split(w);
            push_word(w.substr(0, host));
            if (host < w.size()) push_word(w.substr(host));
            continue;
        }
        if (is_terminal(c)) {
            const std::size_t b = i;
            bool question = false;
            while (i < n && is_terminal(text[i])) question |= text[i++] == '?';
            current.tokens.push_back({text.substr(b, i - b), false});
            current.is_question = question;
            close();
            continue;
        }
        current.tokens.push_back({text.substr(i, 1), false});
        ++i;
    }
    close();
    return sentences;
}

std::vector<std::string_view> word_tokens(std::string_view text) {
    std::vector<std::string_view> out;
    for (const auto& s : segment(text))
        for (const auto& t : s.tokens)
            if (t.is_word) out.push_back(t.text);
    return out;
}

}  // namespace tarc
