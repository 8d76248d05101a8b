#include "tarc/tagger.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "tarc/error.hpp"
#include "tarc/strings.hpp"

namespace tarc {

namespace {

constexpr std::array<std::string_view, 45> kPennTags = {
    "CC",  "CD",  "DT",  "EX",   "FW",  "IN",  "JJ",  "JJR", "JJS", "LS",  "MD",  "NN",
    "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP",  "SYM",
    "TO",  "UH",  "VB",  "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT", "WP",  "WP$", "WRB",
    ".",   ",",   ":",   "(",   ")",   "``",  "''",  "#",   "$"};

constexpr int kPad = 1000;     // the sentence-boundary pad tag
constexpr int kNoMatch = -2;   // a rule operand naming a tag outside the inventory
constexpr std::string_view kPadWord = "STAART";

int find_tag(std::string_view s) {
    for (std::size_t i = 0; i < kPennTags.size(); ++i)
        if (kPennTags[i] == s) return static_cast<int>(i);
    return -1;
}

int rule_tag(std::string_view s) {
    if (s == kPadWord) return kPad;
    const int t = find_tag(s);
    return t < 0 ? kNoMatch : t;
}

std::vector<std::vector<std::string_view>> read_rule_lines(const std::filesystem::path& path, std::string& storage) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open tagger file " + path.string());
    storage.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    std::vector<std::vector<std::string_view>> lines;
    std::string_view all(storage);
    std::size_t pos = 0;
    while (pos < all.size()) {
        std::size_t end = all.find('\n', pos);
        if (end == std::string_view::npos) end = all.size();
        const auto line = trim(all.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty() || line.starts_with(";;;")) continue;
        lines.push_back(split_whitespace(line));
    }
    return lines;
}

bool is_cd_shape(std::string_view w) {
    if (w.empty()) return false;
    for (char c : w)
        if (!(is_ascii_digit(c) || c == '-' || c == ',' || c == '.' || c == ':' || c == '/' || c == '%' || c == '$'))
            return false;
    return true;
}

// Function words that are never proper nouns even when capitalized mid-sentence.
constexpr std::string_view kStopwords[] = {
    "a",     "an",    "and",   "are",   "as",    "at",    "be",    "but",   "by",    "for",   "from",
    "had",   "has",   "have",  "he",    "her",   "his",   "i",     "if",    "in",    "into",  "is",
    "it",    "its",   "me",    "my",    "no",    "nor",   "not",   "of",    "on",    "or",    "our",
    "she",   "so",    "than",  "that",  "the",   "their", "them",  "then",  "there", "these", "they",
    "this",  "those", "to",    "too",   "us",    "very",  "was",   "we",    "were",  "what",  "when",
    "where", "which", "while", "who",   "why",   "will",  "with",  "would", "you",   "your"};

}  // namespace

std::span<const std::string_view> penn_tags() { return kPennTags; }

TagId tag_id(std::string_view tag) {
    const int t = find_tag(tag);
    if (t < 0) throw Error("'" + std::string(tag) + "' is not a Penn Treebank tag");
    return static_cast<TagId>(t);
}

std::string_view tag_name(TagId id) { return kPennTags.at(id); }

Tagger Tagger::load(const std::filesystem::path& dir) {
    Tagger t;
    std::string storage;

    // Later entries override earlier ones. Ambiguity classes such as "NN|JJ"
    // keep their first member; tags outside the inventory drop the entry.
    for (const auto& f : read_rule_lines(dir / "en-lexicon.txt", storage)) {
        if (f.size() < 2) continue;
        const auto bar = f[1].find('|');
        const int tag = find_tag(f[1].substr(0, bar));
        if (tag < 0) continue;
        t.lexicon_.insert_or_assign(std::string(f[0]), static_cast<TagId>(tag));
    }
    if (t.lexicon_.empty()) throw Error("empty tagger lexicon in " + dir.string());

    static const std::pair<std::string_view, LexCmd> lex_cmds[] = {
        {"char", LexCmd::char_},       {"haspref", LexCmd::haspref},     {"hassuf", LexCmd::hassuf},
        {"addpref", LexCmd::addpref},  {"addsuf", LexCmd::addsuf},       {"deletepref", LexCmd::deletepref},
        {"deletesuf", LexCmd::deletesuf}, {"goodleft", LexCmd::goodleft}, {"goodright", LexCmd::goodright}};
    auto lex_cmd = [](std::string_view s, LexCmd& out) {
        const std::string lower = to_lower(s);
        std::string_view v = lower;
        const bool f = v.starts_with('f') && v != "f";
        for (const auto& [name, cmd] : lex_cmds) {
            if (v == name || (f && v.substr(1) == name)) {
                out = cmd;
                return true;
            }
        }
        return false;
    };
    for (const auto& r : read_rule_lines(dir / "en-morphology.txt", storage)) {
        if (r.size() < 4) continue;
        LexicalRule rule{};
        LexCmd cmd;
        // "NN s fhassuf 1 NNS x" is conditional on the current tag;
        // "ly hassuf 2 RB x" is not. The target tag is next to last.
        if (lex_cmd(r[2], cmd)) {
            const int from = find_tag(r[0]);
            if (from < 0) continue;
            rule = {true, static_cast<TagId>(from), std::string(r[1]), cmd, 0};
        } else if (lex_cmd(r[1], cmd)) {
            rule = {false, 0, std::string(r[0]), cmd, 0};
        } else {
            continue;
        }
        const int to = find_tag(r[r.size() - 2]);
        if (to < 0) continue;
        rule.to = static_cast<TagId>(to);
        t.lexical_rules_.push_back(std::move(rule));
    }

    static const std::pair<std::string_view, CtxCmd> ctx_cmds[] = {
        {"prevtag", CtxCmd::prevtag},           {"nexttag", CtxCmd::nexttag},
        {"prev2tag", CtxCmd::prev2tag},         {"next2tag", CtxCmd::next2tag},
        {"prev1or2tag", CtxCmd::prev1or2tag},   {"next1or2tag", CtxCmd::next1or2tag},
        {"prev1or2or3tag", CtxCmd::prev1or2or3tag}, {"next1or2or3tag", CtxCmd::next1or2or3tag},
        {"surroundtag", CtxCmd::surroundtag},   {"curwd", CtxCmd::curwd},
        {"prevwd", CtxCmd::prevwd},             {"nextwd", CtxCmd::nextwd},
        {"prev1or2wd", CtxCmd::prev1or2wd},     {"next1or2wd", CtxCmd::next1or2wd},
        {"prevwdtag", CtxCmd::prevwdtag},       {"nextwdtag", CtxCmd::nextwdtag},
        {"wdprevtag", CtxCmd::wdprevtag},       {"wdnexttag", CtxCmd::wdnexttag},
        {"wdand2aft", CtxCmd::wdand2aft},       {"wdand2tagbfr", CtxCmd::wdand2tagbfr},
        {"wdand2tagaft", CtxCmd::wdand2tagaft}, {"lbigram", CtxCmd::lbigram},
        {"rbigram", CtxCmd::rbigram},           {"prevbigram", CtxCmd::prevbigram},
        {"nextbigram", CtxCmd::nextbigram}};
    t.rules_by_tag_.assign(kPennTags.size(), {});
    for (const auto& r : read_rule_lines(dir / "en-context.txt", storage)) {
        if (r.size() < 4) continue;
        const std::string cmd_name = to_lower(r[2]);
        const auto it = std::find_if(std::begin(ctx_cmds), std::end(ctx_cmds),
                                     [&](const auto& p) { return p.first == cmd_name; });
        if (it == std::end(ctx_cmds)) continue;  // commands without a defined test never fire
        const int to = find_tag(r[1]);
        const bool wildcard = r[0] == "*";
        const int from = wildcard ? 0 : find_tag(r[0]);
        if (to < 0 || from < 0) continue;

        ContextRule rule;
        rule.to = static_cast<TagId>(to);
        rule.cmd = it->second;
        const std::string_view x = r[3];
        const std::string_view y = r.size() > 4 ? r[4] : std::string_view{};
        // Which operands are words and which are tags.
        bool x_word = false, y_word = false;
        switch (rule.cmd) {
            case CtxCmd::curwd: case CtxCmd::prevwd: case CtxCmd::nextwd:
            case CtxCmd::prev1or2wd: case CtxCmd::next1or2wd:
                x_word = true;
                break;
            case CtxCmd::prevwdtag: case CtxCmd::nextwdtag: case CtxCmd::wdnexttag:
            case CtxCmd::wdand2tagaft:
                x_word = true;
                break;
            case CtxCmd::wdprevtag: case CtxCmd::wdand2tagbfr:
                y_word = true;
                break;
            case CtxCmd::wdand2aft: case CtxCmd::lbigram: case CtxCmd::rbigram:
                x_word = y_word = true;
                break;
            default:
                break;
        }
        if (x_word) rule.xw = std::string(x);
        else rule.xt = rule_tag(x);
        if (y_word) rule.yw = std::string(y);
        else rule.yt = y.empty() ? kNoMatch : rule_tag(y);

        const auto index = static_cast<std::uint16_t>(t.context_rules_.size());
        t.context_rules_.push_back(std::move(rule));
        if (wildcard) {
            for (auto& v : t.rules_by_tag_) v.push_back(index);
        } else {
            t.rules_by_tag_[static_cast<std::size_t>(from)].push_back(index);
        }
    }

    for (auto w : kStopwords) t.stopwords_.emplace(w);
    return t;
}

TagId Tagger::tag_unknown(std::string_view word, bool sentence_initial, std::string_view prev,
                          std::string_view next) const {
    static const TagId NN = tag_id("NN"), NNP = tag_id("NNP"), CD = tag_id("CD");
    if (!sentence_initial && word.size() > 0 && word[0] >= 'A' && word[0] <= 'Z' &&
        stopwords_.find(to_lower(word)) == stopwords_.end())
        return NNP;
    if (is_cd_shape(word)) return CD;

    TagId tag = NN;
    for (const auto& r : lexical_rules_) {
        if (r.conditional && tag != r.from) continue;
        const std::string_view x = r.x;
        bool hit = false;
        switch (r.cmd) {
            case LexCmd::char_: hit = word.find(x) != std::string_view::npos; break;
            case LexCmd::haspref: hit = word.starts_with(x); break;
            case LexCmd::hassuf: hit = word.ends_with(x); break;
            case LexCmd::addpref: hit = in_lexicon(std::string(x) + std::string(word)); break;
            case LexCmd::addsuf: hit = in_lexicon(std::string(word) + std::string(x)); break;
            case LexCmd::deletepref: hit = word.starts_with(x) && in_lexicon(word.substr(x.size())); break;
            case LexCmd::deletesuf:
                hit = word.ends_with(x) && in_lexicon(word.substr(0, word.size() - x.size()));
                break;
            case LexCmd::goodleft: hit = x == next; break;
            case LexCmd::goodright: hit = x == prev; break;
        }
        if (hit) tag = r.to;
    }
    return tag;
}

void Tagger::tag(std::span<const RawToken> sentence, std::vector<TagId>& tags) const {
    thread_local std::vector<std::string_view> tokens;
    tokens.clear();
    for (const auto& t : sentence) tokens.push_back(t.text);
    auto is_word = [&](std::size_t i) { return sentence[i].is_word; };
    const std::size_t n = tokens.size();
    tags.assign(n, 0);
    std::vector<bool> known(n, false);

    std::size_t first_word = n;
    for (std::size_t i = 0; i < n; ++i)
        if (is_word(i)) {
            first_word = i;
            break;
        }

    std::string lower;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = lexicon_.find(tokens[i]);
        if (it == lexicon_.end() && i == first_word) {
            to_lower_into(tokens[i], lower);
            it = lexicon_.find(std::string_view(lower));
        }
        if (it != lexicon_.end()) {
            tags[i] = it->second;
            known[i] = true;
        }
    }
    static const TagId period = tag_id("."), colon = tag_id(":");
    for (std::size_t i = 0; i < n; ++i) {
        if (known[i]) continue;
        if (!is_word(i)) {
            const char c = tokens[i].empty() ? ' ' : tokens[i][0];
            tags[i] = (c == '.' || c == '!' || c == '?') ? period : colon;
            continue;
        }
        const std::string_view prev = i > 0 ? tokens[i - 1] : std::string_view{};
        const std::string_view next = i + 1 < n ? tokens[i + 1] : std::string_view{};
        tags[i] = tag_unknown(tokens[i], i == first_word, prev, next);
    }

    // Contextual rules, left to right, reading tags already rewritten to the
    // left. Among the rules for a token's original tag the last match wins.
    const auto N = static_cast<std::ptrdiff_t>(n);
    auto tag_at = [&](std::ptrdiff_t j) -> int { return (j < 0 || j >= N) ? kPad : tags[static_cast<std::size_t>(j)]; };
    auto word_at = [&](std::ptrdiff_t j) -> std::string_view {
        return (j < 0 || j >= N) ? kPadWord : tokens[static_cast<std::size_t>(j)];
    };
    for (std::ptrdiff_t i = 0; i < N; ++i) {
        const auto& candidates = rules_by_tag_[tags[static_cast<std::size_t>(i)]];
        for (auto k = candidates.rbegin(); k != candidates.rend(); ++k) {
            const ContextRule& r = context_rules_[*k];
            const int x = r.xt, y = r.yt;
            const std::string_view xw = r.xw, yw = r.yw;
            bool hit = false;
            switch (r.cmd) {
                case CtxCmd::prevtag: hit = x == tag_at(i - 1); break;
                case CtxCmd::nexttag: hit = x == tag_at(i + 1); break;
                case CtxCmd::prev2tag: hit = x == tag_at(i - 2); break;
                case CtxCmd::next2tag: hit = x == tag_at(i + 2); break;
                case CtxCmd::prev1or2tag: hit = x == tag_at(i - 1) || x == tag_at(i - 2); break;
                case CtxCmd::next1or2tag: hit = x == tag_at(i + 1) || x == tag_at(i + 2); break;
                case CtxCmd::prev1or2or3tag:
                    hit = x == tag_at(i - 1) || x == tag_at(i - 2) || x == tag_at(i - 3);
                    break;
                case CtxCmd::next1or2or3tag:
                    hit = x == tag_at(i + 1) || x == tag_at(i + 2) || x == tag_at(i + 3);
                    break;
                case CtxCmd::surroundtag: hit = x == tag_at(i - 1) && y == tag_at(i + 1); break;
                case CtxCmd::curwd: hit = xw == word_at(i); break;
                case CtxCmd::prevwd: hit = xw == word_at(i - 1); break;
                case CtxCmd::nextwd: hit = xw == word_at(i + 1); break;
                case CtxCmd::prev1or2wd: hit = xw == word_at(i - 1) || xw == word_at(i - 2); break;
                case CtxCmd::next1or2wd: hit = xw == word_at(i + 1) || xw == word_at(i + 2); break;
                case CtxCmd::prevwdtag: hit = xw == word_at(i - 1) && y == tag_at(i - 1); break;
                case CtxCmd::nextwdtag: hit = xw == word_at(i + 1) && y == tag_at(i + 1); break;
                case CtxCmd::wdprevtag: hit = x == tag_at(i - 1) && yw == word_at(i); break;
                case CtxCmd::wdnexttag: hit = xw == word_at(i) && y == tag_at(i + 1); break;
                case CtxCmd::wdand2aft: hit = xw == word_at(i) && yw == word_at(i + 2); break;
                case CtxCmd::wdand2tagbfr: hit = x == tag_at(i - 2) && yw == word_at(i); break;
                case CtxCmd::wdand2tagaft: hit = xw == word_at(i) && y == tag_at(i + 2); break;
                case CtxCmd::lbigram: hit = xw == word_at(i - 1) && yw == word_at(i); break;
                case CtxCmd::rbigram: hit = xw == word_at(i) && yw == word_at(i + 1); break;
                case CtxCmd::prevbigram: hit = x == tag_at(i - 2) && y == tag_at(i - 1); break;
                case CtxCmd::nextbigram: hit = x == tag_at(i + 1) && y == tag_at(i + 2); break;
            }
            if (hit) {
                tags[static_cast<std::size_t>(i)] = r.to;
                break;
            }
        }
    }
}

}  // namespace tarc
