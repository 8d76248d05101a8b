#pragma once

// Rule-based (Brill) part-of-speech tagger: lexicon lookup, lexical rules for
// unknown words, then contextual rules. Tags are Penn Treebank.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tarc/text.hpp"

namespace tarc {

using TagId = std::uint8_t;

/// The Penn Treebank tag inventory, indexed by TagId.
std::span<const std::string_view> penn_tags();
/// Throws Error for a string outside the inventory.
TagId tag_id(std::string_view tag);
std::string_view tag_name(TagId id);

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};
using WordTagMap = std::unordered_map<std::string, TagId, StringHash, std::equal_to<>>;

class Tagger {
public:
    /// Reads en-lexicon.txt, en-morphology.txt and en-context.txt from `dir`.
    static Tagger load(const std::filesystem::path& dir);

    /// Tags one sentence. Punctuation tokens take part in context rules but
    /// never get the capitalization heuristic.
    void tag(std::span<const RawToken> tokens, std::vector<TagId>& tags) const;

    std::size_t lexicon_size() const { return lexicon_.size(); }

private:
    enum class LexCmd : std::uint8_t {
        char_, haspref, hassuf, addpref, addsuf, deletepref, deletesuf, goodleft, goodright
    };
    struct LexicalRule {
        bool conditional;  // only fires when the current tag equals `from`
        TagId from;
        std::string x;
        LexCmd cmd;
        TagId to;
    };

    enum class CtxCmd : std::uint8_t {
        prevtag, nexttag, prev2tag, next2tag, prev1or2tag, next1or2tag, prev1or2or3tag, next1or2or3tag,
        surroundtag, curwd, prevwd, nextwd, prev1or2wd, next1or2wd, prevwdtag, nextwdtag, wdprevtag,
        wdnexttag, wdand2aft, wdand2tagbfr, wdand2tagaft, lbigram, rbigram, prevbigram, nextbigram
    };
    struct ContextRule {
        TagId to;
        CtxCmd cmd;
        // Word operands are kept as strings, tag operands as ids. The
        // sentence-boundary pad and unknown tags get ids outside the inventory.
        std::string xw, yw;
        int xt = -1, yt = -1;
    };

    TagId tag_unknown(std::string_view word, bool sentence_initial, std::string_view prev,
                      std::string_view next) const;
    bool in_lexicon(std::string_view w) const { return lexicon_.find(w) != lexicon_.end(); }

    WordTagMap lexicon_;
    std::vector<LexicalRule> lexical_rules_;
    std::vector<ContextRule> context_rules_;
    // For each tag, the indices of context rules whose source tag matches it
    // (or is the wildcard), in file order.
    std::vector<std::vector<std::uint16_t>> rules_by_tag_;
    std::unordered_set<std::string, StringHash, std::equal_to<>> stopwords_;
};

}  // namespace tarc
