#include "tarc/lexicon.hpp"

#include <fstream>
#include <set>

#include "tarc/error.hpp"
#include "tarc/strings.hpp"
#include "tarc/text.hpp"

namespace tarc {

Lexicon::Lexicon(std::string name, const std::vector<std::string>& phrases) : name_(std::move(name)) {
    std::set<std::string> seen;
    for (const auto& raw : phrases) {
        const std::string phrase = to_lower(trim(raw));
        const auto tokens = word_tokens(phrase);
        if (tokens.empty()) throw ConfigError("lexicon '" + name_ + "': phrase '" + raw + "' has no word token");
        std::string key;
        for (auto t : tokens) {
            if (!key.empty()) key += ' ';
            key += t;
        }
        if (!seen.insert(key).second) throw ConfigError("lexicon '" + name_ + "': duplicate phrase '" + key + "'");
        entries_.push_back(key);

        std::size_t node = 0;
        for (auto t : tokens) {
            auto it = nodes_[node].next.find(t);
            if (it == nodes_[node].next.end()) {
                nodes_.emplace_back();
                it = nodes_[node].next.emplace(std::string(t), nodes_.size() - 1).first;
            }
            node = it->second;
        }
        nodes_[node].terminal = true;
    }
}

Lexicon Lexicon::load(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon " + path.string());
    std::vector<std::string> phrases;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        phrases.emplace_back(t);
    }
    if (phrases.empty()) throw ConfigError("lexicon " + path.string() + " has no entries");
    if (name.empty()) name = path.stem().string();
    return Lexicon(std::move(name), phrases);
}

std::size_t Lexicon::count_matches(std::span<const std::string_view> lower_tokens) const {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < lower_tokens.size()) {
        std::size_t node = 0, longest = 0;
        for (std::size_t j = i; j < lower_tokens.size(); ++j) {
            auto it = nodes_[node].next.find(lower_tokens[j]);
            if (it == nodes_[node].next.end()) break;
            node = it->second;
            if (nodes_[node].terminal) longest = j - i + 1;
        }
        if (longest > 0) {
            ++count;
            i += longest;
        } else {
            ++i;
        }
    }
    return count;
}

double lexicon_ratio(std::span<const std::string_view> lower_tokens, const Lexicon& lexicon) {
    if (lower_tokens.empty()) return 0.0;
    return static_cast<double>(lexicon.count_matches(lower_tokens)) / static_cast<double>(lower_tokens.size());
}

}  // namespace tarc
