#include "tarc/vader.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include "tarc/error.hpp"
#include "tarc/io.hpp"
#include "tarc/strings.hpp"

namespace tarc {

namespace {

constexpr double B_INCR = 0.293;
constexpr double B_DECR = -0.293;
constexpr double C_INCR = 0.733;
constexpr double N_SCALAR = -0.74;

const std::unordered_map<std::string_view, double>& booster_dict() {
    static const std::unordered_map<std::string_view, double> d = {
        {"absolutely", B_INCR},   {"amazingly", B_INCR},    {"awfully", B_INCR},      {"completely", B_INCR},
        {"considerable", B_INCR}, {"considerably", B_INCR}, {"decidedly", B_INCR},    {"deeply", B_INCR},
        {"effing", B_INCR},       {"enormous", B_INCR},     {"enormously", B_INCR},   {"entirely", B_INCR},
        {"especially", B_INCR},   {"exceptional", B_INCR},  {"exceptionally", B_INCR}, {"extreme", B_INCR},
        {"extremely", B_INCR},    {"fabulously", B_INCR},   {"flipping", B_INCR},     {"flippin", B_INCR},
        {"frackin", B_INCR},      {"fracking", B_INCR},     {"fricking", B_INCR},     {"frickin", B_INCR},
        {"frigging", B_INCR},     {"friggin", B_INCR},      {"fully", B_INCR},        {"fuckin", B_INCR},
        {"fucking", B_INCR},      {"fuggin", B_INCR},       {"fugging", B_INCR},      {"greatly", B_INCR},
        {"hella", B_INCR},        {"highly", B_INCR},       {"hugely", B_INCR},       {"incredible", B_INCR},
        {"incredibly", B_INCR},   {"intensely", B_INCR},    {"major", B_INCR},        {"majorly", B_INCR},
        {"more", B_INCR},         {"most", B_INCR},         {"particularly", B_INCR}, {"purely", B_INCR},
        {"quite", B_INCR},        {"really", B_INCR},       {"remarkably", B_INCR},   {"so", B_INCR},
        {"substantially", B_INCR}, {"thoroughly", B_INCR},  {"total", B_INCR},        {"totally", B_INCR},
        {"tremendous", B_INCR},   {"tremendously", B_INCR}, {"uber", B_INCR},         {"unbelievably", B_INCR},
        {"unusually", B_INCR},    {"utter", B_INCR},        {"utterly", B_INCR},      {"very", B_INCR},
        {"almost", B_DECR},       {"barely", B_DECR},       {"hardly", B_DECR},       {"just enough", B_DECR},
        {"kind of", B_DECR},      {"kinda", B_DECR},        {"kindof", B_DECR},       {"kind-of", B_DECR},
        {"less", B_DECR},         {"little", B_DECR},       {"marginal", B_DECR},     {"marginally", B_DECR},
        {"occasional", B_DECR},   {"occasionally", B_DECR}, {"partly", B_DECR},       {"scarce", B_DECR},
        {"scarcely", B_DECR},     {"slight", B_DECR},       {"slightly", B_DECR},     {"somewhat", B_DECR},
        {"sort of", B_DECR},      {"sorta", B_DECR},        {"sortof", B_DECR},       {"sort-of", B_DECR}};
    return d;
}

const std::unordered_map<std::string_view, double>& special_cases() {
    static const std::unordered_map<std::string_view, double> d = {
        {"the shit", 3},     {"the bomb", 3},       {"bad ass", 1.5},    {"badass", 1.5},       {"bus stop", 0.0},
        {"yeah right", -2},  {"kiss of death", -1.5}, {"to die for", 3}, {"beating heart", 3.5}};
    return d;
}

constexpr std::string_view kNegate[] = {
    "aint",    "arent",    "cannot",  "cant",     "couldnt",  "darent",  "didnt",   "doesnt",  "ain't",
    "aren't",  "can't",    "couldn't", "daren't", "didn't",   "doesn't", "dont",    "hadnt",   "hasnt",
    "havent",  "isnt",     "mightnt", "mustnt",   "neither",  "don't",   "hadn't",  "hasn't",  "haven't",
    "isn't",   "mightn't", "mustn't", "neednt",   "needn't",  "never",   "none",    "nope",    "nor",
    "not",     "nothing",  "nowhere", "oughtnt",  "shant",    "shouldnt", "uhuh",   "wasnt",   "werent",
    "oughtn't", "shan't",  "shouldn't", "uh-uh",  "wasn't",   "weren't", "without", "wont",    "wouldnt",
    "won't",   "wouldn't", "rarely",  "seldom",   "despite"};

bool negated(std::string_view lower) {
    for (auto w : kNegate)
        if (w == lower) return true;
    return lower.find("n't") != std::string_view::npos;
}

// str.isupper() restricted to ASCII: some cased character, none lowercase.
bool is_upper(std::string_view w) {
    bool cased = false;
    for (char c : w) {
        if (c >= 'a' && c <= 'z') return false;
        if (c >= 'A' && c <= 'Z') cased = true;
    }
    return cased;
}

bool is_ascii_punct(char c) {
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

std::size_t codepoints(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
}

// Strips surrounding punctuation unless that leaves two or fewer characters
// (which keeps emoticons such as ":)" intact).
std::string_view strip_punct_if_word(std::string_view token) {
    std::size_t b = 0, e = token.size();
    while (b < e && is_ascii_punct(token[b])) ++b;
    while (e > b && is_ascii_punct(token[e - 1])) --e;
    const auto stripped = token.substr(b, e - b);
    return codepoints(stripped) <= 2 ? token : stripped;
}

// Decodes one UTF-8 sequence at s[i]; malformed bytes decode as themselves.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
    if (i + len > s.size()) len = 1;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    for (std::size_t k = 1; k < len; ++k) {
        const auto d = static_cast<unsigned char>(s[i + k]);
        if ((d & 0xC0) != 0x80) {
            len = 1;
            cp = c;
            break;
        }
        cp = (cp << 6) | (d & 0x3F);
    }
    i += len;
    return cp;
}

double normalize(double score) {
    const double x = score / std::sqrt(score * score + 15.0);
    return std::clamp(x, -1.0, 1.0);
}

}  // namespace

PolarityAnalyzer PolarityAnalyzer::load(const std::filesystem::path& dir) {
    PolarityAnalyzer a;
    const std::string lex = read_file(dir / "vader_lexicon.txt");
    std::size_t pos = 0, line_no = 0;
    while (pos < lex.size()) {
        std::size_t end = lex.find('\n', pos);
        if (end == std::string::npos) end = lex.size();
        const auto line = trim(std::string_view(lex).substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) throw ParseError((dir / "vader_lexicon.txt").string(), line_no, "no tab");
        const auto rest = line.substr(tab + 1);
        double v;
        try {
            v = parse_number(rest.substr(0, rest.find('\t')));
        } catch (const DataError& e) {
            throw ParseError((dir / "vader_lexicon.txt").string(), line_no, e.what());
        }
        a.lexicon_.insert_or_assign(std::string(line.substr(0, tab)), v);
    }

    const auto emoji_path = dir / "emoji_utf8_lexicon.txt";
    if (std::filesystem::exists(emoji_path)) {
        const std::string em = read_file(emoji_path);
        pos = 0;
        while (pos < em.size()) {
            std::size_t end = em.find('\n', pos);
            if (end == std::string::npos) end = em.size();
            const auto line = trim(std::string_view(em).substr(pos, end - pos));
            pos = end + 1;
            const auto tab = line.find('\t');
            if (tab == std::string_view::npos) continue;
            const auto key = line.substr(0, tab);
            // Replacement works per code point, so multi-code-point keys never apply.
            std::size_t k = 0;
            const char32_t cp = decode_utf8(key, k);
            if (k != key.size()) continue;
            auto desc = line.substr(tab + 1);
            desc = desc.substr(0, desc.find('\t'));
            a.emoji_.insert_or_assign(cp, std::string(desc));
        }
    }
    return a;
}

const double* PolarityAnalyzer::valence(std::string_view lower) const {
    auto it = lexicon_.find(lower);
    return it == lexicon_.end() ? nullptr : &it->second;
}

PolarityResult PolarityAnalyzer::score(std::string_view raw) const {
    // Emoji to their textual descriptions.
    std::string text;
    text.reserve(raw.size());
    bool prev_space = true;
    for (std::size_t i = 0; i < raw.size();) {
        const std::size_t start = i;
        const char32_t cp = decode_utf8(raw, i);
        if (cp >= 0x80) {
            if (auto it = emoji_.find(cp); it != emoji_.end()) {
                if (!prev_space) text += ' ';
                text += it->second;
                prev_space = false;
                continue;
            }
        }
        text.append(raw.substr(start, i - start));
        prev_space = cp == U' ';
    }

    std::vector<std::string_view> words;
    for (auto t : split_whitespace(text)) words.push_back(strip_punct_if_word(t));
    const std::size_t n = words.size();
    if (n == 0) return {};

    std::vector<std::string> lower(n);
    std::vector<const double*> lex(n);
    std::size_t allcaps = 0;
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = to_lower(words[i]);
        lex[i] = valence(lower[i]);
        allcaps += is_upper(words[i]);
    }
    const bool cap_diff = allcaps > 0 && allcaps < n;
    const auto& boosters = booster_dict();
    const auto& specials = special_cases();

    auto scalar_inc_dec = [&](std::size_t j, double valence) {
        auto it = boosters.find(lower[j]);
        if (it == boosters.end()) return 0.0;
        double scalar = it->second;
        if (valence < 0) scalar = -scalar;
        if (is_upper(words[j]) && cap_diff) scalar += valence > 0 ? C_INCR : -C_INCR;
        return scalar;
    };

    auto negation_check = [&](double v, std::size_t start, std::size_t i) {
        const auto& L = lower;
        if (start == 0) {
            if (negated(L[i - 1])) v *= N_SCALAR;
        } else if (start == 1) {
            if (L[i - 2] == "never" && (L[i - 1] == "so" || L[i - 1] == "this")) v *= 1.25;
            else if (L[i - 2] == "without" && L[i - 1] == "doubt") {
            } else if (negated(L[i - 2])) v *= N_SCALAR;
        } else {
            // The grouping reproduces the reference implementation: an adjacent
            // "so"/"this" triggers the boost on its own.
            if ((L[i - 3] == "never" && (L[i - 2] == "so" || L[i - 2] == "this")) ||
                (L[i - 1] == "so" || L[i - 1] == "this"))
                v *= 1.25;
            else if (L[i - 3] == "without" && (L[i - 2] == "doubt" || L[i - 1] == "doubt")) {
            } else if (negated(L[i - 3])) v *= N_SCALAR;
        }
        return v;
    };

    auto special_idioms = [&](double v, std::size_t i) {
        const auto& L = lower;
        const std::string onezero = L[i - 1] + " " + L[i];
        const std::string twoonezero = L[i - 2] + " " + L[i - 1] + " " + L[i];
        const std::string twoone = L[i - 2] + " " + L[i - 1];
        const std::string threetwoone = L[i - 3] + " " + L[i - 2] + " " + L[i - 1];
        const std::string threetwo = L[i - 3] + " " + L[i - 2];
        for (const std::string* seq : {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
            if (auto it = specials.find(*seq); it != specials.end()) {
                v = it->second;
                break;
            }
        }
        if (n - 1 > i) {
            if (auto it = specials.find(L[i] + " " + L[i + 1]); it != specials.end()) v = it->second;
        }
        if (n - 1 > i + 1) {
            if (auto it = specials.find(L[i] + " " + L[i + 1] + " " + L[i + 2]); it != specials.end()) v = it->second;
        }
        for (const std::string* g : {&threetwoone, &threetwo, &twoone})
            if (auto it = boosters.find(*g); it != boosters.end()) v += it->second;
        return v;
    };

    auto least_check = [&](double v, std::size_t i) {
        if (i > 1 && !lex[i - 1] && lower[i - 1] == "least") {
            if (lower[i - 2] != "at" && lower[i - 2] != "very") v *= N_SCALAR;
        } else if (i > 0 && !lex[i - 1] && lower[i - 1] == "least") {
            v *= N_SCALAR;
        }
        return v;
    };

    std::vector<double> sentiments(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (boosters.count(lower[i])) continue;
        if (i + 1 < n && lower[i] == "kind" && lower[i + 1] == "of") continue;
        if (!lex[i]) continue;

        double v = *lex[i];
        if (lower[i] == "no" && i != n - 1 && lex[i + 1]) v = 0.0;
        if ((i > 0 && lower[i - 1] == "no") || (i > 1 && lower[i - 2] == "no") ||
            (i > 2 && lower[i - 3] == "no" && (lower[i - 1] == "or" || lower[i - 1] == "nor")))
            v = *lex[i] * N_SCALAR;
        if (is_upper(words[i]) && cap_diff) v += v > 0 ? C_INCR : -C_INCR;
        for (std::size_t start = 0; start < 3; ++start) {
            if (i > start && !lex[i - (start + 1)]) {
                double s = scalar_inc_dec(i - (start + 1), v);
                if (start == 1 && s != 0) s *= 0.95;
                if (start == 2 && s != 0) s *= 0.9;
                v += s;
                v = negation_check(v, start, i);
                if (start == 2) v = special_idioms(v, i);
            }
        }
        sentiments[i] = least_check(v, i);
    }

    // Contrast: words before the first "but" count half, words after it 1.5x.
    for (std::size_t b = 0; b < n; ++b) {
        if (lower[b] != "but") continue;
        for (std::size_t k = 0; k < n; ++k) {
            if (k < b) sentiments[k] *= 0.5;
            else if (k > b) sentiments[k] *= 1.5;
        }
        break;
    }

    double sum = 0.0;
    for (double s : sentiments) sum += s;
    const auto bangs = std::min<std::size_t>(static_cast<std::size_t>(std::count(text.begin(), text.end(), '!')), 4);
    const auto qmarks = static_cast<std::size_t>(std::count(text.begin(), text.end(), '?'));
    double amp = static_cast<double>(bangs) * 0.292;
    if (qmarks > 1) amp += qmarks <= 3 ? static_cast<double>(qmarks) * 0.18 : 0.96;
    if (sum > 0) sum += amp;
    else if (sum < 0) sum -= amp;

    PolarityResult r;
    r.compound = normalize(sum);

    double pos_sum = 0.0, neg_sum = 0.0;
    std::size_t neu = 0;
    for (double s : sentiments) {
        if (s > 0) pos_sum += s + 1;
        if (s < 0) neg_sum += s - 1;
        if (s == 0) ++neu;
    }
    if (pos_sum > std::fabs(neg_sum)) pos_sum += amp;
    else if (pos_sum < std::fabs(neg_sum)) neg_sum -= amp;
    const double total = pos_sum + std::fabs(neg_sum) + static_cast<double>(neu);
    r.positive_mass = std::fabs(pos_sum / total);
    r.negative_mass = std::fabs(neg_sum / total);
    r.neutral_mass = std::fabs(static_cast<double>(neu) / total);
    return r;
}

}  // namespace tarc
