#include "binv/verifier.hpp"

#include <algorithm>
#include <cctype>

namespace binv {

std::string ClaimQuery::rendered_claim() const {
    if (!certainty_policy) return claim_text;
    return claim_text + " (" + kCertaintySuffix + ")";
}

std::string McqQuery::rendered() const {
    std::string out = stem;
    for (std::size_t i = 0; i < options.size(); ++i) {
        out += "\n(";
        out += static_cast<char>('A' + i);
        out += ") ";
        out += options[i];
    }
    out += "\nAnswer with the option letter.";
    return out;
}

namespace {

std::string lowercase(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Word-boundary occurrence count of `word` in lowercase text.
int count_word(const std::string& text, const std::string& word) {
    int n = 0;
    std::size_t pos = 0;
    auto is_word = [](unsigned char c) { return std::isalnum(c); };
    while ((pos = text.find(word, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !is_word(text[pos - 1]);
        std::size_t end = pos + word.size();
        bool right_ok = end >= text.size() || !is_word(text[end]);
        if (left_ok && right_ok) ++n;
        pos = end;
    }
    return n;
}

std::string first_token(const std::string& text) {
    std::size_t i = 0;
    auto is_skip = [](unsigned char c) {
        return std::isspace(c) || std::ispunct(c);
    };
    while (i < text.size() && is_skip(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
    return text.substr(i, j - i);
}

}  // namespace

Verdict parse_verdict(const std::string& raw) {
    std::string low = lowercase(raw);
    std::string tok = first_token(low);
    if (tok == "true") return Verdict::True;
    if (tok == "false") return Verdict::False_;
    int t = count_word(low, "true");
    int f = count_word(low, "false");
    if (t == 1 && f == 0) return Verdict::True;
    if (f == 1 && t == 0) return Verdict::False_;
    return Verdict::Unparseable;
}

std::optional<std::size_t> parse_mcq_choice(const std::string& raw,
                                            const std::vector<std::string>& options) {
    std::string low = lowercase(raw);
    // Single letter anywhere with word boundaries, checked from the last
    // occurrence of "answer" if present, else the whole reply.
    std::size_t start = 0;
    if (std::size_t pos = low.rfind("answer"); pos != std::string::npos) start = pos;
    for (std::size_t i = start; i < low.size(); ++i) {
        char c = low[i];
        if (c < 'a' || c >= 'a' + static_cast<char>(std::min<std::size_t>(options.size(), 26)))
            continue;
        bool left_ok = i == 0 || !std::isalnum(static_cast<unsigned char>(low[i - 1]));
        bool right_ok = i + 1 >= low.size() ||
                        !std::isalnum(static_cast<unsigned char>(low[i + 1]));
        if (left_ok && right_ok) return static_cast<std::size_t>(c - 'a');
    }
    // Verbatim option text as a fallback.
    for (std::size_t i = 0; i < options.size(); ++i)
        if (!options[i].empty() && low.find(lowercase(options[i])) != std::string::npos)
            return i;
    return std::nullopt;
}

}  // namespace binv
