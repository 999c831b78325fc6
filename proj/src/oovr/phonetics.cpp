#include "oovr/phonetics.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "oovr/errors.hpp"

namespace oovr {

std::string SyllableSeq::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < syllables.size(); ++i) {
        if (i)
            out.push_back(' ');
        out += syllables[i];
    }
    return out;
}

SyllableSeq SyllableSeq::from_string(const std::string &s) {
    SyllableSeq seq;
    std::istringstream in(s);
    std::string sym;
    while (in >> sym)
        seq.syllables.push_back(sym);
    return seq;
}

namespace {

inline bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

} // namespace

SyllableSeq syllabify_rules(const std::string &surface) {
    if (surface.empty())
        throw UsageError("syllabify: empty surface");
    if (std::none_of(surface.begin(), surface.end(), is_vowel))
        return SyllableSeq({surface}); // degenerate rule

    std::vector<Syllable> out;
    std::size_t i = 0;
    const std::size_t n = surface.size();
    while (i < n) {
        // moraic n: standalone "n" directly before a consonant
        if (surface[i] == 'n' && i + 1 < n && !is_vowel(surface[i + 1])) {
            out.emplace_back("N");
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !is_vowel(surface[j]))
            ++j;
        if (j == n) {
            // trailing consonant cluster, no vowel run
            out.push_back(surface.substr(i));
            break;
        }
        out.push_back(surface.substr(i, j - i + 1)); // cluster + first vowel
        char prev = surface[j];
        ++j;
        while (j < n && is_vowel(surface[j])) {
            if (surface[j] == prev)
                out.emplace_back(":"); // long vowel
            else
                out.push_back(std::string(1, surface[j]));
            prev = surface[j];
            ++j;
        }
        i = j;
    }
    return SyllableSeq(std::move(out));
}

void Phonetizer::load_lexicon(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open lexicon file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty())
            continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw DataError("lexicon line " + std::to_string(lineno) +
                            ": expected \"surface TAB syllables\"");
        std::string surface = line.substr(0, tab);
        SyllableSeq seq = SyllableSeq::from_string(line.substr(tab + 1));
        if (seq.empty())
            throw DataError("lexicon line " + std::to_string(lineno) + ": no syllables");
        lexicon_[surface] = std::move(seq);
    }
}

void Phonetizer::add_override(const std::string &surface, SyllableSeq seq) {
    lexicon_[surface] = std::move(seq);
}

SyllableSeq Phonetizer::syllabify(const std::string &surface) const {
    auto it = lexicon_.find(surface);
    if (it != lexicon_.end())
        return it->second;
    return syllabify_rules(surface);
}

Alignment align(const SyllableSeq &w, const SyllableSeq &t) {
    const std::size_t n = w.len();
    const std::size_t m = t.len();
    // dp[i][j]: minimal edit cost aligning w[0..i) with t[0..j)
    std::vector<std::vector<std::uint32_t>> dp(n + 1, std::vector<std::uint32_t>(m + 1, 0));
    for (std::size_t i = 1; i <= n; ++i)
        dp[i][0] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j)
        dp[0][j] = static_cast<std::uint32_t>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            std::uint32_t diag = dp[i - 1][j - 1] + (w[i - 1] == t[j - 1] ? 0u : 1u);
            std::uint32_t del = dp[i - 1][j] + 1;
            std::uint32_t ins = dp[i][j - 1] + 1;
            dp[i][j] = std::min({diag, del, ins});
        }
    }

    Alignment a;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0 && w[i - 1] == t[j - 1] && dp[i][j] == dp[i - 1][j - 1]) {
            ++a.matches;
            --i, --j;
        } else if (i > 0 && j > 0 && w[i - 1] != t[j - 1] && dp[i][j] == dp[i - 1][j - 1] + 1) {
            ++a.substitutions;
            --i, --j;
        } else if (i > 0 && dp[i][j] == dp[i - 1][j] + 1) {
            ++a.deletions;
            --i;
        } else {
            ++a.insertions;
            --j;
        }
    }
    return a;
}

double similarity(const SyllableSeq &w, const SyllableSeq &t) {
    if (w.empty())
        throw UsageError("similarity: len(w) must be >= 1");
    Alignment a = align(w, t);
    return static_cast<double>(a.matches) / static_cast<double>(w.len());
}

} // namespace oovr
