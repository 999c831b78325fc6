#ifndef OOVR_PHONETICS_HPP
#define OOVR_PHONETICS_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace oovr {

using Syllable = std::string; // non-empty, no whitespace; ":" marks a long vowel

struct SyllableSeq {
    std::vector<Syllable> syllables;

    SyllableSeq() = default;
    explicit SyllableSeq(std::vector<Syllable> syls) : syllables(std::move(syls)) {}

    std::size_t len() const { return syllables.size(); }
    bool empty() const { return syllables.empty(); }
    const Syllable &operator[](std::size_t i) const { return syllables[i]; }
    bool operator==(const SyllableSeq &other) const = default;

    std::string to_string() const;                      // space-joined symbols
    static SyllableSeq from_string(const std::string &); // inverse of to_string
};

// Counts for a minimal-cost edit alignment of w against t. Deletions and
// insertions are counted relative to w:
//   matches + substitutions + deletions  == len(w)
//   matches + substitutions + insertions == len(t)
struct Alignment {
    std::size_t matches = 0;
    std::size_t substitutions = 0;
    std::size_t deletions = 0;
    std::size_t insertions = 0;
    std::size_t cost() const { return substitutions + deletions + insertions; }
};

// Minimal-cost alignment under unit edit costs (match costs 0). Among
// minimal-cost paths the backtrace prefers match > substitution > deletion
// > insertion, which makes the counts deterministic.
Alignment align(const SyllableSeq &w, const SyllableSeq &t);

// Phonetic replaceability of t for w: matched syllables over len(w).
// Asymmetric by construction; requires len(w) >= 1.
double similarity(const SyllableSeq &w, const SyllableSeq &t);

// Maps term surfaces to syllable sequences. Lexicon overrides, when loaded,
// take precedence over the rule-based segmentation.
//
// Rules for Latin-script surfaces: scan left to right emitting
// consonant-cluster + vowel-run groups; a standalone "n" before a consonant
// becomes the moraic symbol "N"; a repeated vowel emits ":" per repetition;
// a surface without vowels becomes a single degenerate syllable.
class Phonetizer {
  public:
    Phonetizer() = default;
    // Lines of "surface TAB syllable syllable ...".
    void load_lexicon(const std::string &path);
    void add_override(const std::string &surface, SyllableSeq seq);
    SyllableSeq syllabify(const std::string &surface) const;

  private:
    std::unordered_map<std::string, SyllableSeq> lexicon_;
};

// Rule-based segmentation only, ignoring any lexicon.
SyllableSeq syllabify_rules(const std::string &surface);

} // namespace oovr

#endif
