#ifndef OOVR_ASR_SIM_HPP
#define OOVR_ASR_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

#include "oovr/config.hpp"
#include "oovr/corpus.hpp"
#include "oovr/phonetics.hpp"

namespace oovr {

// A transcription token: either a recognized in-vocabulary word or an OOV
// fragment carried as a syllable sequence.
struct QueryToken {
    enum class Kind { Word, Fragment };
    Kind kind = Kind::Word;
    std::string surface; // Word
    SyllableSeq phon;    // Fragment

    static QueryToken word(std::string s) {
        QueryToken t;
        t.kind = Kind::Word;
        t.surface = std::move(s);
        return t;
    }
    static QueryToken fragment(SyllableSeq p) {
        QueryToken t;
        t.kind = Kind::Fragment;
        t.phon = std::move(p);
        return t;
    }
    bool is_fragment() const { return kind == Kind::Fragment; }
    bool operator==(const QueryToken &) const = default;
};

// Ground truth behind an emitted fragment. true_oov is false for in-vocabulary
// words mistakenly emitted as fragments (false-OOV injections).
struct GoldRecord {
    std::size_t position = 0;
    std::string surface;
    bool true_oov = true;
    bool operator==(const GoldRecord &) const = default;
};

struct TranscribedQuery {
    std::string query_id;
    std::vector<QueryToken> tokens;
    std::vector<GoldRecord> gold; // one record per fragment position

    std::vector<std::string> word_surfaces() const;
    std::size_t fragment_count() const;
};

// Recognizer dictionary surrogate: the top-K words of a collection by
// frequency, plus the collection's syllable inventory (used by the noise
// channel) and the tokenizer stoplist it was built with.
struct VocabularyModel {
    std::unordered_set<std::string> words;
    std::uint32_t k = 0;
    bool universal = false; // covers every surface; used by experiment method 2
    std::vector<std::string> syllable_inventory; // sorted distinct symbols
    std::vector<std::string> stop_entries;       // sorted stoplist entries

    bool contains(const std::string &w) const { return universal || words.count(w) != 0; }
    StopList stoplist() const { return StopList(stop_entries); }

    void save(const std::string &path) const;
    static VocabularyModel load(const std::string &path);
    static VocabularyModel make_universal();
};

struct NoiseConfig {
    double p_sub = 0.0;
    double p_del = 0.0;
    double p_ins = 0.0;
    double p_false_oov = 0.0;
    std::uint64_t seed = 1;

    static NoiseConfig from(const Config &cfg) {
        return NoiseConfig{cfg.p_sub, cfg.p_del, cfg.p_ins, cfg.p_false_oov, cfg.seed};
    }
};

// Top-K words by collection frequency, ties by lexicographic order. The
// syllable inventory is collected from every distinct word in the collection.
VocabularyModel build_vocabulary(const std::vector<TokenizedDocument> &docs, std::uint32_t K,
                                 const Phonetizer &ph, const StopList &stop);

// Closed-vocabulary transcription with seeded syllable-level noise. Words in
// the vocabulary pass through unchanged (except false-OOV injections); other
// words are syllabified and run through the noise channel. Deterministic:
// the per-query stream is seeded with noise.seed XOR query ordinal.
TranscribedQuery transcribe(const std::string &query_id, const std::string &text,
                            const VocabularyModel &vocab, const NoiseConfig &noise,
                            const Phonetizer &ph, std::uint64_t ordinal = 0);

// Transcribed-query JSON-lines: {"id":..., "tokens":["word",{"oov":[...]}],
// "gold":[{"pos":N,"surface":...,"true_oov":bool}]}
void write_transcribed(std::ostream &out, const std::vector<TranscribedQuery> &queries);
std::vector<TranscribedQuery> read_transcribed(std::istream &in);
void save_transcribed(const std::string &path, const std::vector<TranscribedQuery> &queries);
std::vector<TranscribedQuery> load_transcribed(const std::string &path);

} // namespace oovr

#endif
