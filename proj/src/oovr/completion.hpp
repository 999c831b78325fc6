#ifndef OOVR_COMPLETION_HPP
#define OOVR_COMPLETION_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "oovr/asr_sim.hpp"
#include "oovr/config.hpp"
#include "oovr/corpus.hpp"
#include "oovr/phonetics.hpp"
#include "oovr/retrieval.hpp"

namespace oovr {

struct Occurrence {
    std::uint32_t doc;   // ordinal into CompletionIndex::doc_ids()
    std::uint32_t count; // >= 1
};

// An indexed completion target: a word or an adjacent word bigram
// (bigram surfaces carry exactly one space separator).
struct CompletionEntry {
    std::string surface;
    SyllableSeq phon;
    std::vector<Occurrence> occurrences; // ascending doc ordinal
    bool is_bigram() const { return surface.find(' ') != std::string::npos; }
};

// Forward/backward partial-match index over words and word bigrams: entries
// are reachable by shared syllable prefixes (forward trie) and shared
// syllable suffixes (backward trie over reversed sequences).
class CompletionIndex {
  public:
    static CompletionIndex build(const std::vector<TokenizedDocument> &docs,
                                 const Phonetizer &ph);

    std::size_t entry_count() const { return entries_.size(); }
    const CompletionEntry &entry(std::uint32_t id) const { return entries_[id]; }
    const std::vector<std::string> &doc_ids() const { return doc_ids_; }

    // Membership bitmap over this index's doc ordinals; unknown ids are ignored.
    std::vector<char> make_doc_set(const std::vector<std::string> &ids) const;

    // Ordinal of a doc id, or -1 when the id is not in this index.
    std::int64_t find_doc(const std::string &doc_id) const;

    // Entry ids whose phonetic form shares the first (respectively last)
    // p symbols with w. Requires 1 <= p <= len(w).
    std::vector<std::uint32_t> prefix_matches(const SyllableSeq &w, std::size_t p) const;
    std::vector<std::uint32_t> suffix_matches(const SyllableSeq &w, std::size_t p) const;

    void save(const std::string &path) const;
    void save(std::ostream &out) const;
    static CompletionIndex load(const std::string &path);
    static CompletionIndex load(std::istream &in);

  private:
    struct TrieNode {
        std::map<Syllable, std::uint32_t> children;
        std::vector<std::uint32_t> terminals; // entries ending at this node
    };

    std::vector<std::string> doc_ids_;
    std::unordered_map<std::string, std::uint32_t> doc_ord_;
    std::vector<CompletionEntry> entries_;
    std::unordered_map<std::string, std::uint32_t> entry_by_surface_;
    std::vector<TrieNode> fwd_{1}, bwd_{1}; // node 0 is the root

    void insert_trie(std::vector<TrieNode> &nodes, const std::vector<Syllable> &symbols,
                     std::uint32_t entry_id);
    std::uint32_t intern_entry(const std::string &surface, const Phonetizer &ph,
                               std::unordered_map<std::string, SyllableSeq> &phon_cache);
    void add_occurrence(std::uint32_t entry_id, std::uint32_t doc_ord);
    static std::vector<std::uint32_t> collect(const std::vector<TrieNode> &nodes,
                                              std::uint32_t node);
};

struct Candidate {
    std::string surface;
    SyllableSeq phon;
    double p_wt = 0.0;  // phonetic replaceability P(w|t)
    double score = 0.0; // completion score, filled by score_candidate
    std::uint32_t entry_id = 0;
};

// Entries that occur in at least one D_q document and share a syllable
// prefix or suffix of length >= min(L, len(w)) with w, pruned to
// similarity(w, phon) >= theta. Sorted by surface.
std::vector<Candidate> generate_candidates(const CompletionIndex &ci, const SyllableSeq &w,
                                           const std::vector<char> &dq, double theta,
                                           std::uint32_t L);

// First-stage scores keyed by completion-index doc ordinal; docs outside
// D_q hold a negative sentinel.
struct DqScores {
    std::vector<double> score;
    static DqScores make(const CompletionIndex &ci, const RankedList &first_stage);
    bool contains(std::uint32_t ord) const { return score[ord] >= 0.0; }
};

// Completion score of a candidate: sum over the D_q documents containing it
// of p_wt * ln(P(t|d) * P(d|q)), with P(t|d) the entry's relative frequency
// (bigrams are normalized by doc_len - 1) and P(d|q) the first-stage score
// floored at cfg.epsilon. ScoreMode::Average divides by the document count.
double score_candidate(const CompletionIndex &ci, const Candidate &cand,
                       const InvertedIndex &index, const DqScores &dq, const Config &cfg);
double score_candidate(const CompletionIndex &ci, const Candidate &cand,
                       const InvertedIndex &index, const RankedList &first_stage,
                       const Config &cfg);

struct FragmentCompletion {
    std::size_t position = 0; // token index in the input query
    SyllableSeq fragment;
    bool completed = false;
    std::string replacement; // winning surface; empty when the fragment was dropped
    double p_wt = 0.0;
    double score = 0.0;
    std::size_t candidate_count = 0;
    double millis = 0.0; // wall time spent completing this fragment
};

struct CompletedQuery {
    TranscribedQuery query; // word tokens only
    std::vector<FragmentCompletion> fragments;
    double completion_millis = 0.0;
};

// Replaces each OOV fragment independently with the argmax-scoring candidate
// (ties by higher p_wt, then lexicographically smaller surface); fragments
// with no candidates are deleted. Bigram winners expand to two word tokens.
CompletedQuery complete_query(const TranscribedQuery &q, const CompletionIndex &ci,
                              const InvertedIndex &index, const RankedList &first_stage,
                              const Config &cfg);

} // namespace oovr

#endif
