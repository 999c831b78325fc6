#ifndef OOVR_RETRIEVAL_HPP
#define OOVR_RETRIEVAL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "oovr/config.hpp"
#include "oovr/corpus.hpp"

namespace oovr {

struct ScoredDoc {
    std::string doc_id;
    double score;
    bool operator==(const ScoredDoc &) const = default;
};

// Scores non-increasing, doc ids unique, ties broken by ascending doc id.
struct RankedList {
    std::vector<ScoredDoc> entries;
    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

struct Posting {
    std::uint32_t doc; // ordinal into doc_ids()
    std::uint32_t tf;  // >= 1
};

class InvertedIndex {
  public:
    // Requires unique doc ids and a non-empty collection.
    static InvertedIndex build(const std::vector<TokenizedDocument> &docs);

    std::size_t doc_count() const { return doc_ids_.size(); }
    double avg_doc_len() const { return avg_doc_len_; }
    const std::vector<std::string> &doc_ids() const { return doc_ids_; }
    const std::string &doc_id(std::uint32_t ord) const { return doc_ids_[ord]; }
    std::uint32_t doc_len(std::uint32_t ord) const { return doc_len_[ord]; }
    // Ordinal of a doc id; DataError if unknown.
    std::uint32_t doc_ordinal(const std::string &doc_id) const;
    bool has_doc(const std::string &doc_id) const { return doc_ord_.count(doc_id) != 0; }

    std::size_t df(const std::string &term) const;
    const std::vector<Posting> *postings(const std::string &term) const;
    std::uint32_t term_freq(const std::string &term, std::uint32_t doc_ord) const;

    // Okapi BM25 over a term multiset; zero-scoring documents are excluded,
    // ties broken by ascending doc id. k >= 1.
    RankedList search(const std::vector<std::string> &terms, std::size_t k,
                      const Config &cfg = Config{}) const;

    // Relative frequency tf(t,d) / doc_len(d); 0 for absent terms,
    // DataError for unknown documents.
    double rel_term_freq(const std::string &term, const std::string &doc_id) const;

    // Versioned little-endian binary format, documented in docs/file-formats.md.
    void save(const std::string &path) const;
    void save(std::ostream &out) const;
    static InvertedIndex load(const std::string &path);
    static InvertedIndex load(std::istream &in);

  private:
    std::vector<std::string> doc_ids_;
    std::vector<std::uint32_t> doc_len_;
    std::unordered_map<std::string, std::uint32_t> doc_ord_;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
    double avg_doc_len_ = 0.0;

    void finish();
};

} // namespace oovr

#endif
