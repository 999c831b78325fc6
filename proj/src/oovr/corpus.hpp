#ifndef OOVR_CORPUS_HPP
#define OOVR_CORPUS_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

namespace oovr {

struct RawDocument {
    std::string id;
    std::string text;
};

struct TokenizedDocument {
    std::string id;
    std::vector<std::string> tokens; // lowercase surfaces, stoplist entries removed
    std::size_t length() const { return tokens.size(); }
};

class StopList {
  public:
    StopList() = default;
    explicit StopList(std::vector<std::string> entries);
    // One lowercase entry per line; blank lines ignored.
    static StopList load(const std::string &path);
    bool contains(const std::string &token) const { return entries_.count(token) != 0; }
    std::size_t size() const { return entries_.size(); }
    std::vector<std::string> sorted_entries() const;

  private:
    std::unordered_set<std::string> entries_;
};

// Reads a UTF-8 JSON-lines corpus, one {"id":..., "text":...} object per line.
// Malformed lines and duplicate ids raise DataError naming the offender.
std::vector<RawDocument> ingest(const std::string &path);
std::vector<RawDocument> ingest_stream(std::istream &in);

// Canonical JSON-lines form; ingest(write_corpus(docs)) round-trips.
void write_corpus(std::ostream &out, const std::vector<RawDocument> &docs);
void save_corpus(const std::string &path, const std::vector<RawDocument> &docs);

// Splits on whitespace/punctuation, lowercases, drops stoplist entries.
std::vector<std::string> tokenize_text(const std::string &text, const StopList &stop);
TokenizedDocument tokenize(const RawDocument &doc, const StopList &stop);
std::vector<TokenizedDocument> tokenize_all(const std::vector<RawDocument> &docs,
                                            const StopList &stop);

} // namespace oovr

#endif
