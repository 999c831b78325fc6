#include "oovr/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "oovr/errors.hpp"

namespace oovr {

StopList::StopList(std::vector<std::string> entries) {
    for (auto &e : entries)
        entries_.insert(std::move(e));
}

std::vector<std::string> StopList::sorted_entries() const {
    std::vector<std::string> out(entries_.begin(), entries_.end());
    std::sort(out.begin(), out.end());
    return out;
}

StopList StopList::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open stoplist file: " + path);
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (!line.empty())
            entries.push_back(line);
    }
    return StopList(std::move(entries));
}

std::vector<RawDocument> ingest_stream(std::istream &in) {
    std::vector<RawDocument> docs;
    std::unordered_set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw DataError("line " + std::to_string(lineno) + ": malformed JSON");
        if (!j.contains("id") || !j["id"].is_string())
            throw DataError("line " + std::to_string(lineno) + ": missing field id");
        if (!j.contains("text") || !j["text"].is_string())
            throw DataError("line " + std::to_string(lineno) + ": missing field text");
        RawDocument doc{j["id"].get<std::string>(), j["text"].get<std::string>()};
        if (!seen.insert(doc.id).second)
            throw DataError("line " + std::to_string(lineno) + ": duplicate id \"" + doc.id +
                            "\"");
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<RawDocument> ingest(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open corpus file: " + path);
    return ingest_stream(in);
}

void write_corpus(std::ostream &out, const std::vector<RawDocument> &docs) {
    for (const auto &d : docs)
        out << nlohmann::json{{"id", d.id}, {"text", d.text}}.dump() << "\n";
}

void save_corpus(const std::string &path, const std::vector<RawDocument> &docs) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write corpus file: " + path);
    write_corpus(out, docs);
}

namespace {

// Token characters: ASCII alphanumerics plus any non-ASCII byte, so UTF-8
// sequences are kept intact. Everything else separates tokens.
inline bool is_token_char(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

} // namespace

std::vector<std::string> tokenize_text(const std::string &text, const StopList &stop) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            if (!stop.contains(cur))
                tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty() && !stop.contains(cur))
        tokens.push_back(cur);
    return tokens;
}

TokenizedDocument tokenize(const RawDocument &doc, const StopList &stop) {
    return TokenizedDocument{doc.id, tokenize_text(doc.text, stop)};
}

std::vector<TokenizedDocument> tokenize_all(const std::vector<RawDocument> &docs,
                                            const StopList &stop) {
    std::vector<TokenizedDocument> out;
    out.reserve(docs.size());
    for (const auto &d : docs)
        out.push_back(tokenize(d, stop));
    return out;
}

} // namespace oovr
