#include "oovr/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "oovr/bytes.hpp"
#include "oovr/errors.hpp"

namespace oovr {

namespace {
constexpr char kMagic[] = "OOVRIDX";
constexpr std::uint32_t kVersion = 1;
} // namespace

InvertedIndex InvertedIndex::build(const std::vector<TokenizedDocument> &docs) {
    if (docs.empty())
        throw DataError("build_index: empty collection");
    InvertedIndex idx;
    idx.doc_ids_.reserve(docs.size());
    idx.doc_len_.reserve(docs.size());
    for (const auto &doc : docs) {
        if (!idx.doc_ord_.emplace(doc.id, static_cast<std::uint32_t>(idx.doc_ids_.size()))
                 .second)
            throw DataError("build_index: duplicate doc id \"" + doc.id + "\"");
        std::uint32_t ord = static_cast<std::uint32_t>(idx.doc_ids_.size());
        idx.doc_ids_.push_back(doc.id);
        idx.doc_len_.push_back(static_cast<std::uint32_t>(doc.tokens.size()));
        std::map<std::string, std::uint32_t> tf;
        for (const auto &tok : doc.tokens)
            ++tf[tok];
        for (const auto &[term, f] : tf)
            idx.postings_[term].push_back(Posting{ord, f});
    }
    idx.finish();
    return idx;
}

void InvertedIndex::finish() {
    std::uint64_t total = 0;
    for (auto len : doc_len_)
        total += len;
    avg_doc_len_ = doc_ids_.empty() ? 0.0
                                    : static_cast<double>(total) /
                                          static_cast<double>(doc_ids_.size());
}

std::uint32_t InvertedIndex::doc_ordinal(const std::string &doc_id) const {
    auto it = doc_ord_.find(doc_id);
    if (it == doc_ord_.end())
        throw DataError("unknown doc id \"" + doc_id + "\"");
    return it->second;
}

std::size_t InvertedIndex::df(const std::string &term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : it->second.size();
}

const std::vector<Posting> *InvertedIndex::postings(const std::string &term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
}

std::uint32_t InvertedIndex::term_freq(const std::string &term, std::uint32_t doc_ord) const {
    const auto *plist = postings(term);
    if (!plist)
        return 0;
    auto it = std::lower_bound(plist->begin(), plist->end(), doc_ord,
                               [](const Posting &p, std::uint32_t d) { return p.doc < d; });
    return (it != plist->end() && it->doc == doc_ord) ? it->tf : 0;
}

RankedList InvertedIndex::search(const std::vector<std::string> &terms, std::size_t k,
                                 const Config &cfg) const {
    if (k < 1)
        throw UsageError("search: k must be >= 1");
    // qtf per distinct term; sorted so score accumulation order is a function
    // of the term multiset alone
    std::map<std::string, std::uint32_t> qtf;
    for (const auto &t : terms)
        ++qtf[t];

    const double n_docs = static_cast<double>(doc_count());
    std::vector<double> scores(doc_count(), 0.0);
    for (const auto &[term, q] : qtf) {
        const auto *plist = postings(term);
        if (!plist)
            continue; // unknown terms contribute 0
        const double dft = static_cast<double>(plist->size());
        const double idf = std::max(0.0, std::log((n_docs - dft + 0.5) / (dft + 0.5)));
        if (idf == 0.0)
            continue;
        for (const Posting &p : *plist) {
            const double tf = static_cast<double>(p.tf);
            const double dl = static_cast<double>(doc_len_[p.doc]);
            const double denom = tf + cfg.k1 * (1.0 - cfg.b + cfg.b * dl / avg_doc_len_);
            scores[p.doc] += static_cast<double>(q) * idf * tf * (cfg.k1 + 1.0) / denom;
        }
    }

    std::vector<std::uint32_t> hit;
    for (std::uint32_t d = 0; d < doc_count(); ++d)
        if (scores[d] > 0.0)
            hit.push_back(d);
    std::sort(hit.begin(), hit.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (scores[a] != scores[b])
            return scores[a] > scores[b];
        return doc_ids_[a] < doc_ids_[b];
    });
    if (hit.size() > k)
        hit.resize(k);

    RankedList out;
    out.entries.reserve(hit.size());
    for (auto d : hit)
        out.entries.push_back(ScoredDoc{doc_ids_[d], scores[d]});
    return out;
}

double InvertedIndex::rel_term_freq(const std::string &term, const std::string &doc_id) const {
    std::uint32_t ord = doc_ordinal(doc_id);
    std::uint32_t tf = term_freq(term, ord);
    if (tf == 0)
        return 0.0;
    return static_cast<double>(tf) / static_cast<double>(doc_len_[ord]);
}

void InvertedIndex::save(std::ostream &out) const {
    out.write(kMagic, sizeof(kMagic) - 1);
    put_u32(out, kVersion);
    put_u64(out, doc_ids_.size());
    for (std::size_t d = 0; d < doc_ids_.size(); ++d) {
        put_str(out, doc_ids_[d]);
        put_u32(out, doc_len_[d]);
    }
    // terms in lexicographic order so rebuilds serialize identically
    std::vector<const std::string *> terms;
    terms.reserve(postings_.size());
    for (const auto &kv : postings_)
        terms.push_back(&kv.first);
    std::sort(terms.begin(), terms.end(),
              [](const std::string *a, const std::string *b) { return *a < *b; });
    put_u64(out, terms.size());
    for (const auto *term : terms) {
        put_str(out, *term);
        const auto &plist = postings_.at(*term);
        put_u64(out, plist.size());
        for (const Posting &p : plist) {
            put_u32(out, p.doc);
            put_u32(out, p.tf);
        }
    }
}

void InvertedIndex::save(const std::string &path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write index file: " + path);
    save(out);
    if (!out)
        throw DataError("failed writing index file: " + path);
}

InvertedIndex InvertedIndex::load(std::istream &in) {
    char magic[sizeof(kMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::string(magic, sizeof(magic)) != kMagic)
        throw DataError("not an index file (bad magic)");
    std::uint32_t version = get_u32(in);
    if (version != kVersion)
        throw DataError("unsupported index version " + std::to_string(version));
    InvertedIndex idx;
    std::uint64_t n_docs = get_u64(in);
    idx.doc_ids_.reserve(n_docs);
    idx.doc_len_.reserve(n_docs);
    for (std::uint64_t d = 0; d < n_docs; ++d) {
        std::string id = get_str(in);
        std::uint32_t len = get_u32(in);
        idx.doc_ord_.emplace(id, static_cast<std::uint32_t>(d));
        idx.doc_ids_.push_back(std::move(id));
        idx.doc_len_.push_back(len);
    }
    std::uint64_t n_terms = get_u64(in);
    for (std::uint64_t t = 0; t < n_terms; ++t) {
        std::string term = get_str(in);
        std::uint64_t n_post = get_u64(in);
        std::vector<Posting> plist;
        plist.reserve(n_post);
        for (std::uint64_t p = 0; p < n_post; ++p) {
            std::uint32_t doc = get_u32(in);
            std::uint32_t tf = get_u32(in);
            if (doc >= n_docs || tf == 0)
                throw DataError("corrupt index: bad posting for term \"" + term + "\"");
            plist.push_back(Posting{doc, tf});
        }
        idx.postings_.emplace(std::move(term), std::move(plist));
    }
    idx.finish();
    return idx;
}

InvertedIndex InvertedIndex::load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open index file: " + path);
    return load(in);
}

} // namespace oovr
