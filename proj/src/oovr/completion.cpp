#include "oovr/completion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "oovr/bytes.hpp"
#include "oovr/errors.hpp"

namespace oovr {

namespace {
constexpr char kMagic[] = "OOVRCID";
constexpr std::uint32_t kVersion = 1;
} // namespace

std::uint32_t CompletionIndex::intern_entry(
    const std::string &surface, const Phonetizer &ph,
    std::unordered_map<std::string, SyllableSeq> &phon_cache) {
    auto it = entry_by_surface_.find(surface);
    if (it != entry_by_surface_.end())
        return it->second;

    SyllableSeq phon;
    std::size_t sp = surface.find(' ');
    if (sp == std::string::npos) {
        auto pc = phon_cache.find(surface);
        if (pc == phon_cache.end())
            pc = phon_cache.emplace(surface, ph.syllabify(surface)).first;
        phon = pc->second;
    } else {
        // bigram: concatenated phonetic forms of both words
        for (const std::string &word : {surface.substr(0, sp), surface.substr(sp + 1)}) {
            auto pc = phon_cache.find(word);
            if (pc == phon_cache.end())
                pc = phon_cache.emplace(word, ph.syllabify(word)).first;
            phon.syllables.insert(phon.syllables.end(), pc->second.syllables.begin(),
                                  pc->second.syllables.end());
        }
    }

    std::uint32_t id = static_cast<std::uint32_t>(entries_.size());
    entry_by_surface_.emplace(surface, id);
    entries_.push_back(CompletionEntry{surface, phon, {}});
    insert_trie(fwd_, phon.syllables, id);
    std::vector<Syllable> rev(phon.syllables.rbegin(), phon.syllables.rend());
    insert_trie(bwd_, rev, id);
    return id;
}

void CompletionIndex::insert_trie(std::vector<TrieNode> &nodes,
                                  const std::vector<Syllable> &symbols,
                                  std::uint32_t entry_id) {
    std::uint32_t node = 0;
    for (const auto &sym : symbols) {
        auto it = nodes[node].children.find(sym);
        if (it == nodes[node].children.end()) {
            std::uint32_t next = static_cast<std::uint32_t>(nodes.size());
            nodes[node].children.emplace(sym, next);
            nodes.emplace_back();
            node = next;
        } else {
            node = it->second;
        }
    }
    nodes[node].terminals.push_back(entry_id);
}

void CompletionIndex::add_occurrence(std::uint32_t entry_id, std::uint32_t doc_ord) {
    auto &occ = entries_[entry_id].occurrences;
    if (!occ.empty() && occ.back().doc == doc_ord)
        ++occ.back().count;
    else
        occ.push_back(Occurrence{doc_ord, 1});
}

CompletionIndex CompletionIndex::build(const std::vector<TokenizedDocument> &docs,
                                       const Phonetizer &ph) {
    CompletionIndex ci;
    std::unordered_map<std::string, SyllableSeq> phon_cache;
    for (const auto &doc : docs) {
        std::uint32_t ord = static_cast<std::uint32_t>(ci.doc_ids_.size());
        ci.doc_ord_.emplace(doc.id, ord);
        ci.doc_ids_.push_back(doc.id);
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            ci.add_occurrence(ci.intern_entry(doc.tokens[i], ph, phon_cache), ord);
            if (i + 1 < doc.tokens.size())
                ci.add_occurrence(
                    ci.intern_entry(doc.tokens[i] + " " + doc.tokens[i + 1], ph, phon_cache),
                    ord);
        }
    }
    return ci;
}

std::vector<char> CompletionIndex::make_doc_set(const std::vector<std::string> &ids) const {
    std::vector<char> bits(doc_ids_.size(), 0);
    for (const auto &id : ids) {
        auto it = doc_ord_.find(id);
        if (it != doc_ord_.end())
            bits[it->second] = 1;
    }
    return bits;
}

std::int64_t CompletionIndex::find_doc(const std::string &doc_id) const {
    auto it = doc_ord_.find(doc_id);
    return it == doc_ord_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::vector<std::uint32_t> CompletionIndex::collect(const std::vector<TrieNode> &nodes,
                                                    std::uint32_t node) {
    std::vector<std::uint32_t> out;
    std::vector<std::uint32_t> stack{node};
    while (!stack.empty()) {
        std::uint32_t n = stack.back();
        stack.pop_back();
        out.insert(out.end(), nodes[n].terminals.begin(), nodes[n].terminals.end());
        for (const auto &[sym, child] : nodes[n].children)
            stack.push_back(child);
    }
    return out;
}

std::vector<std::uint32_t> CompletionIndex::prefix_matches(const SyllableSeq &w,
                                                           std::size_t p) const {
    if (p < 1 || p > w.len())
        throw UsageError("prefix_matches: p must be in [1, len(w)]");
    std::uint32_t node = 0;
    for (std::size_t i = 0; i < p; ++i) {
        auto it = fwd_[node].children.find(w[i]);
        if (it == fwd_[node].children.end())
            return {};
        node = it->second;
    }
    return collect(fwd_, node);
}

std::vector<std::uint32_t> CompletionIndex::suffix_matches(const SyllableSeq &w,
                                                           std::size_t p) const {
    if (p < 1 || p > w.len())
        throw UsageError("suffix_matches: p must be in [1, len(w)]");
    std::uint32_t node = 0;
    for (std::size_t i = 0; i < p; ++i) {
        auto it = bwd_[node].children.find(w[w.len() - 1 - i]);
        if (it == bwd_[node].children.end())
            return {};
        node = it->second;
    }
    return collect(bwd_, node);
}

void CompletionIndex::save(std::ostream &out) const {
    out.write(kMagic, sizeof(kMagic) - 1);
    put_u32(out, kVersion);
    put_u64(out, doc_ids_.size());
    for (const auto &id : doc_ids_)
        put_str(out, id);
    put_u64(out, entries_.size());
    for (const auto &e : entries_) {
        put_str(out, e.surface);
        put_u32(out, static_cast<std::uint32_t>(e.phon.len()));
        for (const auto &sym : e.phon.syllables)
            put_str(out, sym);
        put_u64(out, e.occurrences.size());
        for (const auto &occ : e.occurrences) {
            put_u32(out, occ.doc);
            put_u32(out, occ.count);
        }
    }
}

void CompletionIndex::save(const std::string &path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write completion index file: " + path);
    save(out);
    if (!out)
        throw DataError("failed writing completion index file: " + path);
}

CompletionIndex CompletionIndex::load(std::istream &in) {
    char magic[sizeof(kMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::string(magic, sizeof(magic)) != kMagic)
        throw DataError("not a completion index file (bad magic)");
    std::uint32_t version = get_u32(in);
    if (version != kVersion)
        throw DataError("unsupported completion index version " + std::to_string(version));

    CompletionIndex ci;
    std::uint64_t n_docs = get_u64(in);
    ci.doc_ids_.reserve(n_docs);
    for (std::uint64_t d = 0; d < n_docs; ++d) {
        std::string id = get_str(in);
        ci.doc_ord_.emplace(id, static_cast<std::uint32_t>(d));
        ci.doc_ids_.push_back(std::move(id));
    }
    std::uint64_t n_entries = get_u64(in);
    ci.entries_.reserve(n_entries);
    for (std::uint64_t e = 0; e < n_entries; ++e) {
        CompletionEntry entry;
        entry.surface = get_str(in);
        std::uint32_t n_syl = get_u32(in);
        entry.phon.syllables.reserve(n_syl);
        for (std::uint32_t s = 0; s < n_syl; ++s)
            entry.phon.syllables.push_back(get_str(in));
        std::uint64_t n_occ = get_u64(in);
        entry.occurrences.reserve(n_occ);
        for (std::uint64_t o = 0; o < n_occ; ++o) {
            std::uint32_t doc = get_u32(in);
            std::uint32_t count = get_u32(in);
            if (doc >= n_docs || count == 0)
                throw DataError("corrupt completion index: bad occurrence for \"" +
                                entry.surface + "\"");
            entry.occurrences.push_back(Occurrence{doc, count});
        }
        std::uint32_t id = static_cast<std::uint32_t>(ci.entries_.size());
        ci.entry_by_surface_.emplace(entry.surface, id);
        ci.insert_trie(ci.fwd_, entry.phon.syllables, id);
        std::vector<Syllable> rev(entry.phon.syllables.rbegin(), entry.phon.syllables.rend());
        ci.insert_trie(ci.bwd_, rev, id);
        ci.entries_.push_back(std::move(entry));
    }
    return ci;
}

CompletionIndex CompletionIndex::load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open completion index file: " + path);
    return load(in);
}

std::vector<Candidate> generate_candidates(const CompletionIndex &ci, const SyllableSeq &w,
                                           const std::vector<char> &dq, double theta,
                                           std::uint32_t L) {
    if (w.empty())
        throw UsageError("generate_candidates: len(w) must be >= 1");
    if (theta < 0.0 || theta > 1.0)
        throw UsageError("generate_candidates: theta must be in [0,1]");
    if (L < 1)
        throw UsageError("generate_candidates: L must be >= 1");

    std::size_t p = std::min<std::size_t>(L, w.len());
    std::vector<std::uint32_t> ids = ci.prefix_matches(w, p);
    std::vector<std::uint32_t> sfx = ci.suffix_matches(w, p);
    ids.insert(ids.end(), sfx.begin(), sfx.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<Candidate> out;
    for (std::uint32_t id : ids) {
        const CompletionEntry &e = ci.entry(id);
        bool in_dq = false;
        for (const auto &occ : e.occurrences) {
            if (occ.doc < dq.size() && dq[occ.doc]) {
                in_dq = true;
                break;
            }
        }
        if (!in_dq)
            continue;
        double p_wt = similarity(w, e.phon);
        if (p_wt >= theta)
            out.push_back(Candidate{e.surface, e.phon, p_wt, 0.0, id});
    }
    std::sort(out.begin(), out.end(),
              [](const Candidate &a, const Candidate &b) { return a.surface < b.surface; });
    return out;
}

DqScores DqScores::make(const CompletionIndex &ci, const RankedList &first_stage) {
    DqScores dq;
    dq.score.assign(ci.doc_ids().size(), -1.0);
    for (const auto &sd : first_stage.entries) {
        std::int64_t ord = ci.find_doc(sd.doc_id);
        if (ord >= 0)
            dq.score[static_cast<std::size_t>(ord)] = sd.score;
    }
    return dq;
}

double score_candidate(const CompletionIndex &ci, const Candidate &cand,
                       const InvertedIndex &index, const DqScores &dq, const Config &cfg) {
    const CompletionEntry &e = ci.entry(cand.entry_id);
    const bool bigram = e.is_bigram();
    double sum = 0.0;
    std::size_t n_docs = 0;
    for (const auto &occ : e.occurrences) {
        if (occ.doc >= dq.score.size() || !dq.contains(occ.doc))
            continue;
        const std::string &doc_id = ci.doc_ids()[occ.doc];
        double dl = static_cast<double>(index.doc_len(index.doc_ordinal(doc_id)));
        double denom = bigram ? dl - 1.0 : dl;
        double p_td = static_cast<double>(occ.count) / denom;
        double p_dq = std::max(dq.score[occ.doc], cfg.epsilon);
        sum += cand.p_wt * std::log(p_td * p_dq);
        ++n_docs;
    }
    if (n_docs == 0)
        throw UsageError("score_candidate: candidate \"" + cand.surface +
                         "\" occurs in no D_q document");
    if (cfg.score_mode == ScoreMode::Average)
        return sum / static_cast<double>(n_docs);
    return sum;
}

double score_candidate(const CompletionIndex &ci, const Candidate &cand,
                       const InvertedIndex &index, const RankedList &first_stage,
                       const Config &cfg) {
    return score_candidate(ci, cand, index, DqScores::make(ci, first_stage), cfg);
}

CompletedQuery complete_query(const TranscribedQuery &q, const CompletionIndex &ci,
                              const InvertedIndex &index, const RankedList &first_stage,
                              const Config &cfg) {
    std::vector<std::string> dq_ids;
    dq_ids.reserve(first_stage.size());
    for (const auto &sd : first_stage.entries)
        dq_ids.push_back(sd.doc_id);
    const std::vector<char> dq_bits = ci.make_doc_set(dq_ids);
    const DqScores dq = DqScores::make(ci, first_stage);

    CompletedQuery out;
    out.query.query_id = q.query_id;

    for (std::size_t pos = 0; pos < q.tokens.size(); ++pos) {
        const QueryToken &tok = q.tokens[pos];
        if (!tok.is_fragment()) {
            out.query.tokens.push_back(tok);
            continue;
        }

        auto t0 = std::chrono::steady_clock::now();
        FragmentCompletion fc;
        fc.position = pos;
        fc.fragment = tok.phon;

        std::vector<Candidate> cands;
        if (!tok.phon.empty())
            cands = generate_candidates(ci, tok.phon, dq_bits, cfg.theta, cfg.L);
        fc.candidate_count = cands.size();

        const Candidate *best = nullptr;
        for (auto &cand : cands) {
            cand.score = score_candidate(ci, cand, index, dq, cfg);
            if (!best || cand.score > best->score ||
                (cand.score == best->score &&
                 (cand.p_wt > best->p_wt ||
                  (cand.p_wt == best->p_wt && cand.surface < best->surface))))
                best = &cand;
        }

        if (best) {
            fc.completed = true;
            fc.replacement = best->surface;
            fc.p_wt = best->p_wt;
            fc.score = best->score;
            std::size_t sp = best->surface.find(' ');
            if (sp == std::string::npos) {
                out.query.tokens.push_back(QueryToken::word(best->surface));
            } else {
                out.query.tokens.push_back(QueryToken::word(best->surface.substr(0, sp)));
                out.query.tokens.push_back(QueryToken::word(best->surface.substr(sp + 1)));
            }
        }
        auto t1 = std::chrono::steady_clock::now();
        fc.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
        out.completion_millis += fc.millis;
        out.fragments.push_back(std::move(fc));
    }
    return out;
}

} // namespace oovr
