#ifndef OOVR_TESTS_SYNTH_HPP
#define OOVR_TESTS_SYNTH_HPP

// Deterministic synthetic collections for end-to-end tests. Each topic has
// three exclusive support words shared by its documents plus one or two rare
// topic words that appear twice in a single document each; queries ask for
// the support words and the rare words, and the rare-word documents are the
// relevant ones. Rare words are kept phonetically distant from every other
// word so completion has a unique right answer, and every non-rare word
// occurs at least three times so a top-K vocabulary cut puts exactly the
// rare words out of vocabulary.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oovr/corpus.hpp"
#include "oovr/harness.hpp"
#include "oovr/phonetics.hpp"

namespace synth {

struct Params {
    std::size_t n_docs = 500;
    std::size_t n_topics = 20; // one query per topic
    std::size_t docs_per_topic = 8;
    std::size_t n_filler = 120;
    std::size_t n_common = 12;
    std::uint64_t seed = 1;
};

struct Data {
    std::vector<oovr::RawDocument> docs;
    std::vector<oovr::RawDocument> queries;
    oovr::Qrels qrels;
    std::string qrels_text;
    std::uint32_t vocab_k = 0;           // exactly the non-rare distinct words
    std::vector<std::string> rare_words; // the intended OOV surfaces
};

namespace detail {

inline double unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t pick(std::mt19937_64 &rng, std::size_t n) {
    std::size_t i = static_cast<std::size_t>(unit(rng) * static_cast<double>(n));
    return i >= n ? n - 1 : i;
}

inline const std::vector<std::string> &syllable_units() {
    static const std::vector<std::string> units = [] {
        const std::string consonants[] = {"k", "s", "t", "n", "h", "m", "y",
                                          "r", "w", "g", "z", "d", "b", "p"};
        std::vector<std::string> out;
        for (const auto &c : consonants)
            for (char v : {'a', 'i', 'u', 'e', 'o'})
                out.push_back(c + std::string(1, v));
        return out;
    }();
    return units;
}

inline std::string rand_word(std::mt19937_64 &rng, std::size_t min_units,
                             std::size_t max_units) {
    const auto &units = syllable_units();
    std::size_t n = min_units + pick(rng, max_units - min_units + 1);
    std::string w;
    for (std::size_t i = 0; i < n; ++i)
        w += units[pick(rng, units.size())];
    return w;
}

inline bool isolated(const std::string &candidate, const std::vector<std::string> &others,
                     const oovr::Phonetizer &ph, double margin) {
    oovr::SyllableSeq c = ph.syllabify(candidate);
    for (const auto &o : others) {
        oovr::SyllableSeq os = ph.syllabify(o);
        if (oovr::similarity(c, os) >= margin || oovr::similarity(os, c) >= margin)
            return false;
    }
    return true;
}

template <typename T> void shuffle(std::vector<T> &v, std::mt19937_64 &rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[pick(rng, i)]);
}

} // namespace detail

inline Data make(const Params &p) {
    using namespace detail;
    std::mt19937_64 rng(p.seed);
    oovr::Phonetizer ph;

    std::vector<std::string> common, filler, all_words;
    std::vector<std::vector<std::string>> support(p.n_topics);
    const double margin = 0.35;

    auto fresh_word = [&](std::size_t lo, std::size_t hi) {
        for (;;) {
            std::string w = rand_word(rng, lo, hi);
            if (std::find(all_words.begin(), all_words.end(), w) == all_words.end()) {
                all_words.push_back(w);
                return w;
            }
        }
    };

    for (std::size_t i = 0; i < p.n_common; ++i)
        common.push_back(fresh_word(2, 3));
    for (std::size_t t = 0; t < p.n_topics; ++t)
        for (std::size_t s = 0; s < 3; ++s)
            support[t].push_back(fresh_word(3, 4));
    for (std::size_t i = 0; i < p.n_filler; ++i)
        filler.push_back(fresh_word(3, 5));

    // rare words: phonetically isolated from everything, including each other
    std::vector<std::vector<std::string>> rare(p.n_topics);
    std::vector<std::string> rare_flat;
    for (std::size_t t = 0; t < p.n_topics; ++t) {
        std::size_t n_rare = (t % 3 == 0) ? 2 : 1;
        for (std::size_t r = 0; r < n_rare; ++r) {
            for (;;) {
                std::string w = rand_word(rng, 4, 5);
                if (std::find(all_words.begin(), all_words.end(), w) != all_words.end())
                    continue;
                if (!isolated(w, all_words, ph, margin))
                    continue;
                all_words.push_back(w);
                rare[t].push_back(w);
                rare_flat.push_back(w);
                break;
            }
        }
    }

    struct ProtoDoc {
        std::vector<std::string> tokens;
        long relevant_for = -1; // topic whose query this doc answers
    };
    std::vector<ProtoDoc> protos;

    for (std::size_t t = 0; t < p.n_topics; ++t) {
        for (std::size_t j = 0; j < p.docs_per_topic; ++j) {
            ProtoDoc d;
            for (const auto &s : support[t])
                for (std::size_t r = 0; r < 1 + pick(rng, 3); ++r)
                    d.tokens.push_back(s);
            std::size_t n_fill = 4 + pick(rng, 4);
            for (std::size_t f = 0; f < n_fill; ++f)
                d.tokens.push_back(filler[pick(rng, filler.size())]);
            d.tokens.push_back(common[pick(rng, common.size())]);
            d.tokens.push_back(common[pick(rng, common.size())]);
            shuffle(d.tokens, rng);

            if (j < rare[t].size()) {
                // this doc carries the j-th rare word, twice, with four
                // distinct neighbors so no bigram repeats
                std::set<std::size_t> chosen;
                while (chosen.size() < 4)
                    chosen.insert(pick(rng, filler.size()));
                std::vector<std::string> wrap;
                for (auto idx : chosen)
                    wrap.push_back(filler[idx]);
                std::vector<std::string> tokens;
                tokens.push_back(wrap[0]);
                tokens.push_back(rare[t][j]);
                tokens.push_back(wrap[1]);
                tokens.insert(tokens.end(), d.tokens.begin(), d.tokens.end());
                tokens.push_back(wrap[2]);
                tokens.push_back(rare[t][j]);
                tokens.push_back(wrap[3]);
                d.tokens = std::move(tokens);
                d.relevant_for = static_cast<long>(t);
            }
            protos.push_back(std::move(d));
        }
    }

    std::size_t n_background = p.n_docs - protos.size();
    for (std::size_t i = 0; i < n_background; ++i) {
        ProtoDoc d;
        std::size_t n_fill = 8 + pick(rng, 18);
        for (std::size_t f = 0; f < n_fill; ++f)
            d.tokens.push_back(filler[pick(rng, filler.size())]);
        for (std::size_t c = 0; c < 1 + pick(rng, 3); ++c)
            d.tokens.push_back(common[pick(rng, common.size())]);
        shuffle(d.tokens, rng);
        protos.push_back(std::move(d));
    }

    // guarantee every non-rare word outranks the rare words (frequency >= 3)
    std::map<std::string, std::size_t> freq;
    for (const auto &d : protos)
        for (const auto &tok : d.tokens)
            ++freq[tok];
    std::set<std::string> rare_set(rare_flat.begin(), rare_flat.end());
    ProtoDoc &patch = protos[p.n_topics * p.docs_per_topic]; // first background doc
    for (const auto &w : all_words) {
        if (rare_set.count(w))
            continue;
        std::size_t have = freq.count(w) ? freq[w] : 0;
        for (std::size_t i = have; i < 3; ++i)
            patch.tokens.push_back(w);
    }

    shuffle(protos, rng);

    Data out;
    out.rare_words = rare_flat;
    std::vector<std::vector<std::string>> relevant_ids(p.n_topics);
    for (std::size_t i = 0; i < protos.size(); ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "d%05zu", i + 1);
        std::string text;
        for (std::size_t k = 0; k < protos[i].tokens.size(); ++k) {
            if (k)
                text += ' ';
            text += protos[i].tokens[k];
        }
        out.docs.push_back(oovr::RawDocument{id, text});
        if (protos[i].relevant_for >= 0)
            relevant_ids[static_cast<std::size_t>(protos[i].relevant_for)].push_back(id);
    }

    for (std::size_t t = 0; t < p.n_topics; ++t) {
        char qid[16];
        std::snprintf(qid, sizeof(qid), "q%03zu", t + 1);
        std::string text = support[t][0] + " " + support[t][1] + " " + support[t][2];
        for (const auto &r : rare[t])
            text += " " + r;
        out.queries.push_back(oovr::RawDocument{qid, text});
        for (const auto &doc_id : relevant_ids[t]) {
            out.qrels.relevant[qid].insert(doc_id);
            out.qrels_text += std::string(qid) + " 0 " + doc_id + " 1\n";
        }
    }

    std::size_t non_rare = 0;
    for (const auto &[w, f] : freq)
        (void)f, ++non_rare;
    // freq was counted before patching; recount distinct over final docs
    std::set<std::string> distinct;
    for (const auto &d : protos)
        for (const auto &tok : d.tokens)
            distinct.insert(tok);
    std::size_t rare_in_corpus = 0;
    for (const auto &w : distinct)
        if (rare_set.count(w))
            ++rare_in_corpus;
    out.vocab_k = static_cast<std::uint32_t>(distinct.size() - rare_in_corpus);
    return out;
}

} // namespace synth

#endif
