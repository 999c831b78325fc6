#include "oovr/asr_sim.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "oovr/errors.hpp"

namespace oovr {

std::vector<std::string> TranscribedQuery::word_surfaces() const {
    std::vector<std::string> out;
    for (const auto &t : tokens)
        if (t.kind == QueryToken::Kind::Word)
            out.push_back(t.surface);
    return out;
}

std::size_t TranscribedQuery::fragment_count() const {
    std::size_t n = 0;
    for (const auto &t : tokens)
        if (t.is_fragment())
            ++n;
    return n;
}

VocabularyModel build_vocabulary(const std::vector<TokenizedDocument> &docs, std::uint32_t K,
                                 const Phonetizer &ph, const StopList &stop) {
    if (K < 1)
        throw UsageError("build_vocabulary: K must be >= 1");
    std::map<std::string, std::uint64_t> freq;
    for (const auto &doc : docs)
        for (const auto &tok : doc.tokens)
            ++freq[tok];

    std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });

    VocabularyModel vm;
    vm.k = K;
    for (std::size_t i = 0; i < ranked.size() && i < K; ++i)
        vm.words.insert(ranked[i].first);

    std::set<std::string> inventory;
    for (const auto &[word, n] : freq) {
        SyllableSeq seq = ph.syllabify(word);
        inventory.insert(seq.syllables.begin(), seq.syllables.end());
    }
    vm.syllable_inventory.assign(inventory.begin(), inventory.end());

    vm.stop_entries = stop.sorted_entries();
    return vm;
}

VocabularyModel VocabularyModel::make_universal() {
    VocabularyModel vm;
    vm.universal = true;
    return vm;
}

void VocabularyModel::save(const std::string &path) const {
    std::vector<std::string> sorted_words(words.begin(), words.end());
    std::sort(sorted_words.begin(), sorted_words.end());
    nlohmann::json j;
    j["k"] = k;
    j["words"] = sorted_words;
    j["syllables"] = syllable_inventory;
    j["stoplist"] = stop_entries;
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write vocabulary file: " + path);
    out << j.dump() << "\n";
}

VocabularyModel VocabularyModel::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open vocabulary file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("k") || !j.contains("words") ||
        !j.contains("syllables") || !j.contains("stoplist"))
        throw DataError("malformed vocabulary file: " + path);
    VocabularyModel vm;
    vm.k = j["k"].get<std::uint32_t>();
    for (const auto &w : j["words"])
        vm.words.insert(w.get<std::string>());
    for (const auto &s : j["syllables"])
        vm.syllable_inventory.push_back(s.get<std::string>());
    for (const auto &s : j["stoplist"])
        vm.stop_entries.push_back(s.get<std::string>());
    return vm;
}

namespace {

// Platform-independent uniform draw in [0,1): 53 bits from mt19937_64.
inline double next_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline const std::string &pick(std::mt19937_64 &rng, const std::vector<std::string> &pool) {
    std::size_t i = static_cast<std::size_t>(next_unit(rng) * static_cast<double>(pool.size()));
    if (i >= pool.size())
        i = pool.size() - 1;
    return pool[i];
}

// Per-syllable noise events are mutually exclusive, drawn in order
// substitute / delete / insert-after from a single stream.
SyllableSeq apply_noise(const SyllableSeq &clean, const NoiseConfig &noise,
                        const std::vector<std::string> &inventory, std::mt19937_64 &rng) {
    SyllableSeq out;
    out.syllables.reserve(clean.len());
    for (const auto &syl : clean.syllables) {
        double u = next_unit(rng);
        if (u < noise.p_sub) {
            out.syllables.push_back(inventory.empty() ? syl : pick(rng, inventory));
        } else if (u < noise.p_sub + noise.p_del) {
            // dropped
        } else if (u < noise.p_sub + noise.p_del + noise.p_ins) {
            out.syllables.push_back(syl);
            if (!inventory.empty())
                out.syllables.push_back(pick(rng, inventory));
        } else {
            out.syllables.push_back(syl);
        }
    }
    return out;
}

} // namespace

TranscribedQuery transcribe(const std::string &query_id, const std::string &text,
                            const VocabularyModel &vocab, const NoiseConfig &noise,
                            const Phonetizer &ph, std::uint64_t ordinal) {
    std::mt19937_64 rng(noise.seed ^ ordinal);
    StopList stop = vocab.stoplist();
    std::vector<std::string> words = tokenize_text(text, stop);

    TranscribedQuery q;
    q.query_id = query_id;
    for (const auto &word : words) {
        std::size_t pos = q.tokens.size();
        if (vocab.contains(word)) {
            double u = next_unit(rng);
            if (u < noise.p_false_oov) {
                // mistaken detection: emitted as noiseless syllables
                q.tokens.push_back(QueryToken::fragment(ph.syllabify(word)));
                q.gold.push_back(GoldRecord{pos, word, false});
            } else {
                q.tokens.push_back(QueryToken::word(word));
            }
        } else {
            SyllableSeq noisy =
                apply_noise(ph.syllabify(word), noise, vocab.syllable_inventory, rng);
            q.tokens.push_back(QueryToken::fragment(std::move(noisy)));
            q.gold.push_back(GoldRecord{pos, word, true});
        }
    }
    return q;
}

void write_transcribed(std::ostream &out, const std::vector<TranscribedQuery> &queries) {
    for (const auto &q : queries) {
        nlohmann::json tokens = nlohmann::json::array();
        for (const auto &t : q.tokens) {
            if (t.is_fragment())
                tokens.push_back(nlohmann::json{{"oov", t.phon.syllables}});
            else
                tokens.push_back(t.surface);
        }
        nlohmann::json gold = nlohmann::json::array();
        for (const auto &g : q.gold)
            gold.push_back(nlohmann::json{
                {"pos", g.position}, {"surface", g.surface}, {"true_oov", g.true_oov}});
        nlohmann::json j{{"id", q.query_id}, {"tokens", tokens}, {"gold", gold}};
        out << j.dump() << "\n";
    }
}

std::vector<TranscribedQuery> read_transcribed(std::istream &in) {
    std::vector<TranscribedQuery> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("tokens"))
            throw DataError("transcribed queries line " + std::to_string(lineno) +
                            ": malformed record");
        TranscribedQuery q;
        q.query_id = j["id"].get<std::string>();
        for (const auto &t : j["tokens"]) {
            if (t.is_string()) {
                q.tokens.push_back(QueryToken::word(t.get<std::string>()));
            } else if (t.is_object() && t.contains("oov")) {
                SyllableSeq seq;
                for (const auto &s : t["oov"])
                    seq.syllables.push_back(s.get<std::string>());
                q.tokens.push_back(QueryToken::fragment(std::move(seq)));
            } else {
                throw DataError("transcribed queries line " + std::to_string(lineno) +
                                ": bad token");
            }
        }
        if (j.contains("gold"))
            for (const auto &g : j["gold"])
                q.gold.push_back(GoldRecord{g.at("pos").get<std::size_t>(),
                                            g.at("surface").get<std::string>(),
                                            g.at("true_oov").get<bool>()});
        out.push_back(std::move(q));
    }
    return out;
}

void save_transcribed(const std::string &path, const std::vector<TranscribedQuery> &queries) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write transcribed queries file: " + path);
    write_transcribed(out, queries);
}

std::vector<TranscribedQuery> load_transcribed(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open transcribed queries file: " + path);
    return read_transcribed(in);
}

} // namespace oovr
