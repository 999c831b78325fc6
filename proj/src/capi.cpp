#include "oovr.h"

#include <cstring>
#include <exception>
#include <string>

#include "oovr/asr_sim.hpp"
#include "oovr/completion.hpp"
#include "oovr/config.hpp"
#include "oovr/corpus.hpp"
#include "oovr/errors.hpp"
#include "oovr/harness.hpp"
#include "oovr/phonetics.hpp"
#include "oovr/retrieval.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string &msg) {
    g_last_error = msg;
    return code;
}

// Runs the body and maps exceptions onto error codes.
template <typename Fn> int guarded(Fn &&fn) {
    try {
        fn();
        return OOVR_OK;
    } catch (const oovr::UsageError &e) {
        return fail(OOVR_E_USAGE, e.what());
    } catch (const oovr::DataError &e) {
        return fail(OOVR_E_DATA, e.what());
    } catch (const std::exception &e) {
        return fail(OOVR_E_DATA, e.what());
    }
}

int require(bool ok, const char *what) {
    if (!ok)
        return fail(OOVR_E_USAGE, std::string("missing required argument: ") + what);
    return OOVR_OK;
}

oovr::Config load_cfg(const char *config_path) {
    return config_path ? oovr::load_config(config_path) : oovr::Config{};
}

oovr::StopList load_stop(const char *stoplist_path) {
    return stoplist_path ? oovr::StopList::load(stoplist_path) : oovr::StopList{};
}

oovr::Phonetizer load_phonetizer(const char *lexicon_path) {
    oovr::Phonetizer ph;
    if (lexicon_path)
        ph.load_lexicon(lexicon_path);
    return ph;
}

char *dup_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct oovr_index {
    oovr::InvertedIndex impl;
};

struct oovr_hits {
    oovr::RankedList list;
};

extern "C" {

const char *oovr_version(void) { return "0.1.0"; }

const char *oovr_last_error(void) { return g_last_error.c_str(); }

void oovr_string_free(char *s) { delete[] s; }

int oovr_build_index(const char *corpus_jsonl, const char *stoplist_path,
                     const char *out_path) {
    if (int rc = require(corpus_jsonl, "corpus"); rc)
        return rc;
    if (int rc = require(out_path, "out"); rc)
        return rc;
    return guarded([&] {
        auto docs = oovr::ingest(corpus_jsonl);
        auto tokenized = oovr::tokenize_all(docs, load_stop(stoplist_path));
        oovr::InvertedIndex::build(tokenized).save(out_path);
    });
}

int oovr_build_completion_index(const char *corpus_jsonl, const char *stoplist_path,
                                const char *lexicon_path, const char *out_path) {
    if (int rc = require(corpus_jsonl, "corpus"); rc)
        return rc;
    if (int rc = require(out_path, "out"); rc)
        return rc;
    return guarded([&] {
        auto docs = oovr::ingest(corpus_jsonl);
        auto tokenized = oovr::tokenize_all(docs, load_stop(stoplist_path));
        oovr::CompletionIndex::build(tokenized, load_phonetizer(lexicon_path)).save(out_path);
    });
}

int oovr_build_vocab(const char *corpus_jsonl, const char *stoplist_path,
                     const char *lexicon_path, long k, const char *out_path) {
    if (int rc = require(corpus_jsonl, "corpus"); rc)
        return rc;
    if (int rc = require(out_path, "out"); rc)
        return rc;
    if (k < 1)
        return fail(OOVR_E_USAGE, "k must be >= 1");
    return guarded([&] {
        auto stop = load_stop(stoplist_path);
        auto docs = oovr::ingest(corpus_jsonl);
        auto tokenized = oovr::tokenize_all(docs, stop);
        oovr::build_vocabulary(tokenized, static_cast<std::uint32_t>(k),
                               load_phonetizer(lexicon_path), stop)
            .save(out_path);
    });
}

int oovr_simulate_queries(const char *queries_jsonl, const char *vocab_path,
                          const char *config_path, const char *lexicon_path,
                          const char *out_path) {
    if (int rc = require(queries_jsonl, "queries"); rc)
        return rc;
    if (int rc = require(vocab_path, "vocab"); rc)
        return rc;
    if (int rc = require(out_path, "out"); rc)
        return rc;
    return guarded([&] {
        auto cfg = load_cfg(config_path);
        auto vocab = oovr::VocabularyModel::load(vocab_path);
        auto ph = load_phonetizer(lexicon_path);
        auto noise = oovr::NoiseConfig::from(cfg);
        auto queries = oovr::ingest(queries_jsonl);
        std::vector<oovr::TranscribedQuery> out;
        out.reserve(queries.size());
        for (std::size_t i = 0; i < queries.size(); ++i)
            out.push_back(
                oovr::transcribe(queries[i].id, queries[i].text, vocab, noise, ph, i));
        oovr::save_transcribed(out_path, out);
    });
}

int oovr_index_open(const char *path, oovr_index **out) {
    if (int rc = require(path, "index path"); rc)
        return rc;
    if (int rc = require(out, "output handle"); rc)
        return rc;
    return guarded([&] { *out = new oovr_index{oovr::InvertedIndex::load(path)}; });
}

void oovr_index_close(oovr_index *index) { delete index; }

long oovr_index_doc_count(const oovr_index *index) {
    return index ? static_cast<long>(index->impl.doc_count()) : 0;
}

int oovr_index_search(const oovr_index *index, const char *query_text, long k,
                      const char *config_path, oovr_hits **out) {
    if (!index || !query_text || !out)
        return fail(OOVR_E_USAGE, "index, query text and output handle are required");
    if (k < 1)
        return fail(OOVR_E_USAGE, "k must be >= 1");
    return guarded([&] {
        auto cfg = load_cfg(config_path);
        auto terms = oovr::tokenize_text(query_text, oovr::StopList{});
        *out = new oovr_hits{index->impl.search(terms, static_cast<std::size_t>(k), cfg)};
    });
}

long oovr_hits_count(const oovr_hits *hits) {
    return hits ? static_cast<long>(hits->list.size()) : 0;
}

const char *oovr_hits_doc(const oovr_hits *hits, long i) {
    if (!hits || i < 0 || i >= static_cast<long>(hits->list.size()))
        return nullptr;
    return hits->list.entries[static_cast<std::size_t>(i)].doc_id.c_str();
}

double oovr_hits_score(const oovr_hits *hits, long i) {
    if (!hits || i < 0 || i >= static_cast<long>(hits->list.size()))
        return 0.0;
    return hits->list.entries[static_cast<std::size_t>(i)].score;
}

void oovr_hits_free(oovr_hits *hits) { delete hits; }

int oovr_run_experiment(int method, const char *corpus_jsonl, const char *queries_jsonl,
                        const char *stoplist_path, const char *lexicon_path,
                        const char *config_path, const char *run_out,
                        const char *report_out) {
    if (int rc = require(corpus_jsonl, "corpus"); rc)
        return rc;
    if (int rc = require(queries_jsonl, "queries"); rc)
        return rc;
    if (int rc = require(run_out, "run output"); rc)
        return rc;
    if (method < 1 || method > 4)
        return fail(OOVR_E_USAGE, "method must be 1..4");
    return guarded([&] {
        auto cfg = load_cfg(config_path);
        auto stop = load_stop(stoplist_path);
        auto ph = load_phonetizer(lexicon_path);
        auto corpus = oovr::tokenize_all(oovr::ingest(corpus_jsonl), stop);
        auto queries = oovr::ingest(queries_jsonl);
        auto result = oovr::run_experiment(queries, corpus, stop, ph, method, cfg);
        oovr::save_run(run_out, result.runs, "m" + std::to_string(method));
        if (report_out)
            oovr::save_reports(report_out, result.reports);
    });
}

int oovr_evaluate(const char *run_path, const char *qrels_path, const char *report_path,
                  int as_json, char **out_text) {
    if (int rc = require(run_path, "run"); rc)
        return rc;
    if (int rc = require(qrels_path, "qrels"); rc)
        return rc;
    if (int rc = require(out_text, "output handle"); rc)
        return rc;
    return guarded([&] {
        auto runs = oovr::load_run(run_path);
        auto qrels = oovr::Qrels::load(qrels_path);
        std::vector<oovr::QueryReport> reports;
        if (report_path)
            reports = oovr::load_reports(report_path);
        auto result = oovr::evaluate(runs, qrels, report_path ? &reports : nullptr);
        *out_text = dup_string(as_json ? oovr::format_eval_jsonl(result)
                                       : oovr::format_eval_text(result));
    });
}

} // extern "C"
