// oovr command-line front end. Talks to the engine exclusively through the
// C API in oovr.h.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "oovr.h"

namespace {

int report(int rc) {
    if (rc != OOVR_OK)
        std::fprintf(stderr, "oovr: %s\n", oovr_last_error());
    return rc;
}

const char *opt(const std::string &s) { return s.empty() ? nullptr : s.c_str(); }

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"two-stage open-vocabulary retrieval engine"};
    app.require_subcommand(1);

    std::string corpus, stoplist, lexicon, config, out, vocab, queries, index_path;
    std::string run_path, report_path, qrels_path, query_text, tag;
    long k = 10;
    long vocab_k = 20000;
    int method = 4;
    bool as_json = false;

    auto *build_index = app.add_subcommand("build-index", "build the inverted index");
    build_index->add_option("--corpus", corpus, "JSON-lines corpus")->required();
    build_index->add_option("--stoplist", stoplist, "stoplist file");
    build_index->add_option("--out", out, "output index file")->required();

    auto *build_cindex =
        app.add_subcommand("build-completion-index", "build the partial-match index");
    build_cindex->add_option("--corpus", corpus, "JSON-lines corpus")->required();
    build_cindex->add_option("--stoplist", stoplist, "stoplist file");
    build_cindex->add_option("--lexicon", lexicon, "phonetic lexicon overrides");
    build_cindex->add_option("--out", out, "output completion index file")->required();

    auto *build_vocab = app.add_subcommand("build-vocab", "build the recognizer vocabulary");
    build_vocab->add_option("--corpus", corpus, "JSON-lines corpus")->required();
    build_vocab->add_option("--stoplist", stoplist, "stoplist file");
    build_vocab->add_option("--lexicon", lexicon, "phonetic lexicon overrides");
    build_vocab->add_option("-k,--size", vocab_k, "vocabulary size K")->required();
    build_vocab->add_option("--out", out, "output vocabulary file")->required();

    auto *simulate = app.add_subcommand("simulate-queries",
                                        "transcribe queries through the noisy channel");
    simulate->add_option("--queries", queries, "JSON-lines query file")->required();
    simulate->add_option("--vocab", vocab, "vocabulary file")->required();
    simulate->add_option("--config", config, "config file");
    simulate->add_option("--lexicon", lexicon, "phonetic lexicon overrides");
    simulate->add_option("--out", out, "output transcribed-query file")->required();

    auto *search = app.add_subcommand("search", "rank documents for a query");
    search->add_option("--index", index_path, "index file")->required();
    search->add_option("--query", query_text, "query text")->required();
    search->add_option("-k,--top", k, "number of results");
    search->add_option("--config", config, "config file");

    auto *experiment = app.add_subcommand("experiment", "run a retrieval method end to end");
    experiment->add_option("--method", method, "1 text, 2 dictionary, 3 delete, 4 complete")
        ->required()
        ->check(CLI::Range(1, 4));
    experiment->add_option("--corpus", corpus, "JSON-lines corpus")->required();
    experiment->add_option("--queries", queries, "JSON-lines query file")->required();
    experiment->add_option("--stoplist", stoplist, "stoplist file");
    experiment->add_option("--lexicon", lexicon, "phonetic lexicon overrides");
    experiment->add_option("--config", config, "config file");
    experiment->add_option("--run", run_path, "output run file")->required();
    experiment->add_option("--report", report_path, "output per-query report (JSON-lines)");

    auto *eval = app.add_subcommand("eval", "average precision and OOV metrics");
    eval->add_option("--run", run_path, "run file")->required();
    eval->add_option("--qrels", qrels_path, "qrels file")->required();
    eval->add_option("--report", report_path, "per-query report for OOV metrics");
    eval->add_flag("--json", as_json, "emit JSON-lines instead of aligned text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : OOVR_E_USAGE;
    }

    if (build_index->parsed())
        return report(oovr_build_index(corpus.c_str(), opt(stoplist), out.c_str()));

    if (build_cindex->parsed())
        return report(oovr_build_completion_index(corpus.c_str(), opt(stoplist), opt(lexicon),
                                                  out.c_str()));

    if (build_vocab->parsed())
        return report(oovr_build_vocab(corpus.c_str(), opt(stoplist), opt(lexicon), vocab_k,
                                       out.c_str()));

    if (simulate->parsed())
        return report(oovr_simulate_queries(queries.c_str(), vocab.c_str(), opt(config),
                                            opt(lexicon), out.c_str()));

    if (search->parsed()) {
        oovr_index *idx = nullptr;
        int rc = oovr_index_open(index_path.c_str(), &idx);
        if (rc != OOVR_OK)
            return report(rc);
        oovr_hits *hits = nullptr;
        rc = oovr_index_search(idx, query_text.c_str(), k, opt(config), &hits);
        if (rc != OOVR_OK) {
            oovr_index_close(idx);
            return report(rc);
        }
        for (long i = 0; i < oovr_hits_count(hits); ++i)
            std::printf("%ld %s %.6f\n", i + 1, oovr_hits_doc(hits, i),
                        oovr_hits_score(hits, i));
        oovr_hits_free(hits);
        oovr_index_close(idx);
        return 0;
    }

    if (experiment->parsed())
        return report(oovr_run_experiment(method, corpus.c_str(), queries.c_str(),
                                          opt(stoplist), opt(lexicon), opt(config),
                                          run_path.c_str(), opt(report_path)));

    if (eval->parsed()) {
        char *text = nullptr;
        int rc = oovr_evaluate(run_path.c_str(), qrels_path.c_str(), opt(report_path),
                               as_json ? 1 : 0, &text);
        if (rc != OOVR_OK)
            return report(rc);
        std::fputs(text, stdout);
        oovr_string_free(text);
        return 0;
    }

    return OOVR_E_USAGE;
}
