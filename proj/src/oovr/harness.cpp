#include "oovr/harness.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oovr/errors.hpp"

namespace oovr {

Qrels Qrels::read(std::istream &in) {
    Qrels q;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string qid, iter, doc;
        long long rel;
        if (!(ls >> qid >> iter >> doc >> rel))
            throw DataError("qrels line " + std::to_string(lineno) +
                            ": expected \"query_id 0 doc_id relevance\"");
        auto &set = q.relevant[qid]; // record the query even if nothing is relevant
        if (rel > 0)
            set.insert(doc);
    }
    return q;
}

Qrels Qrels::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open qrels file: " + path);
    return read(in);
}

OovMetrics oov_metrics(const OovCounts &c) {
    if (c.detected < 1)
        throw UsageError("oov_metrics: detected must be >= 1");
    if (c.gold_total < 1)
        throw UsageError("oov_metrics: gold_total must be >= 1");
    OovMetrics m;
    m.recall = static_cast<double>(c.correct) / static_cast<double>(c.gold_total);
    m.precision = static_cast<double>(c.correct) / static_cast<double>(c.detected);
    m.accuracy = static_cast<double>(c.completed) / static_cast<double>(c.detected);
    return m;
}

RankedList first_stage(const TranscribedQuery &q, const InvertedIndex &index, std::size_t N,
                       const Config &cfg) {
    if (N < 1)
        throw UsageError("first_stage: N must be >= 1");
    std::vector<std::string> words = q.word_surfaces();
    if (words.empty()) {
        std::fprintf(stderr, "oovr: query %s has no in-vocabulary tokens; first stage empty\n",
                     q.query_id.c_str());
        return RankedList{};
    }
    return index.search(words, N, cfg);
}

TwoStageResult two_stage_retrieve(const TranscribedQuery &q, const InvertedIndex &index,
                                  const CompletionIndex &ci, const Config &cfg) {
    RankedList fs = first_stage(q, index, cfg.N, cfg);
    CompletedQuery cq = complete_query(q, ci, index, fs, cfg);

    TwoStageResult out;
    out.fragments = std::move(cq.fragments);
    out.completion_millis = cq.completion_millis;
    out.run.query_id = q.query_id;
    out.run.method = 4;
    std::vector<std::string> terms = cq.query.word_surfaces();
    if (!terms.empty())
        out.run.ranked = index.search(terms, cfg.N_final, cfg);
    return out;
}

double average_precision(const RunResult &run, const Qrels &qrels) {
    auto it = qrels.relevant.find(run.query_id);
    if (it == qrels.relevant.end())
        throw DataError("qrels missing query \"" + run.query_id + "\"");
    const auto &rel = it->second;
    if (rel.empty())
        throw DataError("no relevant documents for query \"" + run.query_id + "\"");
    double sum = 0.0;
    std::size_t found = 0;
    for (std::size_t i = 0; i < run.ranked.entries.size(); ++i) {
        if (rel.count(run.ranked.entries[i].doc_id)) {
            ++found;
            sum += static_cast<double>(found) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(rel.size());
}

ExperimentResult run_experiment(const std::vector<RawDocument> &queries,
                                const std::vector<TokenizedDocument> &corpus,
                                const StopList &stop, const Phonetizer &ph, int method,
                                const Config &cfg) {
    if (method < 1 || method > 4)
        throw UsageError("run_experiment: method must be 1..4");

    InvertedIndex index = InvertedIndex::build(corpus);
    CompletionIndex ci;
    if (method == 4)
        ci = CompletionIndex::build(corpus, ph);

    VocabularyModel vocab;
    NoiseConfig noise = NoiseConfig::from(cfg);
    if (method == 2) {
        // dictionary covers everything and no OOV machinery runs
        vocab = VocabularyModel::make_universal();
        vocab.stop_entries = stop.sorted_entries();
        noise.p_false_oov = 0.0;
    } else if (method >= 3) {
        vocab = build_vocabulary(corpus, cfg.K, ph, stop);
    }

    ExperimentResult result;
    for (std::size_t ordinal = 0; ordinal < queries.size(); ++ordinal) {
        const RawDocument &query = queries[ordinal];
        RunResult run;
        run.query_id = query.id;
        run.method = method;
        QueryReport report;
        report.query_id = query.id;
        report.method = method;

        if (method == 1) {
            run.ranked = index.search(tokenize_text(query.text, stop), cfg.N_final, cfg);
        } else {
            TranscribedQuery tq =
                transcribe(query.id, query.text, vocab, noise, ph, ordinal);
            report.gold = tq.gold;
            result.fragment_count += tq.fragment_count();
            if (method == 4) {
                TwoStageResult tsr = two_stage_retrieve(tq, index, ci, cfg);
                run.ranked = std::move(tsr.run.ranked);
                report.fragments = std::move(tsr.fragments);
                report.completion_millis = tsr.completion_millis;
                result.completion_millis += tsr.completion_millis;
            } else {
                run.ranked = first_stage(tq, index, cfg.N_final, cfg);
                for (std::size_t pos = 0; pos < tq.tokens.size(); ++pos) {
                    if (!tq.tokens[pos].is_fragment())
                        continue;
                    FragmentCompletion fc;
                    fc.position = pos;
                    fc.fragment = tq.tokens[pos].phon;
                    report.fragments.push_back(std::move(fc));
                }
            }
        }
        result.runs.push_back(std::move(run));
        result.reports.push_back(std::move(report));
    }

    std::sort(result.runs.begin(), result.runs.end(),
              [](const RunResult &a, const RunResult &b) { return a.query_id < b.query_id; });
    std::sort(result.reports.begin(), result.reports.end(),
              [](const QueryReport &a, const QueryReport &b) { return a.query_id < b.query_id; });
    return result;
}

void write_run(std::ostream &out, const std::vector<RunResult> &runs, const std::string &tag) {
    char buf[64];
    for (const auto &run : runs) {
        for (std::size_t i = 0; i < run.ranked.entries.size(); ++i) {
            const auto &e = run.ranked.entries[i];
            std::snprintf(buf, sizeof(buf), " %zu %.6f ", i + 1, e.score);
            out << run.query_id << " Q0 " << e.doc_id << buf << tag << "\n";
        }
    }
}

void save_run(const std::string &path, const std::vector<RunResult> &runs,
              const std::string &tag) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write run file: " + path);
    write_run(out, runs, tag);
    if (!out)
        throw DataError("failed writing run file: " + path);
}

std::vector<RunResult> read_run(std::istream &in) {
    std::vector<RunResult> runs;
    std::unordered_map<std::string, std::size_t> by_id;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string qid, q0, doc, tag;
        std::size_t rank;
        double score;
        if (!(ls >> qid >> q0 >> doc >> rank >> score >> tag))
            throw DataError("run line " + std::to_string(lineno) +
                            ": expected \"query_id Q0 doc_id rank score tag\"");
        auto it = by_id.find(qid);
        if (it == by_id.end()) {
            it = by_id.emplace(qid, runs.size()).first;
            RunResult r;
            r.query_id = qid;
            if (tag.size() == 2 && tag[0] == 'm' && tag[1] >= '1' && tag[1] <= '4')
                r.method = tag[1] - '0';
            runs.push_back(std::move(r));
        }
        runs[it->second].ranked.entries.push_back(ScoredDoc{doc, score});
    }
    return runs;
}

std::vector<RunResult> load_run(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open run file: " + path);
    return read_run(in);
}

void write_reports(std::ostream &out, const std::vector<QueryReport> &reports) {
    for (const auto &r : reports) {
        nlohmann::json frags = nlohmann::json::array();
        for (const auto &f : r.fragments) {
            nlohmann::json j{{"pos", f.position},
                             {"syllables", f.fragment.syllables},
                             {"candidates", f.candidate_count},
                             {"ms", f.millis}};
            if (f.completed) {
                j["replacement"] = f.replacement;
                j["p_wt"] = f.p_wt;
                j["score"] = f.score;
            } else {
                j["replacement"] = nullptr;
            }
            frags.push_back(std::move(j));
        }
        nlohmann::json gold = nlohmann::json::array();
        for (const auto &g : r.gold)
            gold.push_back(nlohmann::json{
                {"pos", g.position}, {"surface", g.surface}, {"true_oov", g.true_oov}});
        nlohmann::json j{{"query_id", r.query_id},
                         {"method", r.method},
                         {"completion_ms", r.completion_millis},
                         {"gold", gold},
                         {"fragments", frags}};
        out << j.dump() << "\n";
    }
}

std::vector<QueryReport> read_reports(std::istream &in) {
    std::vector<QueryReport> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw DataError("report line " + std::to_string(lineno) + ": malformed JSON");
        QueryReport r;
        r.query_id = j.at("query_id").get<std::string>();
        r.method = j.value("method", 0);
        r.completion_millis = j.value("completion_ms", 0.0);
        for (const auto &g : j.value("gold", nlohmann::json::array()))
            r.gold.push_back(GoldRecord{g.at("pos").get<std::size_t>(),
                                        g.at("surface").get<std::string>(),
                                        g.at("true_oov").get<bool>()});
        for (const auto &f : j.value("fragments", nlohmann::json::array())) {
            FragmentCompletion fc;
            fc.position = f.at("pos").get<std::size_t>();
            for (const auto &s : f.at("syllables"))
                fc.fragment.syllables.push_back(s.get<std::string>());
            fc.candidate_count = f.value("candidates", std::size_t{0});
            fc.millis = f.value("ms", 0.0);
            if (f.contains("replacement") && !f["replacement"].is_null()) {
                fc.completed = true;
                fc.replacement = f["replacement"].get<std::string>();
                fc.p_wt = f.value("p_wt", 0.0);
                fc.score = f.value("score", 0.0);
            }
            r.fragments.push_back(std::move(fc));
        }
        out.push_back(std::move(r));
    }
    return out;
}

void save_reports(const std::string &path, const std::vector<QueryReport> &reports) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write report file: " + path);
    write_reports(out, reports);
}

std::vector<QueryReport> load_reports(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open report file: " + path);
    return read_reports(in);
}

OovCounts tally_oov(const std::vector<QueryReport> &reports) {
    OovCounts c;
    for (const auto &r : reports) {
        std::unordered_map<std::size_t, const GoldRecord *> gold_at;
        for (const auto &g : r.gold)
            gold_at[g.position] = &g;
        for (const auto &g : r.gold)
            if (g.true_oov)
                ++c.gold_total;
        for (const auto &f : r.fragments) {
            ++c.detected;
            auto it = gold_at.find(f.position);
            if (it == gold_at.end())
                continue;
            if (it->second->true_oov)
                ++c.correct;
            if (f.completed && f.replacement == it->second->surface)
                ++c.completed;
        }
    }
    return c;
}

EvalResult evaluate(const std::vector<RunResult> &runs, const Qrels &qrels,
                    const std::vector<QueryReport> *reports) {
    if (runs.empty())
        throw DataError("no runs to evaluate");
    EvalResult r;
    for (const auto &run : runs)
        r.per_query_ap.emplace_back(run.query_id, average_precision(run, qrels));
    std::sort(r.per_query_ap.begin(), r.per_query_ap.end());
    double sum = 0.0;
    for (const auto &[qid, ap] : r.per_query_ap)
        sum += ap;
    r.mean_ap = sum / static_cast<double>(r.per_query_ap.size());
    if (reports) {
        r.has_reports = true;
        r.counts = tally_oov(*reports);
    }
    return r;
}

std::string format_eval_text(const EvalResult &r) {
    std::ostringstream out;
    char buf[128];
    for (const auto &[qid, ap] : r.per_query_ap) {
        std::snprintf(buf, sizeof(buf), "%-12s %.6f\n", qid.c_str(), ap);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "mean AP      %.6f  (%zu queries)\n", r.mean_ap,
                  r.per_query_ap.size());
    out << buf;
    if (r.has_reports) {
        const OovCounts &c = r.counts;
        out << "\n#Detected #Correct #Completed #Gold Recall Precision Accuracy\n";
        std::snprintf(buf, sizeof(buf), "%9" PRIu64 " %8" PRIu64 " %10" PRIu64 " %5" PRIu64,
                      c.detected, c.correct, c.completed, c.gold_total);
        out << buf;
        if (c.detected >= 1 && c.gold_total >= 1) {
            OovMetrics m = oov_metrics(c);
            std::snprintf(buf, sizeof(buf), " %6.3f %9.3f %8.3f\n", m.recall, m.precision,
                          m.accuracy);
            out << buf;
        } else {
            out << "      -         -        -\n";
        }
    }
    return out.str();
}

std::string format_eval_jsonl(const EvalResult &r) {
    std::ostringstream out;
    for (const auto &[qid, ap] : r.per_query_ap)
        out << nlohmann::json{{"type", "ap"}, {"query_id", qid}, {"ap", ap}}.dump() << "\n";
    out << nlohmann::json{{"type", "mean_ap"},
                          {"mean_ap", r.mean_ap},
                          {"queries", r.per_query_ap.size()}}
               .dump()
        << "\n";
    if (r.has_reports) {
        const OovCounts &c = r.counts;
        nlohmann::json j{{"type", "oov_metrics"},
                         {"detected", c.detected},
                         {"correct", c.correct},
                         {"completed", c.completed},
                         {"gold_total", c.gold_total}};
        if (c.detected >= 1 && c.gold_total >= 1) {
            OovMetrics m = oov_metrics(c);
            j["recall"] = m.recall;
            j["precision"] = m.precision;
            j["accuracy"] = m.accuracy;
        }
        out << j.dump() << "\n";
    }
    return out.str();
}

} // namespace oovr
