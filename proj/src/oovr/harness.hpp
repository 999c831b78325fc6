#ifndef OOVR_HARNESS_HPP
#define OOVR_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "oovr/asr_sim.hpp"
#include "oovr/completion.hpp"
#include "oovr/config.hpp"
#include "oovr/corpus.hpp"
#include "oovr/retrieval.hpp"

namespace oovr {

// Relevance judgments: query id -> relevant doc ids.
// File lines are "query_id 0 doc_id relevance"; relevance > 0 marks relevant.
struct Qrels {
    std::unordered_map<std::string, std::unordered_set<std::string>> relevant;
    static Qrels load(const std::string &path);
    static Qrels read(std::istream &in);
};

struct RunResult {
    std::string query_id;
    RankedList ranked;
    int method = 0; // 1..4
};

// Per-query record of what the simulator and completion stages did.
struct QueryReport {
    std::string query_id;
    int method = 0;
    std::vector<FragmentCompletion> fragments;
    std::vector<GoldRecord> gold;
    double completion_millis = 0.0;
};

struct OovCounts {
    std::uint64_t detected = 0;   // emitted fragments
    std::uint64_t correct = 0;    // fragments whose gold record is a true OOV word
    std::uint64_t completed = 0;  // replacement string-equal to the gold surface
    std::uint64_t gold_total = 0; // true OOV word tokens across the query set
};

struct OovMetrics {
    double recall = 0.0;    // correct / gold_total
    double precision = 0.0; // correct / detected
    double accuracy = 0.0;  // completed / detected
};

// Eq.-style recall/precision/accuracy. Errors on zero denominators.
OovMetrics oov_metrics(const OovCounts &c);

// Retrieval over the in-vocabulary tokens only, top N.
RankedList first_stage(const TranscribedQuery &q, const InvertedIndex &index, std::size_t N,
                       const Config &cfg);

struct TwoStageResult {
    RunResult run;
    std::vector<FragmentCompletion> fragments;
    double completion_millis = 0.0;
};

// First stage -> D_q -> query completion -> final retrieval with the
// completed terms added, top N_final.
TwoStageResult two_stage_retrieve(const TranscribedQuery &q, const InvertedIndex &index,
                                  const CompletionIndex &ci, const Config &cfg);

// Non-interpolated average precision against the qrels; the denominator is
// the total number of relevant documents for the query.
double average_precision(const RunResult &run, const Qrels &qrels);

struct ExperimentResult {
    std::vector<RunResult> runs;        // ordered by query_id
    std::vector<QueryReport> reports;   // ordered by query_id
    double completion_millis = 0.0;     // total across fragments
    std::uint64_t fragment_count = 0;   // detected fragments
};

// Methods: 1 text-to-text, 2 full-coverage dictionary (no OOV machinery),
// 3 fragments deleted, 4 full two-stage completion pipeline.
ExperimentResult run_experiment(const std::vector<RawDocument> &queries,
                                const std::vector<TokenizedDocument> &corpus,
                                const StopList &stop, const Phonetizer &ph, int method,
                                const Config &cfg);

// TREC run format: "query_id Q0 doc_id rank score tag", scores at 6 decimals.
void write_run(std::ostream &out, const std::vector<RunResult> &runs, const std::string &tag);
std::vector<RunResult> read_run(std::istream &in);
void save_run(const std::string &path, const std::vector<RunResult> &runs,
              const std::string &tag);
std::vector<RunResult> load_run(const std::string &path);

// Report JSON-lines, one record per query.
void write_reports(std::ostream &out, const std::vector<QueryReport> &reports);
std::vector<QueryReport> read_reports(std::istream &in);
void save_reports(const std::string &path, const std::vector<QueryReport> &reports);
std::vector<QueryReport> load_reports(const std::string &path);

OovCounts tally_oov(const std::vector<QueryReport> &reports);

struct EvalResult {
    std::vector<std::pair<std::string, double>> per_query_ap; // ordered by query_id
    double mean_ap = 0.0;
    bool has_reports = false;
    OovCounts counts;
};

EvalResult evaluate(const std::vector<RunResult> &runs, const Qrels &qrels,
                    const std::vector<QueryReport> *reports);
std::string format_eval_text(const EvalResult &r);
std::string format_eval_jsonl(const EvalResult &r);

} // namespace oovr

#endif
