/* oovr — open-vocabulary two-stage retrieval engine, C API.
 *
 * All functions return OOVR_OK (0) on success. On failure they return
 * OOVR_E_USAGE (bad arguments) or OOVR_E_DATA (malformed input data) and
 * leave a message retrievable with oovr_last_error() on the calling thread.
 * Strings returned through char** outputs are owned by the caller and must
 * be released with oovr_string_free().
 */
#ifndef OOVR_H
#define OOVR_H

#ifdef __cplusplus
extern "C" {
#endif

#define OOVR_OK 0
#define OOVR_E_USAGE 1
#define OOVR_E_DATA 2

const char *oovr_version(void);

/* Message for the last failing call on this thread; never NULL. */
const char *oovr_last_error(void);

void oovr_string_free(char *s);

/* ---- batch builders (paths in, file out) ------------------------------- */

/* Tokenizes a JSON-lines corpus and writes the binary inverted index.
 * stoplist_path may be NULL (empty stoplist). */
int oovr_build_index(const char *corpus_jsonl, const char *stoplist_path,
                     const char *out_path);

/* Writes the forward/backward partial-match completion index over words and
 * word bigrams. lexicon_path (optional phonetic overrides) may be NULL. */
int oovr_build_completion_index(const char *corpus_jsonl, const char *stoplist_path,
                                const char *lexicon_path, const char *out_path);

/* Top-k vocabulary plus syllable inventory, written as JSON. */
int oovr_build_vocab(const char *corpus_jsonl, const char *stoplist_path,
                     const char *lexicon_path, long k, const char *out_path);

/* Simulated closed-vocabulary transcription of a JSON-lines query file.
 * Noise rates and the seed come from the config file (NULL for defaults). */
int oovr_simulate_queries(const char *queries_jsonl, const char *vocab_path,
                          const char *config_path, const char *lexicon_path,
                          const char *out_path);

/* ---- search over a loaded index ---------------------------------------- */

typedef struct oovr_index oovr_index;
typedef struct oovr_hits oovr_hits;

int oovr_index_open(const char *path, oovr_index **out);
void oovr_index_close(oovr_index *index);
long oovr_index_doc_count(const oovr_index *index);

/* Okapi BM25 over the tokenized query text; k1/b from config_path or
 * defaults when NULL. */
int oovr_index_search(const oovr_index *index, const char *query_text, long k,
                      const char *config_path, oovr_hits **out);
long oovr_hits_count(const oovr_hits *hits);
const char *oovr_hits_doc(const oovr_hits *hits, long i);
double oovr_hits_score(const oovr_hits *hits, long i);
void oovr_hits_free(oovr_hits *hits);

/* ---- experiment and evaluation ----------------------------------------- */

/* Runs retrieval method 1..4 over a query file against a corpus and writes
 * a TREC-format run file, plus an optional JSON-lines per-query report
 * (report_out may be NULL). Prints nothing. */
int oovr_run_experiment(int method, const char *corpus_jsonl, const char *queries_jsonl,
                        const char *stoplist_path, const char *lexicon_path,
                        const char *config_path, const char *run_out,
                        const char *report_out);

/* Per-query AP, mean AP and (when report_path is non-NULL) the OOV
 * detection/completion metrics block, as aligned text or JSON-lines. */
int oovr_evaluate(const char *run_path, const char *qrels_path, const char *report_path,
                  int as_json, char **out_text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OOVR_H */
