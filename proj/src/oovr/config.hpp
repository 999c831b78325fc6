#ifndef OOVR_CONFIG_HPP
#define OOVR_CONFIG_HPP

#include <cstdint>
#include <string>

namespace oovr {

// How Eq-style completion scores aggregate per-document terms.
enum class ScoreMode { Sum, Average };

// Engine-wide knobs, loadable from a flat "key = value" text file.
struct Config {
    // Okapi BM25
    double k1 = 1.2;
    double b = 0.75;
    // completion
    double theta = 0.5;    // minimum phonetic similarity for a candidate
    std::uint32_t L = 2;   // partial-match prefix/suffix length
    double epsilon = 1e-9; // floor on first-stage scores inside the log
    ScoreMode score_mode = ScoreMode::Sum;
    // pipeline
    std::uint32_t N = 300;       // first-stage cutoff (|D_q|)
    std::uint32_t N_final = 300; // final ranked-list cutoff
    // simulator
    std::uint32_t K = 20000; // recognizer vocabulary size
    double p_sub = 0.0;
    double p_del = 0.0;
    double p_ins = 0.0;
    double p_false_oov = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
// Unknown keys and unparsable values are data errors.
Config load_config(const std::string &path);
Config parse_config(const std::string &text);

} // namespace oovr

#endif
