#ifndef OOVR_TESTS_ORACLES_HPP
#define OOVR_TESTS_ORACLES_HPP

// Independent reference implementations used to check the engine. These stay
// deliberately naive: exhaustive path enumeration for alignment, score-every-
// document retrieval, linear scans for candidate generation. None of them
// touch the DP table, the postings traversal or the tries they verify.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oovr/completion.hpp"
#include "oovr/corpus.hpp"
#include "oovr/phonetics.hpp"
#include "oovr/retrieval.hpp"

namespace oracles {

// ---- alignment ------------------------------------------------------------

struct AlignCounts {
    std::size_t matches = 0, subs = 0, dels = 0, ins = 0;
    std::size_t cost() const { return subs + dels + ins; }
    bool operator==(const AlignCounts &) const = default;
};

namespace detail {

// Move codes in preference order; smaller wins a tie.
enum Move : std::uint8_t { kMatch = 0, kSub = 1, kDel = 2, kIns = 3 };

struct PathSearch {
    const std::vector<std::string> &w, &t;
    std::size_t best_cost = static_cast<std::size_t>(-1);
    std::vector<std::uint8_t> best_moves;
    std::vector<std::uint8_t> moves; // accumulated from the END of both sequences

    void consider() {
        std::size_t cost = 0;
        for (auto m : moves)
            if (m != kMatch)
                ++cost;
        if (cost < best_cost || (cost == best_cost && moves < best_moves)) {
            best_cost = cost;
            best_moves = moves;
        }
    }

    // Enumerates every monotone alignment, walking backwards so the collected
    // move string is directly comparable with a backtrace.
    void walk(std::size_t i, std::size_t j, std::size_t cost) {
        if (cost > best_cost)
            return;
        if (i == 0 && j == 0) {
            consider();
            return;
        }
        if (i > 0 && j > 0) {
            bool eq = w[i - 1] == t[j - 1];
            moves.push_back(eq ? kMatch : kSub);
            walk(i - 1, j - 1, cost + (eq ? 0 : 1));
            moves.pop_back();
        }
        if (i > 0) {
            moves.push_back(kDel);
            walk(i - 1, j, cost + 1);
            moves.pop_back();
        }
        if (j > 0) {
            moves.push_back(kIns);
            walk(i, j - 1, cost + 1);
            moves.pop_back();
        }
    }
};

} // namespace detail

// Minimal-cost alignment counts with the match > sub > del > ins tie rule,
// found by exhaustive enumeration.
inline AlignCounts align_brute_force(const oovr::SyllableSeq &w, const oovr::SyllableSeq &t) {
    detail::PathSearch s{w.syllables, t.syllables};
    s.walk(w.len(), t.len(), 0);
    AlignCounts c;
    for (auto m : s.best_moves) {
        switch (m) {
        case detail::kMatch: ++c.matches; break;
        case detail::kSub: ++c.subs; break;
        case detail::kDel: ++c.dels; break;
        default: ++c.ins; break;
        }
    }
    return c;
}

// Plain Levenshtein distance over syllable symbols (iterative, no backtrace).
inline std::size_t levenshtein(const oovr::SyllableSeq &w, const oovr::SyllableSeq &t) {
    std::vector<std::size_t> row(t.len() + 1);
    for (std::size_t j = 0; j <= t.len(); ++j)
        row[j] = j;
    for (std::size_t i = 1; i <= w.len(); ++i) {
        std::size_t prev = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= t.len(); ++j) {
            std::size_t cur = row[j];
            row[j] = std::min({prev + (w[i - 1] == t[j - 1] ? 0 : 1), row[j - 1] + 1,
                               row[j] + 1});
            prev = cur;
        }
    }
    return row[t.len()];
}

// ---- retrieval -------------------------------------------------------------

// Scores every document straight from the token lists and the BM25 formula.
inline oovr::RankedList search_brute_force(const std::vector<oovr::TokenizedDocument> &docs,
                                           const std::vector<std::string> &terms,
                                           std::size_t k, const oovr::Config &cfg) {
    std::map<std::string, std::size_t> qtf;
    for (const auto &t : terms)
        ++qtf[t];

    double total_len = 0.0;
    for (const auto &d : docs)
        total_len += static_cast<double>(d.tokens.size());
    const double n = static_cast<double>(docs.size());
    const double avgdl = total_len / n;

    std::vector<std::pair<std::string, double>> scored;
    for (const auto &d : docs) {
        double score = 0.0;
        for (const auto &[term, q] : qtf) {
            std::size_t df = 0;
            for (const auto &other : docs)
                if (std::find(other.tokens.begin(), other.tokens.end(), term) !=
                    other.tokens.end())
                    ++df;
            if (df == 0)
                continue;
            double tf = static_cast<double>(
                std::count(d.tokens.begin(), d.tokens.end(), term));
            if (tf == 0.0)
                continue;
            double idf = std::max(
                0.0, std::log((n - static_cast<double>(df) + 0.5) /
                              (static_cast<double>(df) + 0.5)));
            double dl = static_cast<double>(d.tokens.size());
            score += static_cast<double>(q) * idf * tf * (cfg.k1 + 1.0) /
                     (tf + cfg.k1 * (1.0 - cfg.b + cfg.b * dl / avgdl));
        }
        if (score > 0.0)
            scored.emplace_back(d.id, score);
    }
    std::sort(scored.begin(), scored.end(), [](const auto &a, const auto &b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > k)
        scored.resize(k);
    oovr::RankedList out;
    for (auto &[id, s] : scored)
        out.entries.push_back(oovr::ScoredDoc{id, s});
    return out;
}

// ---- candidate generation ---------------------------------------------------

// Linear scan over all indexed entries applying the selection rules directly.
inline std::vector<std::string> candidates_brute_force(const oovr::CompletionIndex &ci,
                                                       const oovr::SyllableSeq &w,
                                                       const std::set<std::string> &dq_ids,
                                                       double theta, std::uint32_t L) {
    std::size_t p = std::min<std::size_t>(L, w.len());
    std::vector<std::string> out;
    for (std::uint32_t id = 0; id < ci.entry_count(); ++id) {
        const auto &e = ci.entry(id);
        bool in_dq = false;
        for (const auto &occ : e.occurrences)
            if (dq_ids.count(ci.doc_ids()[occ.doc])) {
                in_dq = true;
                break;
            }
        if (!in_dq)
            continue;
        if (e.phon.len() < p)
            continue;
        bool prefix = true, suffix = true;
        for (std::size_t i = 0; i < p; ++i) {
            if (e.phon[i] != w[i])
                prefix = false;
            if (e.phon[e.phon.len() - 1 - i] != w[w.len() - 1 - i])
                suffix = false;
        }
        if (!prefix && !suffix)
            continue;
        if (oovr::similarity(w, e.phon) >= theta)
            out.push_back(e.surface);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- evaluation --------------------------------------------------------------

// Non-interpolated average precision straight from the definition.
inline double average_precision_reference(const std::vector<std::string> &ranked,
                                          const std::set<std::string> &relevant) {
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (relevant.count(ranked[i])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(relevant.size());
}

} // namespace oracles

#endif
