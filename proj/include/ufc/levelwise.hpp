#pragma once

// Level-wise two-phase classifier. Phase I grows candidates breadth-first:
// level k itemsets are joined from level k-1 survivors sharing a (k-1)-prefix,
// then one database scan per level measures TWU and support mass, and only
// candidates passing at least one threshold on the (TWU, S) over-estimates
// survive and are admitted to the pool. Phase II re-scans once to compute
// exact utilities for the whole pool and classifies. Total scans: levels + 1.

#include <optional>

#include "ufc/bench.hpp"
#include "ufc/core.hpp"
#include "ufc/report.hpp"

namespace ufc {

struct LevelCandidate {
    Itemset items;
    Money twu = 0;
    Count fre = 0;

    bool operator==(const LevelCandidate&) const = default;
};

struct CandidatePool {
    std::vector<LevelCandidate> members;
};

// Join two same-length canonical itemsets sharing all but the last item;
// nullopt when they don't connect. Different lengths are a contract violation.
std::optional<Itemset> connect(const Itemset& a, const Itemset& b);

// Measures TWU and S for every candidate of one level in a single scan.
// Results keep the input order.
std::vector<LevelCandidate> measure_level(const Database& db,
                                          const std::vector<Itemset>& level,
                                          const Deadline& deadline = {});

struct GenOptions {
    Deadline deadline;
};

// Phase I. Fills scan/level counters into `stats`.
CandidatePool phase1(const Database& db, const Thresholds& th, RunStats& stats,
                     const Deadline& deadline = {});

// Phase II: one more scan over the pool, exact classification, LFLUI dropped.
ClassificationReport phase2(const Database& db, const CandidatePool& pool,
                            const Thresholds& th, RunStats& stats,
                            const Deadline& deadline = {});

ClassificationReport run_gen(const Database& db, const Thresholds& th,
                             const GenOptions& opts = {});

} // namespace ufc
