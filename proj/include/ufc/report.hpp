#pragma once

// Run results: the three interesting pattern classes plus counters a
// benchmark harness cares about (scans, structures, wall time, memory).

#include <array>
#include <cstdint>

#include "ufc/core.hpp"

namespace ufc {

struct RunStats {
    double wall_ms = 0.0;
    std::uint64_t peak_memory_bytes = 0;
    bool memory_best_effort = true; // sampled RSS, not an exact high-water mark

    int scan_count = 0;           // full passes over the transaction list
    std::uint64_t candidate_count = 0; // level-wise: candidates admitted to the pool
    std::uint64_t fulist_count = 0;    // vertical: FU-lists constructed
    int levels = 0;                    // level-wise: deepest k with candidates
    std::vector<std::uint64_t> level_candidates; // per-level candidate counts
    int peak_depth = 0;                // vertical: deepest recursion frame
    std::uint64_t visited = 0;         // vertical: itemsets evaluated
};

class ClassificationReport {
public:
    void add(ClassifiedPattern p);

    const std::vector<ClassifiedPattern>& hfhui() const { return hfhui_; }
    const std::vector<ClassifiedPattern>& hflui() const { return hflui_; }
    const std::vector<ClassifiedPattern>& lfhui() const { return lfhui_; }
    const std::vector<ClassifiedPattern>& of(PatternClass c) const;

    // (|HFHUI|, |HFLUI|, |LFHUI|)
    std::array<std::size_t, 3> class_counts() const {
        return {hfhui_.size(), hflui_.size(), lfhui_.size()};
    }
    std::size_t pattern_count() const {
        return hfhui_.size() + hflui_.size() + lfhui_.size();
    }

    // Lexicographic order within each class; makes reports comparable/printable.
    void sort_canonical();

    const ClassifiedPattern* find(const Itemset& items) const;

    RunStats stats;

private:
    std::vector<ClassifiedPattern> hfhui_, hflui_, lfhui_;
};

// Same patterns (items, utility, support) in every class, order-insensitive.
bool same_patterns(const ClassificationReport& a, const ClassificationReport& b);

} // namespace ufc
