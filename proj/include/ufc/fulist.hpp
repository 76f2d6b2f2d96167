#pragma once

// Vertical one-phase classifier over FU-lists. Two scans total: the first
// collects per-item TWU and support mass and fixes the processing order
// (ascending TWU, ties by item id); the second streams each transaction —
// items failing both thresholds removed, the rest re-sorted — into one
// (tid, fre, rutil) list per surviving item. From there the search is pure
// list intersection: no further database access, exact measures at every
// node, and a two-sided bound decides whether a subtree can still pay off.

#include "ufc/bench.hpp"
#include "ufc/core.hpp"
#include "ufc/report.hpp"

namespace ufc {

struct FUEntry {
    Tid tid = 0;
    std::int32_t fre = 0; // min purchase quantity of the itemset in this tid
    Money rutil = 0;      // utility of the items after this set in the tid's order

    bool operator==(const FUEntry&) const = default;
};

struct FUList {
    // items in processing (TWU) order; the last one is the newest extension
    Itemset items;
    Money ext_util = 0; // v(items)
    std::vector<FUEntry> entries;

    Itemset canonical_items() const;
};

struct Measures {
    Money utility = 0;
    Count support = 0;
    Money rutil_total = 0;

    bool operator==(const Measures&) const = default;
};

struct RevisedTransaction {
    Tid tid = 0;
    std::vector<ItemQty> entries; // in the global processing order
    Money tu = 0;

    bool operator==(const RevisedTransaction&) const = default;
};

struct RevisedDatabase {
    std::vector<ItemId> order; // surviving items, ascending TWU then id
    std::vector<Money> item_twu;   // aligned with `order`, original-database TWU
    std::vector<Count> item_fre;   // aligned with `order`
    std::vector<RevisedTransaction> transactions; // emptied transactions dropped
};

struct RevisedResult {
    RevisedDatabase revised;
    std::vector<FUList> fulists; // one per surviving item, in processing order
};

// The two scans: drop items failing both thresholds, re-sort the rest,
// recompute transaction utilities, emit one FU-list per surviving item.
// (run_fast streams the same computation without materialising `revised`.)
RevisedResult build_revised(const Database& db, const Thresholds& th,
                            const Deadline& deadline = {});

// Join two lists sharing all items but the last; ey's last item must follow
// ex's in the processing order. prefix_ext_util is Σ v over the shared prefix
// (0 for single-item lists) — it recovers v(y) from ey.ext_util. Lists with an
// empty tid intersection are kept; their measures are exact zeros.
FUList extend(const FUList& ex, const FUList& ey, Money prefix_ext_util);

Measures measures_of(const FUList& list);

// U(X) + rutil(X) >= min_util (utility can still be reached deeper) or
// S(X) >= min_fre (support never grows along extensions).
bool should_extend(const FUList& list, const Thresholds& th);
bool should_extend(const Measures& m, const Thresholds& th);

struct VisitRecord {
    Itemset items; // canonical ascending-id form
    Money utility = 0;
    Count support = 0;
    Money rutil_total = 0;
};

struct FastOptions {
    Deadline deadline;
    std::vector<VisitRecord>* visit_log = nullptr; // every search node, pre-pruning
};

ClassificationReport run_fast(const Database& db, const Thresholds& th,
                              const FastOptions& opts = {});

} // namespace ufc
