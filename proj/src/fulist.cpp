#include "ufc/fulist.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace ufc {

namespace {

// Outcome of the first scan: surviving items in processing order plus the
// per-item stats that fixed it.
struct ItemOrder {
    std::vector<ItemId> order;
    std::vector<Money> twu;
    std::vector<Count> fre;
    std::vector<Money> value;
    std::unordered_map<ItemId, int> pos; // item -> position in `order`
};

ItemOrder first_scan(const Database& db, const Thresholds& th, int& scan_count,
                     const Deadline& dl) {
    const Itemset& universe = db.item_universe();
    std::unordered_map<ItemId, int> rank;
    rank.reserve(universe.size() * 2);
    std::vector<Money> twu(universe.size(), 0), value(universe.size());
    std::vector<Count> fre(universe.size(), 0);
    for (int r = 0; r < static_cast<int>(universe.size()); ++r) {
        rank.emplace(universe[r], r);
        value[r] = db.utilities().at(universe[r]);
    }

    ++scan_count;
    std::size_t seen = 0;
    for (const Transaction& t : db.transactions()) {
        if ((++seen & 0xfff) == 0) dl.poll();
        Money tu = 0;
        for (const ItemQty& e : t.entries())
            tu += static_cast<Money>(e.qty) * value[rank.at(e.item)];
        for (const ItemQty& e : t.entries()) {
            int r = rank.at(e.item);
            twu[r] += tu;
            fre[r] += e.qty;
        }
    }

    // Strategy-3 removal: an item below both thresholds cannot sit inside any
    // reported pattern, so it never enters the vertical structures at all.
    std::vector<int> keep;
    for (int r = 0; r < static_cast<int>(universe.size()); ++r)
        if (twu[r] >= th.min_util || fre[r] >= th.min_fre) keep.push_back(r);
    std::sort(keep.begin(), keep.end(), [&](int a, int b) {
        if (twu[a] != twu[b]) return twu[a] < twu[b];
        return universe[a] < universe[b];
    });

    ItemOrder io;
    io.order.reserve(keep.size());
    io.pos.reserve(keep.size() * 2);
    for (int k = 0; k < static_cast<int>(keep.size()); ++k) {
        int r = keep[k];
        io.order.push_back(universe[r]);
        io.twu.push_back(twu[r]);
        io.fre.push_back(fre[r]);
        io.value.push_back(value[r]);
        io.pos.emplace(universe[r], k);
    }
    return io;
}

// Surviving entries of t as (order position, qty), processing order, plus the
// revised transaction utility. False when nothing survives.
bool revise_transaction(const Transaction& t, const ItemOrder& io,
                        std::vector<std::pair<int, std::int32_t>>& buf, Money& tu) {
    buf.clear();
    tu = 0;
    for (const ItemQty& e : t.entries()) {
        auto it = io.pos.find(e.item);
        if (it == io.pos.end()) continue;
        buf.emplace_back(it->second, e.qty);
        tu += static_cast<Money>(e.qty) * io.value[it->second];
    }
    std::sort(buf.begin(), buf.end());
    return !buf.empty();
}

std::vector<FUList> second_scan(const Database& db, const ItemOrder& io,
                                int& scan_count, const Deadline& dl) {
    std::vector<FUList> lists(io.order.size());
    for (std::size_t k = 0; k < io.order.size(); ++k) {
        lists[k].items = {io.order[k]};
        lists[k].ext_util = io.value[k];
    }

    ++scan_count;
    std::size_t seen = 0;
    std::vector<std::pair<int, std::int32_t>> buf;
    for (const Transaction& t : db.transactions()) {
        if ((++seen & 0xfff) == 0) dl.poll();
        Money tu = 0;
        if (!revise_transaction(t, io, buf, tu)) continue;
        Money rutil = 0;
        for (std::size_t i = buf.size(); i-- > 0;) {
            lists[buf[i].first].entries.push_back({t.tid(), buf[i].second, rutil});
            rutil += static_cast<Money>(buf[i].second) * io.value[buf[i].first];
        }
    }
    return lists;
}

void intersect(const std::vector<FUEntry>& a, const std::vector<FUEntry>& b,
               std::vector<FUEntry>& out) {
    // output rutil comes from b (the extending side)
    auto by_tid = [](const FUEntry& e, Tid t) { return e.tid < t; };
    if (a.size() * 32 < b.size()) {
        std::size_t ib = 0;
        for (const FUEntry& ea : a) {
            auto it = std::lower_bound(b.begin() + ib, b.end(), ea.tid, by_tid);
            ib = static_cast<std::size_t>(it - b.begin());
            if (it != b.end() && it->tid == ea.tid)
                out.push_back({ea.tid, std::min(ea.fre, it->fre), it->rutil});
        }
    } else if (b.size() * 32 < a.size()) {
        std::size_t ia = 0;
        for (const FUEntry& eb : b) {
            auto it = std::lower_bound(a.begin() + ia, a.end(), eb.tid, by_tid);
            ia = static_cast<std::size_t>(it - a.begin());
            if (it != a.end() && it->tid == eb.tid)
                out.push_back({eb.tid, std::min(it->fre, eb.fre), eb.rutil});
        }
    } else {
        std::size_t ia = 0, ib = 0;
        while (ia < a.size() && ib < b.size()) {
            if (a[ia].tid < b[ib].tid)
                ++ia;
            else if (b[ib].tid < a[ia].tid)
                ++ib;
            else {
                out.push_back({a[ia].tid, std::min(a[ia].fre, b[ib].fre), b[ib].rutil});
                ++ia;
                ++ib;
            }
        }
    }
}

struct SearchCtx {
    Thresholds th;
    ClassificationReport* report = nullptr;
    const FastOptions* opts = nullptr;
    std::uint64_t visited = 0;
    std::uint64_t lists_built = 0;
    int peak_depth = 0;
};

void search(std::vector<FUList>& lists, Money prefix_ext_util, int depth,
            SearchCtx& ctx) {
    ctx.peak_depth = std::max(ctx.peak_depth, depth);
    for (std::size_t i = 0; i < lists.size(); ++i) {
        if ((++ctx.visited & 0x3ff) == 0) ctx.opts->deadline.poll();
        Measures m = measures_of(lists[i]);
        if (ctx.opts->visit_log)
            ctx.opts->visit_log->push_back(
                {lists[i].canonical_items(), m.utility, m.support, m.rutil_total});
        PatternClass c = classify(m.utility, m.support, ctx.th);
        if (c != PatternClass::LFLUI)
            ctx.report->add({lists[i].canonical_items(), m.utility, m.support, c});
        // pruning cuts descendants only; the itemset itself was classified above
        if (should_extend(m, ctx.th) && i + 1 < lists.size()) {
            std::vector<FUList> exts;
            exts.reserve(lists.size() - i - 1);
            for (std::size_t j = i + 1; j < lists.size(); ++j) {
                exts.push_back(extend(lists[i], lists[j], prefix_ext_util));
                ++ctx.lists_built;
            }
            search(exts, lists[i].ext_util, depth + 1, ctx);
        } // frame's extension lists released here
    }
}

} // namespace

Itemset FUList::canonical_items() const {
    Itemset c = items;
    std::sort(c.begin(), c.end());
    return c;
}

RevisedResult build_revised(const Database& db, const Thresholds& th,
                            const Deadline& deadline) {
    int scans = 0;
    ItemOrder io = first_scan(db, th, scans, deadline);

    RevisedResult res;
    res.revised.order = io.order;
    res.revised.item_twu = io.twu;
    res.revised.item_fre = io.fre;

    std::vector<std::pair<int, std::int32_t>> buf;
    for (const Transaction& t : db.transactions()) {
        Money tu = 0;
        if (!revise_transaction(t, io, buf, tu)) continue;
        RevisedTransaction rt;
        rt.tid = t.tid();
        rt.tu = tu;
        rt.entries.reserve(buf.size());
        for (auto& [pos, qty] : buf) rt.entries.push_back({io.order[pos], qty});
        res.revised.transactions.push_back(std::move(rt));
    }

    res.fulists = second_scan(db, io, scans, deadline);
    return res;
}

FUList extend(const FUList& ex, const FUList& ey, Money prefix_ext_util) {
    if (ex.items.size() != ey.items.size())
        throw ContractViolation("extend: lists must describe same-length itemsets");
    if (ex.items.empty()) throw ContractViolation("extend: lists must be non-empty");
    if (!std::equal(ex.items.begin(), ex.items.end() - 1, ey.items.begin()))
        throw ContractViolation("extend: lists must share their prefix");
    if (ex.items.back() == ey.items.back())
        throw ContractViolation("extend: lists must end in different items");
    Money v_y = ey.ext_util - prefix_ext_util;
    if (v_y <= 0) throw ContractViolation("extend: prefix utility exceeds ey's");

    FUList out;
    out.items = ex.items;
    out.items.push_back(ey.items.back());
    out.ext_util = ex.ext_util + v_y;
    intersect(ex.entries, ey.entries, out.entries);
    return out;
}

Measures measures_of(const FUList& list) {
    Measures m;
    for (const FUEntry& e : list.entries) {
        m.support += e.fre;
        m.rutil_total += e.rutil;
    }
    m.utility = m.support * list.ext_util;
    return m;
}

bool should_extend(const Measures& m, const Thresholds& th) {
    return m.utility + m.rutil_total >= th.min_util || m.support >= th.min_fre;
}

bool should_extend(const FUList& list, const Thresholds& th) {
    return should_extend(measures_of(list), th);
}

ClassificationReport run_fast(const Database& db, const Thresholds& th,
                              const FastOptions& opts) {
    WallTimer timer;
    ClassificationReport report;
    RunStats stats;

    ItemOrder io = first_scan(db, th, stats.scan_count, opts.deadline);
    std::vector<FUList> initial = second_scan(db, io, stats.scan_count, opts.deadline);

    SearchCtx ctx;
    ctx.th = th;
    ctx.report = &report;
    ctx.opts = &opts;
    ctx.lists_built = initial.size();
    if (!initial.empty()) search(initial, 0, 1, ctx);

    stats.fulist_count = ctx.lists_built;
    stats.peak_depth = ctx.peak_depth;
    stats.visited = ctx.visited;
    report.sort_canonical();
    report.stats = stats;
    report.stats.wall_ms = timer.elapsed_ms();
    return report;
}

} // namespace ufc
