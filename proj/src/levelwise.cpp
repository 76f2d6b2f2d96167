#include "ufc/levelwise.hpp"

#include <cassert>
#include <limits>
#include <unordered_map>

namespace ufc {

namespace {

// Dense ranks over the occurring item universe, plus per-rank external utility.
struct Indexer {
    std::unordered_map<ItemId, int> rank;
    std::vector<Money> value;

    explicit Indexer(const Database& db) {
        const Itemset& u = db.item_universe();
        rank.reserve(u.size() * 2);
        value.resize(u.size());
        for (int r = 0; r < static_cast<int>(u.size()); ++r) {
            rank.emplace(u[r], r);
            value[r] = db.utilities().at(u[r]);
        }
    }
};

// Candidate itemsets translated to rank space; rank -1 marks an item that
// never occurs, so the set can't be contained anywhere.
std::vector<std::vector<int>> rank_sets(const Indexer& ix,
                                        const std::vector<const Itemset*>& sets) {
    std::vector<std::vector<int>> rs(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        rs[s].reserve(sets[s]->size());
        for (ItemId i : *sets[s]) {
            auto it = ix.rank.find(i);
            rs[s].push_back(it == ix.rank.end() ? -1 : it->second);
        }
    }
    return rs;
}

// One full scan measuring TWU and support mass for every candidate. Sets are
// bucketed by smallest item so a transaction only probes candidates whose
// anchor item it actually holds.
void scan_sets(const Database& db, const Indexer& ix,
               const std::vector<const Itemset*>& sets, std::vector<Money>& twu_out,
               std::vector<Count>& fre_out, int& scan_count, const Deadline& dl) {
    twu_out.assign(sets.size(), 0);
    fre_out.assign(sets.size(), 0);
    const std::size_t nranks = ix.value.size();

    std::vector<std::vector<int>> rsets = rank_sets(ix, sets);
    std::vector<std::vector<std::uint32_t>> bucket(nranks);
    for (std::uint32_t s = 0; s < rsets.size(); ++s) {
        if (rsets[s].empty()) throw ContractViolation("cannot measure an empty itemset");
        if (rsets[s].front() >= 0) bucket[rsets[s].front()].push_back(s);
    }

    std::vector<std::int32_t> qty(nranks, 0);
    std::vector<std::uint32_t> ver(nranks, 0);
    std::uint32_t cur = 0;

    ++scan_count;
    std::size_t seen = 0;
    for (const Transaction& t : db.transactions()) {
        if ((++seen & 0xfff) == 0) dl.poll();
        ++cur;
        Money tu = 0;
        for (const ItemQty& e : t.entries()) {
            int r = ix.rank.at(e.item);
            qty[r] = e.qty;
            ver[r] = cur;
            tu += static_cast<Money>(e.qty) * ix.value[r];
        }
        for (const ItemQty& e : t.entries()) {
            int anchor = ix.rank.at(e.item);
            for (std::uint32_t s : bucket[anchor]) {
                std::int32_t minq = std::numeric_limits<std::int32_t>::max();
                bool contained = true;
                for (int r : rsets[s]) {
                    if (r < 0 || ver[r] != cur) {
                        contained = false;
                        break;
                    }
                    minq = std::min(minq, qty[r]);
                }
                if (contained) {
                    twu_out[s] += tu;
                    fre_out[s] += minq;
                }
            }
        }
    }
}

bool survives(const LevelCandidate& c, const Thresholds& th) {
    // over-estimates: keep while either bound still clears its threshold
    return c.twu >= th.min_util || c.fre >= th.min_fre;
}

bool same_prefix(const Itemset& a, const Itemset& b) {
    return std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1);
}

// All connectable pairs within (k-1)-prefix groups; survivors arrive in
// lexicographic order, so the output is lexicographic too.
std::vector<Itemset> join_level(const std::vector<LevelCandidate>& prev) {
    std::vector<Itemset> next;
    std::size_t i = 0;
    while (i < prev.size()) {
        std::size_t g = i + 1;
        while (g < prev.size() && same_prefix(prev[i].items, prev[g].items)) ++g;
        for (std::size_t a = i; a < g; ++a)
            for (std::size_t b = a + 1; b < g; ++b) {
                auto joined = connect(prev[a].items, prev[b].items);
                assert(joined.has_value());
                next.push_back(std::move(*joined));
            }
        i = g;
    }
    return next;
}

} // namespace

std::optional<Itemset> connect(const Itemset& a, const Itemset& b) {
    if (a.size() != b.size())
        throw ContractViolation("connect: itemsets must have the same length");
    if (a.empty()) throw ContractViolation("connect: itemsets must be non-empty");
    if (!itemset_canonical(a) || !itemset_canonical(b))
        throw ContractViolation("connect: itemsets must be canonical");
    if (!same_prefix(a, b) || a.back() >= b.back()) return std::nullopt;
    Itemset joined = a;
    joined.push_back(b.back());
    return joined;
}

std::vector<LevelCandidate> measure_level(const Database& db,
                                          const std::vector<Itemset>& level,
                                          const Deadline& deadline) {
    for (const Itemset& x : level)
        if (x.empty() || !itemset_canonical(x))
            throw ContractViolation("measure_level: candidates must be canonical itemsets");
    Indexer ix(db);
    std::vector<const Itemset*> sets;
    sets.reserve(level.size());
    for (const Itemset& x : level) sets.push_back(&x);
    std::vector<Money> twu;
    std::vector<Count> fre;
    int scans = 0;
    scan_sets(db, ix, sets, twu, fre, scans, deadline);
    std::vector<LevelCandidate> out(level.size());
    for (std::size_t s = 0; s < level.size(); ++s)
        out[s] = {level[s], twu[s], fre[s]};
    return out;
}

CandidatePool phase1(const Database& db, const Thresholds& th, RunStats& stats,
                     const Deadline& deadline) {
    CandidatePool pool;
    const Itemset& universe = db.item_universe();
    if (universe.empty()) return pool;

    Indexer ix(db);

    // level 1: accumulate per-item TWU and support mass directly
    std::vector<Money> twu1(universe.size(), 0);
    std::vector<Count> fre1(universe.size(), 0);
    ++stats.scan_count;
    std::size_t seen = 0;
    for (const Transaction& t : db.transactions()) {
        if ((++seen & 0xfff) == 0) deadline.poll();
        Money tu = 0;
        for (const ItemQty& e : t.entries())
            tu += static_cast<Money>(e.qty) * ix.value[ix.rank.at(e.item)];
        for (const ItemQty& e : t.entries()) {
            int r = ix.rank.at(e.item);
            twu1[r] += tu;
            fre1[r] += e.qty;
        }
    }
    stats.levels = 1;
    stats.level_candidates.assign(1, universe.size());

    std::vector<LevelCandidate> survivors;
    for (std::size_t r = 0; r < universe.size(); ++r) {
        LevelCandidate c{{universe[r]}, twu1[r], fre1[r]};
        if (survives(c, th)) {
            pool.members.push_back(c);
            survivors.push_back(std::move(c));
        }
    }

    for (int k = 2; !survivors.empty(); ++k) {
        deadline.poll();
        std::vector<Itemset> next = join_level(survivors);
        if (next.empty()) break;

        std::vector<const Itemset*> sets;
        sets.reserve(next.size());
        for (const Itemset& x : next) sets.push_back(&x);
        std::vector<Money> twu;
        std::vector<Count> fre;
        scan_sets(db, ix, sets, twu, fre, stats.scan_count, deadline);

        stats.levels = k;
        stats.level_candidates.push_back(next.size());

        survivors.clear();
        for (std::size_t s = 0; s < next.size(); ++s) {
            LevelCandidate c{std::move(next[s]), twu[s], fre[s]};
            if (survives(c, th)) {
                pool.members.push_back(c);
                survivors.push_back(std::move(c));
            }
        }
    }

    stats.candidate_count = pool.members.size();
    return pool;
}

ClassificationReport phase2(const Database& db, const CandidatePool& pool,
                            const Thresholds& th, RunStats& stats,
                            const Deadline& deadline) {
    ClassificationReport report;
    Indexer ix(db);
    std::vector<const Itemset*> sets;
    sets.reserve(pool.members.size());
    for (const LevelCandidate& c : pool.members) sets.push_back(&c.items);

    // the one extra scan: exact support mass for every pooled candidate
    std::vector<Money> twu;
    std::vector<Count> fre;
    scan_sets(db, ix, sets, twu, fre, stats.scan_count, deadline);

    for (std::size_t s = 0; s < pool.members.size(); ++s) {
        assert(fre[s] == pool.members[s].fre); // phase 1 measured S exactly
        Money v = external_utility(pool.members[s].items, db.utilities());
        Money u = fre[s] * v;
        switch (classify(u, fre[s], th)) {
        case PatternClass::HFHUI:
        case PatternClass::HFLUI:
        case PatternClass::LFHUI:
            report.add({pool.members[s].items, u, fre[s], classify(u, fre[s], th)});
            break;
        case PatternClass::LFLUI:
            break; // exact measures cleared neither threshold: discard
        }
    }
    report.sort_canonical();
    return report;
}

ClassificationReport run_gen(const Database& db, const Thresholds& th,
                             const GenOptions& opts) {
    WallTimer timer;
    RunStats stats;
    CandidatePool pool = phase1(db, th, stats, opts.deadline);
    ClassificationReport report = phase2(db, pool, th, stats, opts.deadline);
    report.stats = stats;
    report.stats.wall_ms = timer.elapsed_ms();
    return report;
}

} // namespace ufc
