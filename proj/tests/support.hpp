#pragma once

// Shared fixtures for the test binaries: the worked seven-item example used
// throughout, hand-rolled tiny-database builders, and a small random database
// source for differential checks.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ufc/core.hpp"
#include "ufc/io.hpp"

namespace testsupport {

// Seven items (1..7 = A..G), five transactions. Single items at th=($15,3)
// classify as: 1,2 high/high; 3,4,6,7 high/low; 5 discarded.
inline const char* kExampleText =
    "@ITEM 1 5\n"
    "@ITEM 2 3\n"
    "@ITEM 3 2\n"
    "@ITEM 4 1\n"
    "@ITEM 5 4\n"
    "@ITEM 6 2\n"
    "@ITEM 7 1\n"
    "1:1 2:2 3:1\n"
    "1:2 2:3 6:2\n"
    "2:2 4:2 5:2\n"
    "3:2 4:1 6:1 7:3\n"
    "2:1 3:2 6:2 7:1\n";

inline ufc::Database example_db() {
    std::istringstream in(kExampleText);
    return ufc::parse_native(in);
}

// transactions given as {{item, qty}, ...}; utilities as {{item, value}, ...}
inline ufc::Database make_db(
    const std::vector<std::vector<std::pair<ufc::ItemId, std::int32_t>>>& txs,
    const std::vector<std::pair<ufc::ItemId, ufc::Money>>& utils,
    ufc::Money scale = 1) {
    ufc::UtilityTable table;
    for (auto& [i, v] : utils) table.set(i, v);
    std::vector<ufc::Transaction> out;
    ufc::Tid tid = 1;
    for (auto& tx : txs) {
        std::vector<ufc::ItemQty> entries;
        for (auto& [i, q] : tx) entries.push_back({i, q});
        out.emplace_back(tid++, std::move(entries));
    }
    return ufc::Database(std::move(out), std::move(table), scale);
}

// Random database for differential tests. Deliberately independent of
// ufc::generate: item count, transaction count, quantities and utilities all
// drawn uniformly, duplicates avoided per transaction.
inline ufc::Database random_db(std::mt19937_64& rng, int max_items = 8,
                               int max_tx = 12, int max_qty = 5,
                               ufc::Money max_util = 10) {
    auto draw = [&](int lo, int hi) {
        return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    int items = draw(1, max_items);
    int ntx = draw(0, max_tx);
    std::vector<std::pair<ufc::ItemId, ufc::Money>> utils;
    for (int i = 1; i <= items; ++i)
        utils.emplace_back(i, static_cast<ufc::Money>(draw(1, static_cast<int>(max_util))));
    std::vector<std::vector<std::pair<ufc::ItemId, std::int32_t>>> txs;
    for (int t = 0; t < ntx; ++t) {
        std::vector<std::pair<ufc::ItemId, std::int32_t>> tx;
        for (int i = 1; i <= items; ++i)
            if (rng() % 100 < 45) tx.emplace_back(i, draw(1, max_qty));
        txs.push_back(std::move(tx)); // may be empty on purpose
    }
    return make_db(txs, utils);
}

} // namespace testsupport
