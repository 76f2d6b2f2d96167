#include "ufc/oracle.hpp"

namespace ufc {

ClassificationReport classify_all(const Database& db, const Thresholds& th,
                                  std::size_t item_limit, const Deadline& deadline) {
    const Itemset& universe = db.item_universe();
    if (universe.size() > item_limit)
        throw UniverseTooLargeError(universe.size(), item_limit);

    ClassificationReport report;
    const std::uint64_t n = universe.size();
    Itemset subset;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if ((mask & 0x3ff) == 0) deadline.poll();
        subset.clear();
        for (std::uint64_t b = 0; b < n; ++b)
            if (mask & (std::uint64_t{1} << b)) subset.push_back(universe[b]);
        Count s = itemset_support(subset, db);
        Money u = itemset_utility(subset, db);
        PatternClass c = classify(u, s, th);
        report.stats.visited++;
        if (c != PatternClass::LFLUI) report.add({subset, u, s, c});
    }
    report.sort_canonical();
    return report;
}

} // namespace ufc
