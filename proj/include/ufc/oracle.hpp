#pragma once

// Exhaustive reference classifier. No pruning, no cleverness: enumerate every
// non-empty subset of the occurring items, measure it straight from the
// definitions, classify. Ground truth for everything else in this project.

#include "ufc/bench.hpp"
#include "ufc/core.hpp"
#include "ufc/report.hpp"

namespace ufc {

struct UniverseTooLargeError : Error {
    UniverseTooLargeError(std::size_t universe, std::size_t limit)
        : Error("oracle refuses a universe of " + std::to_string(universe) +
                " items (limit " + std::to_string(limit) + ")"),
          universe_size(universe),
          item_limit(limit) {}
    std::size_t universe_size;
    std::size_t item_limit;
};

ClassificationReport classify_all(const Database& db, const Thresholds& th,
                                  std::size_t item_limit = 20,
                                  const Deadline& deadline = {});

} // namespace ufc
