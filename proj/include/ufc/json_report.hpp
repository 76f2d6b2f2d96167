#pragma once

// JSON shapes for CLI reports. ordered_json keeps field order stable so
// reports diff cleanly across runs.

#include <json.hpp>

#include "ufc/core.hpp"
#include "ufc/report.hpp"

namespace ufc {

using ordered_json = nlohmann::ordered_json;

ordered_json pattern_json(const ClassifiedPattern& p, Money money_scale);

// {"hfhui": [...], "hflui": [...], "lfhui": [...]} with canonical order.
ordered_json patterns_json(const ClassificationReport& report, Money money_scale);

// algo: "gen", "fast" or "oracle" — selects which counters are meaningful.
ordered_json stats_json(const RunStats& stats, const std::string& algo,
                        const ClassificationReport& report);

ordered_json thresholds_json(const std::string& util_input, const std::string& fre_input,
                             const Thresholds& th, Money money_scale);

} // namespace ufc
