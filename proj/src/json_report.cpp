#include "ufc/json_report.hpp"

#include <cctype>

#include "ufc/io.hpp"

namespace ufc {

ordered_json pattern_json(const ClassifiedPattern& p, Money money_scale) {
    ordered_json j;
    j["items"] = p.items;
    j["utility"] = format_money(p.utility, money_scale);
    j["support"] = p.support;
    return j;
}

ordered_json patterns_json(const ClassificationReport& report, Money money_scale) {
    ordered_json j;
    for (PatternClass c :
         {PatternClass::HFHUI, PatternClass::HFLUI, PatternClass::LFHUI}) {
        ordered_json arr = ordered_json::array();
        for (const ClassifiedPattern& p : report.of(c))
            arr.push_back(pattern_json(p, money_scale));
        std::string key = to_string(c);
        for (char& ch : key) ch = static_cast<char>(std::tolower(ch));
        j[key] = std::move(arr);
    }
    return j;
}

ordered_json stats_json(const RunStats& stats, const std::string& algo,
                        const ClassificationReport& report) {
    ordered_json j;
    j["wall_ms"] = stats.wall_ms;
    j["peak_memory_bytes"] = stats.peak_memory_bytes;
    j["memory_best_effort"] = stats.memory_best_effort;
    j["scan_count"] = stats.scan_count;
    if (algo == "gen") {
        j["candidate_count"] = stats.candidate_count;
        j["levels"] = stats.levels;
        j["level_candidates"] = stats.level_candidates;
    } else if (algo == "fast") {
        j["fulist_count"] = stats.fulist_count;
        j["peak_depth"] = stats.peak_depth;
        j["visited"] = stats.visited;
    } else {
        j["visited"] = stats.visited;
    }
    auto counts = report.class_counts();
    j["class_counts"] = {{"hfhui", counts[0]}, {"hflui", counts[1]}, {"lfhui", counts[2]}};
    return j;
}

ordered_json thresholds_json(const std::string& util_input, const std::string& fre_input,
                             const Thresholds& th, Money money_scale) {
    ordered_json j;
    j["min_util"] = util_input;
    j["min_fre"] = fre_input;
    j["min_util_resolved"] = format_money(th.min_util, money_scale);
    j["min_fre_resolved"] = th.min_fre;
    j["money_scale"] = money_scale;
    return j;
}

} // namespace ufc
