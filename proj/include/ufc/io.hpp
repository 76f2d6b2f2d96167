#pragma once

// Dataset plumbing: the native file format, SPMF-style import, and a seeded
// synthetic generator.
//
// Native format
//   @ITEM <id> <utility>     one line per external-utility entry, first
//   <item>:<qty> <item>:<qty> ...   one line per transaction, after the header
// Utilities may carry up to 9 decimal places; the parser normalises the whole
// table to the smallest power-of-ten money scale that represents every entry
// exactly. An empty line in the transaction section is an empty transaction.
// write/parse round-trips are identity for any database whose money scale is
// minimal (always the case for parse/import/generate outputs).

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ufc/core.hpp"

namespace ufc {

Database parse_native(std::istream& in);
Database parse_native_file(const std::string& path);

void write_native(const Database& db, std::ostream& out);
void write_native_file(const Database& db, const std::string& path);

// Render internal money units as a display decimal ("150" at scale 100 -> "1.5").
std::string format_money(Money value, Money scale);

// SPMF high-utility transaction line: "items : TU : per-item utilities", all
// integers in display units. Quantities are recovered against the supplied
// utility table (q = utility / v(item)) and must divide exactly; the TU field
// must equal the per-item sum. Anything else is an ImportError.
Database import_spmf(std::istream& in, const UtilityTable& table, Money money_scale);
Database import_spmf_file(const std::string& path, const Database& table_db);

struct GeneratorConfig {
    std::int64_t transactions = 0;
    std::int32_t items = 0;
    std::int32_t avg_length = 0;   // exact mean of the length law
    std::int32_t max_quantity = 5; // quantities drawn uniformly from 1..max
    Money util_min = 1;            // external utilities drawn uniformly, scale 1
    Money util_max = 10;
    double zipf_s = 1.2; // item popularity skew
    std::uint64_t seed = 1;
};

// Deterministic per (config, seed): identical configs produce identical
// databases in one build. Item popularity follows Zipf(zipf_s) over ranks
// 1..items so frequent and rare items both show up.
Database generate(const GeneratorConfig& cfg);

} // namespace ufc
