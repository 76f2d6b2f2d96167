#include "ufc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <string_view>
#include <vector>

namespace ufc {

namespace {

[[noreturn]] void fail_at(const std::string& where, std::size_t line,
                          const std::string& msg, bool import) {
    std::string loc = where.empty() ? "line " + std::to_string(line)
                                    : where + ":" + std::to_string(line);
    if (import) throw ImportError(loc + ": " + msg);
    throw ParseError(loc + ": " + msg);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_i64(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

// "12", "1.5", "0.250" -> value num/10^dp with trailing zeros trimmed. dp <= 9.
bool parse_decimal(std::string_view s, std::int64_t& num, int& dp) {
    std::size_t dot = s.find('.');
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = dot == std::string_view::npos ? std::string_view{}
                                                        : s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return false;
    while (!fp.empty() && fp.back() == '0') fp.remove_suffix(1);
    if (fp.size() > 9) return false;
    std::int64_t ipv = 0;
    if (!ip.empty() && !parse_i64(ip, ipv)) return false;
    if (ipv < 0) return false;
    std::int64_t fpv = 0;
    if (!fp.empty() && (!parse_i64(fp, fpv) || fpv < 0)) return false;
    dp = static_cast<int>(fp.size());
    __int128 v = ipv;
    for (int i = 0; i < dp; ++i) v *= 10;
    v += fpv;
    if (v > std::numeric_limits<std::int64_t>::max()) return false;
    num = static_cast<std::int64_t>(v);
    return true;
}

Money pow10(int p) {
    Money v = 1;
    while (p-- > 0) v *= 10;
    return v;
}

bool blank(std::string_view s) {
    return s.find_first_not_of(" \t") == std::string_view::npos;
}

Database parse_native_impl(std::istream& in, const std::string& where) {
    struct RawUtil {
        ItemId id;
        std::int64_t num;
        int dp;
        std::size_t line;
    };
    std::vector<RawUtil> raw;
    std::set<ItemId> seen_items;
    std::vector<Transaction> txs;
    bool header_done = false;
    Tid next_tid = 1;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = line;

        if (!header_done && sv.starts_with("@ITEM")) {
            auto tok = split_ws(sv);
            if (tok.size() != 3)
                fail_at(where, lineno, "expected '@ITEM <id> <utility>'", false);
            std::int64_t id;
            if (!parse_i64(tok[1], id) || id < 0 ||
                id > std::numeric_limits<ItemId>::max())
                fail_at(where, lineno, "bad item id '" + std::string(tok[1]) + "'",
                        false);
            std::int64_t num;
            int dp;
            if (!parse_decimal(tok[2], num, dp) || num <= 0)
                fail_at(where, lineno,
                        "bad utility '" + std::string(tok[2]) +
                            "' (positive decimal, at most 9 places)",
                        false);
            if (!seen_items.insert(static_cast<ItemId>(id)).second)
                fail_at(where, lineno, "duplicate @ITEM " + std::to_string(id), false);
            raw.push_back({static_cast<ItemId>(id), num, dp, lineno});
            continue;
        }

        header_done = true;
        if (sv.starts_with("@ITEM"))
            fail_at(where, lineno, "@ITEM header after the first transaction", false);

        std::vector<ItemQty> entries;
        for (std::string_view tok : split_ws(sv)) {
            std::size_t colon = tok.find(':');
            if (colon == std::string_view::npos || tok.rfind(':') != colon)
                fail_at(where, lineno,
                        "expected '<item>:<qty>', got '" + std::string(tok) + "'",
                        false);
            std::int64_t item, qty;
            if (!parse_i64(tok.substr(0, colon), item) || item < 0 ||
                item > std::numeric_limits<ItemId>::max())
                fail_at(where, lineno, "bad item id in '" + std::string(tok) + "'",
                        false);
            if (!parse_i64(tok.substr(colon + 1), qty) || qty <= 0 ||
                qty > std::numeric_limits<std::int32_t>::max())
                fail_at(where, lineno, "bad quantity in '" + std::string(tok) + "'",
                        false);
            if (!seen_items.count(static_cast<ItemId>(item)))
                fail_at(where, lineno,
                        "item " + std::to_string(item) + " has no @ITEM entry", false);
            entries.push_back(
                {static_cast<ItemId>(item), static_cast<std::int32_t>(qty)});
        }
        try {
            txs.emplace_back(next_tid++, std::move(entries));
        } catch (const ConfigError& e) {
            fail_at(where, lineno, e.what(), false);
        }
    }
    if (in.bad()) throw ParseError(where.empty() ? "read error" : where + ": read error");

    int max_dp = 0;
    for (const RawUtil& r : raw) max_dp = std::max(max_dp, r.dp);
    Money scale = pow10(max_dp);
    UtilityTable table;
    for (const RawUtil& r : raw) {
        __int128 v = static_cast<__int128>(r.num) * pow10(max_dp - r.dp);
        if (v > std::numeric_limits<Money>::max())
            fail_at(where, r.line, "utility out of range", false);
        table.set(r.id, static_cast<Money>(v));
    }
    return Database(std::move(txs), std::move(table), scale);
}

Database import_spmf_impl(std::istream& in, const UtilityTable& table,
                          Money money_scale, const std::string& where) {
    std::vector<Transaction> txs;
    Tid next_tid = 1;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = line;
        if (blank(sv)) continue;

        std::size_t c1 = sv.find(':');
        std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos
                                                      : sv.find(':', c1 + 1);
        if (c2 == std::string_view::npos || sv.find(':', c2 + 1) != std::string_view::npos)
            fail_at(where, lineno, "expected '<items>:<TU>:<utilities>'", true);

        auto items_tok = split_ws(sv.substr(0, c1));
        auto tu_tok = split_ws(sv.substr(c1 + 1, c2 - c1 - 1));
        auto util_tok = split_ws(sv.substr(c2 + 1));
        if (items_tok.empty())
            fail_at(where, lineno, "transaction with no items", true);
        if (tu_tok.size() != 1)
            fail_at(where, lineno, "expected a single TU field", true);
        if (util_tok.size() != items_tok.size())
            fail_at(where, lineno,
                    std::to_string(items_tok.size()) + " items but " +
                        std::to_string(util_tok.size()) + " utility values",
                    true);

        std::int64_t tu;
        if (!parse_i64(tu_tok[0], tu) || tu < 0)
            fail_at(where, lineno, "bad TU '" + std::string(tu_tok[0]) + "'", true);

        std::vector<ItemQty> entries;
        entries.reserve(items_tok.size());
        std::int64_t sum = 0;
        for (std::size_t k = 0; k < items_tok.size(); ++k) {
            std::int64_t item, util;
            if (!parse_i64(items_tok[k], item) || item < 0 ||
                item > std::numeric_limits<ItemId>::max())
                fail_at(where, lineno, "bad item id '" + std::string(items_tok[k]) + "'",
                        true);
            if (!parse_i64(util_tok[k], util) || util < 0)
                fail_at(where, lineno,
                        "bad utility value '" + std::string(util_tok[k]) + "'", true);
            auto v = table.find(static_cast<ItemId>(item));
            if (!v)
                fail_at(where, lineno,
                        "item " + std::to_string(item) + " has no utility entry", true);
            __int128 units = static_cast<__int128>(util) * money_scale;
            if (units % *v != 0)
                fail_at(where, lineno,
                        "utility " + std::string(util_tok[k]) + " of item " +
                            std::to_string(item) + " is not a multiple of v=" +
                            format_money(*v, money_scale),
                        true);
            __int128 qty = units / *v;
            if (qty <= 0 || qty > std::numeric_limits<std::int32_t>::max())
                fail_at(where, lineno,
                        "derived quantity of item " + std::to_string(item) +
                            " is out of range",
                        true);
            entries.push_back(
                {static_cast<ItemId>(item), static_cast<std::int32_t>(qty)});
            sum += util;
        }
        if (sum != tu)
            fail_at(where, lineno,
                    "TU field says " + std::to_string(tu) +
                        " but per-item utilities sum to " + std::to_string(sum),
                    true);
        try {
            txs.emplace_back(next_tid++, std::move(entries));
        } catch (const ConfigError& e) {
            fail_at(where, lineno, e.what(), true);
        }
    }
    if (in.bad()) throw ImportError(where.empty() ? "read error" : where + ": read error");
    return Database(std::move(txs), table, money_scale);
}

} // namespace

Database parse_native(std::istream& in) { return parse_native_impl(in, ""); }

Database parse_native_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(path + ": cannot open");
    return parse_native_impl(f, path);
}

std::string format_money(Money value, Money scale) {
    bool neg = value < 0;
    unsigned long long mag = neg ? -(unsigned long long)value : (unsigned long long)value;
    unsigned long long ip = mag / static_cast<unsigned long long>(scale);
    unsigned long long fp = mag % static_cast<unsigned long long>(scale);
    std::string out = (neg ? "-" : "") + std::to_string(ip);
    if (fp != 0) {
        int width = 0;
        for (Money s = scale; s > 1; s /= 10) ++width;
        std::string digits = std::to_string(fp);
        digits.insert(0, width - digits.size(), '0');
        while (digits.back() == '0') digits.pop_back();
        out += "." + digits;
    }
    return out;
}

void write_native(const Database& db, std::ostream& out) {
    for (const auto& [id, v] : db.utilities().entries())
        out << "@ITEM " << id << ' ' << format_money(v, db.money_scale()) << '\n';
    for (const Transaction& t : db.transactions()) {
        bool first = true;
        for (const ItemQty& e : t.entries()) {
            if (!first) out << ' ';
            out << e.item << ':' << e.qty;
            first = false;
        }
        out << '\n';
    }
}

void write_native_file(const Database& db, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(path + ": cannot open for writing");
    write_native(db, f);
    f.flush();
    if (!f) throw Error(path + ": write failed");
}

Database import_spmf(std::istream& in, const UtilityTable& table, Money money_scale) {
    return import_spmf_impl(in, table, money_scale, "");
}

Database import_spmf_file(const std::string& path, const Database& table_db) {
    std::ifstream f(path);
    if (!f) throw ImportError(path + ": cannot open");
    return import_spmf_impl(f, table_db.utilities(), table_db.money_scale(), path);
}

Database generate(const GeneratorConfig& cfg) {
    if (cfg.transactions < 0) throw ConfigError("generator: transactions must be >= 0");
    if (cfg.items < 1) throw ConfigError("generator: need at least one item");
    if (cfg.avg_length < 1 || cfg.avg_length > cfg.items)
        throw ConfigError("generator: avg_length must be in [1, items]");
    if (cfg.max_quantity < 1) throw ConfigError("generator: max_quantity must be >= 1");
    if (cfg.util_min < 1 || cfg.util_max < cfg.util_min)
        throw ConfigError("generator: utility range must satisfy 1 <= min <= max");
    if (!(cfg.zipf_s > 0)) throw ConfigError("generator: zipf_s must be positive");

    std::mt19937_64 rng(cfg.seed);

    UtilityTable table;
    for (ItemId i = 1; i <= cfg.items; ++i)
        table.set(i, std::uniform_int_distribution<Money>(cfg.util_min, cfg.util_max)(rng));

    // unnormalised Zipf CDF over ranks 1..m (item 1 most popular)
    std::vector<double> cdf(cfg.items);
    double acc = 0;
    for (std::int32_t r = 1; r <= cfg.items; ++r) {
        acc += std::pow(static_cast<double>(r), -cfg.zipf_s);
        cdf[r - 1] = acc;
    }

    const std::int32_t d = std::min(cfg.avg_length - 1, cfg.items - cfg.avg_length);
    std::vector<char> used(cfg.items + 1, 0);
    std::vector<Transaction> txs;
    txs.reserve(cfg.transactions);
    std::vector<ItemId> chosen;

    for (std::int64_t t = 1; t <= cfg.transactions; ++t) {
        std::int32_t len = cfg.avg_length;
        if (d > 0) len += std::uniform_int_distribution<std::int32_t>(-d, d)(rng);

        chosen.clear();
        std::int64_t attempts = 0, cap = 50LL * len;
        while (static_cast<std::int32_t>(chosen.size()) < len && attempts < cap) {
            ++attempts;
            double u = std::uniform_real_distribution<double>(0.0, acc)(rng);
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            ItemId item = static_cast<ItemId>(
                std::min<std::ptrdiff_t>(it - cdf.begin(), cfg.items - 1) + 1);
            if (!used[item]) {
                used[item] = 1;
                chosen.push_back(item);
            }
        }
        // popular ranks collide often on long transactions; top up determinately
        for (ItemId i = 1; static_cast<std::int32_t>(chosen.size()) < len; ++i)
            if (!used[i]) {
                used[i] = 1;
                chosen.push_back(i);
            }
        std::sort(chosen.begin(), chosen.end());

        std::vector<ItemQty> entries;
        entries.reserve(chosen.size());
        for (ItemId i : chosen) {
            entries.push_back(
                {i, std::uniform_int_distribution<std::int32_t>(1, cfg.max_quantity)(rng)});
            used[i] = 0;
        }
        txs.emplace_back(static_cast<Tid>(t), std::move(entries));
    }

    return Database(std::move(txs), std::move(table), 1);
}

} // namespace ufc
