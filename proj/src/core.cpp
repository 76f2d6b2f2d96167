#include "ufc/core.hpp"

#include <cctype>
#include <limits>

namespace ufc {

bool itemset_canonical(const Itemset& x) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i - 1] >= x[i]) return false;
    return true;
}

namespace {

void require_canonical(const Itemset& x, const char* who) {
    if (!itemset_canonical(x))
        throw ContractViolation(std::string(who) +
                                ": itemset must be sorted ascending and duplicate-free");
}

Money ceil_div_positive(__int128 num, __int128 den) {
    // num >= 0, den > 0
    __int128 q = (num + den - 1) / den;
    if (q > std::numeric_limits<std::int64_t>::max())
        throw ConfigError("threshold overflows 64-bit money range");
    return static_cast<Money>(q);
}

} // namespace

void UtilityTable::set(ItemId item, Money value) {
    if (item < 0) throw ConfigError("item ids must be non-negative");
    if (value <= 0)
        throw ConfigError("external utility of item " + std::to_string(item) +
                          " must be positive");
    values_[item] = value;
}

Money UtilityTable::at(ItemId item) const {
    auto it = values_.find(item);
    if (it == values_.end())
        throw AbsentItemError("item " + std::to_string(item) +
                              " has no external utility entry");
    return it->second;
}

std::optional<Money> UtilityTable::find(ItemId item) const {
    auto it = values_.find(item);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

Transaction::Transaction(Tid tid, std::vector<ItemQty> entries)
    : tid_(tid), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const ItemQty& a, const ItemQty& b) { return a.item < b.item; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].item < 0)
            throw ConfigError("item ids must be non-negative");
        if (entries_[i].qty <= 0)
            throw ConfigError("purchase quantity of item " +
                              std::to_string(entries_[i].item) + " must be positive");
        if (i > 0 && entries_[i - 1].item == entries_[i].item)
            throw ConfigError("duplicate item " + std::to_string(entries_[i].item) +
                              " in transaction " + std::to_string(tid_));
    }
}

std::optional<std::int32_t> Transaction::quantity_of(ItemId item) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), item,
        [](const ItemQty& e, ItemId id) { return e.item < id; });
    if (it == entries_.end() || it->item != item) return std::nullopt;
    return it->qty;
}

Database::Database(std::vector<Transaction> transactions, UtilityTable utilities,
                   Money money_scale)
    : transactions_(std::move(transactions)),
      utilities_(std::move(utilities)),
      money_scale_(money_scale) {
    if (money_scale_ <= 0) throw ConfigError("money scale must be positive");
    Tid prev = 0;
    for (const Transaction& t : transactions_) {
        if (t.tid() <= prev)
            throw ConfigError("transaction ids must be positive and strictly increasing");
        prev = t.tid();
        for (const ItemQty& e : t.entries()) {
            total_utility_ +=
                static_cast<Money>(e.qty) * utilities_.at(e.item); // throws if absent
            universe_.push_back(e.item);
        }
    }
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
}

Database Database::prefix(std::size_t n) const {
    if (n > transactions_.size())
        throw ConfigError("prefix of " + std::to_string(n) + " transactions from a database of " +
                          std::to_string(transactions_.size()));
    std::vector<Transaction> head(transactions_.begin(), transactions_.begin() + n);
    return Database(std::move(head), utilities_, money_scale_);
}

Money item_utility(ItemId item, const Transaction& t, const Database& db) {
    auto q = t.quantity_of(item);
    if (!q)
        throw AbsentItemError("item " + std::to_string(item) + " not in transaction " +
                              std::to_string(t.tid()));
    return static_cast<Money>(*q) * db.utilities().at(item);
}

Money transaction_utility(const Transaction& t, const Database& db) {
    Money tu = 0;
    for (const ItemQty& e : t.entries())
        tu += static_cast<Money>(e.qty) * db.utilities().at(e.item);
    return tu;
}

Money external_utility(const Itemset& x, const UtilityTable& table) {
    require_canonical(x, "external_utility");
    Money v = 0;
    for (ItemId i : x) v += table.at(i);
    return v;
}

std::optional<std::int32_t> min_quantity(const Itemset& x, const Transaction& t) {
    if (x.empty()) return std::nullopt;
    std::int32_t minq = std::numeric_limits<std::int32_t>::max();
    auto it = t.entries().begin();
    for (ItemId want : x) {
        while (it != t.entries().end() && it->item < want) ++it;
        if (it == t.entries().end() || it->item != want) return std::nullopt;
        minq = std::min(minq, it->qty);
    }
    return minq;
}

Count itemset_support(const Itemset& x, const Database& db) {
    require_canonical(x, "itemset_support");
    Count s = 0;
    for (const Transaction& t : db.transactions())
        if (auto q = min_quantity(x, t)) s += *q;
    return s;
}

Money itemset_utility(const Itemset& x, const Database& db) {
    require_canonical(x, "itemset_utility");
    return itemset_support(x, db) * external_utility(x, db.utilities());
}

Money twu(const Itemset& x, const Database& db) {
    require_canonical(x, "twu");
    Money total = 0;
    for (const Transaction& t : db.transactions())
        if (min_quantity(x, t)) total += transaction_utility(t, db);
    return total;
}

ThresholdSpec::ThresholdSpec(const std::string& value, bool relative)
    : relative_(relative) {
    std::size_t pos = 0;
    std::int64_t intpart = 0;
    bool any_digit = false;
    while (pos < value.size() && std::isdigit(static_cast<unsigned char>(value[pos]))) {
        if (intpart > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
            throw ConfigError("threshold value out of range: " + value);
        intpart = intpart * 10 + (value[pos] - '0');
        any_digit = true;
        ++pos;
    }
    std::int64_t frac = 0, den = 1;
    if (pos < value.size() && value[pos] == '.') {
        ++pos;
        while (pos < value.size() && std::isdigit(static_cast<unsigned char>(value[pos]))) {
            if (den > 100000000) // cap at 9 decimal places
                throw ConfigError("too many decimal places in threshold: " + value);
            frac = frac * 10 + (value[pos] - '0');
            den *= 10;
            any_digit = true;
            ++pos;
        }
    }
    if (!any_digit || pos != value.size())
        throw ConfigError("malformed threshold value: '" + value + "'");
    num_ = intpart * den + frac;
    den_ = den;
}

ThresholdSpec ThresholdSpec::parse(const std::string& text) {
    std::string s = text;
    // tolerate surrounding whitespace from shell quoting
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    bool rel = false;
    if (!s.empty() && s.back() == '%') {
        rel = true;
        s.pop_back();
    }
    ThresholdSpec spec(s, rel);
    if (rel) spec.den_ *= 100; // "20%" -> 20/100
    return spec;
}

ThresholdSpec ThresholdSpec::absolute(Money display_units) {
    if (display_units < 0) throw ConfigError("thresholds must be non-negative");
    return ThresholdSpec(std::to_string(display_units), false);
}

ThresholdSpec ThresholdSpec::fraction(std::int64_t num, std::int64_t den) {
    if (num < 0 || den <= 0) throw ConfigError("threshold fraction must be non-negative");
    ThresholdSpec spec("0", true);
    spec.num_ = num;
    spec.den_ = den;
    return spec;
}

Money ThresholdSpec::resolve_util(const Database& db) const {
    if (relative_)
        return ceil_div_positive(static_cast<__int128>(num_) * db.total_utility(), den_);
    // absolute amount in display units -> internal units; comparisons are against
    // integer utilities, so a fractional boundary rounds up losslessly
    return ceil_div_positive(static_cast<__int128>(num_) * db.money_scale(), den_);
}

Count ThresholdSpec::resolve_fre(const Database& db) const {
    if (relative_)
        return ceil_div_positive(static_cast<__int128>(num_) *
                                     static_cast<__int128>(db.size()),
                                 den_);
    return ceil_div_positive(num_, den_);
}

const char* to_string(PatternClass c) {
    switch (c) {
    case PatternClass::HFHUI: return "HFHUI";
    case PatternClass::HFLUI: return "HFLUI";
    case PatternClass::LFHUI: return "LFHUI";
    case PatternClass::LFLUI: return "LFLUI";
    }
    return "?";
}

PatternClass classify(Money utility, Count support, const Thresholds& th) {
    const bool high_util = utility >= th.min_util;
    const bool high_fre = support >= th.min_fre;
    if (high_fre && high_util) return PatternClass::HFHUI;
    if (high_fre) return PatternClass::HFLUI;
    if (high_util) return PatternClass::LFHUI;
    return PatternClass::LFLUI;
}

bool itemset_less(const Itemset& a, const Itemset& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace ufc
